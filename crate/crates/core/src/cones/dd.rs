//! Double description conversion for pointed cones `{x : A x >= 0}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact_linalg::{dot, invert_rational, primitive, rank_of, saturated_basis, LatticeBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

/// Extreme rays of `{x in R^n : a.x >= 0 for every row a}`.
///
/// The rows must have rank `n` (so the cone is pointed). Returns primitive
/// integer rays sorted lexicographically; an empty list means the cone is `{0}`.
pub fn extreme_rays(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if n == 0 {
        return Vec::new();
    }
    debug_assert_eq!(rank_of(rows), n, "inequality system must have full rank");
    let m = rows.len();

    // greedy choice of n independent rows
    let mut basis_rows: Vec<usize> = Vec::with_capacity(n);
    let mut picked: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        picked.push(r.clone());
        if rank_of(&picked) == picked.len() {
            basis_rows.push(i);
            if basis_rows.len() == n {
                break;
            }
        } else {
            picked.pop();
        }
    }

    let square: Vec<Vec<BigRational>> = picked
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let inv = invert_rational(square).expect("independent rows");

    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<BigRational> = (0..n).map(|i| inv[i][j].clone()).collect();
        let den = col
            .iter()
            .fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
        let v: Vec<BigInt> = col
            .iter()
            .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let v = primitive(&v);
        let mut z = Bits::new(m);
        for (k, &bi) in basis_rows.iter().enumerate() {
            if k != j {
                z.set(bi);
            }
        }
        rays.push((v, z));
    }

    for (i, row) in rows.iter().enumerate() {
        if basis_rows.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(row, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, (_, z)) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    z.set(i);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, z))| k == p || k == q || !z.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[q];
                let v: Vec<BigInt> = rays[p]
                    .0
                    .iter()
                    .zip(&rays[q].0)
                    .map(|(x, y)| a * y + &b * x)
                    .collect();
                let mut z = common;
                z.set(i);
                next.push((primitive(&v), z));
            }
        }
        for (k, (r, z)) in rays.into_iter().enumerate() {
            if vals[k].is_positive() {
                next.push((r, z));
            } else if vals[k].is_zero() {
                let mut z = z;
                z.set(i);
                next.push((r, z));
            }
        }
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    out
}

/// Inequality description of the cone generated by `generators`, inside the
/// saturated lattice of their span.
#[derive(Clone, Debug)]
pub struct ConeHrep {
    basis: Option<LatticeBasis>,
    ambient: usize,
    /// Facet normals in coordinates of the span basis.
    pub local_normals: Vec<Vec<BigInt>>,
}

impl ConeHrep {
    /// `None` if the generators span a cone containing a line.
    pub fn new(generators: &[Vec<BigInt>], ambient: usize) -> Option<ConeHrep> {
        let b = saturated_basis(generators, ambient).expect("generator widths match");
        if b.rows() == 0 {
            return Some(ConeHrep {
                basis: None,
                ambient,
                local_normals: Vec::new(),
            });
        }
        let lb = LatticeBasis::new(b).expect("hnf rows are independent");
        let local: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| !g.iter().all(Zero::is_zero))
            .map(|g| lb.coords(g).expect("generator lies in its own span"))
            .collect();
        let k = lb.rank();
        let normals = extreme_rays(&local, k);
        if rank_of(&normals) < k {
            return None;
        }
        Some(ConeHrep {
            basis: Some(lb),
            ambient,
            local_normals: normals,
        })
    }

    pub fn basis(&self) -> Option<&LatticeBasis> {
        self.basis.as_ref()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Local coordinates of `x`, or `None` if `x` is off the span.
    pub fn local(&self, x: &[BigInt]) -> Option<Vec<BigRational>> {
        match &self.basis {
            None => x.iter().all(Zero::is_zero).then(Vec::new),
            Some(lb) => lb.rational_coords(x),
        }
    }

    /// Index of the first violated inequality, `Ok(())` if `x` is in the cone,
    /// or `Err(None)` if `x` leaves the linear span.
    pub fn check(&self, x: &[BigInt]) -> Result<(), Option<usize>> {
        let Some(c) = self.local(x) else {
            return Err(None);
        };
        for (i, n) in self.local_normals.iter().enumerate() {
            let v = n
                .iter()
                .zip(&c)
                .fold(BigRational::zero(), |acc, (a, b)| acc + BigRational::from_integer(a.clone()) * b);
            if v.is_negative() {
                return Err(Some(i));
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.check(x).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::to_big;

    fn rays(rows: &[&[i64]], n: usize) -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| to_big(r)).collect();
        extreme_rays(&rows, n)
    }

    #[test]
    fn octant_is_self_dual() {
        let r = rays(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(r, vec![to_big(&[0, 0, 1]), to_big(&[0, 1, 0]), to_big(&[1, 0, 0])]);
    }

    #[test]
    fn a1_dual() {
        let r = rays(&[&[0, 1], &[2, 1]], 2);
        assert_eq!(r, vec![to_big(&[-1, 2]), to_big(&[1, 0])]);
    }

    #[test]
    fn square_pyramid() {
        // cone over a square: 4 facets (1,±1, ...) style
        let r = rays(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]], 3);
        assert_eq!(r.len(), 4);
        for v in &r {
            assert_eq!(v[2], BigInt::from(1));
        }
    }

    #[test]
    fn empty_interior_in_one_dim() {
        let r = rays(&[&[1], &[-1]], 1);
        assert!(r.is_empty());
    }

    #[test]
    fn hrep_of_lower_dimensional_cone() {
        let gens = vec![to_big(&[1, 0, 0]), to_big(&[1, 2, 0])];
        let h = ConeHrep::new(&gens, 3).unwrap();
        assert!(h.contains(&to_big(&[2, 2, 0])));
        assert!(!h.contains(&to_big(&[0, 1, 0])));
        assert!(!h.contains(&to_big(&[1, 1, 1])));
        assert!(ConeHrep::new(&[to_big(&[1, 0]), to_big(&[-1, 0])], 2).is_none());
    }
}
