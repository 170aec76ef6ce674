//! Volume from lattice-point counts of dilates.
//!
//! Kept independent of the hull code: facets come from a brute-force scan over
//! vertex subsets, and the volume is the `n`-th finite difference of the
//! counting function `k ↦ #(kP ∩ Z^n)`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::LatticePolytope;
use crate::error::Result;
use crate::exact_linalg::{dot, normal_vector, rank_of, vec_sub};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Half-spaces `a . x >= c` of a full-dimensional point set in `Z^r`.
pub(crate) fn brute_force_facets(points: &[Vec<BigInt>], r: usize) -> Vec<(Vec<BigInt>, BigInt)> {
    let mut out: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for s in subsets(points.len(), r) {
        let base = &points[s[0]];
        let rows: Vec<Vec<BigInt>> = s[1..].iter().map(|&i| vec_sub(&points[i], base)).collect();
        if rank_of(&rows) != r - 1 {
            continue;
        }
        let n = normal_vector(&rows, r);
        let c = dot(&n, base);
        let vals: Vec<BigInt> = points.iter().map(|p| dot(&n, p)).collect();
        let cand = if vals.iter().all(|v| v >= &c) {
            (n, c)
        } else if vals.iter().all(|v| v <= &c) {
            (n.iter().map(|x| -x).collect(), -c)
        } else {
            continue;
        };
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Number of lattice points in `k` times the polytope cut out by `facets`,
/// searched inside the box spanned by `k` times the point bounds.
pub(crate) fn count_dilate(points: &[Vec<BigInt>], facets: &[(Vec<BigInt>, BigInt)], k: i64) -> BigInt {
    let r = points[0].len();
    let kk = BigInt::from(k);
    let lo: Vec<BigInt> = (0..r)
        .map(|j| points.iter().map(|p| &p[j] * &kk).min().expect("nonempty"))
        .collect();
    let hi: Vec<BigInt> = (0..r)
        .map(|j| points.iter().map(|p| &p[j] * &kk).max().expect("nonempty"))
        .collect();
    let mut count = BigInt::zero();
    let mut x = lo.clone();
    loop {
        if facets.iter().all(|(a, c)| dot(a, &x) >= c * &kk) {
            count += 1;
        }
        let mut j = 0;
        loop {
            if j == r {
                return count;
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// Normalized volume computed from lattice-point counts of `kP`, `k = 0..n`.
pub fn ehrhart_volume_oracle(p: &LatticePolytope) -> Result<BigInt> {
    let local = p.local_points()?;
    let n = p.reference_lattice().rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let facets = brute_force_facets(&local, n);
    let mut vol = BigInt::zero();
    for j in 0..=n {
        let term = BigInt::from(binomial(n as u64, j as u64)) * count_dilate(&local, &facets, j as i64);
        if (n - j) % 2 == 0 {
            vol += term;
        } else {
            vol -= term;
        }
    }
    Ok(vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::LatticeVector;
    use crate::polytopes::{convex_hull, normalized_volume};

    fn hull(v: &[&[i64]]) -> LatticePolytope {
        convex_hull(&v.iter().map(|p| LatticeVector::from_i64(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let t = hull(&[&[0, 0], &[2, 0], &[0, 3]]);
        assert_eq!(ehrhart_volume_oracle(&t).unwrap(), BigInt::from(6));
        assert_eq!(ehrhart_volume_oracle(&t).unwrap(), normalized_volume(&t).unwrap());
        let sq = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let local = sq.local_points().unwrap();
        let f = brute_force_facets(&local, 2);
        let counts: Vec<BigInt> = (0..3).map(|k| count_dilate(&local, &f, k)).collect();
        assert_eq!(counts, vec![BigInt::from(1), BigInt::from(4), BigInt::from(9)]);
        assert_eq!(ehrhart_volume_oracle(&sq).unwrap(), BigInt::from(2));
        assert_eq!(ehrhart_volume_oracle(&hull(&[&[7, 1]])).unwrap(), BigInt::one());
    }
}
