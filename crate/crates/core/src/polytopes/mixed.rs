//! Lattice-normalized mixed volumes by inclusion-exclusion over Minkowski sums.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};

use super::{hull, LatticePolytope};
use crate::error::{Result, ToricError};
use crate::exact_linalg::{vec_add, vec_sub, IntMatrix, LatticeBasis};

/// Vertices translated to start at the origin, in coordinates of `lb`.
fn lattice_points(p: &LatticePolytope, lb: &LatticeBasis) -> Result<Vec<Vec<BigInt>>> {
    let base = &p.vertices()[0].0;
    p.vertices()
        .iter()
        .map(|v| {
            lb.coords(&vec_sub(&v.0, base))
                .ok_or_else(|| ToricError::NotInLattice(v.to_string()))
        })
        .collect()
}

fn sum_points(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = a.iter().flat_map(|x| b.iter().map(move |y| vec_add(x, y))).collect();
    out.sort();
    out.dedup();
    out
}

/// Hull vertices and normalized volume of a point set in `Z^n` (0 if not full-dimensional).
fn reduce(points: Vec<Vec<BigInt>>, n: usize) -> (Vec<Vec<BigInt>>, BigInt) {
    let base = points[0].clone();
    let diffs: Vec<Vec<BigInt>> = points.iter().map(|p| vec_sub(p, &base)).collect();
    if crate::exact_linalg::rank_of(&diffs) < n {
        return (points, BigInt::zero());
    }
    let h = hull::full_hull(&points, n);
    let verts = h.vertices.iter().map(|&i| points[i].clone()).collect();
    (verts, h.volume)
}

/// Mixed volume of `polytopes` (each with a multiplicity) in the lattice with
/// basis rows `lattice`, normalized so that `P` taken `n` times gives `Vol_Z(P)`.
///
/// Every polytope only matters up to translation: each is moved to start at
/// its first vertex and must then lie in the lattice.
pub fn mixed_volume(polytopes: &[(LatticePolytope, usize)], lattice: &IntMatrix) -> Result<BigInt> {
    let n = lattice.rows();
    let total: usize = polytopes.iter().map(|(_, m)| *m).sum();
    if total != n {
        return Err(ToricError::MultiplicityMismatch {
            multiplicity: total,
            rank: n,
        });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let lb = LatticeBasis::new(lattice.clone())?;
    let items: Vec<(Vec<Vec<BigInt>>, usize)> = polytopes
        .iter()
        .filter(|(_, m)| *m > 0)
        .map(|(p, m)| {
            if p.ambient_rank() != lattice.cols() {
                return Err(ToricError::DimensionMismatch {
                    expected: lattice.cols(),
                    found: p.ambient_rank(),
                });
            }
            Ok((lattice_points(p, &lb)?, *m))
        })
        .collect::<Result<_>>()?;

    // walk every sub-multiset s with 0 <= s_j <= m_j
    let mut acc = BigInt::zero();
    let mut s = vec![0usize; items.len()];
    loop {
        let size: usize = s.iter().sum();
        if size > 0 {
            let mut pts = vec![vec![BigInt::zero(); n]];
            let mut coeff = BigInt::one();
            for (j, (p, m)) in items.iter().enumerate() {
                coeff *= BigInt::from(binomial(*m as u64, s[j] as u64));
                for _ in 0..s[j] {
                    pts = reduce(sum_points(&pts, p), n).0;
                }
            }
            let (_, vol) = reduce(pts, n);
            let term = coeff * vol;
            if (n - size) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let mut j = 0;
        loop {
            if j == items.len() {
                let fact: BigInt = (1..=n).map(BigInt::from).product();
                let (q, r) = acc.div_rem(&fact);
                if !r.is_zero() {
                    return Err(ToricError::Internal("mixed volume is not integral".into()));
                }
                return Ok(q);
            }
            if s[j] < items[j].1 {
                s[j] += 1;
                break;
            }
            s[j] = 0;
            j += 1;
        }
    }
}
