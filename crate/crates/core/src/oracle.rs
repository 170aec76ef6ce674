//! Independent cross-checks that avoid the hull and face-lattice code paths.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::cones::{Cone, FaceId};
use crate::error::{Result, ToricError};
use crate::exact_linalg::{dot, LatticeVector};
use crate::family::NewtonHrep;
use crate::newton::ToricFunction;

/// Faces of σ̌ found by testing every generator subset against a supporting
/// functional: the sum of the σ-rays vanishing on the subset must vanish on
/// nothing else. Sorted by (size, ids).
pub fn brute_force_faces(c: &Cone) -> Vec<FaceId> {
    let gens = c.generators();
    let d = c.ambient_rank();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << gens.len()) {
        let s: Vec<usize> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut u = vec![BigInt::zero(); d];
        for r in c.dual_generators() {
            if s.iter().all(|&i| dot(&r.0, &gens[i].0).is_zero()) {
                for (a, b) in u.iter_mut().zip(&r.0) {
                    *a += b;
                }
            }
        }
        let zero: Vec<usize> = (0..gens.len()).filter(|&i| dot(&u, &gens[i].0).is_zero()).collect();
        if zero == s {
            out.push(FaceId(s));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

/// Normalized volume of Γ₋ = {x ≥ 0 below the Newton boundary} in Z^k, from
/// lattice-point counts of its dilates.
fn gamma_minus_volume(support: &[LatticeVector]) -> BigInt {
    let k = support[0].len();
    let c = Cone::octant(k).expect("k >= 1");
    let refs: Vec<&LatticeVector> = support.iter().collect();
    let hrep = NewtonHrep::new(&refs, &c);
    let bounded = hrep.compact(&c);
    let reach: Vec<BigInt> = (0..k)
        .map(|i| {
            support
                .iter()
                .filter(|p| p.0.iter().enumerate().all(|(j, x)| j == i || x.is_zero()))
                .map(|p| p.0[i].clone())
                .min()
                .expect("convenient")
        })
        .collect();
    let count = |t: i64| -> BigInt {
        if t == 0 {
            return BigInt::one();
        }
        let tt = BigInt::from(t);
        let hi: Vec<BigInt> = reach.iter().map(|r| r * &tt).collect();
        let mut x = vec![BigInt::zero(); k];
        let mut n = BigInt::zero();
        loop {
            if bounded.iter().any(|(a, l)| dot(&a.0, &x) <= l * &tt) {
                n += 1;
            }
            let mut j = 0;
            loop {
                if j == k {
                    return n;
                }
                if x[j] < hi[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = BigInt::zero();
                j += 1;
            }
        }
    };
    let mut vol = BigInt::zero();
    for j in 0..=k {
        let term = BigInt::from(binomial(k as u64, j as u64)) * count(j as i64);
        if (k - j) % 2 == 0 {
            vol += term;
        } else {
            vol -= term;
        }
    }
    vol
}

/// Kouchnirenko's Milnor number Σ_I (−1)^{n−|I|} Vol_Z(Γ₋(f) ∩ R^I) of a
/// convenient f on Cⁿ; the empty I contributes (−1)ⁿ.
pub fn kouchnirenko_mu(f: &ToricFunction, n: usize) -> Result<BigInt> {
    for i in 0..n {
        let on_axis = f
            .support()
            .any(|p| p.len() == n && p.0.iter().enumerate().all(|(j, x)| (j == i) != x.is_zero()));
        if !on_axis {
            return Err(ToricError::NotConvenient {
                function: f.name.clone(),
            });
        }
    }
    let mut mu = BigInt::zero();
    for mask in 0u64..(1u64 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let v = if idx.is_empty() {
            BigInt::one()
        } else {
            let pts: Vec<LatticeVector> = f
                .support()
                .filter(|p| (0..n).all(|j| idx.contains(&j) || p.0[j].is_zero()))
                .map(|p| LatticeVector(idx.iter().map(|&j| p.0[j].clone()).collect()))
                .collect();
            gamma_minus_volume(&pts)
        };
        if (n - idx.len()) % 2 == 0 {
            mu += v;
        } else {
            mu -= v;
        }
    }
    Ok(mu)
}
