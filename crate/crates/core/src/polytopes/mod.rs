//! Lattice polytopes: hulls, normalized volumes, Minkowski sums, mixed volumes.

pub mod ehrhart;
pub mod hull;
pub mod mixed;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Result, ToricError};
use crate::exact_linalg::{saturated_basis, vec_add, vec_sub, IntMatrix, LatticeBasis, LatticeVector};

pub use ehrhart::ehrhart_volume_oracle;
pub use mixed::mixed_volume;

/// A lattice polytope given by its vertices and the lattice that normalizes its volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<LatticeVector>,
    reference_lattice: IntMatrix,
    affine_dim: usize,
}

impl LatticePolytope {
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn reference_lattice(&self) -> &IntMatrix {
        &self.reference_lattice
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn ambient_rank(&self) -> usize {
        self.reference_lattice.cols()
    }

    /// Same polytope, volumes normalized against `lattice` (basis rows) instead.
    pub fn with_lattice(mut self, lattice: IntMatrix) -> Result<Self> {
        if lattice.cols() != self.ambient_rank() {
            return Err(ToricError::DimensionMismatch {
                expected: self.ambient_rank(),
                found: lattice.cols(),
            });
        }
        self.reference_lattice = lattice;
        Ok(self)
    }

    /// `P + v`.
    pub fn translate(&self, v: &LatticeVector) -> LatticePolytope {
        LatticePolytope {
            vertices: self
                .vertices
                .iter()
                .map(|p| LatticeVector(vec_add(&p.0, &v.0)))
                .collect(),
            reference_lattice: self.reference_lattice.clone(),
            affine_dim: self.affine_dim,
        }
    }

    /// Vertex coordinates relative to the first vertex, in the reference lattice.
    pub(crate) fn local_points(&self) -> Result<Vec<Vec<BigInt>>> {
        let r = self.reference_lattice.rows();
        if self.affine_dim < r {
            return Err(ToricError::Degenerate {
                affine_dim: self.affine_dim,
                lattice_rank: r,
            });
        }
        if self.affine_dim > r {
            return Err(ToricError::DimensionMismatch {
                expected: r,
                found: self.affine_dim,
            });
        }
        if r == 0 {
            return Ok(vec![Vec::new()]);
        }
        let lb = LatticeBasis::new(self.reference_lattice.clone())?;
        let base = &self.vertices[0].0;
        self.vertices
            .iter()
            .map(|v| {
                lb.coords(&vec_sub(&v.0, base))
                    .ok_or_else(|| ToricError::NotInLattice(v.to_string()))
            })
            .collect()
    }
}

/// Affine hull data: saturated direction lattice and integer local coordinates.
pub(crate) struct AffineFrame {
    pub dim: usize,
    pub lattice: IntMatrix,
    pub local: Vec<Vec<BigInt>>,
}

pub(crate) fn affine_frame(points: &[Vec<BigInt>], ambient: usize) -> Result<AffineFrame> {
    let base = &points[0];
    let diffs: Vec<Vec<BigInt>> = points.iter().map(|p| vec_sub(p, base)).collect();
    let lattice = saturated_basis(&diffs, ambient)?;
    let dim = lattice.rows();
    let local = if dim == 0 {
        vec![Vec::new(); points.len()]
    } else {
        let lb = LatticeBasis::new(lattice.clone())?;
        diffs
            .iter()
            .map(|d| lb.coords(d).ok_or_else(|| ToricError::Internal("point off its own affine hull".into())))
            .collect::<Result<_>>()?
    };
    Ok(AffineFrame { dim, lattice, local })
}

/// Minimal vertex set of the hull of `points`; the reference lattice is the
/// saturated direction lattice of their affine hull.
pub fn convex_hull(points: &[LatticeVector]) -> Result<LatticePolytope> {
    let first = points.first().ok_or(ToricError::EmptyPointSet)?;
    let d = first.len();
    let mut pts: Vec<Vec<BigInt>> = Vec::with_capacity(points.len());
    for p in points {
        if p.len() != d {
            return Err(ToricError::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        pts.push(p.0.clone());
    }
    pts.sort();
    pts.dedup();
    let frame = affine_frame(&pts, d)?;
    let vertices: Vec<LatticeVector> = if frame.dim == 0 {
        vec![LatticeVector(pts[0].clone())]
    } else {
        let h = hull::full_hull(&frame.local, frame.dim);
        let mut v: Vec<LatticeVector> = h.vertices.iter().map(|&i| LatticeVector(pts[i].clone())).collect();
        v.sort();
        v
    };
    Ok(LatticePolytope {
        vertices,
        reference_lattice: frame.lattice,
        affine_dim: frame.dim,
    })
}

/// Convex hull normalized against a given lattice (basis rows).
pub fn convex_hull_in(points: &[LatticeVector], lattice: IntMatrix) -> Result<LatticePolytope> {
    convex_hull(points)?.with_lattice(lattice)
}

/// `n!` times the Euclidean volume in coordinates of the reference lattice.
pub fn normalized_volume(p: &LatticePolytope) -> Result<BigInt> {
    let local = p.local_points()?;
    let r = p.reference_lattice.rows();
    if r == 0 {
        return Ok(BigInt::one());
    }
    Ok(hull::full_hull(&local, r).volume)
}

/// Hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.ambient_rank() != q.ambient_rank() {
        return Err(ToricError::DimensionMismatch {
            expected: p.ambient_rank(),
            found: q.ambient_rank(),
        });
    }
    let sums: Vec<LatticeVector> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| LatticeVector(vec_add(&a.0, &b.0))))
        .collect();
    convex_hull(&sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::to_big;
    use proptest::prelude::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    fn hull(v: &[&[i64]]) -> LatticePolytope {
        convex_hull(&v.iter().map(|p| lv(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hull_examples() {
        assert_eq!(hull(&[&[0, 0], &[1, 0], &[2, 0]]).vertices(), &[lv(&[0, 0]), lv(&[2, 0])]);
        assert_eq!(
            hull(&[&[0, 0], &[2, 0], &[0, 3], &[1, 1]]).vertices(),
            &[lv(&[0, 0]), lv(&[0, 3]), lv(&[2, 0])]
        );
        assert_eq!(hull(&[&[4, 5]]).vertices(), &[lv(&[4, 5])]);
        assert_eq!(convex_hull(&[]), Err(ToricError::EmptyPointSet));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(normalized_volume(&hull(&[&[0, 0], &[2, 0], &[0, 3]])).unwrap(), BigInt::from(6));
        for a in [1, 2, 5] {
            let seg = convex_hull_in(&[lv(&[0, 0]), lv(&[a, 0])], IntMatrix::from_i64(&[&[1, 0]])).unwrap();
            assert_eq!(normalized_volume(&seg).unwrap(), BigInt::from(a));
        }
        let simplex = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(normalized_volume(&simplex).unwrap(), BigInt::one());
        assert_eq!(normalized_volume(&hull(&[&[3, 3]])).unwrap(), BigInt::one());
    }

    #[test]
    fn degenerate_against_full_lattice() {
        let seg = convex_hull_in(&[lv(&[0, 0]), lv(&[2, 0])], IntMatrix::identity(2)).unwrap();
        assert_eq!(
            normalized_volume(&seg),
            Err(ToricError::Degenerate { affine_dim: 1, lattice_rank: 2 })
        );
        let seg = convex_hull_in(&[lv(&[0, 0]), lv(&[1, 0])], IntMatrix::from_i64(&[&[2, 0]])).unwrap();
        assert!(matches!(normalized_volume(&seg), Err(ToricError::NotInLattice(_))));
    }

    #[test]
    fn minkowski_examples() {
        let sq = minkowski_sum(&hull(&[&[0, 0], &[1, 0]]), &hull(&[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(sq.vertices(), &[lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0]), lv(&[1, 1])]);
        let t = hull(&[&[0, 0], &[2, 0], &[0, 3]]);
        let moved = minkowski_sum(&t, &hull(&[&[1, 1]])).unwrap();
        assert_eq!(moved.vertices(), t.translate(&lv(&[1, 1])).vertices());
        let par = minkowski_sum(&hull(&[&[2, 0], &[0, 1]]), &hull(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(
            par.vertices(),
            &[lv(&[0, 3]), lv(&[1, 1]), lv(&[2, 2]), lv(&[3, 0])]
        );
        assert_eq!(normalized_volume(&par).unwrap(), BigInt::from(6));
    }

    fn point_set(dim: usize) -> impl Strategy<Value = Vec<LatticeVector>> {
        proptest::collection::vec(proptest::collection::vec(0i64..=6, dim), 1..8)
            .prop_map(|v| v.iter().map(|p| LatticeVector(to_big(p))).collect())
    }

    proptest! {
        #[test]
        fn hull_contains_inputs(pts in (1usize..4).prop_flat_map(point_set)) {
            let p = convex_hull(&pts).unwrap();
            // vertices are a subset of the inputs and the hull of the vertices is the same
            for v in p.vertices() {
                prop_assert!(pts.contains(v));
            }
            let again = convex_hull(p.vertices()).unwrap();
            prop_assert_eq!(again.vertices(), p.vertices());
            prop_assert_eq!(normalized_volume(&again).unwrap(), normalized_volume(&p).unwrap());
        }

        #[test]
        fn volume_translation_and_basis_change(pts in point_set(2), t in proptest::collection::vec(-5i64..=5, 2), k in -3i64..=3) {
            let p = convex_hull(&pts).unwrap();
            let v = normalized_volume(&p).unwrap();
            prop_assert_eq!(normalized_volume(&p.translate(&LatticeVector(to_big(&t)))).unwrap(), v.clone());
            if p.affine_dim() == 2 {
                // unimodular change of basis of the reference lattice
                let b = IntMatrix::from_i64(&[&[1, k], &[0, 1]]);
                let q = p.clone().with_lattice(b).unwrap();
                prop_assert_eq!(normalized_volume(&q).unwrap(), v);
            }
        }

        #[test]
        fn minkowski_associative(a in point_set(2), b in point_set(2), c in point_set(2)) {
            let (a, b, c) = (convex_hull(&a).unwrap(), convex_hull(&b).unwrap(), convex_hull(&c).unwrap());
            let left = minkowski_sum(&minkowski_sum(&a, &b).unwrap(), &c).unwrap();
            let right = minkowski_sum(&a, &minkowski_sum(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left.vertices(), right.vertices());
        }
    }
}
