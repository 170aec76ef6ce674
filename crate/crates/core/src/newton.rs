//! Newton polygons Γ₊(f) = conv(supp f) + σ̌ restricted to faces of σ̌.
//!
//! Nothing unbounded is ever built. On a face Δ the restriction is
//! conv(supp f ∩ Δ) + Δ, and its compact facets are exactly the facets of
//! conv(supp f ∩ Δ) whose inner normal lies in Int(Δ̌). All of this happens in
//! coordinates of the face lattice M ∩ 𝕃(Δ).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cones::{polar_of_face, Cone, Face, FaceId, PolarCone};
use crate::error::{Result, ToricError};
use crate::exact_linalg::{
    dot, fmt_vec, integer_kernel, vec_add, DualVector, IntMatrix, LatticeVector,
};
use crate::polytopes::{affine_frame, convex_hull, convex_hull_in, hull, LatticePolytope};

/// A polynomial on X_σ: exponents in σ̌ ∩ M with exact nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricFunction {
    pub name: String,
    terms: BTreeMap<LatticeVector, BigRational>,
    generic_linear: bool,
}

impl ToricFunction {
    /// Repeated exponents are summed; a zero exponent or a zero coefficient is rejected.
    pub fn new(name: &str, terms: Vec<(LatticeVector, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<LatticeVector, BigRational> = BTreeMap::new();
        let width = terms.first().map(|(e, _)| e.len());
        for (e, c) in terms {
            if Some(e.len()) != width {
                return Err(ToricError::DimensionMismatch {
                    expected: width.unwrap_or(0),
                    found: e.len(),
                });
            }
            if e.is_zero() {
                return Err(ToricError::ZeroExponent {
                    function: name.to_string(),
                });
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        if let Some((e, _)) = map.iter().find(|(_, c)| c.is_zero()) {
            return Err(ToricError::ZeroCoefficient {
                function: name.to_string(),
                exponent: e.to_string(),
            });
        }
        Ok(ToricFunction {
            name: name.to_string(),
            terms: map,
            generic_linear: false,
        })
    }

    /// Integer-coefficient shorthand, mostly for tests.
    pub fn from_i64(name: &str, terms: &[(&[i64], i64)]) -> Result<Self> {
        ToricFunction::new(
            name,
            terms
                .iter()
                .map(|(e, c)| (LatticeVector::from_i64(e), BigRational::from_integer(BigInt::from(*c))))
                .collect(),
        )
    }

    /// A generic linear form: one term per semigroup generator.
    ///
    /// Without explicit generators this only works on a unimodular cone, where
    /// the rays of σ̌ generate S_σ. Coefficients are placeholders; every formula
    /// downstream reads supports only.
    pub fn generic_linear(name: &str, cone: &Cone, semigroup_generators: Option<&[LatticeVector]>) -> Result<Self> {
        let gens: Vec<LatticeVector> = match semigroup_generators {
            Some(g) if !g.is_empty() => g.to_vec(),
            _ if cone.is_unimodular() => cone.generators().to_vec(),
            _ => return Err(ToricError::GenericLinearNeedsGenerators),
        };
        let terms = gens
            .into_iter()
            .enumerate()
            .map(|(i, g)| (g, BigRational::from_integer(BigInt::from(i as i64 + 1))))
            .collect();
        let mut f = ToricFunction::new(name, terms)?;
        f.check_in_cone(cone)?;
        f.generic_linear = true;
        Ok(f)
    }

    pub fn is_generic_linear(&self) -> bool {
        self.generic_linear
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, BigRational> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticeVector> {
        self.terms.keys()
    }

    /// Fails with the first exponent outside σ̌.
    pub fn check_in_cone(&self, cone: &Cone) -> Result<()> {
        for e in self.terms.keys() {
            if e.len() != cone.ambient_rank() {
                return Err(ToricError::DimensionMismatch {
                    expected: cone.ambient_rank(),
                    found: e.len(),
                });
            }
            if !cone.contains(e) {
                return Err(ToricError::SupportOutsideCone {
                    function: self.name.clone(),
                    exponent: e.to_string(),
                });
            }
        }
        Ok(())
    }

    /// supp f ∩ Δ.
    pub fn support_on(&self, face: &Face) -> Vec<&LatticeVector> {
        self.terms.keys().filter(|e| face.contains(e)).collect()
    }

    /// Γ₊(f) ∩ Δ ≠ ∅; equivalent to supp f ∩ Δ ≠ ∅.
    pub fn meets(&self, face: &Face) -> bool {
        self.terms.keys().any(|e| face.contains(e))
    }

    fn sub_function(&self, name: String, keep: impl Fn(&LatticeVector) -> bool) -> ToricFunction {
        ToricFunction {
            name,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            generic_linear: false,
        }
    }

    /// Adds the terms of `other` (used for family members).
    pub fn plus(&self, other: &ToricFunction, name: &str) -> Result<ToricFunction> {
        let mut terms: Vec<(LatticeVector, BigRational)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.extend(other.terms.iter().map(|(e, c)| (e.clone(), c.clone())));
        ToricFunction::new(name, terms)
    }

    /// Local coordinates of supp f ∩ Δ, sorted and deduplicated.
    fn local_support(&self, face: &Face) -> Vec<Vec<BigInt>> {
        let mut pts: Vec<Vec<BigInt>> = self
            .support_on(face)
            .into_iter()
            .map(|e| face.local_coords(&e.0).expect("support on the face lies in its lattice"))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

impl fmt::Display for ToricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generic_linear {
            return write!(f, "generic linear form on {} generators", self.terms.len());
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if c.is_one() {
                    format!("x^{}", e)
                } else {
                    format!("{}*x^{}", c, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A compact facet of Γ₊(f) ∩ Δ of dimension dim Δ − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactFacet {
    /// The facet as a polytope in M, normalized against its direction lattice.
    pub facet: LatticePolytope,
    /// Its vertices in face-lattice coordinates.
    pub local_vertices: Vec<Vec<BigInt>>,
    /// Primitive inner normal in the dual of the face lattice.
    pub normal: DualVector,
    /// Minimum of the normal on Γ₊(f) ∩ Δ.
    pub level: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedNewtonData {
    pub face: FaceId,
    pub face_dim: usize,
    pub compact_facets: Vec<CompactFacet>,
}

fn miss(name: &str, face: &Face) -> ToricError {
    ToricError::PolygonMissesFace {
        function: name.to_string(),
        face: face.id.clone(),
    }
}

/// Vertices of conv(points) in `Z^k` (points sorted, deduplicated).
fn hull_vertices(points: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let frame = affine_frame(points, k).expect("consistent widths");
    if frame.dim == 0 {
        return vec![points[0].clone()];
    }
    let h = hull::full_hull(&frame.local, frame.dim);
    let mut v: Vec<Vec<BigInt>> = h.vertices.iter().map(|&i| points[i].clone()).collect();
    v.sort();
    v
}

/// Compact (k−1)-faces of conv(points) + Δ, as (vertices, inner normal, level).
fn compact_facets_local(points: &[Vec<BigInt>], polar: &PolarCone) -> Vec<(Vec<Vec<BigInt>>, DualVector, BigInt)> {
    let k = polar.rank;
    let frame = affine_frame(points, k).expect("consistent widths");
    let mut out = Vec::new();
    if frame.dim == k {
        let h = hull::full_hull(points, k);
        for f in h.facets {
            let u = DualVector(f.normal.iter().map(|x| -x).collect());
            if polar.contains_interior(&u) {
                let mut verts: Vec<Vec<BigInt>> = f.points.iter().map(|&i| points[i].clone()).collect();
                verts.sort();
                out.push((verts, u, -f.offset));
            }
        }
    } else if frame.dim + 1 == k {
        let diffs: Vec<Vec<BigInt>> = frame.lattice.row_vecs();
        let n = if diffs.is_empty() {
            // k = 1 and a single point
            vec![BigInt::one()]
        } else {
            let m = IntMatrix::from_rows(&diffs, k).expect("widths");
            integer_kernel(&m).row(0).to_vec()
        };
        let verts = hull_vertices(points, k);
        for sign in [1i64, -1] {
            let u = DualVector(n.iter().map(|x| x * sign).collect());
            if polar.contains_interior(&u) {
                let level = dot(&u.0, &verts[0]);
                out.push((verts.clone(), u, level));
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

fn lift_polytope(face: &Face, local: &[Vec<BigInt>]) -> Result<LatticePolytope> {
    let pts: Vec<LatticeVector> = local.iter().map(|c| LatticeVector(face.lift(c))).collect();
    convex_hull(&pts)
}

/// Compact facets of Γ₊(f) ∩ Δ of dimension dim Δ − 1 with their normals and levels.
pub fn newton_restriction(f: &ToricFunction, c: &Cone, face: &Face) -> Result<RestrictedNewtonData> {
    let pts = f.local_support(face);
    if pts.is_empty() {
        return Err(miss(&f.name, face));
    }
    let polar = polar_of_face(c, face);
    let facets = compact_facets_local(&pts, &polar)
        .into_iter()
        .map(|(verts, normal, level)| {
            Ok(CompactFacet {
                facet: lift_polytope(face, &verts)?,
                local_vertices: verts,
                normal,
                level,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RestrictedNewtonData {
        face: face.id.clone(),
        face_dim: face.dim,
        compact_facets: facets,
    })
}

/// Γ_i^Δ = conv(facet ∪ {0}), normalized against the face lattice.
pub fn cone_over_facet(facet: &LatticePolytope, face_lattice: &IntMatrix) -> Result<LatticePolytope> {
    let rows: Vec<Vec<BigInt>> = facet.vertices().iter().map(|v| v.0.clone()).collect();
    if crate::exact_linalg::rank_of(&rows) != facet.affine_dim() + 1 {
        return Err(ToricError::OriginInAffineHull);
    }
    let mut pts = facet.vertices().to_vec();
    pts.push(LatticeVector(vec![BigInt::zero(); facet.ambient_rank()]));
    convex_hull_in(&pts, face_lattice.clone())
}

/// The minimizing face of ⟨u,·⟩ on Γ₊(f) ∩ Δ and the matching u-part of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportingFace {
    /// conv of the minimizing support points (the whole face when `bounded`).
    pub polytope: LatticePolytope,
    pub u_part: ToricFunction,
    pub level: BigInt,
    /// False when u is on the boundary of Δ̌; the supporting face then also
    /// contains the recession directions Δ ∩ u^⊥.
    pub bounded: bool,
}

/// Supporting face Γ(f|_Δ; u) for `u` (face-lattice dual coordinates) in Δ̌.
pub fn supporting_face(f: &ToricFunction, c: &Cone, face: &Face, u: &DualVector) -> Result<SupportingFace> {
    let polar = polar_of_face(c, face);
    if !polar.contains(u) {
        return Err(ToricError::NotInPolar {
            functional: u.to_string(),
            face: face.id.clone(),
        });
    }
    let on_face = f.support_on(face);
    if on_face.is_empty() {
        return Err(miss(&f.name, face));
    }
    let value = |e: &LatticeVector| dot(&u.0, &face.local_coords(&e.0).expect("on face"));
    let level = on_face.iter().map(|e| value(e)).min().expect("nonempty");
    let minimizers: Vec<LatticeVector> = on_face.iter().filter(|e| value(e) == level).map(|e| (*e).clone()).collect();
    let u_part = f.sub_function(format!("{}^u", f.name), |e| face.contains(e) && value(e) == level);
    Ok(SupportingFace {
        polytope: convex_hull(&minimizers)?,
        u_part,
        level,
        bounded: polar.contains_interior(u),
    })
}

/// min over Γ₊(f_k) ∩ Δ of ⟨u,·⟩, for u ∈ Int(Δ̌).
pub fn d_min(f_k: &ToricFunction, c: &Cone, face: &Face, u: &DualVector) -> Result<BigInt> {
    let polar = polar_of_face(c, face);
    if !polar.contains_interior(u) {
        return Err(ToricError::NotInPolarInterior {
            functional: u.to_string(),
            face: face.id.clone(),
        });
    }
    let pts = f_k.local_support(face);
    pts.iter()
        .map(|p| dot(&u.0, p))
        .min()
        .ok_or_else(|| miss(&f_k.name, face))
}

/// Supporting face of one Minkowski summand along a facet normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandFace {
    pub function: String,
    pub local_vertices: Vec<Vec<BigInt>>,
    pub level: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFacet {
    pub facet: CompactFacet,
    /// One entry per function of I(Δ) in input order, then f_k.
    pub summands: Vec<SummandFace>,
    /// d_i^Δ: the level of the f_k summand.
    pub d: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductNewtonData {
    pub face: FaceId,
    pub face_dim: usize,
    /// Names of I(Δ) in input order.
    pub involved_priors: Vec<String>,
    pub facets: Vec<ProductFacet>,
}

impl ProductNewtonData {
    /// m(Δ) = #I(Δ) + 1.
    pub fn m(&self) -> usize {
        self.involved_priors.len() + 1
    }
}

/// Facets of Γ₊(f_Δ) ∩ Δ for f_Δ = (∏_{j ∈ I(Δ)} f_j)·f_k with their summand faces.
pub fn product_polygon(priors: &[ToricFunction], f_k: &ToricFunction, c: &Cone, face: &Face) -> Result<ProductNewtonData> {
    let k_pts = f_k.local_support(face);
    if k_pts.is_empty() {
        return Err(miss(&f_k.name, face));
    }
    let involved: Vec<&ToricFunction> = priors.iter().filter(|g| g.meets(face)).collect();
    let mut summands: Vec<(String, Vec<Vec<BigInt>>)> = involved
        .iter()
        .map(|g| (g.name.clone(), hull_vertices(&g.local_support(face), face.dim)))
        .collect();
    summands.push((f_k.name.clone(), hull_vertices(&k_pts, face.dim)));

    let mut sum: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); face.dim]];
    for (_, pts) in &summands {
        let mut next: Vec<Vec<BigInt>> = sum.iter().flat_map(|a| pts.iter().map(move |b| vec_add(a, b))).collect();
        next.sort();
        next.dedup();
        sum = hull_vertices(&next, face.dim);
    }

    let polar = polar_of_face(c, face);
    let facets = compact_facets_local(&sum, &polar)
        .into_iter()
        .map(|(verts, normal, level)| {
            let parts: Vec<SummandFace> = summands
                .iter()
                .map(|(name, pts)| {
                    let lv = pts.iter().map(|p| dot(&normal.0, p)).min().expect("nonempty");
                    SummandFace {
                        function: name.clone(),
                        local_vertices: pts.iter().filter(|p| dot(&normal.0, p) == lv).cloned().collect(),
                        level: lv,
                    }
                })
                .collect();
            let d = parts.last().expect("f_k summand").level.clone();
            Ok(ProductFacet {
                facet: CompactFacet {
                    facet: lift_polytope(face, &verts)?,
                    local_vertices: verts,
                    normal,
                    level,
                },
                summands: parts,
                d,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ProductNewtonData {
        face: face.id.clone(),
        face_dim: face.dim,
        involved_priors: involved.iter().map(|g| g.name.clone()).collect(),
        facets,
    })
}

/// Short human form of a local vertex list.
pub fn fmt_points(points: &[Vec<BigInt>]) -> String {
    let parts: Vec<String> = points.iter().map(|p| fmt_vec(p)).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::enumerate_faces;
    use crate::exact_linalg::to_big;
    use proptest::prelude::*;

    fn face(c: &Cone, ids: &[usize]) -> Face {
        c.face(&FaceId(ids.to_vec())).unwrap()
    }

    fn cusp() -> ToricFunction {
        ToricFunction::from_i64("f", &[(&[2, 0], 1), (&[0, 3], 1)]).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let c = Cone::octant(2).unwrap();
        let full = newton_restriction(&cusp(), &c, &face(&c, &[0, 1])).unwrap();
        assert_eq!(full.compact_facets.len(), 1);
        let f = &full.compact_facets[0];
        assert_eq!(f.normal, DualVector::from_i64(&[3, 2]));
        assert_eq!(f.level, BigInt::from(6));
        assert_eq!(f.local_vertices, vec![to_big(&[0, 3]), to_big(&[2, 0])]);

        let ray = newton_restriction(&cusp(), &c, &face(&c, &[0])).unwrap();
        assert_eq!(ray.compact_facets.len(), 1);
        assert_eq!(ray.compact_facets[0].normal, DualVector::from_i64(&[1]));
        assert_eq!(ray.compact_facets[0].level, BigInt::from(2));

        let c3 = Cone::octant(3).unwrap();
        let sph = ToricFunction::from_i64("f", &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]).unwrap();
        let r = newton_restriction(&sph, &c3, &face(&c3, &[0, 1, 2])).unwrap();
        assert_eq!(r.compact_facets.len(), 1);
        assert_eq!(r.compact_facets[0].normal, DualVector::from_i64(&[1, 1, 1]));
        assert_eq!(r.compact_facets[0].level, BigInt::from(2));
    }

    #[test]
    fn missing_face_is_an_error() {
        let c = Cone::octant(2).unwrap();
        let x = ToricFunction::from_i64("g", &[(&[1, 0], 1)]).unwrap();
        let err = newton_restriction(&x, &c, &face(&c, &[1])).unwrap_err();
        assert!(err.to_string().contains("function's polygon misses this face"));
    }

    #[test]
    fn cone_over_facet_examples() {
        let c = Cone::octant(2).unwrap();
        let full = face(&c, &[0, 1]);
        let r = newton_restriction(&cusp(), &c, &full).unwrap();
        let g = cone_over_facet(&r.compact_facets[0].facet, &full.span_basis).unwrap();
        assert_eq!(
            g.vertices(),
            &[LatticeVector::from_i64(&[0, 0]), LatticeVector::from_i64(&[0, 3]), LatticeVector::from_i64(&[2, 0])]
        );
        let ray = face(&c, &[0]);
        let r = newton_restriction(&cusp(), &c, &ray).unwrap();
        let g = cone_over_facet(&r.compact_facets[0].facet, &ray.span_basis).unwrap();
        assert_eq!(g.vertices(), &[LatticeVector::from_i64(&[0, 0]), LatticeVector::from_i64(&[2, 0])]);
        let through_zero = convex_hull(&[LatticeVector::from_i64(&[-1, 1]), LatticeVector::from_i64(&[1, -1])]).unwrap();
        assert_eq!(
            cone_over_facet(&through_zero, &IntMatrix::identity(2)),
            Err(ToricError::OriginInAffineHull)
        );
    }

    #[test]
    fn supporting_face_examples() {
        let c = Cone::octant(2).unwrap();
        let full = face(&c, &[0, 1]);
        let s = supporting_face(&cusp(), &c, &full, &DualVector::from_i64(&[1, 1])).unwrap();
        assert_eq!(s.polytope.vertices(), &[LatticeVector::from_i64(&[2, 0])]);
        assert_eq!(s.u_part.terms().len(), 1);
        let s = supporting_face(&cusp(), &c, &full, &DualVector::from_i64(&[3, 2])).unwrap();
        assert_eq!(s.u_part.terms().len(), 2);
        assert_eq!(s.level, BigInt::from(6));
        let s = supporting_face(&cusp(), &c, &full, &DualVector::from_i64(&[0, 0])).unwrap();
        assert_eq!(s.u_part.terms().len(), 2);
        assert!(!s.bounded);
        assert!(matches!(
            supporting_face(&cusp(), &c, &full, &DualVector::from_i64(&[-1, 1])),
            Err(ToricError::NotInPolar { .. })
        ));
    }

    #[test]
    fn d_min_examples() {
        let c = Cone::octant(2).unwrap();
        let full = face(&c, &[0, 1]);
        assert_eq!(d_min(&cusp(), &c, &full, &DualVector::from_i64(&[3, 2])).unwrap(), BigInt::from(6));
        assert_eq!(d_min(&cusp(), &c, &full, &DualVector::from_i64(&[1, 1])).unwrap(), BigInt::from(2));
        let ray = face(&c, &[0]);
        let xa = ToricFunction::from_i64("f", &[(&[5, 0], 1)]).unwrap();
        assert_eq!(d_min(&xa, &c, &ray, &DualVector::from_i64(&[1])).unwrap(), BigInt::from(5));
    }

    #[test]
    fn product_polygon_cusp_times_line() {
        let c = Cone::octant(2).unwrap();
        let full = face(&c, &[0, 1]);
        let g = ToricFunction::from_i64("g", &[(&[0, 2], 1), (&[3, 0], -1)]).unwrap();
        let l = ToricFunction::from_i64("l", &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        let p = product_polygon(std::slice::from_ref(&g), &l, &c, &full).unwrap();
        assert_eq!(p.m(), 2);
        let normals: Vec<DualVector> = p.facets.iter().map(|f| f.facet.normal.clone()).collect();
        assert_eq!(normals, vec![DualVector::from_i64(&[1, 1]), DualVector::from_i64(&[2, 3])]);
        for f in &p.facets {
            // γ_i = γ(g)_i + γ(l)_i vertexwise
            let mut sum: Vec<Vec<BigInt>> = f.summands[0]
                .local_vertices
                .iter()
                .flat_map(|a| f.summands[1].local_vertices.iter().map(move |b| vec_add(a, b)))
                .collect();
            sum.sort();
            sum.dedup();
            assert_eq!(hull_vertices(&sum, 2), f.facet.local_vertices);
        }
        let ds: Vec<BigInt> = p.facets.iter().map(|f| f.d.clone()).collect();
        assert_eq!(ds, vec![BigInt::from(1), BigInt::from(2)]);

        let alone = product_polygon(&[], &cusp(), &c, &full).unwrap();
        let direct = newton_restriction(&cusp(), &c, &full).unwrap();
        assert_eq!(alone.facets.len(), direct.compact_facets.len());
        assert_eq!(alone.facets[0].facet, direct.compact_facets[0]);
    }

    #[test]
    fn two_monomials_have_no_facets_in_the_plane() {
        let c = Cone::octant(3).unwrap();
        let full = face(&c, &[0, 1, 2]);
        let f = ToricFunction::from_i64("f", &[(&[2, 0, 0], 1), (&[0, 0, 3], 1)]).unwrap();
        assert!(newton_restriction(&f, &c, &full).unwrap().compact_facets.is_empty());
    }

    #[test]
    fn generic_linear_needs_generators_off_smooth_cones() {
        let a1 = crate::cones::dual_cone(&[LatticeVector::from_i64(&[0, 1]), LatticeVector::from_i64(&[2, 1])], 2).unwrap();
        assert_eq!(
            ToricFunction::generic_linear("l", &a1, None),
            Err(ToricError::GenericLinearNeedsGenerators)
        );
        let gens = [
            LatticeVector::from_i64(&[0, 1]),
            LatticeVector::from_i64(&[1, 1]),
            LatticeVector::from_i64(&[2, 1]),
        ];
        assert_eq!(ToricFunction::generic_linear("l", &a1, Some(&gens)).unwrap().terms().len(), 3);
    }

    fn support(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(0i64..=5, dim), 1..6)
            .prop_filter("nonzero exponents", |v| v.iter().all(|e| e.iter().any(|x| *x != 0)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn facets_are_their_own_supporting_faces(sup in (2usize..4).prop_flat_map(support)) {
            let d = sup[0].len();
            let c = Cone::octant(d).unwrap();
            let terms: Vec<(&[i64], i64)> = sup.iter().map(|e| (e.as_slice(), 1)).collect();
            let f = ToricFunction::from_i64("f", &terms).unwrap();
            for face in enumerate_faces(&c) {
                if !f.meets(&face) {
                    let missed = matches!(newton_restriction(&f, &c, &face), Err(ToricError::PolygonMissesFace { .. }));
                    prop_assert!(missed);
                    continue;
                }
                let r = newton_restriction(&f, &c, &face).unwrap();
                let polar = polar_of_face(&c, &face);
                for cf in &r.compact_facets {
                    prop_assert!(polar.contains_interior(&cf.normal));
                    prop_assert_eq!(crate::exact_linalg::vec_gcd(&cf.normal.0), BigInt::one());
                    prop_assert_eq!(cf.facet.affine_dim() + 1, face.dim);
                    let s = supporting_face(&f, &c, &face, &cf.normal).unwrap();
                    prop_assert_eq!(s.polytope.vertices(), cf.facet.vertices());
                    prop_assert_eq!(&s.level, &cf.level);
                }
            }
        }
    }
}
