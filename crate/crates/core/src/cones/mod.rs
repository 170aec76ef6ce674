//! Rational polyhedral cones, their faces and the orbit data attached to faces.
//!
//! A [`Cone`] stores the extreme rays of σ̌ in M and of σ in N. Faces of σ̌ are
//! named by the set of σ̌-generators they contain; that set is the stable
//! identifier used in reports and Euler obstruction tables.

pub mod dd;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::exact_linalg::{
    dot, primitive, rank_of, saturated_basis, smith_normal_form, DualVector, IntMatrix, LatticeBasis,
    LatticeVector,
};

/// Canonical face identifier: sorted 0-based indices of the σ̌-generators on the face.
///
/// Displayed 1-based, e.g. `{1,3}`; the zero face is `{}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FaceId(pub Vec<usize>);

impl FaceId {
    pub fn new(mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        FaceId(idx)
    }

    pub fn origin() -> Self {
        FaceId(Vec::new())
    }

    pub fn is_origin(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Name used inside Euler obstruction symbols: `origin` or `face{1,3}`.
    pub fn label(&self) -> String {
        if self.is_origin() {
            "origin".to_string()
        } else {
            format!("face{}", self)
        }
    }

    pub fn is_subset(&self, other: &FaceId) -> bool {
        self.0.iter().all(|i| other.0.binary_search(i).is_ok())
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for FaceId {
    type Err = ToricError;

    /// Accepts `{1,3}`, `face{1,3}`, `1,3`, `{}` and `origin` (indices are 1-based).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "origin" || t == "0" {
            return Ok(FaceId::origin());
        }
        let t = t.strip_prefix("face").unwrap_or(t).trim();
        let t = t.strip_prefix('{').unwrap_or(t);
        let t = t.strip_suffix('}').unwrap_or(t);
        let mut idx = Vec::new();
        for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let k: usize = part
                .parse()
                .map_err(|_| ToricError::UnknownFace(s.to_string()))?;
            if k == 0 {
                return Err(ToricError::UnknownFace(s.to_string()));
            }
            idx.push(k - 1);
        }
        Ok(FaceId::new(idx))
    }
}

/// A strongly convex rational polyhedral cone σ, stored through σ̌.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_rank: usize,
    generators: Vec<LatticeVector>,
    dual_generators: Vec<DualVector>,
}

/// Builds the cone whose dual σ̌ is generated by `generators_of_sigma_check`.
///
/// Generators are made primitive, duplicates and non-extreme ones are dropped;
/// the surviving generators keep their input order.
pub fn dual_cone(generators_of_sigma_check: &[LatticeVector], rank: usize) -> Result<Cone> {
    if rank == 0 {
        return Err(ToricError::ZeroRank);
    }
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for g in generators_of_sigma_check {
        if g.len() != rank {
            return Err(ToricError::DimensionMismatch {
                expected: rank,
                found: g.len(),
            });
        }
        if g.is_zero() {
            continue;
        }
        let p = primitive(&g.0);
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
    if dd::ConeHrep::new(&gens, rank).is_none() {
        return Err(ToricError::ContainsLine);
    }
    let r = rank_of(&gens);
    if r < rank {
        return Err(ToricError::NotFullDimensional { rank: r, expected: rank });
    }
    let sigma = dd::extreme_rays(&gens, rank);
    // a generator is extreme iff the σ-rays vanishing on it span a hyperplane
    let extreme: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| {
            let zeros: Vec<Vec<BigInt>> = sigma.iter().filter(|s| dot(s, g).is_zero()).cloned().collect();
            rank_of(&zeros) == rank - 1
        })
        .cloned()
        .collect();
    Ok(Cone {
        ambient_rank: rank,
        generators: extreme.into_iter().map(LatticeVector).collect(),
        dual_generators: sigma.into_iter().map(DualVector).collect(),
    })
}

/// Builds the cone from generators of σ in N; σ̌ generators come out sorted.
pub fn cone_from_sigma(generators_of_sigma: &[DualVector], rank: usize) -> Result<Cone> {
    let as_m: Vec<LatticeVector> = generators_of_sigma.iter().map(|v| LatticeVector(v.0.clone())).collect();
    let swapped = dual_cone(&as_m, rank)?;
    let check: Vec<LatticeVector> = swapped
        .dual_generators
        .iter()
        .map(|v| LatticeVector(v.0.clone()))
        .collect();
    dual_cone(&check, rank)
}

impl Cone {
    /// The standard octant in rank `n`, the cone of Cⁿ.
    pub fn octant(n: usize) -> Result<Cone> {
        let gens: Vec<LatticeVector> = (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::one();
                LatticeVector(v)
            })
            .collect();
        dual_cone(&gens, n)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Extreme rays of σ̌ in M.
    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Extreme rays of σ in N.
    pub fn dual_generators(&self) -> &[DualVector] {
        &self.dual_generators
    }

    /// True when `v` lies in σ̌.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.dual_generators.iter().all(|s| !s.pair(v).is_negative())
    }

    /// True when σ̌ is generated by a basis of M (the variety is Cⁿ up to a change of coordinates).
    pub fn is_unimodular(&self) -> bool {
        if self.generators.len() != self.ambient_rank {
            return false;
        }
        let rows: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.0.clone()).collect();
        let m = IntMatrix::from_rows(&rows, self.ambient_rank).expect("rank matches");
        m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// True when σ̌ is exactly the standard octant with generators e₁, …, eₙ in order.
    pub fn is_standard_octant(&self) -> bool {
        self.generators.len() == self.ambient_rank
            && self.generators.iter().enumerate().all(|(i, g)| {
                g.0.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    fn face_from_ids(&self, ids: &BTreeSet<usize>) -> Result<Face> {
        let d = self.ambient_rank;
        let rows: Vec<Vec<BigInt>> = ids.iter().map(|&i| self.generators[i].0.clone()).collect();
        let normals: Vec<DualVector> = self
            .dual_generators
            .iter()
            .filter(|s| ids.iter().all(|&i| s.pair(&self.generators[i]).is_zero()))
            .cloned()
            .collect();
        let span = saturated_basis(&rows, d)?;
        let dim = span.rows();
        let (lattice, local_generators, polar) = if dim == 0 {
            (None, Vec::new(), Vec::new())
        } else {
            let lb = LatticeBasis::new(span.clone())?;
            let local: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    lb.coords(r)
                        .ok_or_else(|| ToricError::Internal("generator off its face lattice".into()))
                })
                .collect::<Result<_>>()?;
            let polar = dd::extreme_rays(&local, dim);
            (Some(lb), local, polar)
        };
        Ok(Face {
            id: FaceId(ids.iter().copied().collect()),
            dim,
            span_basis: span,
            defining_normals: normals,
            lattice,
            local_generators,
            polar_generators: polar.into_iter().map(DualVector).collect(),
        })
    }

    /// Looks up a face by id; fails if the index set is not the id of a face.
    pub fn face(&self, id: &FaceId) -> Result<Face> {
        enumerate_faces(self)
            .into_iter()
            .find(|f| &f.id == id)
            .ok_or_else(|| ToricError::UnknownFace(id.to_string()))
    }
}

/// A face Δ of σ̌.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub dim: usize,
    /// Basis (rows) of M ∩ 𝕃(Δ), in Hermite normal form.
    pub span_basis: IntMatrix,
    /// σ-rays vanishing on Δ; they generate the face of σ dual to Δ.
    pub defining_normals: Vec<DualVector>,
    lattice: Option<LatticeBasis>,
    local_generators: Vec<Vec<BigInt>>,
    polar_generators: Vec<DualVector>,
}

impl Face {
    pub fn is_origin(&self) -> bool {
        self.dim == 0
    }

    /// Coordinates of `v` in the face lattice, if `v` lies in 𝕃(Δ) ∩ M.
    pub fn local_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        match &self.lattice {
            None => v.iter().all(Zero::is_zero).then(Vec::new),
            Some(lb) => lb.coords(v),
        }
    }

    /// Maps face-lattice coordinates back to M.
    pub fn lift(&self, c: &[BigInt]) -> Vec<BigInt> {
        match &self.lattice {
            None => vec![BigInt::zero(); self.span_basis.cols()],
            Some(lb) => lb.lift(c),
        }
    }

    /// True when `v ∈ σ̌` lies on this face.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.defining_normals.iter().all(|n| n.pair(v).is_zero())
    }

    /// The face's σ̌-generators in face-lattice coordinates.
    pub fn local_generators(&self) -> &[Vec<BigInt>] {
        &self.local_generators
    }
}

/// The polar cone Δ̌ ⊂ 𝕃(Δ)* in coordinates dual to the face's span basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarCone {
    pub face: FaceId,
    pub rank: usize,
    pub generators: Vec<DualVector>,
    /// Set for the zero face, whose polar lives in the zero space.
    pub trivial: bool,
    local_generators: Vec<Vec<BigInt>>,
}

impl PolarCone {
    /// u ∈ Δ̌.
    pub fn contains(&self, u: &DualVector) -> bool {
        u.len() == self.rank && self.local_generators.iter().all(|w| !dot(&u.0, w).is_negative())
    }

    /// u ∈ Int(Δ̌): strictly positive on every generator of Δ.
    pub fn contains_interior(&self, u: &DualVector) -> bool {
        u.len() == self.rank && self.local_generators.iter().all(|w| dot(&u.0, w).is_positive())
    }
}

/// All faces of σ̌, sorted by dimension and then by id.
pub fn enumerate_faces(c: &Cone) -> Vec<Face> {
    let all: BTreeSet<usize> = (0..c.generators.len()).collect();
    let facets: Vec<BTreeSet<usize>> = c
        .dual_generators
        .iter()
        .map(|s| {
            (0..c.generators.len())
                .filter(|&i| s.pair(&c.generators[i]).is_zero())
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = vec![all.clone()];
    seen.insert(all);
    while let Some(f) = queue.pop() {
        for h in &facets {
            let x: BTreeSet<usize> = f.intersection(h).copied().collect();
            if seen.insert(x.clone()) {
                queue.push(x);
            }
        }
    }
    let mut faces: Vec<Face> = seen
        .iter()
        .map(|ids| c.face_from_ids(ids).expect("face of a valid cone"))
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.id.cmp(&b.id)));
    faces
}

/// Δ̌ for a face Δ, in coordinates of the dual basis of `f.span_basis`.
pub fn polar_of_face(_c: &Cone, f: &Face) -> PolarCone {
    PolarCone {
        face: f.id.clone(),
        rank: f.dim,
        generators: f.polar_generators.clone(),
        trivial: f.dim == 0,
        local_generators: f.local_generators.clone(),
    }
}

/// True iff the face of σ dual to Δ is generated by part of a basis of N.
pub fn smooth_along_orbit(_c: &Cone, f: &Face) -> bool {
    let k = f.defining_normals.len();
    if k == 0 {
        return true;
    }
    let rows: Vec<Vec<BigInt>> = f.defining_normals.iter().map(|n| n.0.clone()).collect();
    if rank_of(&rows) != k {
        return false;
    }
    let m = IntMatrix::from_rows(&rows, f.span_basis.cols()).expect("normal widths match");
    smith_normal_form(&m).invariant_factors().iter().all(One::is_one)
}

/// Face lookup table keyed by id.
pub fn face_map(c: &Cone) -> BTreeMap<FaceId, Face> {
    enumerate_faces(c).into_iter().map(|f| (f.id.clone(), f)).collect()
}
