//! Orbit Euler characteristics, Brasselet numbers and stratified Morse counts.
//!
//! Euler obstruction values are data. A table is filled with 1 on orbits that
//! are provably smooth and with user values elsewhere; whatever is still
//! unknown stays symbolic, so every total is an [`EuExpr`], a linear form in
//! the unknown obstruction values. When the unknowns cancel or are all
//! supplied, the result is a plain integer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cones::{enumerate_faces, smooth_along_orbit, Cone, Face, FaceId};
use crate::error::{Result, ToricError};
use crate::exact_linalg::{integer_kernel, DualVector, IntMatrix, LatticeVector};
use crate::newton::{cone_over_facet, newton_restriction, product_polygon, ProductFacet, ToricFunction};
use crate::polytopes::{convex_hull, mixed_volume, normalized_volume};

const MINUS: &str = "\u{2212}";

/// Which variety an Euler obstruction table describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variety {
    /// X_σ itself.
    Ambient,
    /// X_σ ∩ {f_1 = … = f_r = 0}; with one function this is X_σ^g.
    Cut(Vec<ToricFunction>),
}

impl Variety {
    pub fn label(&self) -> &'static str {
        match self {
            Variety::Ambient => "X",
            Variety::Cut(_) => "Xg",
        }
    }
}

/// The unknown Eu_{variety}(T_Δ).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EuSymbol {
    pub variety: String,
    pub face: FaceId,
}

impl fmt::Display for EuSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Eu_{}({})", self.variety, self.face.label())
    }
}

/// `constant + Σ coeff · symbol`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EuExpr {
    pub constant: BigInt,
    pub terms: BTreeMap<EuSymbol, BigInt>,
}

impl EuExpr {
    pub fn constant(v: BigInt) -> Self {
        EuExpr {
            constant: v,
            terms: BTreeMap::new(),
        }
    }

    pub fn symbol(s: EuSymbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(s, BigInt::one());
        EuExpr {
            constant: BigInt::zero(),
            terms,
        }
    }

    pub fn add(&self, other: &EuExpr) -> EuExpr {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (s, c) in &other.terms {
            *out.terms.entry(s.clone()).or_insert_with(BigInt::zero) += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, k: &BigInt) -> EuExpr {
        let mut out = EuExpr {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * k)).collect(),
        };
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sub(&self, other: &EuExpr) -> EuExpr {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn value(&self) -> Option<&BigInt> {
        self.terms.is_empty().then_some(&self.constant)
    }

    pub fn unknowns(&self) -> Vec<&EuSymbol> {
        self.terms.keys().collect()
    }
}

impl fmt::Display for EuExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut push = |coeff: &BigInt, body: Option<String>| {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            let text = match body {
                Some(b) if mag.is_one() => b,
                Some(b) => format!("{}\u{b7}{}", mag, b),
                None => mag.to_string(),
            };
            if out.is_empty() {
                if neg {
                    out.push_str(MINUS);
                }
            } else {
                out.push_str(if neg { " \u{2212} " } else { " + " });
            }
            out.push_str(&text);
        };
        for (s, c) in &self.terms {
            push(c, Some(s.to_string()));
        }
        if !self.constant.is_zero() || self.terms.is_empty() {
            push(&self.constant, None);
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    DefaultSmooth,
    User,
    Unknown,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::DefaultSmooth => "default-smooth",
            Provenance::User => "user",
            Provenance::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuEntry {
    pub value: Option<BigInt>,
    pub provenance: Provenance,
}

/// Face-indexed Euler obstruction values of one variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuTable {
    pub variety: String,
    pub entries: BTreeMap<FaceId, EuEntry>,
}

impl EuTable {
    /// Value or symbol for a face; `None` when the table has no entry at all.
    pub fn expr(&self, face: &FaceId) -> Option<EuExpr> {
        let e = self.entries.get(face)?;
        Some(match &e.value {
            Some(v) => EuExpr::constant(v.clone()),
            None => EuExpr::symbol(EuSymbol {
                variety: self.variety.clone(),
                face: face.clone(),
            }),
        })
    }

    /// Fails with the full list of faces that have no entry.
    pub fn require(&self, faces: &[FaceId]) -> Result<()> {
        let missing: Vec<FaceId> = faces.iter().filter(|f| !self.entries.contains_key(f)).cloned().collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(ToricError::MissingEu {
                variety: self.variety.clone(),
                faces: missing,
            })
        }
    }

    fn get(&self, face: &FaceId) -> Result<EuExpr> {
        self.expr(face).ok_or_else(|| ToricError::MissingEu {
            variety: self.variety.clone(),
            faces: vec![face.clone()],
        })
    }
}

/// Fills a table: 1 on orbits the variety is provably smooth along, user
/// values elsewhere, unknown otherwise. A user value other than 1 on a smooth
/// orbit is rejected.
///
/// For a cut variety the smooth orbits are the smooth ambient orbits met by
/// every cutting function; the origin also counts when the cone is unimodular
/// and a single cutting function has a linear term.
pub fn resolve_eu_table(c: &Cone, user_entries: &BTreeMap<FaceId, BigInt>, variety: &Variety) -> Result<EuTable> {
    let faces = enumerate_faces(c);
    for id in user_entries.keys() {
        if !faces.iter().any(|f| &f.id == id) {
            return Err(ToricError::UnknownFace(id.to_string()));
        }
    }
    let label = variety.label();
    let mut entries = BTreeMap::new();
    for face in &faces {
        let smooth = match variety {
            Variety::Ambient => smooth_along_orbit(c, face),
            Variety::Cut(priors) if face.dim > 0 => smooth_along_orbit(c, face) && priors.iter().all(|g| g.meets(face)),
            Variety::Cut(priors) => {
                priors.len() == 1
                    && c.is_unimodular()
                    && priors[0].support().any(|e| c.generators().contains(e))
            }
        };
        let entry = match (smooth, user_entries.get(&face.id)) {
            (true, Some(v)) if !v.is_one() => {
                return Err(ToricError::EuConflictsWithSmooth {
                    variety: label.to_string(),
                    face: face.id.clone(),
                    value: v.to_string(),
                })
            }
            (true, Some(_)) => EuEntry {
                value: Some(BigInt::one()),
                provenance: Provenance::User,
            },
            (true, None) => EuEntry {
                value: Some(BigInt::one()),
                provenance: Provenance::DefaultSmooth,
            },
            (false, Some(v)) => EuEntry {
                value: Some(v.clone()),
                provenance: Provenance::User,
            },
            (false, None) => EuEntry {
                value: None,
                provenance: Provenance::Unknown,
            },
        };
        entries.insert(face.id.clone(), entry);
    }
    Ok(EuTable {
        variety: label.to_string(),
        entries,
    })
}

/// Nonzero faces Δ with Γ₊(g) ∩ Δ = ∅: the orbits along which g is critical.
pub fn critical_orbits(g: &ToricFunction, c: &Cone) -> Vec<Face> {
    enumerate_faces(c).into_iter().filter(|f| f.dim > 0 && !g.meets(f)).collect()
}

fn sign(exp: usize) -> BigInt {
    if exp % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// One compact facet's contribution to a face term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetTerm {
    pub normal: DualVector,
    pub vertices: Vec<LatticeVector>,
    /// Minimum of the normal on the polygon (d_i for complete intersections).
    pub level: BigInt,
    /// K_i, complete intersections only.
    pub k: Option<BigInt>,
    /// Vol_Z(Γ_i) for hypersurfaces, d_i·K_i for complete intersections.
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTerm {
    pub face: FaceId,
    pub dim: usize,
    /// m(Δ); 1 for hypersurfaces.
    pub m: usize,
    pub sign: BigInt,
    /// Σ Vol_Z(Γ_i) or Σ d_i·K_i.
    pub weight: BigInt,
    pub facets: Vec<FacetTerm>,
    pub eu: EuExpr,
    pub contribution: EuExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedFace {
    pub face: FaceId,
    pub dim: usize,
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrasseletKind {
    Hypersurface,
    CompleteIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrasseletReport {
    pub kind: BrasseletKind,
    pub function: String,
    pub priors: Vec<String>,
    pub variety: String,
    pub terms: Vec<FaceTerm>,
    /// Faces met by the function but excluded because dim Δ < m(Δ).
    pub skipped: Vec<SkippedFace>,
    pub total: EuExpr,
}

impl BrasseletReport {
    /// Sum of the per-face contributions; equals `total` by construction.
    pub fn resum(&self) -> EuExpr {
        self.terms.iter().fold(EuExpr::default(), |acc, t| acc.add(&t.contribution))
    }
}

fn hypersurface_facets(f: &ToricFunction, c: &Cone, face: &Face) -> Result<Vec<FacetTerm>> {
    let data = newton_restriction(f, c, face)?;
    data.compact_facets
        .into_iter()
        .map(|cf| {
            let gamma = cone_over_facet(&cf.facet, &face.span_basis)?;
            Ok(FacetTerm {
                normal: cf.normal,
                vertices: cf.facet.vertices().to_vec(),
                level: cf.level,
                k: None,
                value: normalized_volume(&gamma)?,
            })
        })
        .collect()
}

/// C_{f,T_Δ} = (−1)^{dim Δ − 1} Σ_i Vol_Z(Γ_i^Δ).
pub fn chi_orbit(f: &ToricFunction, c: &Cone, face: &Face) -> Result<BigInt> {
    let facets = hypersurface_facets(f, c, face)?;
    let total: BigInt = facets.iter().map(|t| &t.value).sum();
    Ok(sign(face.dim - 1) * total)
}

/// B_{f,X_σ}(0) = Σ over faces meeting Γ₊(f) of (−1)^{dim Δ − 1} (Σ Vol_Z(Γ_i^Δ)) · Eu_{X_σ}(T_Δ).
pub fn brasselet_hypersurface(f: &ToricFunction, c: &Cone, eu: &EuTable) -> Result<BrasseletReport> {
    let faces: Vec<Face> = enumerate_faces(c).into_iter().filter(|d| d.dim > 0 && f.meets(d)).collect();
    eu.require(&faces.iter().map(|d| d.id.clone()).collect::<Vec<_>>())?;
    let terms: Vec<FaceTerm> = faces
        .par_iter()
        .map(|face| {
            let facets = hypersurface_facets(f, c, face)?;
            let weight: BigInt = facets.iter().map(|t| &t.value).sum();
            let s = sign(face.dim - 1);
            let e = eu.get(&face.id)?;
            Ok(FaceTerm {
                face: face.id.clone(),
                dim: face.dim,
                m: 1,
                contribution: e.scale(&(&s * &weight)),
                sign: s,
                weight,
                facets,
                eu: e,
            })
        })
        .collect::<Result<_>>()?;
    let total = terms.iter().fold(EuExpr::default(), |acc, t| acc.add(&t.contribution));
    Ok(BrasseletReport {
        kind: BrasseletKind::Hypersurface,
        function: f.name.clone(),
        priors: Vec::new(),
        variety: eu.variety.clone(),
        terms,
        skipped: Vec::new(),
        total,
    })
}

fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    // α_1..α_{m-1} >= 1, α_m >= 0, Σ α = n
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 1..=left {
            cur.push(a);
            rec(left - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut Vec::new(), &mut out);
    out
}

/// K_i^Δ: the sum of normalized (dim Δ − 1)-dimensional mixed volumes of the
/// summand faces over the admissible exponent tuples, measured in the lattice
/// u_i^⊥ of the face lattice. Equal to 1 when dim Δ = 1.
pub fn k_coefficient(facet: &ProductFacet, face: &Face) -> Result<BigInt> {
    let m = facet.summands.len();
    if face.dim < m {
        return Err(ToricError::FaceTooSmall {
            face: face.id.clone(),
            dim: face.dim,
            m,
        });
    }
    let n = face.dim - 1;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let u = IntMatrix::from_rows(&[facet.facet.normal.0.clone()], face.dim)?;
    let lattice = integer_kernel(&u);
    let polys = facet
        .summands
        .iter()
        .map(|s| convex_hull(&s.local_vertices.iter().cloned().map(LatticeVector).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let mut k = BigInt::zero();
    for alpha in compositions(n, m) {
        let slots: Vec<_> = polys.iter().cloned().zip(alpha.iter().copied()).collect();
        k += mixed_volume(&slots, &lattice)?;
    }
    Ok(k)
}

/// B_{f_k,X}(0) for X cut out by `priors`:
/// Σ over faces with Γ₊(f_k) ∩ Δ ≠ ∅ and dim Δ ≥ m(Δ) of
/// (−1)^{dim Δ − m(Δ)} (Σ_i d_i^Δ K_i^Δ) · Eu(T_Δ).
pub fn brasselet_complete_intersection(
    priors: &[ToricFunction],
    f_k: &ToricFunction,
    c: &Cone,
    eu: &EuTable,
) -> Result<BrasseletReport> {
    let met: Vec<Face> = enumerate_faces(c).into_iter().filter(|d| d.dim > 0 && f_k.meets(d)).collect();
    let mut used = Vec::new();
    let mut skipped = Vec::new();
    for face in met {
        let m = priors.iter().filter(|g| g.meets(&face)).count() + 1;
        if face.dim >= m {
            used.push(face);
        } else {
            skipped.push(SkippedFace {
                face: face.id.clone(),
                dim: face.dim,
                m,
            });
        }
    }
    eu.require(&used.iter().map(|d| d.id.clone()).collect::<Vec<_>>())?;
    let terms: Vec<FaceTerm> = used
        .par_iter()
        .map(|face| {
            let data = product_polygon(priors, f_k, c, face)?;
            let m = data.m();
            let facets = data
                .facets
                .iter()
                .map(|pf| {
                    let k = k_coefficient(pf, face)?;
                    Ok(FacetTerm {
                        normal: pf.facet.normal.clone(),
                        vertices: pf.facet.facet.vertices().to_vec(),
                        level: pf.d.clone(),
                        value: &pf.d * &k,
                        k: Some(k),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let weight: BigInt = facets.iter().map(|t| &t.value).sum();
            let s = sign(face.dim - m);
            let e = eu.get(&face.id)?;
            Ok(FaceTerm {
                face: face.id.clone(),
                dim: face.dim,
                m,
                contribution: e.scale(&(&s * &weight)),
                sign: s,
                weight,
                facets,
                eu: e,
            })
        })
        .collect::<Result<_>>()?;
    let total = terms.iter().fold(EuExpr::default(), |acc, t| acc.add(&t.contribution));
    Ok(BrasseletReport {
        kind: BrasseletKind::CompleteIntersection,
        function: f_k.name.clone(),
        priors: priors.iter().map(|g| g.name.clone()).collect(),
        variety: eu.variety.clone(),
        terms,
        skipped,
        total,
    })
}

/// `lhs = coefficient · m`, displayed with the leading unknown positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: EuExpr,
    /// +1 or −1.
    pub m_coefficient: i64,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs = if self.m_coefficient < 0 { "\u{2212}m" } else { "m" };
        write!(f, "{} = {}", self.lhs, rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Value(BigInt),
    Relation(Relation),
}

impl Outcome {
    /// From `expr = s · m` with `s = ±1`.
    pub fn solve(expr: EuExpr, s: i64) -> Outcome {
        if let Some(v) = expr.value() {
            return Outcome::Value(v * BigInt::from(s));
        }
        let leading_negative = expr.terms.values().next().is_some_and(|c| c.is_negative());
        if leading_negative {
            Outcome::Relation(Relation {
                lhs: expr.scale(&-BigInt::one()),
                m_coefficient: -s,
            })
        } else {
            Outcome::Relation(Relation {
                lhs: expr,
                m_coefficient: s,
            })
        }
    }

    pub fn value(&self) -> Option<&BigInt> {
        match self {
            Outcome::Value(v) => Some(v),
            Outcome::Relation(_) => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "m = {}", v),
            Outcome::Relation(r) => write!(f, "{}", r),
        }
    }
}

/// How the two Brasselet numbers entering the Morse count are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorseMode {
    /// Both computed from the Newton data of f.
    Combinatorial,
    /// f is a generic linear form, so B_{f,X}(0) = Eu_X(0) and B_{f,X^g}(0) = Eu_{X^g}(0).
    GenericLinear,
}

/// A correction stratum supplied by the caller (refined stratifications).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedStratum {
    pub label: String,
    pub chi: BigInt,
    pub eu_x: BigInt,
    pub eu_xg: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTerm {
    /// Orbit face, or the caller's label for a refined stratum.
    pub stratum: String,
    pub face: Option<FaceId>,
    pub dim: Option<usize>,
    pub chi: BigInt,
    pub eu_x: EuExpr,
    pub eu_xg: EuExpr,
    pub contribution: EuExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    pub mode: MorseMode,
    pub refined: bool,
    pub rank: usize,
    pub f: String,
    pub g: String,
    /// Required hypotheses followed by the caller's assertions, verbatim.
    pub hypotheses: Vec<String>,
    pub critical_orbits: Vec<FaceId>,
    pub b_fx: EuExpr,
    pub b_fxg: EuExpr,
    pub hypersurface: Option<BrasseletReport>,
    pub complete_intersection: Option<BrasseletReport>,
    pub corrections: Vec<CorrectionTerm>,
    pub correction_total: EuExpr,
    /// B_{f,X} − B_{f,X^g} − corrections, which equals (−1)^{d−1} m.
    pub lhs: EuExpr,
    pub outcome: Outcome,
}

pub const MORSE_HYPOTHESES: [&str; 3] = [
    "g is non-degenerate and (g, f) is a non-degenerate complete intersection",
    "g is tractable at the origin relative to f",
    "the orbit stratification of X^g is a Whitney stratification",
];

/// m = (−1)^{d−1} [B_{f,X}(0) − B_{f,X^g}(0) − Σ_{critical Δ} C_{f,T_Δ} (Eu_X(T_Δ) − Eu_{X^g}(T_Δ))].
///
/// With `refined` strata the orbit corrections are replaced by the supplied ones.
#[allow(clippy::too_many_arguments)]
pub fn morse_count(
    f: &ToricFunction,
    g: &ToricFunction,
    c: &Cone,
    eu_x: &EuTable,
    eu_xg: &EuTable,
    mode: MorseMode,
    refined: Option<&[RefinedStratum]>,
    asserted: &[String],
) -> Result<MorseReport> {
    let faces = enumerate_faces(c);
    if let Some(shared) = faces.iter().find(|d| d.dim > 0 && !f.meets(d) && !g.meets(d)) {
        return Err(ToricError::SharedCriticalOrbit {
            face: shared.id.clone(),
        });
    }
    if mode == MorseMode::GenericLinear && !f.is_generic_linear() {
        return Err(ToricError::NotGenericLinear {
            function: f.name.clone(),
        });
    }
    let crit = critical_orbits(g, c);

    let (b_fx, b_fxg, hyp, ci) = match mode {
        MorseMode::Combinatorial => {
            let h = brasselet_hypersurface(f, c, eu_x)?;
            let ci = brasselet_complete_intersection(std::slice::from_ref(g), f, c, eu_xg)?;
            (h.total.clone(), ci.total.clone(), Some(h), Some(ci))
        }
        MorseMode::GenericLinear => {
            let origin = FaceId::origin();
            (eu_x.get(&origin)?, eu_xg.get(&origin)?, None, None)
        }
    };

    let corrections: Vec<CorrectionTerm> = match refined {
        Some(strata) => strata
            .iter()
            .map(|s| {
                let diff = BigInt::from(&s.eu_x - &s.eu_xg);
                CorrectionTerm {
                    stratum: s.label.clone(),
                    face: None,
                    dim: None,
                    chi: s.chi.clone(),
                    eu_x: EuExpr::constant(s.eu_x.clone()),
                    eu_xg: EuExpr::constant(s.eu_xg.clone()),
                    contribution: EuExpr::constant(&s.chi * diff),
                }
            })
            .collect(),
        None => {
            let ids: Vec<FaceId> = crit.iter().map(|d| d.id.clone()).collect();
            eu_x.require(&ids)?;
            eu_xg.require(&ids)?;
            crit.par_iter()
                .map(|face| {
                    let chi = chi_orbit(f, c, face)?;
                    let ex = eu_x.get(&face.id)?;
                    let exg = eu_xg.get(&face.id)?;
                    Ok(CorrectionTerm {
                        stratum: face.id.label(),
                        face: Some(face.id.clone()),
                        dim: Some(face.dim),
                        contribution: ex.sub(&exg).scale(&chi),
                        chi,
                        eu_x: ex,
                        eu_xg: exg,
                    })
                })
                .collect::<Result<_>>()?
        }
    };
    let correction_total = corrections.iter().fold(EuExpr::default(), |acc, t| acc.add(&t.contribution));
    let lhs = b_fx.sub(&b_fxg).sub(&correction_total);
    let d = c.ambient_rank();
    let s = if (d - 1) % 2 == 0 { 1 } else { -1 };
    let mut hypotheses: Vec<String> = MORSE_HYPOTHESES.iter().map(|h| h.to_string()).collect();
    if mode == MorseMode::GenericLinear {
        hypotheses.push(format!("{} is a generic linear form", f.name));
    }
    hypotheses.extend(asserted.iter().cloned());
    Ok(MorseReport {
        mode,
        refined: refined.is_some(),
        rank: d,
        f: f.name.clone(),
        g: g.name.clone(),
        hypotheses,
        critical_orbits: crit.iter().map(|d| d.id.clone()).collect(),
        b_fx,
        b_fxg,
        hypersurface: hyp,
        complete_intersection: ci,
        corrections,
        correction_total,
        outcome: Outcome::solve(lhs.clone(), s),
        lhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilnorMode {
    Solve,
    Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorReport {
    pub rank: usize,
    pub g: String,
    pub critical_orbits: Vec<(FaceId, usize)>,
    /// Eu_{X^g}(0) + Σ (−1)^{dim Δ} Eu_{X^g}(T_Δ).
    pub eu_side: EuExpr,
    /// Σ (−1)^{dim Δ} + 1.
    pub constant_side: BigInt,
    pub outcome: Outcome,
}

/// On Cⁿ: Eu_{X^g}(0) + Σ_{crit} (−1)^{dim Δ} Eu_{X^g}(T_Δ) = (−1)ⁿ m + Σ_{crit} (−1)^{dim Δ} + 1.
pub fn milnor_cn_relation(g: &ToricFunction, c: &Cone, eu_xg: &EuTable, mode: MilnorMode) -> Result<MilnorReport> {
    if !c.is_standard_octant() {
        return Err(ToricError::NotOctant);
    }
    let n = c.ambient_rank();
    let crit = critical_orbits(g, c);
    let mut needed = vec![FaceId::origin()];
    needed.extend(crit.iter().map(|d| d.id.clone()));
    eu_xg.require(&needed)?;
    let mut eu_side = eu_xg.get(&FaceId::origin())?;
    let mut constant_side = BigInt::one();
    for face in &crit {
        let s = sign(face.dim);
        eu_side = eu_side.add(&eu_xg.get(&face.id)?.scale(&s));
        constant_side += s;
    }
    let expr = eu_side.sub(&EuExpr::constant(constant_side.clone()));
    let s = if n % 2 == 0 { 1 } else { -1 };
    let outcome = Outcome::solve(expr, s);
    if mode == MilnorMode::Solve {
        if let Outcome::Relation(r) = &outcome {
            return Err(ToricError::UnknownEu {
                variety: eu_xg.variety.clone(),
                faces: r.lhs.unknowns().into_iter().map(|s| s.face.clone()).collect(),
            });
        }
    }
    Ok(MilnorReport {
        rank: n,
        g: g.name.clone(),
        critical_orbits: crit.iter().map(|d| (d.id.clone(), d.dim)).collect(),
        eu_side,
        constant_side,
        outcome,
    })
}
