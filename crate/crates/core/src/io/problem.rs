//! Problem files: a versioned JSON document describing a cone, functions,
//! Euler obstruction data and asserted hypotheses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use crate::cones::{cone_from_sigma, dual_cone, enumerate_faces, Cone, FaceId};
use crate::error::{Result, ToricError};
use crate::exact_linalg::{fmt_vec, to_big, DualVector, LatticeVector};
use crate::family::Deformation;
use crate::invariants::RefinedStratum;
use crate::newton::ToricFunction;

pub const PROBLEM_FORMAT: &str = "toric-problem/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    format: Option<String>,
    lattice_rank: usize,
    cone_generators: Option<Vec<Vec<i64>>>,
    dual_cone_generators: Option<Vec<Vec<i64>>>,
    semigroup_generators: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    functions: BTreeMap<String, RawFunction>,
    euler_obstruction: Option<RawEu>,
    #[serde(default)]
    hypotheses: Vec<String>,
    #[serde(default)]
    families: BTreeMap<String, RawFamily>,
    #[serde(default)]
    refined_strata: Vec<RawStratum>,
    #[serde(default)]
    polytopes: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunction {
    #[serde(default)]
    terms: Vec<RawTerm>,
    #[serde(default)]
    generic_linear: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exp: Vec<i64>,
    coeff: RawCoeff,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEu {
    #[serde(default, rename = "X")]
    x: BTreeMap<String, i64>,
    #[serde(default, rename = "Xg")]
    xg: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    base: String,
    #[serde(default)]
    perturbations: Vec<String>,
    #[serde(default = "default_parameter")]
    parameter: String,
}

fn default_parameter() -> String {
    "t".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStratum {
    label: String,
    chi: i64,
    eu_x: i64,
    eu_xg: i64,
}

/// How the cone was given in the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeInput {
    Sigma(Vec<DualVector>),
    SigmaCheck(Vec<LatticeVector>),
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub rank: usize,
    pub cone: Cone,
    pub cone_input: ConeInput,
    pub semigroup_generators: Option<Vec<LatticeVector>>,
    pub functions: BTreeMap<String, ToricFunction>,
    pub eu_x: BTreeMap<FaceId, BigInt>,
    pub eu_xg: BTreeMap<FaceId, BigInt>,
    pub hypotheses: Vec<String>,
    pub families: BTreeMap<String, Deformation>,
    pub refined_strata: Vec<RefinedStratum>,
    pub polytopes: BTreeMap<String, Vec<LatticeVector>>,
}

impl ProblemFile {
    pub fn function(&self, name: &str) -> Result<&ToricFunction> {
        self.functions
            .get(name)
            .ok_or_else(|| ToricError::UnknownFunction(name.to_string()))
    }

    /// A declared family, or the trivial family of a declared function.
    pub fn family(&self, name: &str) -> Result<Deformation> {
        match self.families.get(name) {
            Some(d) => Ok(d.clone()),
            None => Ok(Deformation::trivial(self.function(name)?.clone())),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (d != BigInt::from(0)).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn check_width(errors: &mut Vec<String>, at: &str, v: &[i64], rank: usize) -> bool {
    if v.len() != rank {
        errors.push(format!("{}: vector {} has length {}, lattice rank is {}", at, fmt_vec(&to_big(v)), v.len(), rank));
        false
    } else {
        true
    }
}

/// Parses and validates a problem file; every schema problem is reported with its location.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| ToricError::Parse(e.to_string()))?;
    let mut errors = Vec::new();
    if let Some(f) = &raw.format {
        if f != PROBLEM_FORMAT {
            errors.push(format!("format: expected \"{}\", found \"{}\"", PROBLEM_FORMAT, f));
        }
    }
    let rank = raw.lattice_rank;
    if rank == 0 {
        return Err(ToricError::ZeroRank);
    }
    let cone_input = match (&raw.cone_generators, &raw.dual_cone_generators) {
        (Some(_), Some(_)) | (None, None) => {
            errors.push("give exactly one of cone_generators and dual_cone_generators".into());
            None
        }
        (Some(g), None) => {
            let ok = g
                .iter()
                .enumerate()
                .all(|(i, v)| check_width(&mut errors, &format!("cone_generators[{}]", i), v, rank));
            ok.then(|| ConeInput::Sigma(g.iter().map(|v| DualVector::from_i64(v)).collect()))
        }
        (None, Some(g)) => {
            let ok = g
                .iter()
                .enumerate()
                .all(|(i, v)| check_width(&mut errors, &format!("dual_cone_generators[{}]", i), v, rank));
            ok.then(|| ConeInput::SigmaCheck(g.iter().map(|v| LatticeVector::from_i64(v)).collect()))
        }
    };
    let cone = match &cone_input {
        Some(ConeInput::Sigma(g)) => Some(cone_from_sigma(g, rank)),
        Some(ConeInput::SigmaCheck(g)) => Some(dual_cone(g, rank)),
        None => None,
    };
    let cone = match cone {
        Some(Ok(c)) => Some(c),
        Some(Err(e)) => {
            errors.push(format!("cone: {}", e));
            None
        }
        None => None,
    };
    let (Some(cone), Some(cone_input)) = (cone, cone_input) else {
        return Err(ToricError::Schema(errors));
    };

    let semigroup_generators = raw.semigroup_generators.as_ref().map(|g| {
        g.iter()
            .enumerate()
            .filter(|(i, v)| check_width(&mut errors, &format!("semigroup_generators[{}]", i), v, rank))
            .map(|(_, v)| LatticeVector::from_i64(v))
            .collect::<Vec<_>>()
    });

    let mut functions = BTreeMap::new();
    for (name, rf) in &raw.functions {
        let at = format!("functions.{}", name);
        if rf.generic_linear {
            if !rf.terms.is_empty() {
                errors.push(format!("{}: a generic linear form takes no explicit terms", at));
                continue;
            }
            match ToricFunction::generic_linear(name, &cone, semigroup_generators.as_deref()) {
                Ok(f) => {
                    functions.insert(name.clone(), f);
                }
                Err(e) => errors.push(format!("{}: {}", at, e)),
            }
            continue;
        }
        if rf.terms.is_empty() {
            errors.push(format!("{}: no terms", at));
            continue;
        }
        let mut terms = Vec::new();
        let mut ok = true;
        for (i, t) in rf.terms.iter().enumerate() {
            let tat = format!("{}.terms[{}]", at, i);
            if !check_width(&mut errors, &tat, &t.exp, rank) {
                ok = false;
                continue;
            }
            let e = LatticeVector::from_i64(&t.exp);
            if e.is_zero() {
                errors.push(format!(
                    "{}: term {} of {} has the zero exponent (function must vanish at the fixed point)",
                    tat, e, name
                ));
                ok = false;
                continue;
            }
            if !cone.contains(&e) {
                errors.push(format!("{}: term {} of {} has support outside dual cone", tat, e, name));
                ok = false;
                continue;
            }
            let coeff = match &t.coeff {
                RawCoeff::Text(s) => parse_rational(s),
                RawCoeff::Int(k) => Some(BigRational::from_integer(BigInt::from(*k))),
            };
            match coeff {
                Some(c) if c != BigRational::from_integer(BigInt::from(0)) => terms.push((e, c)),
                Some(_) => {
                    errors.push(format!("{}: term {} of {} has a zero coefficient", tat, e, name));
                    ok = false;
                }
                None => {
                    errors.push(format!("{}: coefficient is not an exact rational", tat));
                    ok = false;
                }
            }
        }
        if ok {
            match ToricFunction::new(name, terms) {
                Ok(f) => {
                    functions.insert(name.clone(), f);
                }
                Err(e) => errors.push(format!("{}: {}", at, e)),
            }
        }
    }

    let face_ids: Vec<FaceId> = enumerate_faces(&cone).into_iter().map(|f| f.id).collect();
    let mut eu_table = |label: &str, entries: &BTreeMap<String, i64>| -> BTreeMap<FaceId, BigInt> {
        let mut out = BTreeMap::new();
        for (key, v) in entries {
            let at = format!("euler_obstruction.{}.{}", label, key);
            match key.parse::<FaceId>() {
                Ok(id) if face_ids.contains(&id) => {
                    if out.insert(id, BigInt::from(*v)).is_some() {
                        errors.push(format!("{}: duplicate entry for this face", at));
                    }
                }
                _ => errors.push(format!("{}: not a face of the cone", at)),
            }
        }
        out
    };
    let (eu_x, eu_xg) = match &raw.euler_obstruction {
        Some(e) => (eu_table("X", &e.x), eu_table("Xg", &e.xg)),
        None => (BTreeMap::new(), BTreeMap::new()),
    };

    let mut families = BTreeMap::new();
    for (name, rf) in &raw.families {
        let at = format!("families.{}", name);
        if functions.contains_key(name) {
            errors.push(format!("{}: name already used by a function", at));
            continue;
        }
        let lookup = |n: &str, errors: &mut Vec<String>| {
            let f = functions.get(n).cloned();
            if f.is_none() && !raw.functions.contains_key(n) {
                errors.push(format!("{}: unknown function {}", at, n));
            }
            f
        };
        let base = lookup(&rf.base, &mut errors);
        let perts: Vec<Option<ToricFunction>> = rf.perturbations.iter().map(|p| lookup(p, &mut errors)).collect();
        if let (Some(base), Some(perturbations)) = (base, perts.into_iter().collect::<Option<Vec<_>>>()) {
            families.insert(
                name.clone(),
                Deformation {
                    base,
                    perturbations,
                    parameter: rf.parameter.clone(),
                },
            );
        }
    }

    let refined_strata = raw
        .refined_strata
        .iter()
        .map(|s| RefinedStratum {
            label: s.label.clone(),
            chi: BigInt::from(s.chi),
            eu_x: BigInt::from(s.eu_x),
            eu_xg: BigInt::from(s.eu_xg),
        })
        .collect();

    let mut polytopes = BTreeMap::new();
    for (name, pts) in &raw.polytopes {
        let at = format!("polytopes.{}", name);
        if pts.is_empty() {
            errors.push(format!("{}: no points", at));
            continue;
        }
        let ok = pts
            .iter()
            .enumerate()
            .all(|(i, v)| check_width(&mut errors, &format!("{}[{}]", at, i), v, rank));
        if ok {
            polytopes.insert(name.clone(), pts.iter().map(|v| LatticeVector::from_i64(v)).collect());
        }
    }

    if !errors.is_empty() {
        return Err(ToricError::Schema(errors));
    }
    Ok(ProblemFile {
        rank,
        cone,
        cone_input,
        semigroup_generators,
        functions,
        eu_x,
        eu_xg,
        hypotheses: raw.hypotheses,
        families,
        refined_strata,
        polytopes,
    })
}
