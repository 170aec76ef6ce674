//! Problem files, the command runner behind the `toric` binary, and report documents.
//!
//! Every command produces a [`ReportDocument`] holding both a JSON value
//! (`toric-report/1`, keys sorted) and an aligned plain-text rendering. Both
//! are pure functions of the problem and the command, so reruns are
//! byte-identical whatever the worker count.

pub mod problem;
mod render;

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_traits::One;
use serde_json::{json, Value};

use crate::cones::{cone_from_sigma, enumerate_faces, polar_of_face, smooth_along_orbit, Face, FaceId};
use crate::error::{Result, ToricError};
use crate::exact_linalg::IntMatrix;
use crate::family::{family_invariant_report, newton_constancy_check, ConstancyVerdict};
use crate::invariants::{
    brasselet_complete_intersection, brasselet_hypersurface, chi_orbit, critical_orbits, milnor_cn_relation, morse_count,
    resolve_eu_table, BrasseletKind, BrasseletReport, EuExpr, EuTable, MilnorMode, MorseMode, Outcome, Variety,
};
use crate::newton::{cone_over_facet, newton_restriction, ToricFunction};
use crate::oracle::{brute_force_faces, kouchnirenko_mu};
use crate::polytopes::{convex_hull, convex_hull_in, ehrhart_volume_oracle, mixed_volume, normalized_volume};

pub use problem::{parse_problem, ConeInput, ProblemFile, PROBLEM_FORMAT};
use render::{expr_json, int, outcome_json, table, vec_json, vectors_json};

pub const REPORT_FORMAT: &str = "toric-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Volume,
    Kouchnirenko,
    Faces,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Faces,
    Orbits { g: String },
    Newton { f: String, face: Option<FaceId> },
    Chi { f: String, face: Option<FaceId> },
    Volume { polytope: Option<String> },
    MixedVolume { slots: Vec<(String, usize)> },
    Brasselet { f: String },
    BrasseletCi { f: String, priors: Vec<String> },
    Morse { f: String, g: String, mode: Option<MorseMode>, refined: bool },
    MilnorCn { g: String, mode: MilnorMode },
    FamilyCheck { family: String, g_family: Option<String> },
    Oracle { kind: OracleKind, f: Option<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Faces => "faces",
            Command::Orbits { .. } => "orbits",
            Command::Newton { .. } => "newton",
            Command::Chi { .. } => "chi",
            Command::Volume { .. } => "volume",
            Command::MixedVolume { .. } => "mixed-volume",
            Command::Brasselet { .. } => "brasselet",
            Command::BrasseletCi { .. } => "brasselet-ci",
            Command::Morse { .. } => "morse",
            Command::MilnorCn { .. } => "milnor-cn",
            Command::FamilyCheck { .. } => "family-check",
            Command::Oracle { .. } => "oracle",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// Fail instead of emitting a relation when unknown Eu values survive.
    pub strict_eu: bool,
    /// Worker threads for per-face work; `None` uses the global pool.
    pub parallel: Option<usize>,
}

/// A finished report. `ok` is false when a cross-check inside the command failed.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub ok: bool,
    pub data: Value,
    human: String,
}

impl ReportDocument {
    pub fn result(&self) -> &Value {
        &self.data["result"]
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.data).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> &str {
        &self.human
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.json()
        } else {
            self.human.clone()
        }
    }
}

/// Runs one command, on a dedicated pool of `flags.parallel` workers when set.
pub fn run_command(cmd: &Command, p: &ProblemFile, flags: &Flags) -> Result<ReportDocument> {
    match flags.parallel {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| ToricError::Internal(format!("thread pool: {}", e)))?;
            pool.install(|| dispatch(cmd, p, flags))
        }
        None => dispatch(cmd, p, flags),
    }
}

struct Payload {
    result: Value,
    body: String,
    ok: bool,
}

impl Payload {
    fn new(result: Value, body: String) -> Self {
        Payload { result, body, ok: true }
    }
}

fn dispatch(cmd: &Command, p: &ProblemFile, flags: &Flags) -> Result<ReportDocument> {
    let payload = match cmd {
        Command::Faces => faces_cmd(p),
        Command::Orbits { g } => orbits_cmd(p, g)?,
        Command::Newton { f, face } => newton_cmd(p, f, face.as_ref())?,
        Command::Chi { f, face } => chi_cmd(p, f, face.as_ref())?,
        Command::Volume { polytope } => volume_cmd(p, polytope.as_deref())?,
        Command::MixedVolume { slots } => mixed_cmd(p, slots)?,
        Command::Brasselet { f } => brasselet_cmd(p, f, flags)?,
        Command::BrasseletCi { f, priors } => ci_cmd(p, f, priors, flags)?,
        Command::Morse { f, g, mode, refined } => morse_cmd(p, f, g, *mode, *refined, flags)?,
        Command::MilnorCn { g, mode } => milnor_cmd(p, g, *mode, flags)?,
        Command::FamilyCheck { family, g_family } => family_cmd(p, family, g_family.as_deref())?,
        Command::Oracle { kind, f } => oracle_cmd(p, *kind, f.as_deref())?,
    };
    Ok(document(cmd, p, payload))
}

fn input_json(p: &ProblemFile) -> Value {
    let functions: serde_json::Map<String, Value> = p
        .functions
        .iter()
        .map(|(name, f)| {
            let terms: Vec<Value> = f
                .terms()
                .iter()
                .map(|(e, c)| json!({"exp": vec_json(&e.0), "coeff": c.to_string()}))
                .collect();
            (name.clone(), json!({"generic_linear": f.is_generic_linear(), "terms": terms}))
        })
        .collect();
    let eu = |m: &BTreeMap<FaceId, BigInt>| -> Value {
        Value::Object(m.iter().map(|(k, v)| (k.to_string(), int(v))).collect())
    };
    json!({
        "lattice_rank": p.rank,
        "given": match p.cone_input { ConeInput::Sigma(_) => "cone_generators", ConeInput::SigmaCheck(_) => "dual_cone_generators" },
        "dual_cone_generators": vectors_json(p.cone.generators().iter().map(|v| &v.0)),
        "cone_generators": vectors_json(p.cone.dual_generators().iter().map(|v| &v.0)),
        "functions": functions,
        "euler_obstruction": {"X": eu(&p.eu_x), "Xg": eu(&p.eu_xg)},
        "hypotheses": p.hypotheses,
    })
}

fn face_table(p: &ProblemFile) -> Value {
    Value::Array(
        enumerate_faces(&p.cone)
            .iter()
            .map(|f| json!({"id": f.id.to_string(), "dim": f.dim, "generators": f.id.indices().iter().map(|i| i + 1).collect::<Vec<_>>()}))
            .collect(),
    )
}

fn document(cmd: &Command, p: &ProblemFile, payload: Payload) -> ReportDocument {
    let data = json!({
        "format": REPORT_FORMAT,
        "command": cmd.name(),
        "input": input_json(p),
        "faces": face_table(p),
        "result": payload.result,
    });
    let gens: Vec<String> = p.cone.generators().iter().map(|g| g.to_string()).collect();
    let mut human = format!(
        "{}  {}\nrank {}, dual cone generated by {}\n",
        REPORT_FORMAT,
        cmd.name(),
        p.rank,
        gens.join(" ")
    );
    if !p.hypotheses.is_empty() {
        human.push_str("asserted:\n");
        for h in &p.hypotheses {
            human.push_str(&format!("  - {}\n", h));
        }
    }
    human.push('\n');
    human.push_str(&payload.body);
    if !human.ends_with('\n') {
        human.push('\n');
    }
    ReportDocument {
        command: cmd.name().to_string(),
        ok: payload.ok,
        data,
        human,
    }
}

fn find_face(p: &ProblemFile, id: &FaceId) -> Result<Face> {
    p.cone.face(id)
}

fn faces_cmd(p: &ProblemFile) -> Payload {
    let faces = enumerate_faces(&p.cone);
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for f in &faces {
        let gens: Vec<String> = f.id.indices().iter().map(|&i| p.cone.generators()[i].to_string()).collect();
        let smooth = smooth_along_orbit(&p.cone, f);
        let polar = polar_of_face(&p.cone, f);
        items.push(json!({
            "id": f.id.to_string(),
            "dim": f.dim,
            "generators": vectors_json(f.id.indices().iter().map(|&i| &p.cone.generators()[i].0)),
            "defining_normals": vectors_json(f.defining_normals.iter().map(|n| &n.0)),
            "polar_generators": vectors_json(polar.generators.iter().map(|n| &n.0)),
            "smooth_orbit": smooth,
        }));
        rows.push(vec![
            f.id.to_string(),
            f.dim.to_string(),
            if gens.is_empty() { "-".into() } else { gens.join(" ") },
            if smooth { "yes".into() } else { "no".into() },
        ]);
    }
    let body = format!(
        "{} faces\n{}",
        faces.len(),
        table(&["face", "dim", "generators", "smooth orbit"], &rows)
    );
    Payload::new(json!({"count": faces.len(), "faces": items}), body)
}

fn orbits_cmd(p: &ProblemFile, g: &str) -> Result<Payload> {
    let g = p.function(g)?;
    let crit: Vec<FaceId> = critical_orbits(g, &p.cone).into_iter().map(|f| f.id).collect();
    let faces = enumerate_faces(&p.cone);
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for f in faces.iter().filter(|f| f.dim > 0) {
        let meets = g.meets(f);
        items.push(json!({"id": f.id.to_string(), "dim": f.dim, "meets": meets, "critical": !meets}));
        rows.push(vec![
            f.id.to_string(),
            f.dim.to_string(),
            if meets { "yes" } else { "no" }.into(),
            if meets { "" } else { "critical" }.into(),
        ]);
    }
    let names: Vec<String> = crit.iter().map(|f| f.to_string()).collect();
    let body = format!(
        "{}\ncritical orbits of {}: {}\n",
        table(&["face", "dim", &format!("meets Γ₊({})", g.name), ""], &rows),
        g.name,
        if names.is_empty() { "none".to_string() } else { names.join(" ") }
    );
    Ok(Payload::new(
        json!({"function": g.name, "critical_orbits": names, "faces": items}),
        body,
    ))
}

fn target_faces(p: &ProblemFile, f: &ToricFunction, face: Option<&FaceId>) -> Result<(Vec<Face>, Vec<FaceId>)> {
    match face {
        Some(id) => {
            let face = find_face(p, id)?;
            if face.dim == 0 {
                return Err(ToricError::Schema(vec![format!("face {}: the zero face carries no orbit term", id)]));
            }
            if !f.meets(&face) {
                return Err(ToricError::PolygonMissesFace {
                    function: f.name.clone(),
                    face: id.clone(),
                });
            }
            Ok((vec![face], Vec::new()))
        }
        None => {
            let (met, missed): (Vec<Face>, Vec<Face>) =
                enumerate_faces(&p.cone).into_iter().filter(|d| d.dim > 0).partition(|d| f.meets(d));
            Ok((met, missed.into_iter().map(|d| d.id).collect()))
        }
    }
}

fn newton_cmd(p: &ProblemFile, f: &str, face: Option<&FaceId>) -> Result<Payload> {
    let f = p.function(f)?;
    let (faces, missed) = target_faces(p, f, face)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for d in &faces {
        let data = newton_restriction(f, &p.cone, d)?;
        let mut facets = Vec::new();
        for cf in &data.compact_facets {
            let gamma = cone_over_facet(&cf.facet, &d.span_basis)?;
            let vol = normalized_volume(&gamma)?;
            facets.push(json!({
                "normal": vec_json(&cf.normal.0),
                "level": int(&cf.level),
                "vertices": vectors_json(cf.facet.vertices().iter().map(|v| &v.0)),
                "cone_volume": int(&vol),
            }));
            let verts: Vec<String> = cf.facet.vertices().iter().map(|v| v.to_string()).collect();
            rows.push(vec![
                d.id.to_string(),
                d.dim.to_string(),
                cf.normal.to_string(),
                cf.level.to_string(),
                vol.to_string(),
                verts.join(" "),
            ]);
        }
        items.push(json!({"face": d.id.to_string(), "dim": d.dim, "compact_facets": facets}));
    }
    let missed_s: Vec<String> = missed.iter().map(|f| f.to_string()).collect();
    let mut body = format!(
        "compact facets of Γ₊({}) on each face (normals in face-lattice coordinates)\n{}",
        f.name,
        table(&["face", "dim", "normal", "level", "Vol_Z(Γ)", "vertices"], &rows)
    );
    if !missed_s.is_empty() {
        body.push_str(&format!("faces missed by Γ₊({}): {}\n", f.name, missed_s.join(" ")));
    }
    Ok(Payload::new(
        json!({"function": f.name, "faces": items, "missed": missed_s}),
        body,
    ))
}

fn chi_cmd(p: &ProblemFile, f: &str, face: Option<&FaceId>) -> Result<Payload> {
    let f = p.function(f)?;
    let (faces, missed) = target_faces(p, f, face)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for d in &faces {
        let c = chi_orbit(f, &p.cone, d)?;
        items.push(json!({"face": d.id.to_string(), "dim": d.dim, "chi": int(&c)}));
        rows.push(vec![d.id.to_string(), d.dim.to_string(), c.to_string()]);
    }
    let missed_s: Vec<String> = missed.iter().map(|f| f.to_string()).collect();
    let mut body = format!(
        "Euler characteristics C_{{{},T}} of the Milnor fibre along each orbit\n{}",
        f.name,
        table(&["face", "dim", "C"], &rows)
    );
    if !missed_s.is_empty() {
        body.push_str(&format!("critical orbits (no term): {}\n", missed_s.join(" ")));
    }
    Ok(Payload::new(
        json!({"function": f.name, "orbits": items, "critical_orbits": missed_s}),
        body,
    ))
}

fn volume_cmd(p: &ProblemFile, name: Option<&str>) -> Result<Payload> {
    let selected: Vec<(&String, _)> = match name {
        Some(n) => vec![(
            p.polytopes.get_key_value(n).map(|(k, _)| k).ok_or_else(|| ToricError::Schema(vec![format!("unknown polytope {}", n)]))?,
            &p.polytopes[n],
        )],
        None => p.polytopes.iter().collect(),
    };
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for (n, pts) in selected {
        let poly = convex_hull(pts)?;
        let vol = normalized_volume(&poly)?;
        let verts: Vec<String> = poly.vertices().iter().map(|v| v.to_string()).collect();
        items.push(json!({
            "name": n,
            "vertices": vectors_json(poly.vertices().iter().map(|v| &v.0)),
            "affine_dim": poly.affine_dim(),
            "volume": int(&vol),
        }));
        rows.push(vec![n.clone(), poly.affine_dim().to_string(), vol.to_string(), verts.join(" ")]);
    }
    let body = format!(
        "normalized volumes in the direction lattice of each polytope\n{}",
        table(&["polytope", "dim", "Vol_Z", "vertices"], &rows)
    );
    Ok(Payload::new(json!({"polytopes": items}), body))
}

fn mixed_cmd(p: &ProblemFile, slots: &[(String, usize)]) -> Result<Payload> {
    let mut items = Vec::new();
    let mut parts = Vec::new();
    for (n, m) in slots {
        let pts = p
            .polytopes
            .get(n)
            .ok_or_else(|| ToricError::Schema(vec![format!("unknown polytope {}", n)]))?;
        let poly = convex_hull_in(pts, IntMatrix::identity(p.rank))?;
        items.push(json!({"name": n, "multiplicity": m}));
        parts.push((poly, *m));
    }
    let mv = mixed_volume(&parts, &IntMatrix::identity(p.rank))?;
    let label: Vec<String> = slots.iter().map(|(n, m)| format!("{}^{}", n, m)).collect();
    let body = format!("MV({}) = {}\n", label.join(", "), mv);
    Ok(Payload::new(json!({"slots": items, "mixed_volume": int(&mv)}), body))
}

fn eu_table_json(t: &EuTable) -> Value {
    Value::Array(
        t.entries
            .iter()
            .map(|(f, e)| {
                json!({
                    "face": f.to_string(),
                    "value": e.value.as_ref().map(int).unwrap_or(Value::Null),
                    "provenance": e.provenance.to_string(),
                })
            })
            .collect(),
    )
}

fn brasselet_json(r: &BrasseletReport, eu: &EuTable, hypotheses: &[String]) -> Value {
    let terms: Vec<Value> = r
        .terms
        .iter()
        .map(|t| {
            let facets: Vec<Value> = t
                .facets
                .iter()
                .map(|ft| {
                    json!({
                        "normal": vec_json(&ft.normal.0),
                        "level": int(&ft.level),
                        "k": ft.k.as_ref().map(int).unwrap_or(Value::Null),
                        "value": int(&ft.value),
                        "vertices": vectors_json(ft.vertices.iter().map(|v| &v.0)),
                    })
                })
                .collect();
            json!({
                "face": t.face.to_string(),
                "dim": t.dim,
                "m": t.m,
                "sign": int(&t.sign),
                "weight": int(&t.weight),
                "eu": expr_json(&t.eu),
                "contribution": expr_json(&t.contribution),
                "facets": facets,
            })
        })
        .collect();
    json!({
        "kind": match r.kind { BrasseletKind::Hypersurface => "hypersurface", BrasseletKind::CompleteIntersection => "complete-intersection" },
        "function": r.function,
        "priors": r.priors,
        "variety": r.variety,
        "terms": terms,
        "skipped": r.skipped.iter().map(|s| json!({"face": s.face.to_string(), "dim": s.dim, "m": s.m})).collect::<Vec<_>>(),
        "total": expr_json(&r.total),
        "eu_table": eu_table_json(eu),
        "hypotheses": hypotheses,
    })
}

fn signed(v: &BigInt) -> String {
    if v.is_one() {
        "+1".into()
    } else {
        v.to_string()
    }
}

fn brasselet_text(r: &BrasseletReport) -> String {
    let ci = r.kind == BrasseletKind::CompleteIntersection;
    let title = if ci {
        format!("Brasselet number B_{{{},{}}}(0), cut by {}", r.function, r.variety, r.priors.join(", "))
    } else {
        format!("Brasselet number B_{{{},{}}}(0)", r.function, r.variety)
    };
    let rows: Vec<Vec<String>> = r
        .terms
        .iter()
        .map(|t| {
            let mut row = vec![t.face.to_string(), t.dim.to_string()];
            if ci {
                row.push(t.m.to_string());
            }
            row.extend([signed(&t.sign), t.weight.to_string(), t.eu.to_string(), t.contribution.to_string()]);
            row
        })
        .collect();
    let headers: Vec<&str> = if ci {
        vec!["face", "dim", "m", "sign", "Σ d·K", "Eu", "contribution"]
    } else {
        vec!["face", "dim", "sign", "Σ Vol_Z", "Eu", "contribution"]
    };
    let mut out = format!("{}\n{}", title, table(&headers, &rows));
    out.push_str(&format!("total = {}\n", r.total));
    let facet_rows: Vec<Vec<String>> = r
        .terms
        .iter()
        .flat_map(|t| {
            t.facets.iter().map(move |ft| {
                let verts: Vec<String> = ft.vertices.iter().map(|v| v.to_string()).collect();
                let mut row = vec![t.face.to_string(), ft.normal.to_string(), ft.level.to_string()];
                if let Some(k) = &ft.k {
                    row.push(k.to_string());
                }
                row.push(ft.value.to_string());
                row.push(verts.join(" "));
                row
            })
        })
        .collect();
    let fh: Vec<&str> = if ci {
        vec!["face", "normal", "d", "K", "d·K", "facet vertices"]
    } else {
        vec!["face", "normal", "level", "Vol_Z(Γ)", "facet vertices"]
    };
    out.push_str("\ncompact facets\n");
    out.push_str(&table(&fh, &facet_rows));
    if !r.skipped.is_empty() {
        let s: Vec<String> = r.skipped.iter().map(|s| format!("{} (dim {} < m = {})", s.face, s.dim, s.m)).collect();
        out.push_str(&format!("excluded faces: {}\n", s.join(", ")));
    }
    out
}

fn strict_check(flags: &Flags, variety: &str, e: &EuExpr) -> Result<()> {
    if flags.strict_eu && e.value().is_none() {
        return Err(ToricError::UnknownEu {
            variety: variety.to_string(),
            faces: e.unknowns().into_iter().map(|s| s.face.clone()).collect(),
        });
    }
    Ok(())
}

fn with_required(required: &[&str], p: &ProblemFile) -> Vec<String> {
    required.iter().map(|s| s.to_string()).chain(p.hypotheses.iter().cloned()).collect()
}

fn brasselet_cmd(p: &ProblemFile, f: &str, flags: &Flags) -> Result<Payload> {
    let f = p.function(f)?;
    let eu = resolve_eu_table(&p.cone, &p.eu_x, &Variety::Ambient)?;
    let r = brasselet_hypersurface(f, &p.cone, &eu)?;
    strict_check(flags, &eu.variety, &r.total)?;
    let hyp = with_required(&[&format!("{} is non-degenerate", f.name)], p);
    Ok(Payload::new(brasselet_json(&r, &eu, &hyp), brasselet_text(&r)))
}

fn ci_cmd(p: &ProblemFile, f: &str, priors: &[String], flags: &Flags) -> Result<Payload> {
    let f = p.function(f)?;
    let priors: Vec<ToricFunction> = priors.iter().map(|n| p.function(n).cloned()).collect::<Result<_>>()?;
    let eu = if priors.is_empty() {
        resolve_eu_table(&p.cone, &p.eu_x, &Variety::Ambient)?
    } else {
        resolve_eu_table(&p.cone, &p.eu_xg, &Variety::Cut(priors.clone()))?
    };
    let r = brasselet_complete_intersection(&priors, f, &p.cone, &eu)?;
    strict_check(flags, &eu.variety, &r.total)?;
    let names: Vec<String> = priors.iter().map(|g| g.name.clone()).chain([f.name.clone()]).collect();
    let hyp = with_required(&[&format!("({}) is non-degenerate", names.join(", "))], p);
    Ok(Payload::new(brasselet_json(&r, &eu, &hyp), brasselet_text(&r)))
}

fn morse_cmd(
    p: &ProblemFile,
    f: &str,
    g: &str,
    mode: Option<MorseMode>,
    refined: bool,
    flags: &Flags,
) -> Result<Payload> {
    let f = p.function(f)?;
    let g = p.function(g)?;
    let mode = mode.unwrap_or(if f.is_generic_linear() {
        MorseMode::GenericLinear
    } else {
        MorseMode::Combinatorial
    });
    if refined && p.refined_strata.is_empty() {
        return Err(ToricError::Schema(vec!["refined_strata: required by --refined".into()]));
    }
    let eu_x = resolve_eu_table(&p.cone, &p.eu_x, &Variety::Ambient)?;
    let eu_xg = resolve_eu_table(&p.cone, &p.eu_xg, &Variety::Cut(vec![g.clone()]))?;
    let strata = refined.then_some(p.refined_strata.as_slice());
    let r = morse_count(f, g, &p.cone, &eu_x, &eu_xg, mode, strata, &p.hypotheses)?;
    if flags.strict_eu {
        if let Outcome::Relation(rel) = &r.outcome {
            return Err(ToricError::UnknownEu {
                variety: eu_xg.variety.clone(),
                faces: rel.lhs.unknowns().into_iter().map(|s| s.face.clone()).collect(),
            });
        }
    }
    let mode_s = match r.mode {
        MorseMode::Combinatorial => "combinatorial",
        MorseMode::GenericLinear => "generic-linear",
    };
    let corrections: Vec<Value> = r
        .corrections
        .iter()
        .map(|c| {
            json!({
                "stratum": c.stratum,
                "face": c.face.as_ref().map(|f| Value::String(f.to_string())).unwrap_or(Value::Null),
                "dim": c.dim,
                "chi": int(&c.chi),
                "eu_x": expr_json(&c.eu_x),
                "eu_xg": expr_json(&c.eu_xg),
                "contribution": expr_json(&c.contribution),
            })
        })
        .collect();
    let crit: Vec<String> = r.critical_orbits.iter().map(|f| f.to_string()).collect();
    let result = json!({
        "mode": mode_s,
        "refined": r.refined,
        "rank": r.rank,
        "f": r.f,
        "g": r.g,
        "critical_orbits": crit,
        "b_fx": expr_json(&r.b_fx),
        "b_fxg": expr_json(&r.b_fxg),
        "hypersurface": r.hypersurface.as_ref().map(|h| brasselet_json(h, &eu_x, &[])).unwrap_or(Value::Null),
        "complete_intersection": r.complete_intersection.as_ref().map(|h| brasselet_json(h, &eu_xg, &[])).unwrap_or(Value::Null),
        "corrections": corrections,
        "correction_total": expr_json(&r.correction_total),
        "lhs": expr_json(&r.lhs),
        "outcome": outcome_json(&r.outcome),
        "hypotheses": r.hypotheses,
    });

    let mut body = format!(
        "stratified Morse points of {} on X ∩ {{{} = δ}} off {{{} = 0}}\nmode: {}{}\ncritical orbits of {}: {}\n",
        r.g,
        r.f,
        r.g,
        mode_s,
        if r.refined { " (refined strata)" } else { "" },
        r.g,
        if crit.is_empty() { "none".to_string() } else { crit.join(" ") }
    );
    body.push_str(&format!("B_{{{},X}}(0)  = {}\n", r.f, r.b_fx));
    body.push_str(&format!("B_{{{},Xg}}(0) = {}\n", r.f, r.b_fxg));
    if !r.corrections.is_empty() {
        let rows: Vec<Vec<String>> = r
            .corrections
            .iter()
            .map(|c| {
                vec![
                    c.stratum.clone(),
                    c.dim.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                    c.chi.to_string(),
                    c.eu_x.to_string(),
                    c.eu_xg.to_string(),
                    c.contribution.to_string(),
                ]
            })
            .collect();
        body.push_str("\ncorrections\n");
        body.push_str(&table(&["stratum", "dim", "C", "Eu_X", "Eu_Xg", "contribution"], &rows));
        body.push_str(&format!("correction total = {}\n", r.correction_total));
    }
    for (label, rep) in [("X", &r.hypersurface), ("Xg", &r.complete_intersection)] {
        if let Some(rep) = rep {
            body.push_str(&format!("\n[{} term table]\n", label));
            body.push_str(&brasselet_text(rep));
        }
    }
    body.push_str("\nhypotheses:\n");
    for h in &r.hypotheses {
        body.push_str(&format!("  - {}\n", h));
    }
    body.push_str(&format!("\nresult: {}\n", r.outcome));
    Ok(Payload::new(result, body))
}

fn milnor_cmd(p: &ProblemFile, g: &str, mode: MilnorMode, flags: &Flags) -> Result<Payload> {
    let g = p.function(g)?;
    let eu = resolve_eu_table(&p.cone, &p.eu_xg, &Variety::Cut(vec![g.clone()]))?;
    let r = milnor_cn_relation(g, &p.cone, &eu, mode)?;
    if let Outcome::Relation(rel) = &r.outcome {
        strict_check(flags, &eu.variety, &rel.lhs)?;
    }
    let crit: Vec<Value> = r
        .critical_orbits
        .iter()
        .map(|(f, d)| json!({"face": f.to_string(), "dim": d}))
        .collect();
    let result = json!({
        "g": r.g,
        "n": r.rank,
        "critical_orbits": crit,
        "eu_side": expr_json(&r.eu_side),
        "constant_side": int(&r.constant_side),
        "outcome": outcome_json(&r.outcome),
        "eu_table": eu_table_json(&eu),
    });
    let names: Vec<String> = r.critical_orbits.iter().map(|(f, _)| f.to_string()).collect();
    let sign = if r.rank % 2 == 0 { "" } else { "\u{2212}" };
    let tail = match r.constant_side.sign() {
        Sign::NoSign => String::new(),
        Sign::Plus => format!(" + {}", r.constant_side),
        Sign::Minus => format!(" \u{2212} {}", r.constant_side.magnitude()),
    };
    let body = format!(
        "Milnor number of {} on C^{}\ncritical orbits: {}\n{} = {}m{}\nresult: {}\n",
        r.g,
        r.rank,
        if names.is_empty() { "none".to_string() } else { names.join(" ") },
        r.eu_side,
        sign,
        tail,
        r.outcome
    );
    Ok(Payload::new(result, body))
}

fn verdict_json(v: &ConstancyVerdict) -> Value {
    json!({
        "family": v.family,
        "constant": v.constant,
        "witness": v.witness.as_ref().map(|w| json!({
            "perturbation": w.perturbation,
            "point": vec_json(&w.point.0),
            "normal": vec_json(&w.normal.0),
            "level": int(&w.level),
            "value": int(&w.value),
        })).unwrap_or(Value::Null),
        "facet_disjointness": v.facet_disjointness,
        "halfspaces": v.halfspaces.iter().map(|(a, l)| json!({"normal": vec_json(&a.0), "level": int(l)})).collect::<Vec<_>>(),
    })
}

fn verdict_text(v: &ConstancyVerdict, parameter: &str) -> String {
    let mut s = format!(
        "family {} ({}): Newton polygon {}\n",
        v.family,
        parameter,
        if v.constant { "constant" } else { "NOT constant" }
    );
    if let Some(w) = &v.witness {
        s.push_str(&format!("  witness: {}\n", w.describe()));
    }
    s.push_str(&format!(
        "  facet-disjointness condition: {}\n",
        if v.facet_disjointness { "holds" } else { "fails" }
    ));
    s
}

fn family_cmd(p: &ProblemFile, family: &str, g_family: Option<&str>) -> Result<Payload> {
    let fd = p.family(family)?;
    let Some(gname) = g_family else {
        let v = newton_constancy_check(&fd, &p.cone)?;
        return Ok(Payload::new(json!({"f_family": verdict_json(&v)}), verdict_text(&v, &fd.parameter)));
    };
    let gd = p.family(gname)?;
    let r = family_invariant_report(&fd, &gd, &p.cone, Some(&p.eu_x), Some(&p.eu_xg), &p.hypotheses)?;
    let members: Vec<Value> = r
        .members
        .iter()
        .map(|m| {
            json!({
                "f": m.f,
                "g": m.g,
                "critical_orbits": m.bundle.critical_orbits.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "chi": m.bundle.chi.iter().map(|(f, c)| json!({"face": f.to_string(), "chi": int(c)})).collect::<Vec<_>>(),
                "hypersurface_terms": m.bundle.hypersurface_terms.iter().map(|t| json!({"face": t.face.to_string(), "weight": int(&t.weight), "contribution": expr_json(&t.contribution)})).collect::<Vec<_>>(),
                "ci_terms": m.bundle.ci_terms.iter().map(|t| json!({"face": t.face.to_string(), "weight": int(&t.weight), "contribution": expr_json(&t.contribution)})).collect::<Vec<_>>(),
                "outcome": m.bundle.m.as_ref().map(outcome_json).unwrap_or(Value::Null),
            })
        })
        .collect();
    let common = r.common().m.as_ref();
    let result = json!({
        "f_family": verdict_json(&r.f_verdict),
        "g_family": verdict_json(&r.g_verdict),
        "members": members,
        "identical": r.identical,
        "outcome": common.map(outcome_json).unwrap_or(Value::Null),
        "hypotheses": r.hypotheses,
    });
    let mut body = verdict_text(&r.f_verdict, &fd.parameter);
    body.push_str(&verdict_text(&r.g_verdict, &gd.parameter));
    let rows: Vec<Vec<String>> = r
        .members
        .iter()
        .map(|m| {
            vec![
                m.f.clone(),
                m.g.clone(),
                if m.bundle == r.common().clone() { "same" } else { "DIFFERENT" }.into(),
                m.bundle.m.as_ref().map(|o| o.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    body.push('\n');
    body.push_str(&table(&["f member", "g member", "inputs", "result"], &rows));
    body.push_str(&format!(
        "member-independent: {}\n",
        if r.identical { "yes" } else { "no" }
    ));
    body.push_str("hypotheses:\n");
    for h in &r.hypotheses {
        body.push_str(&format!("  - {}\n", h));
    }
    if let Some(o) = common {
        body.push_str(&format!("result: {}\n", o));
    }
    Ok(Payload {
        result,
        body,
        ok: r.identical,
    })
}

fn oracle_cmd(p: &ProblemFile, kind: OracleKind, f: Option<&str>) -> Result<Payload> {
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut ok = true;
    let mut push = |what: String, computed: String, oracle: String| {
        let agree = computed == oracle;
        ok &= agree;
        items.push(json!({"check": what, "computed": computed, "oracle": oracle, "agree": agree}));
        rows.push(vec![what, computed, oracle, if agree { "ok" } else { "MISMATCH" }.into()]);
    };
    let kind_s = match kind {
        OracleKind::Volume => {
            for (n, pts) in &p.polytopes {
                let poly = convex_hull(pts)?;
                push(
                    format!("Vol_Z({})", n),
                    normalized_volume(&poly)?.to_string(),
                    ehrhart_volume_oracle(&poly)?.to_string(),
                );
            }
            for (n, func) in &p.functions {
                for d in enumerate_faces(&p.cone).iter().filter(|d| d.dim > 0 && func.meets(d)) {
                    for cf in newton_restriction(func, &p.cone, d)?.compact_facets {
                        let gamma = cone_over_facet(&cf.facet, &d.span_basis)?;
                        push(
                            format!("Vol_Z(Γ) {} on {} normal {}", n, d.id, cf.normal),
                            normalized_volume(&gamma)?.to_string(),
                            ehrhart_volume_oracle(&gamma)?.to_string(),
                        );
                    }
                }
            }
            "volume"
        }
        OracleKind::Kouchnirenko => {
            if !p.cone.is_standard_octant() {
                return Err(ToricError::NotOctant);
            }
            let names: Vec<&String> = match f {
                Some(n) => vec![p.functions.get_key_value(n).map(|(k, _)| k).ok_or_else(|| ToricError::UnknownFunction(n.into()))?],
                None => p.functions.keys().collect(),
            };
            let eu = resolve_eu_table(&p.cone, &BTreeMap::new(), &Variety::Ambient)?;
            for n in names {
                let func = &p.functions[n];
                let mu = match kouchnirenko_mu(func, p.rank) {
                    Ok(mu) => mu,
                    Err(ToricError::NotConvenient { .. }) if f.is_none() => continue,
                    Err(e) => return Err(e),
                };
                let b = brasselet_hypersurface(func, &p.cone, &eu)?.total;
                let sign = if p.rank % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                push(format!("B_{{{},X}}(0) vs 1 + (-1)^(n-1) μ, μ = {}", n, mu), b.to_string(), EuExpr::constant(BigInt::one() + sign * mu).to_string());
            }
            "kouchnirenko"
        }
        OracleKind::Faces => {
            let ids: Vec<String> = enumerate_faces(&p.cone).iter().map(|f| f.id.to_string()).collect();
            let brute: Vec<String> = brute_force_faces(&p.cone).iter().map(|f| f.to_string()).collect();
            push("faces".into(), ids.join(" "), brute.join(" "));
            let back = cone_from_sigma(p.cone.dual_generators(), p.rank)?;
            let mut a: Vec<String> = p.cone.generators().iter().map(|g| g.to_string()).collect();
            let mut b: Vec<String> = back.generators().iter().map(|g| g.to_string()).collect();
            a.sort();
            b.sort();
            push("dual of dual".into(), a.join(" "), b.join(" "));
            "faces"
        }
    };
    let body = format!(
        "oracle {}\n{}{}\n",
        kind_s,
        table(&["check", "computed", "oracle", "status"], &rows),
        if ok { "all checks agree" } else { "DISAGREEMENT" }
    );
    Ok(Payload {
        result: json!({"oracle": kind_s, "checks": items, "agree": ok}),
        body,
        ok,
    })
}

#[cfg(test)]
mod tests;
