//! Reports read back as data: every total in a stored JSON report is the sum of
//! its own rows.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;

fn golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn int_of(v: &Value) -> BigInt {
    match v {
        Value::Number(n) => BigInt::from(n.as_i64().expect("integer")),
        Value::String(s) => s.parse().expect("integer string"),
        other => panic!("not an integer: {}", other),
    }
}

// Linear forms keyed by "variety face", constant under "".
fn form(e: &Value) -> Vec<(String, BigInt)> {
    let mut out = vec![(String::new(), int_of(&e["constant"]))];
    for t in e["terms"].as_array().unwrap() {
        out.push((format!("{} {}", t["variety"], t["face"]), int_of(&t["coeff"])));
    }
    out
}

fn normalize(mut v: Vec<(String, BigInt)>) -> Vec<(String, BigInt)> {
    v.push((String::new(), BigInt::zero()));
    v.sort();
    let mut out: Vec<(String, BigInt)> = Vec::new();
    for (k, c) in v {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(k, c)| k.is_empty() || !c.is_zero());
    out
}

fn check_brasselet(b: &Value) -> usize {
    let mut sum = Vec::new();
    for t in b["terms"].as_array().unwrap() {
        let w = int_of(&t["weight"]);
        let s = int_of(&t["sign"]);
        let facets: BigInt = t["facets"].as_array().unwrap().iter().map(|f| int_of(&f["value"])).sum();
        assert_eq!(facets, w, "face {}: facet values do not add up to the weight", t["face"]);
        let eu = form(&t["eu"]);
        let expect: Vec<(String, BigInt)> = eu.iter().map(|(k, c)| (k.clone(), c * &w * &s)).collect();
        assert_eq!(normalize(expect), normalize(form(&t["contribution"])), "face {}", t["face"]);
        sum.extend(form(&t["contribution"]));
    }
    assert_eq!(normalize(sum), normalize(form(&b["total"])));
    1
}

#[test]
fn totals_resum_from_rows() {
    let mut checked = 0;
    for entry in std::fs::read_dir(golden()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["format"], "toric-report/1");
        let r = &v["result"];
        match v["command"].as_str().unwrap() {
            "brasselet" | "brasselet-ci" => checked += check_brasselet(r),
            "morse" => {
                for key in ["hypersurface", "complete_intersection"] {
                    if !r[key].is_null() {
                        checked += check_brasselet(&r[key]);
                    }
                }
                let corr: Vec<(String, BigInt)> = r["corrections"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .flat_map(|c| form(&c["contribution"]))
                    .collect();
                assert_eq!(normalize(corr), normalize(form(&r["correction_total"])), "{}", path.display());
            }
            "faces" => {
                assert_eq!(r["count"].as_u64().unwrap() as usize, r["faces"].as_array().unwrap().len());
            }
            _ => {}
        }
    }
    assert!(checked >= 5, "only {} Brasselet reports found", checked);
}

#[test]
fn input_echo_reparses() {
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(golden().join("cusp_c2--morse-l-g.json")).unwrap()).unwrap();
    let input = &v["input"];
    assert_eq!(input["lattice_rank"], 2);
    assert!(input["functions"]["g"]["terms"].as_array().unwrap().len() == 2);
}
