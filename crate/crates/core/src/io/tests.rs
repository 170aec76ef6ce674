use super::*;

const ORBIT_C3: &str = r#"{
    "format": "toric-problem/1",
    "lattice_rank": 3,
    "dual_cone_generators": [[1,0,0],[0,1,0],[0,0,1]],
    "functions": {
        "l": {"generic_linear": true},
        "g": {"terms": [
            {"exp": [0,2,0], "coeff": "1"},
            {"exp": [3,0,0], "coeff": "-1"},
            {"exp": [2,0,2], "coeff": "-1"}
        ]}
    }
}"#;

const CUSP: &str = r#"{
    "lattice_rank": 2,
    "dual_cone_generators": [[1,0],[0,1]],
    "functions": {"f": {"terms": [{"exp": [2,0], "coeff": "1"}, {"exp": [0,3], "coeff": "1"}]}}
}"#;

fn run(text: &str, cmd: Command) -> ReportDocument {
    run_command(&cmd, &parse_problem(text).unwrap(), &Flags::default()).unwrap()
}

#[test]
fn morse_on_the_worked_example() {
    let doc = run(ORBIT_C3, Command::Morse { f: "l".into(), g: "g".into(), mode: None, refined: false });
    assert_eq!(
        doc.result()["outcome"]["text"],
        "Eu_Xg(origin) \u{2212} Eu_Xg(face{3}) = \u{2212}m"
    );
    assert!(doc.human().contains("result: Eu_Xg(origin) \u{2212} Eu_Xg(face{3}) = \u{2212}m"));
}

#[test]
fn brasselet_term_table() {
    let doc = run(CUSP, Command::Brasselet { f: "f".into() });
    let terms = doc.result()["terms"].as_array().unwrap();
    let c: Vec<&str> = terms.iter().map(|t| t["contribution"]["text"].as_str().unwrap()).collect();
    assert_eq!(c, vec!["2", "3", "\u{2212}6"]);
    assert_eq!(doc.result()["total"]["value"], -1);
}

#[test]
fn faces_of_the_octant() {
    let doc = run(ORBIT_C3, Command::Faces);
    assert_eq!(doc.result()["count"], 8);
    assert_eq!(doc.data["faces"].as_array().unwrap().len(), 8);
}

#[test]
fn errors_propagate() {
    let p = parse_problem(CUSP).unwrap();
    let e = run_command(&Command::Brasselet { f: "nope".into() }, &p, &Flags::default()).unwrap_err();
    assert_eq!(e, ToricError::UnknownFunction("nope".into()));
    let e = run_command(&Command::MilnorCn { g: "g".into(), mode: MilnorMode::Solve }, &parse_problem(ORBIT_C3).unwrap(), &Flags::default())
        .unwrap_err();
    assert_eq!(e.exit_code(), 2);
    let strict = Flags { strict_eu: true, parallel: None };
    let e = run_command(
        &Command::Morse { f: "l".into(), g: "g".into(), mode: None, refined: false },
        &parse_problem(ORBIT_C3).unwrap(),
        &strict,
    )
    .unwrap_err();
    assert!(matches!(e, ToricError::UnknownEu { .. }));
}

#[test]
fn deterministic_across_worker_counts() {
    let p = parse_problem(ORBIT_C3).unwrap();
    let cmd = Command::Morse { f: "l".into(), g: "g".into(), mode: Some(MorseMode::Combinatorial), refined: false };
    let one = run_command(&cmd, &p, &Flags { strict_eu: false, parallel: Some(1) }).unwrap();
    let four = run_command(&cmd, &p, &Flags { strict_eu: false, parallel: Some(4) }).unwrap();
    assert_eq!(one.json(), four.json());
    assert_eq!(one.human(), four.human());
}

#[test]
fn json_round_trip() {
    let doc = run(CUSP, Command::Brasselet { f: "f".into() });
    let back: Value = serde_json::from_str(&doc.json()).unwrap();
    assert_eq!(back, doc.data);
    let sum: i64 = back["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["contribution"]["value"].as_i64().unwrap())
        .sum();
    assert_eq!(back["result"]["total"]["value"].as_i64(), Some(sum));
}
