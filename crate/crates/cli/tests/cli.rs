use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn core_tests() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests")
}

fn fixture(name: &str) -> String {
    core_tests().join("fixtures").join(format!("{}.json", name)).display().to_string()
}

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("toric-cli-{}-{}.json", std::process::id(), name));
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn output_matches_golden_files() {
    let cases: [(&str, &str, Vec<&str>); 4] = [
        ("cusp_c2", "faces", vec!["faces"]),
        ("cusp_c2", "morse-l-g", vec!["morse", "--f", "l", "--g", "g"]),
        ("orbit_c3", "milnor-cn-g", vec!["milnor-cn", "--g", "g", "--relation"]),
        ("a1_germ", "brasselet-l", vec!["brasselet", "--f", "l"]),
    ];
    for (fx, label, args) in cases {
        let file = fixture(fx);
        let mut argv = vec![args[0], file.as_str()];
        argv.extend(&args[1..]);
        for (ext, json) in [("txt", false), ("json", true)] {
            let mut a = argv.clone();
            if json {
                a.insert(0, "--json");
            }
            let o = toric(&a);
            assert!(o.status.success(), "{:?}: {}", a, stderr(&o));
            let want = std::fs::read_to_string(core_tests().join("golden").join(format!("{}--{}.{}", fx, label, ext))).unwrap();
            assert_eq!(stdout(&o), want, "{:?}", a);
        }
    }
}

#[test]
fn worker_count_does_not_change_bytes() {
    let file = fixture("orbit_c3");
    let one = toric(&["--json", "--parallel", "1", "brasselet-ci", &file, "--f", "l", "--prior", "g"]);
    let four = toric(&["--json", "--parallel", "4", "brasselet-ci", &file, "--f", "l", "--prior", "g"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn json_report_carries_the_outcome() {
    let o = toric(&["--json", "morse", &fixture("cusp_c2"), "--f", "l", "--g", "g", "--combinatorial"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["format"], "toric-report/1");
    assert_eq!(v["command"], "morse");
    assert_eq!(v["result"]["mode"], "combinatorial");
    assert_eq!(v["result"]["outcome"]["m"], 1);
}

#[test]
fn relation_text_on_the_three_dimensional_example() {
    let o = toric(&["morse", &fixture("orbit_c3"), "--f", "l", "--g", "g"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result: Eu_Xg(origin) \u{2212} Eu_Xg(face{3}) = \u{2212}m\n"));
}

#[test]
fn schema_violations_exit_2() {
    let bad = scratch(
        "zero-exp",
        r#"{"lattice_rank": 2, "dual_cone_generators": [[1,0],[0,1]],
            "functions": {"f": {"terms": [{"exp": [2,0], "coeff": 1}, {"exp": [0,0], "coeff": 1}]}}}"#,
    );
    let o = toric(&["brasselet", &bad, "--f", "f"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("functions.f.terms[1]"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    let outside = scratch(
        "outside",
        r#"{"lattice_rank": 2, "dual_cone_generators": [[0,1],[2,1]],
            "functions": {"f": {"terms": [{"exp": [-1,1], "coeff": "1"}]}}}"#,
    );
    let o = toric(&["faces", &outside]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("outside"), "{}", stderr(&o));

    let o = toric(&["faces", "/nonexistent/problem.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hypothesis_violations_exit_2() {
    let o = toric(&["orbits", &fixture("cusp_c2"), "--g", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    // unknown Eu values survive on the three-dimensional example
    let o = toric(&["--strict-eu", "milnor-cn", &fixture("orbit_c3"), "--g", "g"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Eu"), "{}", stderr(&o));

    // the family f = x²+y³ + t·xy moves the Newton boundary
    let o = toric(&["family-check", &fixture("cusp_c2"), "--family", "f_bad", "--g-family", "g_s"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(1,1)"), "{}", stderr(&o));
}

#[test]
fn constancy_verdict_alone_is_a_report() {
    let o = toric(&["family-check", &fixture("cusp_c2"), "--family", "f_bad"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness: h_xy has support point (1,1)"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(toric(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(toric(&["morse", &fixture("cusp_c2"), "--f", "l"]).status.code(), Some(2));
    let o = toric(&["morse", &fixture("cusp_c2"), "--f", "l", "--g", "g", "--combinatorial", "--generic-linear"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn faces_are_addressed_one_based() {
    let o = toric(&["--json", "chi", &fixture("orbit_c3"), "--f", "l", "--face", "{3}"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["orbits"][0]["face"], "{3}");
    assert_eq!(v["result"]["orbits"][0]["chi"], 1);
}
