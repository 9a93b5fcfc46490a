use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bhdual").chain(args.iter().copied());
    let code = bhdual_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    assert_eq!(out.lines().count(), 1, "{out}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn verify_fermat_cubic() {
    let (code, v) = run_json(&["verify", "x1^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["chi_reduced_f"], -2);
    assert_eq!(v["chi_reduced_dual"], 2);
    assert_eq!(v["sign"], -1);
    assert_eq!(v["theorem_holds"], true);

    let (code, text, _) = run(&["verify", "x1^3"]);
    assert_eq!(code, 0);
    assert!(text.contains("holds"));
}

#[test]
fn group_of_chain() {
    let (code, v) = run_json(&["group", "x1^2*x2 + x2^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 4);
    assert_eq!(v["invariant_factors"], serde_json::json!([4]));
    assert_eq!(v["generators"], serde_json::json!([{"k": [1, 2], "d": 4}]));
}

#[test]
fn singular_input_is_rejected() {
    let (code, out, err) = run(&["parse", "x1^2*x2^2 + x1*x2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("singular"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn input_errors() {
    assert_eq!(run(&["parse", "x1^3 + x1^3"]).0, 2);
    assert_eq!(run(&["parse", "x1^2 + x2^2 + x1*x2"]).0, 2);
    assert_eq!(run(&["parse", "x1^"]).0, 2);
    assert_eq!(run(&["verify", "x1^2 + x2^2", "-s", "1/3,0"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--group-cap", "0", "group", "x^2"]).0, 2);
    assert_eq!(
        run(&[
            "corpus",
            "--seed",
            "1",
            "--mode",
            "atomic",
            "--count",
            "1",
            "--exp-max",
            "1"
        ])
        .0,
        2
    );
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("corpus"));
    assert!(err.is_empty());
}

#[test]
fn caps_give_exit_three() {
    assert_eq!(run(&["--group-cap", "3", "group", "x1^2 + x2^2"]).0, 3);
    assert_eq!(
        run(&[
            "--pairs-cap",
            "2",
            "euler",
            "x1^2 + x2^2",
            "--method",
            "pairs"
        ])
        .0,
        3
    );
    assert_eq!(
        run(&["--subgroup-cap", "2", "subgroups", "x1^2 + x2^2"]).0,
        3
    );
}

#[test]
fn parse_reports_weights_and_type() {
    let (_, v) = run_json(&["parse", "x^2*y + y^3*z + z^4"]);
    assert_eq!(v["E"], serde_json::json!([[2, 1, 0], [0, 3, 1], [0, 0, 4]]));
    assert_eq!(v["det"], 24);
    assert_eq!(v["weights"], serde_json::json!(["3/8", "1/4", "1/4"]));
    assert_eq!(v["atomic"]["verdict"], "confirmed_nondegenerate");
    assert_eq!(v["atomic"]["blocks"][0]["type"], "chain");
}

#[test]
fn matrix_json_argument() {
    let (code, v) = run_json(&["group", r#"{"n": 2, "E": [[2, 0], [0, 2]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["invariant_factors"], serde_json::json!([2, 2]));
}

#[test]
fn subgroup_lattice() {
    let (_, v) = run_json(&["subgroups", "x1^2 + x2^2"]);
    assert_eq!(v["count"], 5);
    let (_, v) = run_json(&["subgroups", "x1^2*x2 + x2^2"]);
    assert_eq!(v["count"], 3);
}

#[test]
fn self_dual_subgroup() {
    let (_, v) = run_json(&["dual", "x1^2 + x2^2", "--subgroup", "1/2,1/2"]);
    assert_eq!(v["group_dual"]["order"], 2);
    assert_eq!(
        v["group_dual"]["generators"],
        serde_json::json!([{"k": [2, 2], "d": 4}])
    );
    let (_, v) = run_json(&["dual", "x1^2 + x2^2", "-s", "full"]);
    assert_eq!(v["group_dual"]["order"], 1);
    let (_, v) = run_json(&["dual", "x1^2 + x2^2", "-s", "trivial"]);
    assert_eq!(v["group_dual"]["order"], 4);
}

#[test]
fn euler_methods_agree() {
    let (code, v) = run_json(&[
        "euler",
        "x1^2*x2 + x2^2",
        "-s",
        "trivial",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    assert_eq!(v["strata"]["chi_reduced"], -3);
    assert_eq!(v["pairs"]["chi_reduced"], -3);
    assert_eq!(v["pairs"]["strata"], serde_json::json!([]));

    let (_, v) = run_json(&["euler", "x1^2 + x2^2"]);
    assert_eq!(v["chi_reduced"], -1);
    assert_eq!(v["method"], "strata");
}

#[test]
fn corpus_stream_is_deterministic() {
    let args = [
        "--output", "json", "corpus", "--seed", "11", "--mode", "sparse", "--count", "25",
        "--n-max", "4", "--verify",
    ];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);

    let lines: Vec<Value> = first
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 26);
    for (i, line) in lines[..25].iter().enumerate() {
        assert_eq!(line["schema"], 1);
        assert_eq!(line["index"], i);
        assert_eq!(line["checks"]["theorem_failures"], 0);
    }
    let summary = &lines[25]["summary"];
    assert_eq!(lines[25]["schema"], 1);
    assert_eq!(summary["count"], 25);
    assert_eq!(summary["all_hold"], true);
    assert_eq!(summary["failures"], 0);
}

#[test]
fn corpus_without_verification() {
    let (code, out, _) = run(&[
        "--output",
        "json",
        "corpus",
        "--seed",
        "1",
        "--mode",
        "atomic",
        "--count",
        "10",
        "--n-max",
        "3",
        "--exp-max",
        "4",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 11);
    assert!(lines[..10]
        .iter()
        .all(|l| l["verdict"] == "confirmed_nondegenerate" && l.get("checks").is_none()));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bhdual"))
}

#[test]
fn environment_caps_and_flag_precedence() {
    let out = binary()
        .args(["group", "x1^2 + x2^2"])
        .env("BHDUAL_GROUP_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let out = binary()
        .args(["--group-cap", "4", "group", "x1^2 + x2^2"])
        .env("BHDUAL_GROUP_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn binary_exit_codes() {
    let ok = binary().args(["verify", "x1^3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = binary()
        .args(["parse", "x1^2*x2^2 + x1*x2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&bad.stderr).lines().count(), 1);
}
