use std::path::PathBuf;

use whalab::cli::{run, run_with_report};
use whalab::io::{load_bundle, load_wha};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["whalab"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn pentagon_on_fib_exits_zero() {
    assert_eq!(code(&["verify", "pentagon", "builtin:fib"]), 0);
}

#[test]
fn build_pointed_wha_writes_dim_27() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("H.json");
    let out_s = out.display().to_string();
    assert_eq!(code(&["build", "wha", "builtin:vec:Z3:q1", "--out", &out_s]), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"dim\": 27"));
    let (h, rep) = load_wha(&out).unwrap();
    assert_eq!(h.dim(), 27);
    assert!(rep.passed());
}

#[test]
fn fib_action_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (c, rep) = run_with_report(
        &["action", "builtin:fib", "--functor", "tau", "--max-degree", "3"],
        &dir.path().join("r.json"),
    );
    assert_eq!(c, 0);
    let rep = rep.unwrap();
    assert!(rep.pass);
    for name in ["grading", "module_algebra", "module_axiom"] {
        assert!(rep.checks.iter().any(|c| c.name == name && c.pass), "{name}");
    }
    assert_eq!(rep.inputs, vec!["builtin:fib".to_string()]);
    assert_eq!(rep.inputs_digest, load_bundle("builtin:fib").unwrap().digest);
}

#[test]
fn every_verify_subcommand_passes_on_builtins() {
    for sub in ["ring", "pentagon", "module-pentagon", "wha", "action"] {
        assert_eq!(code(&["verify", sub, "builtin:fib", "--max-degree", "2"]), 0, "{sub}");
    }
    assert_eq!(code(&["verify", "cocycle", "builtin:vec:Z4:q1"]), 0);
    assert_eq!(code(&["verify", "wha", "builtin:psu2:7"]), 0);
}

#[test]
fn fixture_corpus_exit_codes() {
    let cases = [
        ("fib.json", 0),
        ("z3_q1.json", 0),
        ("bad_pentagon.json", 1),
        ("dangling_index.json", 2),
        ("malformed.json", 2),
        ("unknown_field.json", 2),
        ("f_and_cocycle.json", 2),
    ];
    for (file, want) in cases {
        assert_eq!(code(&["verify", "pentagon", &fixture(file)]), want, "{file}");
    }
    assert_eq!(code(&["verify", "pentagon", "/no/such/bundle.json"]), 2);
}

#[test]
fn failing_report_names_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let (c, rep) = run_with_report(
        &["verify", "pentagon", &fixture("bad_pentagon.json")],
        &dir.path().join("r.json"),
    );
    assert_eq!(c, 1);
    let rep = rep.unwrap();
    assert!(!rep.pass);
    assert!(rep
        .checks
        .iter()
        .any(|c| c.name == "pentagon" && !c.pass && c.counterexample.is_some()));
}

#[test]
fn fixture_file_matches_builtin_digest() {
    let file = load_bundle(&fixture("fib.json")).unwrap();
    assert_eq!(file.digest, load_bundle("builtin:fib").unwrap().digest);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&["verify", "cocycle", "builtin:fib"]), 2);
    assert_eq!(code(&["action", "builtin:fib", "--functor", "sigma"]), 2);
    assert_eq!(code(&["verify", "ring", "builtin:vec:Q3"]), 2);
    assert_eq!(code(&["verify", "ring", "builtin:fib", "--tol", "-1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn quiver_json_has_fibonacci_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let out_s = out.display().to_string();
    assert_eq!(
        code(&[
            "quiver",
            "builtin:fib",
            "--functor",
            "tau",
            "--format",
            "json",
            "--max-degree",
            "4",
            "--out",
            &out_s
        ]),
        0
    );
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["adjacency"], serde_json::json!([[0, 1], [1, 1]]));
    let totals: Vec<u64> = v["graded_dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            m.as_array()
                .unwrap()
                .iter()
                .flat_map(|r| r.as_array().unwrap())
                .map(|x| x.as_u64().unwrap())
                .sum()
        })
        .collect();
    assert_eq!(totals, vec![2, 3, 5, 8, 13]);
}

#[test]
fn export_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let out_s = out.display().to_string();
    assert_eq!(code(&["export", "builtin:vec:Z3:q1:sum2", "--out", &out_s]), 0);
    let b = load_bundle(&out_s).unwrap();
    assert_eq!(b.module.rank(), 6);
    assert_eq!(b.digest, load_bundle("builtin:vec:Z3:q1:sum2").unwrap().digest);
}
