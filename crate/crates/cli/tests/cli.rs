use std::process::Command;

use serde_json::Value;
use theta_graded::coords::example_sl_2n1;
use theta_graded::expr::build::{mul, x, y};
use theta_graded::expr::Ctx;
use theta_graded::hom::{check_entry, listed_homs, verify_homs};
use theta_graded::module::catalog;
use theta_graded::sl::ThetaLabel;
use theta_graded_cli::{render_homs, Format};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_theta-graded"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, _) = run(args);
    (code, serde_json::from_str(&stdout).expect("valid JSON"))
}

#[test]
fn tables_n4_json_has_36_passing_cells() {
    let (code, v) = json(&["tables", "--n", "4", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 4);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 36);
    assert!(cells.iter().all(|c| c["pass"] == true));
    for key in ["row", "col", "expected", "computed", "pass"] {
        assert!(cells[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn tables_n3_has_25_cells() {
    let (code, stdout, _) = run(&["tables", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("25/25 cells match"));
}

#[test]
fn tables_json_matches_golden_files() {
    for n in ["3", "4"] {
        let (code, stdout, _) = run(&["tables", "--n", n, "--format", "json"]);
        assert_eq!(code, 0);
        let golden =
            std::fs::read_to_string(format!("{}/tests/golden/tables_n{n}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(stdout, golden, "tables --n {n} drifted from the golden file");
    }
}

#[test]
fn rank_outside_three_and_four_is_an_input_error() {
    for args in [
        &["tables", "--n", "5"][..],
        &["homs", "--n", "2"],
        &["example", "--name", "sl2n+1", "--n", "5"],
    ] {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(stderr.contains("n must be 3 or 4"), "{stderr}");
    }
}

#[test]
fn homs_are_all_verified() {
    for (n, count) in [("3", 22), ("4", 28)] {
        let (code, v) = json(&["homs", "--n", n, "--format", "json"]);
        assert_eq!(code, 0);
        assert_eq!(v["entries"].as_array().unwrap().len(), count);
        assert_eq!(v["verified"], count);
    }
}

#[test]
fn corrupted_hom_entry_fails_with_its_name() {
    let n = 4;
    let ctx = Ctx::new(n).unwrap();
    let mut report = verify_homs(n).unwrap();
    let mut entry = listed_homs(n).unwrap().remove(0);
    // xy is not traceless, so it does not map adj⊗adj into adj.
    entry.formulas = vec![mul(x(), y())];
    report.entries[0] = check_entry(&entry, &ctx);
    for format in [Format::Text, Format::Json] {
        let out = render_homs(&report, format);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains(&entry.name()), "{}", out.stdout);
    }
    let text = render_homs(&report, Format::Text).stdout;
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1);
}

#[test]
fn sl7_passes_every_check() {
    let (code, v) = json(&[
        "example", "--name", "sl2n+1", "--n", "3", "--check", "all", "--format", "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for prefix in [
        "coords",
        "roundtrip",
        "grading",
        "jacobi full (17296 triples)",
        "condition",
        "structure",
    ] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "missing {prefix}");
    }
}

#[test]
fn slnk_grading_passes() {
    let (code, stdout, _) = run(&[
        "example", "--name", "slnk", "--n", "4", "--k", "2", "--check", "grading",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("PASS  grading"));
}

#[test]
fn sampled_jacobi_is_deterministic_and_echoes_the_seed() {
    let args = [
        "example",
        "--name",
        "sl2n+1",
        "--n",
        "4",
        "--check",
        "jacobi",
        "--mode",
        "sampled",
        "--samples",
        "5000",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["entries"][0]["name"], "jacobi sampled (5000 triples)");
}

#[test]
fn unknown_example_and_check_are_input_errors() {
    assert_eq!(run(&["example", "--name", "sl5", "--n", "3"]).0, 2);
    assert_eq!(run(&["example", "--name", "slnk", "--n", "3", "--check", "bogus"]).0, 2);
    assert_eq!(
        run(&["example", "--name", "slnk", "--n", "4", "--check", "condition"]).0,
        2
    );
    assert_eq!(run(&["example", "--name", "slnk", "--n", "3", "--k", "0"]).0, 2);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let (code, stdout, _) = run(&[
        "tables",
        "--n",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 25);
}

#[test]
fn decompose_catalog_module() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    std::fs::write(&path, catalog(4, ThetaLabel::V).unwrap().to_json().to_string()).unwrap();
    let (code, v) = json(&["decompose", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["multiplicities"], serde_json::json!({"V": 1}));
}

#[test]
fn decompose_sl7_restriction() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl7.json");
    let m = example_sl_2n1(3).unwrap().restriction().unwrap();
    std::fs::write(&path, m.to_json().to_string()).unwrap();
    let (code, v) = json(&["decompose", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    // sl7 = adj⊗A + Lam⊗E + Lam'⊗E' + S⊗C + S'⊗C' + T⊗D with dims 2,3,3,1,1,2.
    assert_eq!(
        v["multiplicities"],
        serde_json::json!({"adj": 2, "Lam": 3, "Lam'": 3, "S": 1, "S'": 1, "T": 2})
    );
    assert_eq!(v["dim"], 48);
}

#[test]
fn decompose_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["decompose", bad.to_str().unwrap()]).0, 2);
    assert_eq!(
        run(&["decompose", dir.path().join("missing.json").to_str().unwrap()]).0,
        2
    );
}

#[test]
fn decompose_flags_constituents_outside_theta() {
    // adj⊗adj for n=4 contains constituents whose highest weight is not in Θ.
    let a = catalog(4, ThetaLabel::Adj).unwrap();
    let m = theta_graded::tensor::tensor(&a, &a).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gg.json");
    std::fs::write(&path, m.to_json().to_string()).unwrap();
    let (code, _, stderr) = run(&["decompose", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("outside"), "{stderr}");
}
