use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slnfoam")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_dotted_theta() {
    let o = run(&["eval", &data("theta112_dotted.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("value: -1\n"), "{out}");
    assert!(out.contains("colorings: 2"));
    assert!(out.contains("0 failed"));
}

#[test]
fn eval_torus() {
    let o = run(&["eval", &data("torus1_n3.json"), "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("value: 3\n"));
}

#[test]
fn eval_rejects_wrong_n() {
    let o = run(&["eval", &data("torus1_n3.json"), "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_file_reports_location() {
    let o = run(&["eval", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("malformed.json: line 7, column 18"), "{err}");
}

#[test]
fn invalid_foam_is_reported() {
    let text = std::fs::read_to_string(data("theta112_dotted.json")).unwrap();
    let bad = text.replacen("\"label\": 2", "\"label\": 3", 1);
    let dir = std::env::temp_dir().join(format!("slnfoam-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_label.json");
    std::fs::write(&path, bad).unwrap();
    let o = run(&["eval", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid foam"), "{}", stderr(&o));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn degree_of_a_file() {
    let o = run(&["degree", &data("suspension111_n4.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "degree: -12\n");
}

#[test]
fn lr_examples() {
    for (args, want) in [(["[1]", "[]", "[1]", "1", "1"], "c^[1]_{[1],[]}"), (["[1]", "[1]", "[2]", "2", "2"], "c^[2]_{[1],[1]}")] {
        let mut v = vec!["lr"];
        v.extend(args);
        let o = run(&v);
        assert!(o.status.success());
        let out = stdout(&o);
        assert!(out.contains("foam: 1\n") && out.contains("oracle: 1\n"), "{out}");
        assert!(out.contains(&format!("pass {want}: expected 1, got 1")), "{out}");
    }
    let o = run(&["lr", "[1]", "[1]", "[1]", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn relation_suite_passes_at_n2() {
    let o = run(&["check", "relations", "--n", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("pass neck-cutting(1) idempotents"));
    assert!(out.ends_with("0 failed\n"));
}

#[test]
fn kempe_suite_passes_at_n3() {
    let o = run(&["check", "kempe", "--n", "3"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn gram_suite() {
    let o = run(&["check", "gram", "--theta", "1,1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("pass θ(1,1,1) 6×6: expected identity, got identity"));
    let o = run(&["gram", "--theta", "1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("row ([]): [1, 0]"));
}

#[test]
fn unknown_suite_is_an_error() {
    let o = run(&["check", "nonsense"]);
    assert!(!o.status.success());
}

#[test]
fn moy_counts() {
    let o = run(&["moy-count", &data("theta121.moy.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("colorings: 12\n"));
    let o = run(&["moy-count", "--circle", "2", "--n", "4"]);
    assert!(stdout(&o).contains("graded rank at q=1: expected 6, got 6"));
}

#[test]
fn structure_constants_of_the_unit() {
    let o = run(&["struct-const", "--theta", "1,1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c[[],[]]: 1\n");
}

#[test]
fn json_report_shape() {
    let o = run(&["check", "gram", "--theta", "1,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "check gram");
    assert!(v["config"]["seed"].is_u64());
    let case = &v["cases"][0];
    for key in ["id", "expected", "got", "status", "millis"] {
        assert!(case.get(key).is_some(), "missing {key}");
    }
    assert_eq!(case["status"], "pass");
}

#[test]
fn reports_are_reproducible_across_runs_and_jobs() {
    for args in [
        vec!["check", "relations", "--n", "2", "--format", "json"],
        vec!["check", "kempe", "--n", "2", "--format", "json"],
        vec!["eval", &data("suspension111_n4.json"), "--format", "json", "--seed", "7"],
    ] {
        let mut base = run(&args).stdout;
        for jobs in ["1", "3"] {
            let mut a = args.clone();
            a.extend(["--jobs", jobs]);
            let again = run(&a).stdout;
            assert_eq!(String::from_utf8_lossy(&base), String::from_utf8_lossy(&again), "{args:?} --jobs {jobs}");
            base = again;
        }
    }
}

#[test]
fn seed_changes_the_specialization_point() {
    let a = stdout(&run(&["eval", &data("torus1_n3.json"), "--seed", "1"]));
    let b = stdout(&run(&["eval", &data("torus1_n3.json"), "--seed", "2"]));
    assert_ne!(a, b);
    assert!(a.contains("0 failed") && b.contains("0 failed"));
}
