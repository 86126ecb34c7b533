use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weaknull"))
}

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn report(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text
        .lines()
        .rev()
        .find(|l| l.contains("\"record\":\"report\""))
        .expect("report line");
    serde_json::from_str(line).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn corpus_passes() {
    let out = run(&["--format", "machine", "corpus"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8_lossy(&out.stdout);
    let items: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v["record"] == "corpus-item")
        .collect();
    assert!(items.len() >= 17);
    assert!(items.iter().all(|v| v["pass"] == true));
    let ids: Vec<&str> = items.iter().map(|v| v["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let r = report(&out);
    assert_eq!(r["result"]["failed"], 0);
}

#[test]
fn lower_shifted_blocks_are_null() {
    let out = run(&[
        "--format",
        "machine",
        "weaknull",
        example("dyadic_right.toml").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["result"]["verdict"]["verdict"], "null-certified");
    assert_eq!(
        r["result"]["verdict"]["scheme"]["scheme"],
        "disjoint-supports"
    );
    assert_eq!(r["status"], "definite");
}

#[test]
fn upper_shifted_blocks_are_not_null() {
    let out = run(&[
        "--format",
        "machine",
        "weaknull",
        example("dyadic_left.toml").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        report(&out)["result"]["verdict"]["verdict"],
        "non-null-certified"
    );
}

#[test]
fn ramp_at_points() {
    let cfg = example("ramp_at.toml");
    let cfg = cfg.to_str().unwrap();
    let inf = run(&["--format", "machine", "weaknull-at", cfg]);
    assert_eq!(
        report(&inf)["result"]["verdict"]["verdict"],
        "non-null-certified"
    );
    let finite = run(&["--format", "machine", "weaknull-at", cfg, "--x0", "-7/2"]);
    assert_eq!(finite.status.code(), Some(0), "{}", stderr(&finite));
    let r = report(&finite);
    assert_eq!(r["result"]["x0"], "-7/2");
    assert_eq!(r["result"]["verdict"]["verdict"], "null-certified");
}

#[test]
fn malformed_interval_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "bad.toml",
        "domain = \"(-1,1)\"\n\n[family]\nkind = \"indicator\"\nsets = \"[0, 1/2^(k+1)\"\n",
    );
    let out = run(&["weaknull", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let e = stderr(&out);
    assert!(e.contains("line 5, column"), "{e}");
}

#[test]
fn malformed_domain_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "bad.toml",
        "domain = \"(0,,1)\"\nfunction = \"(0,1): 1\"\n",
    );
    let out = run(&["essrange", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 1, column"), "{}", stderr(&out));
}

#[test]
fn unknown_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "bad.toml", "domain = \"(-1,1)\"\ncolour = 1\n");
    let out = run(&["essrange", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("unknown field"));
    let p = write(
        &dir,
        "bad2.toml",
        "domain = \"(-1,1)\"\n[family]\nkind = \"tent\"\nwidth = 2\n",
    );
    assert_eq!(
        run(&["weaknull", p.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn task_mismatch_is_an_input_error() {
    let out = run(&["essrange", example("restrict.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn inconclusive_has_its_own_status() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "inc.toml",
        "domain = \"(-1,1)\"\n[family]\nkind = \"indicator\"\nsets = \"[0, 1/k)\"\n",
    );
    let out = run(&["--format", "machine", "weaknull", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["status"], "inconclusive");
}

#[test]
fn failed_certificates_surface_verbatim() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "eng.toml",
        "domain = \"(-1,1)\"\n[family]\nkind = \"tent\"\n[[family.certificates]]\ntype = \"disjoint-supports\"\n",
    );
    let out = run(&["weaknull", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("certificate `disjoint-supports` failed"));
}

#[test]
fn replay_reproduces_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec![
            "weaknull".into(),
            example("dyadic_left.toml").display().to_string(),
        ],
        vec![
            "--budget-J".into(),
            "4".into(),
            "--subseq".into(),
            "odd;2,4,8,16".into(),
            "weaknull".into(),
            example("dyadic_right.toml").display().to_string(),
        ],
        vec![
            "essrange-at".into(),
            example("essrange.toml").display().to_string(),
        ],
        vec![
            "finite-model".into(),
            "--weights".into(),
            "1,0,2".into(),
            "--values".into(),
            "4,5,6".into(),
        ],
        vec![
            "restrict".into(),
            example("restrict.toml").display().to_string(),
        ],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut full = vec!["--format".to_string(), "machine".into()];
        full.extend(args.iter().cloned());
        let out = bin().args(&full).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        let path = write(
            &dir,
            &format!("r{i}.jsonl"),
            &String::from_utf8_lossy(&out.stdout),
        );
        let again = run(&["--format", "machine", "replay", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_slice(&again.stdout).unwrap();
        assert_eq!(v["identical"], true, "{args:?}: {v}");
    }
}

#[test]
fn replay_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "--format",
        "machine",
        "essrange-at",
        example("essrange.toml").to_str().unwrap(),
    ]);
    let mut r = report(&out);
    r["result"]["range"] = "{0}".into();
    let p = write(&dir, "t.jsonl", &r.to_string());
    let again = run(&["replay", p.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&again.stdout).contains("result"));
}

#[test]
fn finite_model_inline_and_file_agree() {
    let file = run(&[
        "--format",
        "machine",
        "finite-model",
        example("finite.toml").to_str().unwrap(),
    ]);
    assert_eq!(file.status.code(), Some(0), "{}", stderr(&file));
    let inline = run(&[
        "--format",
        "machine",
        "finite-model",
        "--weights",
        "1,1/2,0",
        "--values",
        "3,-1,7",
        "--measure",
        "1,-2,0",
    ]);
    let (a, b) = (report(&file), report(&inline));
    for key in [
        "zero_one_points",
        "extreme_points",
        "essential_range",
        "jordan",
    ] {
        assert_eq!(a["result"][key], b["result"][key], "{key}");
    }
    assert_eq!(
        a["result"]["essential_range"],
        serde_json::json!(["-1", "3"])
    );
    assert_eq!(a["result"]["rainwater"]["all_functionals"], true);
}

#[test]
fn restrict_example() {
    let out = run(&[
        "--format",
        "machine",
        "restrict",
        example("restrict.toml").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert!(r["result"]["hat"]
        .as_str()
        .unwrap()
        .starts_with("1*delta_1/2"));
    assert_eq!(r["result"]["singularity"]["point"], "1/2");
}

#[test]
fn flags_override_config_policy() {
    let out = run(&[
        "--format",
        "machine",
        "--budget-J",
        "3",
        "--alpha-grid",
        "1/2",
        "weaknull",
        example("dyadic_left.toml").to_str().unwrap(),
    ]);
    let r = report(&out);
    let ev = &r["result"]["verdict"]["evidence"];
    assert_eq!(ev["alphas"], serde_json::json!(["1/2"]));
    assert!(ev["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|row| row["j"].as_u64().unwrap() <= 3));
    let bad = run(&[
        "--alpha-grid",
        "0",
        "weaknull",
        example("dyadic_left.toml").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn usage_errors_are_input_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["weaknull"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
