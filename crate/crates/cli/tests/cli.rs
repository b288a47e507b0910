use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = r#"
seed = 3

[[experiment]]
name = "square"
kind = "enumerate"
provider = { family = "cayley", group = "Z2" }
radius = 8
params = { n_max = 6 }
expect = { counts = [0, 0, 0, 1, 0, 4] }
"#;

fn cutset_lab(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cutset-lab"));
    cmd.args(args).env_remove("CUTSET_LAB_MAX_VERTICES").env_remove("CUTSET_LAB_MAX_STATES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn run_text(dir: &Path, config: &str, env: &[(&str, &str)]) -> Output {
    let path = dir.join("exp.toml");
    std::fs::write(&path, config).unwrap();
    let out = dir.join("out");
    cutset_lab(&["run", path.to_str().unwrap(), "--out", out.to_str().unwrap()], env)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn successful_run_writes_tables_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_text(dir.path(), SMALL, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = dir.path().join("out");
    let counts = std::fs::read_to_string(out.join("square/counts.csv")).unwrap();
    assert!(counts.starts_with("n,count,alpha_running\n1,0,\n"), "{counts}");
    let stream = std::fs::read_to_string(out.join("square/cutsets.tsv")).unwrap();
    assert_eq!(stream.lines().count(), 5);
    assert!(stream.starts_with("4\t"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["seed"], 3);
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn schema_errors_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_text(dir.path(), &SMALL.replace("radius = 8", "radius = 8\nradious = 9"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("radious"), "{}", stderr(&o));

    let o = run_text(dir.path(), &SMALL.replace("\"Z2\"", "\"Q2\""), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("experiment[0] (square).provider"), "{}", stderr(&o));

    let o = run_text(dir.path(), &SMALL.replace("params = { n_max = 6 }", ""), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("params.n_max is required"), "{}", stderr(&o));

    let o = cutset_lab(&["run", dir.path().join("missing.toml").to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_caps_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_text(dir.path(), SMALL, &[("CUTSET_LAB_MAX_VERTICES", "20")]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = run_text(dir.path(), SMALL, &[("CUTSET_LAB_MAX_STATES", "5")]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = run_text(dir.path(), SMALL, &[("CUTSET_LAB_MAX_STATES", "many")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn regressions_exit_4_after_writing_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_text(dir.path(), &SMALL.replace("[0, 0, 0, 1, 0, 4]", "[0, 0, 0, 1, 0, 5]"), &[]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL square/expected_counts"));
    assert!(dir.path().join("out/manifest.json").exists());
}

#[test]
fn list_providers_and_dump_window() {
    let o = cutset_lab(&["list-providers"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    for family in ["cayley", "hex", "tree", "dl"] {
        assert!(text.lines().any(|l| l.starts_with(family)), "{text}");
    }

    let o = cutset_lab(&["dump-window", "--family", "cayley", "--group", "Z2", "--radius", "1"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let dump = String::from_utf8(o.stdout).unwrap();
    assert_eq!(dump.lines().count(), 5);
    let first: Vec<&str> = dump.lines().next().unwrap().split('\t').collect();
    assert_eq!(first[1], "0");

    let o = cutset_lab(&["dump-window", "--family", "tree", "--degree", "3", "--radius", "2", "--dot"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("graph"));

    let o = cutset_lab(&["dump-window", "--family", "dl", "--radius", "2"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sampled = r#"
        seed = 42
        [[experiment]]
        name = "sampled"
        kind = "closeness-sup"
        provider = { family = "cayley", group = "Z2" }
        radius = 8
        params = { n_max = 6, oracle_samples = 40, oracle_max_size = 8 }
    "#;
    for d in [&a, &b] {
        assert_eq!(run_text(d.path(), sampled, &[]).status.code(), Some(0));
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("out/sampled/closeness_oracle.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
    let other = tempfile::tempdir().unwrap();
    run_text(other.path(), &sampled.replace("seed = 42", "seed = 43"), &[]);
    assert_ne!(read(&a), read(&other));
}
