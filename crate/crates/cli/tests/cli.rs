use std::path::PathBuf;
use std::process::{Command, Output};

fn mcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcm")).args(args).output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn quiver_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.dot");
    let o = mcm(&["quiver", "--catalog", "ade:A3:dim1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let got = std::fs::read_to_string(out).unwrap();
    let want = std::fs::read_to_string(golden("quiver_a3_dim1.dot")).unwrap();
    assert_eq!(got, want);
}

#[test]
fn runs_are_byte_identical() {
    let args = ["verify", "--suite", "all", "--catalog", "ade:A2:dim1", "--catalog", "ade:A1:dim2"];
    let a = mcm(&args);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "2"]);
    let b = mcm(&parallel);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn symmetry_suite_passes_on_a3() {
    let o = mcm(&["verify", "--suite", "symmetry", "--catalog", "ade:A3:dim1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for check in ["link_twice", "dual_twice", "reverse_iso_dual", "reverse_iso_link", "syz3_syz1"] {
        assert!(text.contains(check), "{check}");
    }
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|l| l.split(',').nth(3) == Some("pass")));
}

#[test]
fn seed_is_recorded() {
    let o = mcm(&["quiver", "--catalog", "ade:A1:dim1", "--seed", "42", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    let o = mcm(&["betti", "--catalog", "ade:A2:dim1", "--entry", "M1", "--seed", "42", "-H", "4"]);
    assert!(stdout(&o).starts_with("# mcm betti seed=42 H=4"));
}

#[test]
fn resolve_writes_betti_csv() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(
        &m,
        r#"{ "ring": { "char": 7, "vars": ["x", "y"], "relations": ["x^2", "y^2"] },
             "named": "residue_field" }"#,
    )
    .unwrap();
    let o = mcm(&["resolve", "--module", m.to_str().unwrap(), "-H", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows[0], "i,beta,degrees");
    assert_eq!(rows[1..], ["0,1,0", "1,2,1 1", "2,3,2 2 2", "3,4,3 3 3 3"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"ring\": {\n    \"characteristic\": 7,\n    \"vars\": [\"x\"],,\n  }\n}").unwrap();
    let o = mcm(&["dual", "--module", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("parse error at 4:"), "{err}");

    // k over k[x,y]/(x^2,y^2) has no period
    let k = dir.path().join("k.json");
    std::fs::write(
        &k,
        r#"{ "ring": { "char": 7, "vars": ["x", "y"], "relations": ["x^2", "y^2"] },
             "named": "residue_field" }"#,
    )
    .unwrap();
    let o = mcm(&["period", "--module", k.to_str().unwrap(), "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(2));

    // a degree cap too small for the resolution
    let o = mcm(&["resolve", "--module", k.to_str().unwrap(), "--degree-bound", "3", "-H", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("inconclusive"));

    let o = mcm(&["quiver", "--catalog", "ade:A9:dim1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mf_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mf.json");
    let o = mcm(&["mf-extract", "--catalog", "ade:A4:dim1", "--entry", "M2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let mf = dir.path().join("f.json");
    std::fs::write(&mf, v["result"]["factorization"].to_string()).unwrap();
    let o = mcm(&["mf-validate", "--mf", mf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["result"]["valid"], true);
    assert_eq!(r["result"]["size"], 2);
}

#[test]
fn ci_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(
        &m,
        r#"{ "ring": { "char": 7, "vars": ["x", "y"], "relations": ["x^2", "y^2"] },
             "cyclic": ["x"] }"#,
    )
    .unwrap();
    let o = mcm(&["ci-operators", "--module", m.to_str().unwrap(), "-H", "8", "--perturb", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["lift_independent"], true);
    let o = mcm(&["support", "--module", m.to_str().unwrap(), "-H", "10"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["cx"], 1);
    assert_eq!(v["result"]["is_point"], true);
    assert_eq!(v["result"]["ann_window"][0], "t2");
}

#[test]
fn module_commands_emit_json() {
    for cmd in ["syzygy", "cosyzygy", "dual", "transpose", "link", "approx", "growth"] {
        let o = mcm(&[cmd, "--catalog", "ade:A2:dim2", "--entry", "M1", "-H", "6"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["command"], cmd);
    }
    let o = mcm(&["classify", "--catalog", "ade:A2:dim1", "--property", "ulrich"]);
    assert_eq!(o.status.code(), Some(0));
}
