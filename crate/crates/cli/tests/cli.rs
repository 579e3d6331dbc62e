use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tsysteme"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = run(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

fn somos(dir: &Path) -> PathBuf {
    build(dir, "somos4.json", &["size1", "--coeffs", "-1,2,-1"])
}

fn belt(dir: &Path) -> PathBuf {
    build(
        dir,
        "a2belt.json",
        &["cartan-pair", "--a", "2,-1;-1,2", "--a2", "2,0;0,2"],
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_reports_shape() {
    let dir = TempDir::new().unwrap();
    let o = run(&["validate", p(&somos(dir.path()))]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().next(),
        Some("valid T-datum, size 1, σ=id, p=(4)")
    );
}

#[test]
fn finite_on_somos_is_infeasible() {
    let dir = TempDir::new().unwrap();
    let o = run(&["finite", p(&somos(dir.path())), "--bound", "12"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("simultaneous positivity: INFEASIBLE (Å₊ = [0])"),
        "{out}"
    );
    assert!(out.contains("no period up to 12"), "{out}");
}

#[test]
fn finite_on_belt() {
    let dir = TempDir::new().unwrap();
    let o = run(&["finite", p(&belt(dir.path()))]);
    let out = stdout(&o);
    assert!(out.contains("FEASIBLE (v = "), "{out}");
    assert!(
        out.contains("KD symmetric: yes, positive definite: yes"),
        "{out}"
    );
    assert!(out.contains("periodic with period 10"), "{out}");
}

#[test]
fn dilog_on_belt() {
    let dir = TempDir::new().unwrap();
    let o = run(&["dilog", p(&belt(dir.path()))]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("c_α = 0.800000000 ≈ 4/5"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn loop_and_dot() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("q.dot");
    let o = run(&["loop", p(&somos(dir.path())), "--dot", p(&dot)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("verify_loop: ok") && out.contains("duality identities: ok"),
        "{out}"
    );
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 1 + 2 + 3 + 1 + 2 + 1);
}

#[test]
fn evolve_somos_integers() {
    let dir = TempDir::new().unwrap();
    let o = run(&["evolve", p(&somos(dir.path())), "--steps", "11"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("1\t4\t(x2*x4 + x3^2)/(x1)\n")
            && out.contains("1\t5\t(x1*x4^2 + x2*x3*x4 + x3^3)/(x1*x2)\n"),
        "{out}"
    );
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn evolve_belt_principal() {
    let dir = TempDir::new().unwrap();
    let o = run(&[
        "evolve",
        p(&belt(dir.path())),
        "--steps",
        "6",
        "--coeffs",
        "principal",
    ]);
    assert!(
        stdout(&o).contains("2\t3\t(y1*y2*x1 + x2 + y1)/(x1*x2)"),
        "{}",
        stdout(&o)
    );
    let o = run(&[
        "evolve",
        p(&belt(dir.path())),
        "--steps",
        "6",
        "--coeffs",
        "principal",
        "--y",
    ]);
    assert!(stdout(&o).contains("1\t4\ty2^-1"), "{}", stdout(&o));
}

#[test]
fn tropical_table() {
    let dir = TempDir::new().unwrap();
    let o = run(&[
        "tropical",
        p(&somos(dir.path())),
        "--c",
        "1",
        "--window",
        "-4:5",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(rows.contains(&"1\t0\t-1".to_string()));
    assert!(rows.contains(&"1\t4\t1".to_string()));
    let o = run(&[
        "tropical",
        p(&somos(dir.path())),
        "--c",
        "2",
        "--window",
        "0:3",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn qseries_lines_and_checks() {
    let dir = TempDir::new().unwrap();
    let alpha2 = dir.path().join("alpha2.json");
    std::fs::write(
        &alpha2,
        r#"{"r": 1, "D": [1], "A_plus": [[[1, -1, 1]]], "A_minus": [[[1, 0, 1]]]}"#,
    )
    .unwrap();
    let o = run(&["qseries", p(&alpha2), "--order", "8"]);
    let o_text = stdout(&o);
    let body: Vec<&str> = o_text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(o_text.starts_with("# S_α ≅ 0"), "{o_text}");
    assert_eq!(
        &body[..5],
        &["0/1\t1", "1/1\t1", "2/1\t1", "3/1\t1", "4/1\t2"]
    );
    let o = run(&["qseries", p(&alpha2), "--order", "30", "--check", "eta"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("sector 0: PASS"));
    let o = run(&["qseries", p(&alpha2), "--order", "8", "--sector", "0"]);
    assert_eq!(
        stdout(&o),
        body.iter().map(|l| format!("{l}\n")).collect::<String>()
    );
    let o = run(&["qseries", p(&somos(dir.path())), "--order", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dual_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = build(
        dir.path(),
        "b2.json",
        &[
            "cartan-pair",
            "--a",
            "2,-2;-1,2",
            "--a2",
            "2,0;0,2",
            "--d",
            "2,1",
        ],
    );
    let o = run(&["dual", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["D"], serde_json::json!([1, 2]));
    let back = dir.path().join("dual.json");
    std::fs::write(&back, stdout(&o)).unwrap();
    let o = run(&["dual", p(&back)]);
    let w: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let orig: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(w["A_plus"], orig["A_plus"]);
    assert_eq!(w["D"], orig["D"]);
}

#[test]
fn builders_validate() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 5] = [
        &["size1", "--coeffs", "1,-2,1"],
        &["tadpole", "--r", "3"],
        &["tensor", "--x", "A3", "--y", "A2"],
        &["affinization", "--type", "F4", "--level", "2"],
        &["cartan-pair", "--a", "2,-1;-1,2", "--a2", "2,0;0,2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let f = build(dir.path(), &format!("{i}.json"), args);
        let o = run(&["validate", p(&f)]);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    }
    let tad = std::fs::read_to_string(dir.path().join("1.json")).unwrap();
    assert!(tad.contains("[[], [0, -1], [1, -1, 1]]"), "{tad}");
}

#[test]
fn errors_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"r\": 1,\n  \"D\": [1\n}").unwrap();
    let o = run(&["validate", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{"r": 1, "D": [1], "A_plus": [[[1, 1, 1]]], "A_minus": [[[1, 0, 1]]]}"#,
    )
    .unwrap();
    let o = run(&["validate", p(&broken)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(N1)"), "{}", stderr(&o));
    let o = run(&["validate", p(&bad), "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    let o = run(&["build", "size1", "--coeffs", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not palindromic"));
    let o = run(&["evolve", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inconsistent_residues_are_named() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("r.json");
    std::fs::write(
        &f,
        r#"{"r": 2, "D": [1, 1], "A_plus": [[[1, 0, 1], [0, -1]], [[0, -1], [1, 0, 1]]],
            "A_minus": [[[1, 0, 1], []], [[], [1, 0, 1]]], "R": {"t": 2, "residues": [0, 0]}}"#,
    )
    .unwrap();
    let o = run(&["validate", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(R1)"), "{}", stderr(&o));
}
