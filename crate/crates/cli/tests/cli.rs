use cnot_dihedral::circuit::parse;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdg")).args(args).env("NO_COLOR", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn enumerate_counts() {
    let o = cdg(&["enumerate", "--m", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 96);
    let o = cdg(&["enumerate", "--m", "3", "--class", "cx-like", "--format", "keys"]);
    assert_eq!(stdout(&o).lines().count(), 216);
    let o = cdg(&["--json-lines", "enumerate", "--m", "4", "--class", "triple-cx"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 128);
    assert_eq!(lines[0]["class"], "triple-cx");
}

#[test]
fn enumerated_circuits_are_distinct_elements() {
    let o = cdg(&["enumerate", "--m", "3"]);
    let mut seen = std::collections::HashSet::new();
    for line in stdout(&o).lines() {
        let c = parse(&format!("qubits 2\nm 3\n{line}\n")).unwrap();
        assert!(seen.insert(c.evaluate()));
    }
    assert_eq!(seen.len(), 648);
}

#[test]
fn classify_swap() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "swap.txt", "qubits 2\nm 8\ncx 0 1; cx 1 0; cx 0 1\n");
    let o = cdg(&["classify", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("class    triple-cx\n"));
    let o = cdg(&["--json-lines", "classify", &f]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["params"], "class=triple-cx x0=0 x1=0 t0=0 t1=0 e=0");
}

#[test]
fn classify_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let corrupt = write(dir.path(), "bad.txt", "qubits 2\nm 8\ncx 0 0\n");
    assert_eq!(cdg(&["classify", &corrupt]).status.code(), Some(2));
    let three = write(dir.path(), "three.txt", "qubits 3\nm 8\ncx 0 2\n");
    assert_eq!(cdg(&["classify", &three]).status.code(), Some(2));
    assert_eq!(cdg(&["classify", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(cdg(&["enumerate", "--m", "0"]).status.code(), Some(2));
    assert_eq!(cdg(&["enumerate", "--m", "4", "--class", "quad-cx"]).status.code(), Some(2));
}

#[test]
fn generate_table_and_budget() {
    let o = cdg(&["generate", "--n", "2", "--m", "8", "--mode", "cx", "--rmax", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let sizes: Vec<&str> = text.lines().skip(1).take(4).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(sizes, ["256", "2048", "2816", "1024"]);
    assert!(text.contains("total 6144"));
    let o = cdg(&["--json-lines", "generate", "--n", "2", "--m", "8", "--mode", "cs", "--rmax", "6"]);
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[3]["total"], 1024);
    let o = cdg(&["generate", "--n", "3", "--m", "8", "--rmax", "3", "--budget", "5000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cost_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cs.txt", "qubits 2\nm 8\ncs 0 1 1\n");
    let o = cdg(&["cost", &f, "--mode", "cx"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("cx cost 2\n"));
    let witness = parse(text.split_once('\n').unwrap().1).unwrap();
    let target = parse("qubits 2\nm 8\ncs 0 1 1\n").unwrap();
    assert_eq!(witness.evaluate(), target.evaluate());
    assert_eq!(witness.gate_counts().cx, 2);
    let o = cdg(&["cost", &f, "--mode", "cs"]);
    assert!(stdout(&o).starts_with("cs cost 1\n"));
    let swap = write(dir.path(), "swap.txt", "qubits 2\nm 8\ncx 0 1\ncx 1 0\ncx 0 1\n");
    assert_eq!(cdg(&["cost", &swap, "--rmax", "2"]).status.code(), Some(1));
    assert_eq!(cdg(&["cost", &swap, "--mode", "cs"]).status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let o = cdg(&["verify", "--m", "8", "--n", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.split_whitespace().nth(1) == Some("pass")));
    let o = cdg(&["verify", "--m", "3", "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("skipped"));
    let o = cdg(&["verify", "--m", "4", "--class-costs"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mixed cs/cx optima: 0"));
    assert_eq!(cdg(&["verify", "--m", "4", "--n", "3", "--class-costs"]).status.code(), Some(2));
}

#[test]
fn rb_seq_files_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = cdg(&["rb-seq", "--length", "12", "--m", "8", "--seed", "99", "--count", "5", "--out", dir.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    for i in 0..5 {
        let name = format!("seq_{i:04}.txt");
        let ta = fs::read_to_string(a.path().join(&name)).unwrap();
        let tb = fs::read_to_string(b.path().join(&name)).unwrap();
        assert_eq!(ta, tb);
        assert!(parse(&ta).unwrap().evaluate().is_identity());
        assert_eq!(ta.matches("# element").count(), 12);
    }
    let o = cdg(&["rb-seq", "--length", "3", "--m", "8", "--seed", "99", "--count", "1"]);
    assert!(parse(&stdout(&o)).unwrap().evaluate().is_identity());
    assert_eq!(cdg(&["rb-seq", "--length", "0", "--m", "8"]).status.code(), Some(2));
}
