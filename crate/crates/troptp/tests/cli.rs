//! End-to-end tests of the command-line binary: output shapes, exit codes,
//! and byte-stable determinism.

use std::process::{Command, Output};

use tempfile::TempDir;

fn write_file(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_troptp"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn trop_doc(rows: &[&str]) -> String {
    format!(
        "kind: trop-matrix\nrows: {}\ncols: {}\ndata:\n{}\n",
        rows.len(),
        rows[0].split_whitespace().count(),
        rows.join("\n")
    )
}

fn weight_doc(rows: &[&str]) -> String {
    format!(
        "kind: weight-matrix\nrows: {}\ncols: {}\ndata:\n{}\n",
        rows.len(),
        rows.len(),
        rows.join("\n")
    )
}

#[test]
fn classify_tp_and_tn_examples() {
    let dir = TempDir::new().unwrap();
    let tp = write_file(&dir, "tp.txt", &trop_doc(&["0 1", "2 5"]));
    let out = run(&["classify", &tp]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("TP: yes"));

    let tn = write_file(&dir, "tn.txt", &trop_doc(&["1 3", "4 6"]));
    let out = run(&["classify", &tn, "--oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("TP: no"));
    assert!(text.contains("TN(R): yes"));
    assert!(text.contains("witness minor {1,2}x{1,2} SignSingular"));
    assert!(text.contains("oracle agrees with adjacent check: yes"));

    let one = write_file(&dir, "one.txt", &trop_doc(&["0"]));
    assert!(stdout(&run(&["classify", &one])).contains("TP: yes"));
}

#[test]
fn classify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let garbage = write_file(&dir, "bad.txt", "kind: nonsense\n");
    assert_eq!(run(&["classify", &garbage]).status.code(), Some(2));

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        run(&["classify", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let rows: Vec<String> = (0..7).map(|_| vec!["0"; 7].join(" ")).collect();
    let row_refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    let big = write_file(&dir, "big.txt", &trop_doc(&row_refs));
    assert_eq!(run(&["classify", &big, "--oracle"]).status.code(), Some(3));
}

#[test]
fn weights_and_transfer_round_trip() {
    let dir = TempDir::new().unwrap();
    let a = write_file(&dir, "a.txt", &trop_doc(&["1 3", "4 6"]));
    let out = run(&["weights", &a]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 2\n3 6"));
    assert!(text.contains("strict trapeze: no"));
    assert!(text.contains("weak trapeze: yes"));

    // the weight document round-trips to the original TN matrix
    let wdoc = text.lines().take_while(|l| !l.starts_with("strict")).collect::<Vec<_>>().join("\n");
    let wfile = write_file(&dir, "w.txt", &format!("{wdoc}\n"));
    let out = run(&["transfer", &wfile]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), trop_doc(&["1 3", "4 6"]));

    // -inf input cannot be mapped to weights
    let inf = write_file(&dir, "inf.txt", &trop_doc(&["0 -inf", "-inf 0"]));
    assert_eq!(run(&["weights", &inf]).status.code(), Some(2));
}

#[test]
fn transfer_of_network_file() {
    let dir = TempDir::new().unwrap();
    let net = "kind: network\nnodes: s1 s2 a b t1 t2\nsources: s1 s2\ntargets: t1 t2\narcs:\n\
               s1 a 0\ns2 a 3\ns2 t2 7\na b 1\nb t1 0\nb t2 2\n";
    let f = write_file(&dir, "net.txt", net);
    let out = run(&["transfer", &f]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), trop_doc(&["1 3", "4 7"]));
}

#[test]
fn factor_outputs_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let tp = write_file(&dir, "tp.txt", &trop_doc(&["0 1", "2 5"]));
    let out = run(&["factor", &tp]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "b1 c1 c2 1 / params (2, 0, 5, 1)\n");

    let tn = write_file(&dir, "tn.txt", &trop_doc(&["1 3", "4 6"]));
    let out = run(&["factor", &tn]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not"));
}

#[test]
fn lift_reports_correspondence() {
    let dir = TempDir::new().unwrap();
    let w = write_file(&dir, "w.txt", &weight_doc(&["0 1", "2 5"]));
    let out = run(&["lift", &w]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(2,2): 1*t^5 + 1*t^3"));
    assert!(text.contains("entrywise val matches tropical transfer: yes"));
    assert!(text.contains("lifted matrix is TP over K: yes"));

    let rows: Vec<String> = (0..5)
        .map(|i| (0..5).map(|j| (i * j).to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let row_refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    let big = write_file(&dir, "big.txt", &weight_doc(&row_refs));
    assert_eq!(run(&["lift", &big]).status.code(), Some(3));
}

#[test]
fn export_dot_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let w = write_file(&dir, "w.txt", &weight_doc(&["4"]));
    let first = run(&["export-dot", &w]);
    assert!(first.status.success());
    let text = stdout(&first);
    assert!(text.starts_with("digraph G {"));
    assert!(text.contains("\"0_1\" -> \"1_1\" [label=\"4\"];"));
    assert!(text.contains("\"1_1\" -> \"2_1\";"));
    assert_eq!(first.stdout, run(&["export-dot", &w]).stdout);
}

#[test]
fn random_is_seeded_and_stable() {
    let a = run(&["random", "-n", "3", "--mode", "strict", "--seed", "7"]);
    let b = run(&["random", "-n", "3", "--mode", "strict", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["random", "-n", "3", "--mode", "strict", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with("kind: weight-matrix\nrows: 3\ncols: 3\ndata:\n"));
}

#[test]
fn mutate_prints_trace() {
    let dir = TempDir::new().unwrap();
    let w = run(&["random", "-n", "4", "--mode", "weak", "--seed", "3"]);
    let wfile = write_file(&dir, "w.txt", &stdout(&w));
    let out = run(&["mutate", &wfile, "--from", "3", "--to", "3", "--seed", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("path levels:"));
    assert!(text.contains("final weight:"));
    assert_eq!(out.stdout, run(&["mutate", &wfile, "--from", "3", "--to", "3", "--seed", "5"]).stdout);
}

#[test]
fn json_format_is_valid() {
    let dir = TempDir::new().unwrap();
    let tn = write_file(&dir, "tn.txt", &trop_doc(&["1 3", "4 6"]));
    let out = run(&["classify", &tn, "--oracle", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tp"], serde_json::json!(false));
    assert_eq!(v["tn_finite"], serde_json::json!(true));
    assert_eq!(v["witnesses"][0]["sign"], serde_json::json!("SignSingular"));

    let out = run(&["weights", &tn, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["weights"][1][1], serde_json::json!("6"));
    assert_eq!(v["strict_trapeze"], serde_json::json!(false));
}
