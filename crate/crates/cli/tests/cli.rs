use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoweave")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_json() {
    let o = run(&["classify", &fixture("10-85-1.txt"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["species"], "36s");
    assert_eq!(v["M1"], 2);
    assert_eq!(v["N1"], 1);
    assert_eq!(v["order"], 10);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", &fixture("plain-weave.txt")]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "T=5\n00000\n00000\n00000\n00000\n").unwrap();
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent/design.txt"]).status.code(), Some(2));
    assert_eq!(run(&["halve", &fixture("5-1-1.txt"), "--a", "0", "--b", "0"]).status.code(), Some(1));
    assert_eq!(run(&["halve", &fixture("box-weave.txt"), "--a", "2", "--b", "0"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--order", "10", "--species", "99"]).status.code(), Some(2));
    assert_eq!(run(&["cube", "check", &fixture("13-45-1.txt")]).status.code(), Some(1));
}

#[test]
fn empty_order_has_notice() {
    let o = run(&["enumerate", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["designs"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("notice"));
}

#[test]
fn enumerate_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    let o = run(&["enumerate", "--order", "10", "--species", "39", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let d = &v["designs"].as_array().unwrap()[0];
    assert_eq!(d["species"], "39");
    assert_eq!(d["grid"].as_array().unwrap().len(), 10);
    assert_eq!(d["falls_apart"], false);
    // Same bytes on a second run.
    let again = run(&["enumerate", "--order", "10", "--species", "39"]);
    assert_eq!(stdout(&again).trim_end(), std::fs::read_to_string(&out).unwrap().trim_end());
}

#[test]
fn halve_box_weave() {
    let o = run(&["halve", &fixture("box-weave.txt"), "--a", "0", "--b", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "T=2\n10\n01\n");
}

#[test]
fn double_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.txt");
    let o = run(&["double", &fixture("10-93-1.txt")]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&p, stdout(&o)).unwrap();
    let o = run(&["classify", p.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["species"], "38");
}

#[test]
fn cube_commands() {
    let o = run(&["cube", "check", &fixture("10-93-1.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isonemal\ttrue"));
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("net.svg");
    let o = run(&["cube", "net", &fixture("10-93-1.txt"), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("stroke-dasharray").count(), 6);
}

#[test]
fn lattice_table() {
    let o = run(&["lattice", "table", "--max-area", "50"]);
    let text = stdout(&o);
    assert!(text.starts_with("area\tM\tN\tadmissible\treason\n5\t2\t1\tY\t\n"));
    assert!(text.contains("45\t6\t3\tN\tcommon factor 3\n"));
}

#[test]
fn render_is_deterministic() {
    let a = run(&["render", &fixture("10-93-1.txt")]);
    let b = run(&["render", &fixture("10-93-1.txt")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<svg"));
    let t = run(&["render", &fixture("plain-weave.txt"), "--ascii"]);
    assert_eq!(stdout(&t), "#.\n.#\n");
}
