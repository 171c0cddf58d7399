use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn hyperdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdeg"))
        .args(args)
        .output()
        .unwrap()
}

fn hyperdeg_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperdeg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_exit_codes() {
    assert_eq!(code(&hyperdeg_stdin(&["decide", "-"], "3 4\n3 3 3 3\n")), 0);
    assert_eq!(code(&hyperdeg_stdin(&["decide", "-"], "3 4\n3 3 3 2\n")), 1);
    let o = hyperdeg_stdin(&["decide", "-"], "3 7\n3 3 3 3 3 3 3\n");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "yes\n"));

    let hard = r#"{"t":3,"degrees":[6,6,6,6,6,6,6,6,6,6,6,6,6,6,6,6,6,6,6,6],"alpha_prime":"1/2","alpha":"1/1"}"#;
    let o = hyperdeg_stdin(&["decide", "-"], hard);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("indeterminate"));
}

#[test]
fn gen_realize_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("d.json");
    let graph = dir.path().join("h.txt");
    let args = [
        "gen",
        "--n",
        "60",
        "--t",
        "3",
        "--alpha-prime",
        "4/5",
        "--alpha",
        "1/1",
        "--seed",
        "5",
        "--json",
    ];
    let o = hyperdeg(&args);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), stdout(&hyperdeg(&args)));
    std::fs::write(&inst, o.stdout).unwrap();

    assert_eq!(code(&hyperdeg(&["decide", path(&inst)])), 0);
    assert_eq!(
        code(&hyperdeg(&["realize", path(&inst), "-o", path(&graph)])),
        0
    );
    let o = hyperdeg(&["verify", path(&graph), path(&inst)]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "ok\n"));

    let other = dir.path().join("e.txt");
    std::fs::write(&other, "3 60\n".to_string() + &"5 ".repeat(60)).unwrap();
    assert_eq!(code(&hyperdeg(&["verify", path(&graph), path(&other)])), 1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&hyperdeg(&["frobnicate"])), 3);
    assert_eq!(code(&hyperdeg(&["decide"])), 3);
    assert_eq!(code(&hyperdeg(&["decide", "/nonexistent/instance.txt"])), 4);
    assert_eq!(code(&hyperdeg_stdin(&["decide", "-"], "3 4\n3 x 3 3\n")), 4);
    let o = hyperdeg_stdin(
        &["decide", "-", "--alpha-prime", "1/1", "--alpha", "1/2"],
        "3 3\n1 1 1\n",
    );
    assert_eq!(code(&o), 5);
    let o = hyperdeg_stdin(
        &["decide", "-", "--alpha-prime", "1/2", "--alpha", "1/1"],
        "3 3\n1 1 1\n",
    );
    assert_eq!(code(&o), 5);
    assert_eq!(
        code(&hyperdeg(&[
            "gen",
            "--n",
            "5",
            "--t",
            "3",
            "--alpha-prime",
            "0.5",
            "--alpha",
            "1"
        ])),
        3
    );
}

#[test]
fn reduce_then_gadget() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("d.txt");
    let cert = dir.path().join("cert.json");
    let gadget = dir.path().join("g.txt");
    std::fs::write(&inst, "3 5\n1 1 1 0 0\n").unwrap();
    let o = hyperdeg(&[
        "reduce",
        path(&inst),
        "--alpha-prime",
        "1/2",
        "--alpha",
        "1/1",
        "--certificate",
        path(&cert),
    ]);
    assert_eq!(code(&o), 0);
    let reduced = stdout(&o);
    assert!(reduced.starts_with("3 100\n396 396 396 396 396 31 31 31 30 30 10 "));

    assert_eq!(
        code(&hyperdeg(&["gadget", path(&cert), "-o", path(&gadget)])),
        0
    );
    assert!(std::fs::read_to_string(&gadget)
        .unwrap()
        .starts_with("3 100 1010\n"));
}

#[test]
fn lift_and_lbds() {
    let o = hyperdeg_stdin(&["lift", "-"], "3 4\n3 3 3 3\n");
    assert_eq!(stdout(&o), "4 5\n3 3 3 3 4\n");
    let o = hyperdeg_stdin(&["lift", "--hypergraph", "-"], "3 3 1\n0 1 2\n");
    assert_eq!(stdout(&o), "4 4 1\n0 1 2 3\n");
    let o = hyperdeg(&[
        "lbds",
        "--n",
        "10",
        "--delta",
        "2",
        "--max-degree",
        "7",
        "--sigma",
        "30",
    ]);
    assert_eq!(stdout(&o), "(7,7,2,2,2,2,2,2,2,2)\n");
}

#[test]
fn scan_is_byte_identical() {
    let args = [
        "scan",
        "--t",
        "3",
        "--n",
        "40,60",
        "--alpha-prime",
        "4/5,1/2",
        "--alpha",
        "1/1",
        "--trials",
        "3",
        "--seed",
        "9",
    ];
    let a = hyperdeg(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, hyperdeg(&args).stdout);
    let csv = stdout(&a);
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 3);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",0")));
}

#[test]
fn oracle_commands() {
    let o = hyperdeg(&[
        "oracle",
        "cross-validate",
        "--n",
        "4",
        "--t",
        "3",
        "--cap",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("disagreements 0"));
    let o = hyperdeg(&["oracle", "enumerate", "--n", "4", "--t", "3"]);
    assert_eq!(stdout(&o).lines().count(), 16);
    assert_eq!(
        code(&hyperdeg_stdin(
            &["oracle", "decide", "-", "--budget", "1"],
            "3 7\n3 3 3 3 3 3 3\n"
        )),
        2
    );
}
