use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locfilter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn arg(s: &str) -> PathBuf {
    PathBuf::from(s)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn decompose_example(dir: &TempDir, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.path().join("schedule.json");
    let mut args = vec![arg("decompose")];
    args.extend(extra.iter().map(|s| arg(s)));
    args.extend([fixture("graph5.txt"), fixture("filter5.txt"), out.clone()]);
    let refs: Vec<&Path> = args.iter().map(PathBuf::as_path).collect();
    (run(&refs), out)
}

#[test]
fn decompose_reports_stats() {
    let dir = TempDir::new().unwrap();
    let (o, out) = decompose_example(&dir, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let line = stdout(&o);
    let fields: Vec<(&str, usize)> = line
        .split_whitespace()
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap();
            (k, v.parse().unwrap())
        })
        .collect();
    let keys: Vec<&str> = fields.iter().map(|f| f.0).collect();
    assert_eq!(
        keys,
        [
            "factors_raw",
            "factors_lifted",
            "factors_optimized",
            "bound"
        ]
    );
    assert!(fields[2].1 <= 12);
    assert_eq!(fields[3].1, 130);
    assert!(fs::read_to_string(out)
        .unwrap()
        .contains("\"order\": \"application\""));

    let (o, _) = decompose_example(&dir, &["--no-optimize"]);
    assert!(stdout(&o).contains("factors_optimized=32"));
    let (o, _) = decompose_example(&dir, &["--no-optimize", "--optimize"]);
    assert!(stdout(&o).contains("factors_optimized=9"));
}

#[test]
fn decompose_error_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.json");
    let disconnected = dir.path().join("split.txt");
    fs::write(&disconnected, "5\n1 2\n3 4\n4 5\n").unwrap();
    let o = run(&[
        &arg("decompose"),
        &disconnected,
        &fixture("filter5.txt"),
        &out,
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("node 3"));

    let o = run(&[
        &arg("decompose"),
        &fixture("graph5.txt"),
        &fixture("identity4.txt"),
        &out,
    ]);
    assert_eq!(o.status.code(), Some(4));

    let garbage = dir.path().join("bad.txt");
    fs::write(&garbage, "2\n1 x\n0 1\n").unwrap();
    let o = run(&[&arg("decompose"), &fixture("p3.txt"), &garbage, &out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn simulate_prints_output_signal() {
    let dir = TempDir::new().unwrap();
    let (_, schedule) = decompose_example(&dir, &[]);
    let trace = dir.path().join("trace.json");
    let o = run(&[
        &arg("simulate"),
        &schedule,
        &fixture("graph5.txt"),
        &fixture("e1.txt"),
        &arg("--trace"),
        &arg("--out"),
        &trace,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..5], ["0", "1", "2", "3", "4"]);
    assert!(lines[5].starts_with("rounds=9 messages="));
    let trace = fs::read_to_string(trace).unwrap();
    assert!(trace.contains("\"total_messages\""));
    assert!(trace.contains("\"values\""));

    let o = run(&[
        &arg("simulate"),
        &schedule,
        &fixture("graph5.txt"),
        &fixture("e1.txt"),
        &arg("--mode"),
        &arg("float"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0\n1\n2\n3\n4\n"));
}

#[test]
fn identity_schedule_echoes_input() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("id.json");
    let o = run(&[
        &arg("decompose"),
        &fixture("p3.txt"),
        &fixture("identity3.txt"),
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let x = dir.path().join("x.txt");
    fs::write(&x, "3\n7 -1/2 0.25\n").unwrap();
    let o = run(&[&arg("simulate"), &out, &fixture("p3.txt"), &x]);
    assert_eq!(stdout(&o), "7\n-1/2\n1/4\nrounds=1 messages=0\n");
}

#[test]
fn simulate_rejects_foreign_or_nonlocal_schedules() {
    let dir = TempDir::new().unwrap();
    let (_, schedule) = decompose_example(&dir, &[]);
    let o = run(&[
        &arg("simulate"),
        &schedule,
        &fixture("p3.txt"),
        &fixture("e1.txt"),
    ]);
    assert_eq!(o.status.code(), Some(5));

    let json = fs::read_to_string(&schedule).unwrap();
    let tampered = dir.path().join("tampered.json");
    let swap_1_3 = r#"{"kind": "swap", "i": 1, "j": 3, "stage": "x"}, "#;
    fs::write(
        &tampered,
        json.replacen("\"factors\": [", &format!("\"factors\": [{swap_1_3}"), 1),
    )
    .unwrap();
    let o = run(&[
        &arg("simulate"),
        &tampered,
        &fixture("graph5.txt"),
        &fixture("e1.txt"),
    ]);
    assert_eq!(o.status.code(), Some(6), "{}", stderr(&o));
}

#[test]
fn verify_round_trip_and_failures() {
    let dir = TempDir::new().unwrap();
    let (_, schedule) = decompose_example(&dir, &[]);
    let o = run(&[
        &arg("verify"),
        &fixture("graph5.txt"),
        &fixture("filter5.txt"),
        &schedule,
        &arg("--trials"),
        &arg("5"),
        &arg("--seed"),
        &arg("42"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&[
        &arg("verify"),
        &fixture("graph5.txt"),
        &fixture("filter5.txt"),
        &schedule,
        &arg("--mode"),
        &arg("float"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let other = dir.path().join("other.txt");
    fs::write(
        &other,
        "5\n0 0 0 0 0\n1 0 0 3 0\n2 5 0 0 0\n3 6 0 0 0\n4 0 0 4 7\n",
    )
    .unwrap();
    let o = run(&[&arg("verify"), &fixture("graph5.txt"), &other, &schedule]);
    assert_eq!(o.status.code(), Some(7));
    assert!(stderr(&o).contains("(5,5)"), "{}", stderr(&o));

    let json = fs::read_to_string(&schedule).unwrap();
    let truncated = dir.path().join("truncated.json");
    fs::write(&truncated, &json[..json.len() / 2]).unwrap();
    let o = run(&[
        &arg("verify"),
        &fixture("graph5.txt"),
        &fixture("filter5.txt"),
        &truncated,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn info_lines() {
    let o = run(&[&arg("info"), &fixture("graph5.txt")]);
    assert_eq!(
        stdout(&o),
        "n=5 edges=4 connected=true diameter=3 bound=130\n"
    );
    let o = run(&[&arg("info"), &fixture("p3.txt")]);
    assert_eq!(
        stdout(&o),
        "n=3 edges=2 connected=true diameter=2 bound=30\n"
    );
    let o = run(&[&arg("info"), &fixture("isolated2.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=2 edges=0 connected=false\n");
    let o = run(&[&arg("info"), &arg("--dot"), &fixture("graph5.txt")]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("3 -- 5;"));
}
