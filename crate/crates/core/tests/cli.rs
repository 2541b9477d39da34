use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffmatrix"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffmatrix-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const SOLVER_A: &str = "4 4 int\n-370 -62 -101 -3\n-708 -120 -193 -5\n-304 -50 -83 -3\n-1962 -336 -534 -12\n";

#[test]
fn decompose_prints_json() {
    let a = scratch("a.txt");
    fs::write(&a, "2 2 int\n2 1\n4 1\n").unwrap();
    let out = run(bin().args(["decompose", "--pivot", "first", "--reduce-factors", "rows+cols"]).arg(&a));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], 2);
}

#[test]
fn solve_and_reuse_kit() {
    let a = scratch("solver_a.txt");
    let b = scratch("solver_b.txt");
    let kit = scratch("kit.json");
    fs::write(&a, SOLVER_A).unwrap();
    fs::write(&b, "4 1 int\n0\n0\n1\n1\n").unwrap();
    let first = run(bin().arg("solve").arg("--save-kit").arg(&kit).arg(&a).arg(&b));
    assert!(first.contains("compatible true"));
    assert!(first.contains("particular 0 -37/6 25/6 -77/6"));
    let again = run(bin().arg("solve").arg("--kit").arg(&kit).arg(&b));
    assert_eq!(first, again);

    fs::write(&b, "4 1 int\n1\n0\n0\n1\n").unwrap();
    let bad = run(bin().arg("solve").arg("--kit").arg(&kit).arg(&b));
    assert!(bad.contains("compatible false"));
    assert!(bad.contains("residual 8"));
}

#[test]
fn bench_is_seeded() {
    let args = ["bench", "pivot-int", "--sizes", "4", "--trials", "6", "--seed", "3"];
    let one = run(bin().args(args).args(["--threads", "1"]));
    let two = run(bin().args(args).args(["--threads", "2"]));
    assert_eq!(one, two);
    assert!(one.starts_with("experiment,n,strategy,metric,mean,trials,seed\n"));
}

#[test]
fn rejects_bad_input() {
    let a = scratch("bad.txt");
    fs::write(&a, "2 2 int\n1 2\n").unwrap();
    let out = bin().arg("decompose").arg(&a).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
