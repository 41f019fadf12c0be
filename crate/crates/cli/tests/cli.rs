use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mdd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K33_MAX: &str = "p 0 objective max\n6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";

#[test]
fn solve_every_algorithm_on_k33() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k33.txt", K33_MAX);
    for algo in ["oracle", "logn", "cubic"] {
        let out = mdd(&["solve", s(&inst), "--algo", algo]);
        assert!(out.status.success(), "{algo}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("solution: 1 2"), "{algo}: {}", stdout(&out));
    }
    let cubic = stdout(&mdd(&["solve", s(&inst), "--algo", "cubic"]));
    assert!(cubic.contains("winner: degree 3"));
}

#[test]
fn solve_json_and_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k33.txt", K33_MAX);
    let sol = dir.path().join("sol.txt");
    let out = mdd(&["solve", s(&inst), "--algo", "oracle", "--json", "--out", s(&sol)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["solution"], serde_json::json!([1, 2]));
    let verdict = mdd(&["verify", s(&inst), s(&sol)]);
    assert!(verdict.status.success());
    assert!(stdout(&verdict).starts_with("feasible"));

    let bad = write(&dir, "bad.txt", "3\n");
    assert_eq!(mdd(&["verify", s(&inst), s(&bad)]).status.code(), Some(2));
    let with_p = write(&dir, "p.txt", "0 1\n");
    assert_eq!(mdd(&["verify", s(&inst), s(&with_p)]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k33.txt", K33_MAX);
    assert_eq!(mdd(&["solve", s(&inst), "--algo", "kreg-exact"]).status.code(), Some(2));
    assert_eq!(mdd(&["solve", s(&inst), "--algo", "unknown"]).status.code(), Some(4));
    assert_eq!(mdd(&["solve", s(&inst), "--algo", "oracle", "--budget", "3"]).status.code(), Some(3));
    let broken = write(&dir, "broken.txt", "p 0 objective max\n2 1\n1 1\n");
    assert_eq!(mdd(&["solve", s(&broken)]).status.code(), Some(4));
    assert_eq!(mdd(&["solve", "/nonexistent/file"]).status.code(), Some(4));
    let star = write(&dir, "star.txt", "p 0 objective max\n9 8\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n0 7\n0 8\n");
    let k8 = {
        let mut text = String::from("p 0 objective max\n8 28\n");
        for u in 0..8 {
            for v in u + 1..8 {
                text.push_str(&format!("{u} {v}\n"));
            }
        }
        write(&dir, "k8.txt", &text)
    };
    assert!(mdd(&["solve", s(&star), "--algo", "logn"]).status.success());
    assert_eq!(mdd(&["solve", s(&k8), "--algo", "logn", "--max-L", "2"]).status.code(), Some(3));
}

#[test]
fn kreg_exact_on_cycle() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", "p 0 objective min\n5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    let out = mdd(&["solve", s(&c5), "--algo", "kreg-exact"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("solution: 1 4"));
    let dual = mdd(&["solve", s(&c5), "--algo", "dual-logn"]);
    assert!(dual.status.success(), "{}", String::from_utf8_lossy(&dual.stderr));
}

#[test]
fn reduce_outputs_parse_back() {
    let dir = TempDir::new().unwrap();
    let edge = write(&dir, "edge.txt", "2 1\n0 1\n");
    let inst = dir.path().join("h.txt");
    let roles = dir.path().join("roles.txt");
    let out = mdd(&["reduce", "--from", "mindom", "--to", "mddmin", s(&edge), "--out", s(&inst), "--roles", s(&roles)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&inst).unwrap();
    assert!(text.starts_with("p 2 objective min\n9 "));
    assert_eq!(fs::read_to_string(&roles).unwrap().lines().count(), 9);
    let solved = mdd(&["solve", s(&inst), "--algo", "oracle"]);
    assert!(stdout(&solved).contains("size: 1"));

    let sys = write(&dir, "sys.txt", "2 2\n0\n1\n");
    for to in ["mddmin-bip", "mddmax-bip"] {
        let out = mdd(&["reduce", "--from", "setcover", "--to", to, s(&sys)]);
        assert!(out.status.success(), "{to}");
        let inst = write(&dir, "r.txt", &stdout(&out));
        assert!(stdout(&mdd(&["solve", s(&inst)])).contains("size: 2"), "{to}");
    }
    let k4 = write(&dir, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = mdd(&["reduce", "--from", "mindom", "--to", "cubic", s(&k4)]);
    let inst = write(&dir, "cubic.txt", &stdout(&out));
    assert!(stdout(&mdd(&["solve", s(&inst), "--algo", "cubic"])).contains("size: 3"));
    assert_eq!(mdd(&["reduce", "--from", "setcover", "--to", "cubic", s(&sys)]).status.code(), Some(4));
    let too_big = write(&dir, "one.txt", "1 1\n0\n");
    assert_eq!(mdd(&["reduce", "--from", "setcover", "--to", "mddmax-bip", s(&too_big)]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let a = stdout(&mdd(&["gen", "cubic", "--n", "12", "--seed", "5"]));
    let b = stdout(&mdd(&["gen", "cubic", "--n", "12", "--seed", "5"]));
    assert_eq!(a, b);
    assert!(a.starts_with("p 0 objective max\n12 18\n"));
    assert_eq!(mdd(&["gen", "regular", "--n", "5", "--k", "3"]).status.code(), Some(4));
    let sys = stdout(&mdd(&["gen", "setsystem", "--n", "4", "--t", "3", "--seed", "1"]));
    assert!(sys.starts_with("4 3\n"));
}

#[test]
fn bench_writes_reports() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "cfg.json",
        r#"{"family": {"kind": "cubic"}, "sizes": [8, 10], "instances_per_size": 2, "seed": 1,
            "algorithms": ["cubic", "oracle"]}"#,
    );
    let csv = dir.path().join("out.csv");
    let json = dir.path().join("out.json");
    let out = mdd(&["bench", "--config", s(&cfg), "--csv", s(&csv), "--json", s(&json)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 1 + 2 * 2 * 2);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["config"]["sizes"], serde_json::json!([8, 10]));

    let bad = write(&dir, "bad.json", r#"{"family": {"kind": "cubic"}, "sizes": [8], "algorithms": ["x"]}"#);
    assert_eq!(mdd(&["bench", "--config", s(&bad)]).status.code(), Some(4));
}

#[test]
fn subroutines() {
    let dir = TempDir::new().unwrap();
    let p4 = write(&dir, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    assert!(stdout(&mdd(&["subroutine", "dissociation", s(&p4)])).contains("size 1"));
    assert!(stdout(&mdd(&["subroutine", "domset", s(&p4)])).contains("size 2"));
    assert!(stdout(&mdd(&["subroutine", "fdep", s(&p4), "--cap", "2"])).contains("size 0"));
}
