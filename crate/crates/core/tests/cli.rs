use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn fgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgc"))
        .args(args)
        .output()
        .unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn solve_two_vertex() {
    let path = data("two_vertex.fgc");
    let out = fgc(&[
        "solve",
        path.to_str().unwrap(),
        "--seed",
        "1",
        "--with-exact",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = &json_lines(&out)[0];
    assert_eq!(r["lp_value"], 2.0);
    assert_eq!(r["solution_cost"], 2.0);
    assert_eq!(r["ratio"], 1.0);
    assert_eq!(r["exact_cost"], 2.0);
    assert_eq!(r["seed"], 1);
    assert!(r["timings"]["lp_ms"].is_number());
}

#[test]
fn check_reports_witness() {
    let path = data("two_vertex.fgc");
    let out = fgc(&["check", path.to_str().unwrap(), "--edges", "u1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json_lines(&out)[0];
    assert_eq!(r["feasible"], false);
    assert_eq!(r["witness"], serde_json::json!([1]));

    let out = fgc(&["check", path.to_str().unwrap(), "--edges", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["feasible"], true);
}

#[test]
fn exact_triangle() {
    let out = fgc(&["exact", data("triangle_p1q0.fgc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["best_cost"], 2.0);
}

#[test]
fn lp_and_counts() {
    let path = data("triangle_p1q0.fgc");
    let out = fgc(&["lp", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert!((r["value"].as_f64().unwrap() - 1.5).abs() < 1e-9);

    let out = fgc(&["counts", path.to_str().unwrap(), "--alpha", "1"]);
    let r = &json_lines(&out)[0];
    assert_eq!(
        (r["count"].as_u64(), r["lambda"].as_f64()),
        (Some(3), Some(2.0))
    );
    let out = fgc(&[
        "counts",
        path.to_str().unwrap(),
        "--alpha",
        "1",
        "--mode",
        "contraction",
    ]);
    assert_eq!(json_lines(&out)[0]["count"], 3);
}

#[test]
fn gen_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["g.fgc", "g.json"] {
        let path = dir.path().join(name);
        let out = fgc(&[
            "gen",
            "--n",
            "6",
            "--m",
            "14",
            "--p",
            "2",
            "--seed",
            "7",
            "-o",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let out = fgc(&["solve", path.to_str().unwrap(), "--no-timings"]);
        assert_eq!(out.status.code(), Some(0));
        let r = &json_lines(&out)[0];
        assert!(r.get("timings").is_none());
        assert!(r["solution_cost"].as_f64().unwrap() >= r["lp_value"].as_f64().unwrap() - 1e-6);
    }
}

#[test]
fn bench_is_byte_identical() {
    let args = [
        "bench",
        "--suite",
        "n=4..6 m=10 p=1..2 q=0..1 seed=0..2",
        "--with-exact",
    ];
    let a = fgc(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_fgc"))
        .args(args)
        .env("FGC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines = json_lines(&a);
    assert_eq!(lines.len(), 36);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["item"], i);
        let (lp, opt, cost) = (
            l["lp_value"].as_f64().unwrap(),
            l["exact_cost"].as_f64().unwrap(),
            l["solution_cost"].as_f64().unwrap(),
        );
        assert!(lp <= opt + 1e-6 && opt <= cost + 1e-9, "{l}");
    }
}

#[test]
fn pretty_output() {
    let out = fgc(&[
        "--pretty",
        "exact",
        data("two_vertex.fgc").to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l.starts_with("best_cost") && l.ends_with("2.0")),
        "{text}"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let syntax = write("syntax.fgc", "fgc 1\nq 0\nnodes 2\n");
    let out = fgc(&["lp", &syntax]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`p`"));

    let looped = write("loop.fgc", "fgc 1\np 1\nq 0\nnodes 2\nedge 1 1 S 1\n");
    assert_eq!(fgc(&["lp", &looped]).status.code(), Some(2));

    let infeasible = write("bad.fgc", "fgc 1\np 2\nq 0\nnodes 2\nedge 0 1 S 1\n");
    assert_eq!(fgc(&["solve", &infeasible]).status.code(), Some(1));

    let mut big = String::from("fgc 1\np 1\nq 0\nnodes 2\n");
    for _ in 0..23 {
        big.push_str("edge 0 1 S 1\n");
    }
    let big = write("big.fgc", &big);
    assert_eq!(fgc(&["exact", &big]).status.code(), Some(3));

    assert_eq!(fgc(&["solve"]).status.code(), Some(2));
    assert_eq!(fgc(&["bench", "--suite", "n=4"]).status.code(), Some(2));
}
