use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypercover"));
    cmd.env_remove("HYPERCOVER_THREADS");
    cmd
}

fn toy() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/toy.txt")
}

fn run_ok(args: &[&str]) -> Value {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn run_err(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(!out.status.success(), "expected failure for {args:?}");
    out
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn dta_on_the_toy_hypergraph() {
    let toy = toy();
    let record = run_ok(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy.to_str().unwrap(),
        "--k",
        "2",
        "--eps",
        "0.2",
    ]);
    assert_eq!(record["schema"], "hypercover.run/1");
    assert_eq!(record["solution"], serde_json::json!([10, 16]));
    let cert = &record["certificate"];
    let ratio = cert["ratio"].as_f64().unwrap();
    assert!(ratio >= 1.0 - (-1f64).exp() - 0.2 - 1e-12, "{cert}");
    assert!(cert["lb"].as_f64().unwrap() <= cert["ub"].as_f64().unwrap());
    let elements = record["peak_sketch_elements"].as_u64().unwrap();
    assert_eq!(record["peak_sketch_bytes"].as_u64().unwrap(), 8 * elements);
    assert_eq!(record["config"]["seed"], 42);
    assert_eq!(record["config"]["bound"], "req");
    assert!((record["config"]["effective_delta"].as_f64().unwrap() - 0.1).abs() < 1e-12);
}

#[test]
fn rerun_from_echoed_config_is_identical() {
    let toy = toy();
    let toy = toy.to_str().unwrap();
    let base = [
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy,
        "--k",
        "3",
        "--algo",
        "bca",
        "--seed",
        "7",
    ];
    let serial = run_ok(&[&base[..], &["--workers", "1"]].concat());
    let parallel = run_ok(&[&base[..], &["--workers", "4"]].concat());
    for key in [
        "solution",
        "covered",
        "samples",
        "z_used",
        "peak_sketch_elements",
    ] {
        assert_eq!(serial[key], parallel[key], "{key}");
    }
    let out = bin()
        .args(base)
        .env("HYPERCOVER_THREADS", "3")
        .output()
        .unwrap();
    let env_run: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env_run["config"]["effective_workers"], 3);
    assert_eq!(env_run["solution"], serial["solution"]);
}

#[test]
fn epsilon_outside_the_guarantee_range_fails() {
    let toy = toy();
    let out = run_err(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy.to_str().unwrap(),
        "--k",
        "2",
        "--eps",
        "0.9",
    ]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("epsilon"), "{msg}");
}

#[test]
fn invalid_combinations_fail_before_loading() {
    let missing = "/nonexistent/hypercover/input.txt";
    for args in [
        &[
            "run",
            "--problem",
            "domset",
            "--graph",
            missing,
            "--k",
            "2",
            "--algo",
            "exact",
        ][..],
        &[
            "run",
            "--problem",
            "explicit",
            "--graph",
            missing,
            "--algo",
            "budgeted-dta",
        ],
        &[
            "run",
            "--problem",
            "explicit",
            "--graph",
            missing,
            "--k",
            "2",
            "--retain-full-sketch",
        ],
        &["run", "--problem", "explicit", "--graph", missing],
    ] {
        let out = run_err(args);
        let msg = String::from_utf8_lossy(&out.stderr);
        assert!(!msg.contains("i/o error"), "validated too late: {msg}");
    }
    run_err(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        missing,
        "--k",
        "2",
    ]);
}

#[test]
fn retained_full_sketch_is_larger_with_a_dominant_node() {
    let dir = tempfile::tempdir().unwrap();
    // node 0 sits in 9 of every 10 hyperedges
    let mut body = String::new();
    for j in 0..100 {
        if j % 10 == 9 {
            body.push_str(&format!("{} {}\n", 1 + j % 7, 8 + j % 5));
        } else {
            body.push_str(&format!("0 {} {}\n", 1 + j % 7, 8 + j % 5));
        }
    }
    let path = write(&dir, "dominant.txt", &body);
    let record = run_ok(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        &path,
        "--k",
        "8",
        "--algo",
        "bca",
        "--z",
        "400",
        "--retain-full-sketch",
    ]);
    let full = &record["full_sketch"];
    let reduced = record["peak_sketch_elements"].as_u64().unwrap();
    assert!(
        full["peak_sketch_elements"].as_u64().unwrap() > 2 * reduced,
        "{record}"
    );
    assert_eq!(full["solution"], record["solution"]);
    assert_eq!(full["covered"], record["covered"]);
    assert_eq!(record["solution"][0], 0);
    assert!(full["reduction_factor"].as_f64().unwrap() > 2.0);
    assert!(full["greedy_covered"].as_u64().unwrap() >= record["covered"].as_u64().unwrap());
}

#[test]
fn exact_and_greedy_full_on_the_toy() {
    let toy = toy();
    let toy = toy.to_str().unwrap();
    let exact = run_ok(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy,
        "--k",
        "2",
        "--algo",
        "exact",
    ]);
    assert_eq!(exact["samples"], 12);
    assert_eq!(exact["covered"], 8);
    let greedy = run_ok(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy,
        "--k",
        "2",
        "--algo",
        "greedy-full",
        "--z",
        "50",
    ]);
    assert_eq!(greedy["solution"].as_array().unwrap().len(), 2);
    let dir = tempfile::tempdir().unwrap();
    let costs = write(&dir, "costs.txt", "10 5\n16 1\n17 1\n");
    let budgeted = run_ok(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy,
        "--algo",
        "exact",
        "--costs",
        &costs,
        "--budget",
        "2",
    ]);
    assert!(budgeted["cost"].as_f64().unwrap() <= 2.0);
}

#[test]
fn budgeted_dta_respects_the_budget() {
    let toy = toy();
    let dir = tempfile::tempdir().unwrap();
    let costs = write(&dir, "costs.txt", "# id cost\n10 2.5\n16 0.5\n20 1\n");
    let record = run_ok(&[
        "run",
        "--problem",
        "explicit",
        "--graph",
        toy.to_str().unwrap(),
        "--algo",
        "budgeted-dta",
        "--costs",
        &costs,
        "--budget",
        "2",
        "--eps",
        "0.2",
    ]);
    assert!(record["cost"].as_f64().unwrap() <= 2.0 + 1e-9);
    assert!(!record["solution"]
        .as_array()
        .unwrap()
        .contains(&Value::from(10)));
}

#[test]
fn graph_problems_run_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("ba.txt");
    run_ok(&[
        "gen",
        "--kind",
        "ba",
        "--n",
        "200",
        "--m",
        "2",
        "--out",
        graph.to_str().unwrap(),
    ]);
    let graph = graph.to_str().unwrap();
    for problem in ["domset", "im", "landmark"] {
        let record = run_ok(&[
            "run",
            "--problem",
            problem,
            "--graph",
            graph,
            "--k",
            "3",
            "--eps",
            "0.3",
        ]);
        assert_eq!(record["solution"].as_array().unwrap().len(), 3, "{problem}");
        assert!(
            record["certificate"].is_object() || record["rounds"].is_array(),
            "{problem}"
        );
    }
}

#[test]
fn eval_of_every_node_is_full_coverage() {
    let dir = tempfile::tempdir().unwrap();
    let all = write(&dir, "all.txt", "10\n11\n12\n13\n14\n15\n16\n17\n20\n21\n");
    let toy = toy();
    let record = run_ok(&[
        "eval",
        "--problem",
        "explicit",
        "--graph",
        toy.to_str().unwrap(),
        "--solution",
        &all,
    ]);
    assert_eq!(record["schema"], "hypercover.eval/1");
    assert_eq!(record["estimate"]["mean"], 1.0);
    assert_eq!(record["exact"], 1.0);
}

#[test]
fn eval_interval_contains_the_exact_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let opt = write(&dir, "opt.txt", "10\n16\n");
    let toy = toy();
    let record = run_ok(&[
        "eval",
        "--problem",
        "explicit",
        "--graph",
        toy.to_str().unwrap(),
        "--solution",
        &opt,
        "--eps",
        "0.05",
    ]);
    let truth = 8.0 / 12.0;
    assert_eq!(record["exact"].as_f64().unwrap(), truth);
    let est = &record["estimate"];
    assert!(
        est["lb"].as_f64().unwrap() <= truth && truth <= est["ub"].as_f64().unwrap(),
        "{est}"
    );
}

#[test]
fn eval_scales_graph_problems() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(&dir, "star.txt", "0 1\n0 2\n0 3\n0 4\n");
    let center = write(&dir, "center.txt", "0\n");
    let domset = run_ok(&[
        "eval",
        "--problem",
        "domset",
        "--graph",
        &graph,
        "--solution",
        &center,
        "--hops",
        "1",
    ]);
    assert_eq!(domset["estimate"]["mean"], 1.0);
    assert_eq!(domset["scaled"]["mean"], 5.0);
    let landmark = run_ok(&[
        "eval",
        "--problem",
        "landmark",
        "--graph",
        &graph,
        "--solution",
        &center,
    ]);
    assert_eq!(landmark["scaled"]["factor"], 1.0);
    assert_eq!(landmark["estimate"]["mean"], 1.0);
}

#[test]
fn eval_rejects_bad_solution_files() {
    let dir = tempfile::tempdir().unwrap();
    let toy = toy();
    let toy = toy.to_str().unwrap();
    let empty = write(&dir, "empty.txt", "# nothing\n\n");
    run_err(&[
        "eval",
        "--problem",
        "explicit",
        "--graph",
        toy,
        "--solution",
        &empty,
    ]);
    let unknown = write(&dir, "unknown.txt", "10\n999\n");
    let out = run_err(&[
        "eval",
        "--problem",
        "explicit",
        "--graph",
        toy,
        "--solution",
        &unknown,
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("999"));
}

#[test]
fn gen_counts_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("path.txt");
    let record = run_ok(&[
        "gen",
        "--kind",
        "path",
        "--n",
        "5",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(record["edges"], 4);
    assert_eq!(std::fs::read_to_string(&p).unwrap().lines().count(), 4);

    let ba = run_ok(&[
        "gen",
        "--kind",
        "ba",
        "--n",
        "1000",
        "--m",
        "3",
        "--out",
        dir.path().join("ba").to_str().unwrap(),
    ]);
    assert_eq!(ba["edges"], 3 * (1000 - 3) + 3);

    let er = |seed: &str| {
        let out = bin()
            .args([
                "gen", "--kind", "er", "--n", "100", "--p", "0.05", "--seed", seed,
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(er("3"), er("3"));
    assert_ne!(er("3"), er("4"));
    run_err(&["gen", "--kind", "ba", "--n", "10"]);
    run_err(&["gen", "--kind", "path", "--n", "10", "--p", "0.1"]);
}
