use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

fn model(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models");
    root.join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mts-spectrum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// The value fields of every TSV line starting with `key`.
fn field(out: &Output, key: &str) -> Vec<Vec<String>> {
    stdout(out)
        .lines()
        .filter_map(|l| {
            let mut parts = l.split('\t');
            (parts.next() == Some(key)).then(|| parts.map(str::to_string).collect())
        })
        .collect()
}

fn distance(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    field(out, "distance")[0][0].clone()
}

#[test]
fn fig_trace_distance() {
    let fig = model("fig.mts");
    assert_eq!(
        distance(&run(&[
            "dist", &fig, "trace-m", "--from", "{x}", "--to", "{y}"
        ])),
        "1/2"
    );
    assert_eq!(
        distance(&run(&[
            "dist", &fig, "trace-m", "--from", "{x}", "--to", "{x}"
        ])),
        "0"
    );
    assert_eq!(
        distance(&run(&[
            "dist", &fig, "trace-m", "--from", "{x}", "--to", "{}"
        ])),
        "1"
    );
    let brute = run(&[
        "--brute-delta",
        "dist",
        &fig,
        "trace-m",
        "--from",
        "{x}",
        "--to",
        "{y}",
    ]);
    assert_eq!(distance(&brute), "1/2");
}

#[test]
fn distances_on_sets() {
    let fig = model("fig.mts");
    let both = run(&["dist", &fig, "trace-m", "--from", "{x,y}", "--to", "{y}"]);
    assert_eq!(distance(&both), "1/2");
    assert_eq!(field(&both, "from")[0][0], "{x,y}");
    assert_eq!(
        distance(&run(&["dist", &fig, "bisim-m", "--from", "x", "--to", "x"])),
        "0"
    );
    assert_eq!(
        distance(&run(&[
            "dist", &fig, "sim-m", "--from", "{x}", "--to", "{}"
        ])),
        "1"
    );
}

#[test]
fn fig_trace_pair_not_related() {
    let out = run(&["equiv", &model("fig.mts"), "trace", "--pairs", "x:y"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "pair"), vec![vec!["x", "y", "not-related"]]);
}

#[test]
fn self_loop_bisim_is_reflexive_pair() {
    let out = run(&["equiv", &model("tiny.mts"), "bisim"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "pair"), vec![vec!["s", "s", "related"]]);
}

#[test]
fn failure_pairs_include_ready_pairs() {
    let pairs = |sem: &str| -> BTreeSet<Vec<String>> {
        let out = run(&["equiv", &model("fig.mts"), sem]);
        assert!(out.status.success());
        field(&out, "pair").into_iter().collect()
    };
    let (failure, ready) = (pairs("failure"), pairs("ready"));
    assert!(ready.is_subset(&failure));
    assert!(!ready.is_empty());
}

#[test]
fn game_at_half() {
    let out = run(&[
        "verify",
        &model("fig.mts"),
        "game",
        "--epsilon",
        "1/2",
        "--from",
        "{x}",
        "--to",
        "{y}",
    ]);
    assert!(out.status.success());
    let checks = field(&out, "check");
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0][0], "PASS");
    assert!(checks[0][2].starts_with("maiden_wins, consistent"));
    let quarter = run(&[
        "verify",
        &model("fig.mts"),
        "game",
        "--epsilon",
        "1/4",
        "--from",
        "{x}",
        "--to",
        "{y}",
    ]);
    assert!(quarter.status.success());
    assert!(field(&quarter, "check")[0][2].starts_with("death_wins, consistent"));
    let all = run(&["verify", &model("fig.mts"), "game", "--epsilon", "1/2"]);
    assert!(all.status.success());
    assert_eq!(field(&all, "check").len(), 81);
}

#[test]
fn hm_bisim_depth_two() {
    let out = run(&[
        "verify",
        &model("fig.mts"),
        "hm",
        "--fragment",
        "bisim-q",
        "--depth",
        "2",
    ]);
    assert!(out.status.success());
    let checks = field(&out, "check");
    for k in 0..=2 {
        let row = checks
            .iter()
            .find(|c| c[1] == format!("hm bisim-q k={k}"))
            .unwrap();
        assert_eq!(row[0], "PASS");
        assert!(row[2].contains("equal true"));
    }
}

#[test]
fn tiny_oracle_agrees() {
    let out = run(&["verify", &model("tiny.mts"), "oracle"]);
    assert!(out.status.success());
    let checks = field(&out, "check");
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c[0] == "PASS"));
}

#[test]
fn hierarchy_on_fig() {
    let out = run(&["verify", &model("fig.mts"), "hierarchy"]);
    assert!(out.status.success());
    assert!(field(&out, "check").iter().all(|c| c[0] == "PASS"));
}

#[test]
fn json_report_is_deterministic() {
    let args = [
        "--json",
        "dist",
        &model("fig.mts"),
        "ready-haus",
        "--from",
        "{x}",
        "--to",
        "{y}",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["kind"], "distance");
    assert_eq!(v["semantics"], "ready-haus");
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn eval_prints_every_state() {
    let out = run(&[
        "eval",
        &model("fig.mts"),
        "<0>true",
        "--fragment",
        "bisim-q",
    ]);
    assert!(out.status.success());
    let values = field(&out, "value");
    assert_eq!(values.len(), 9);
    assert!(values.contains(&vec!["x".to_string(), "true".to_string()]));
    assert!(values.contains(&vec!["y1".to_string(), "true".to_string()]));
    assert!(values.contains(&vec!["xp1".to_string(), "false".to_string()]));
}

#[test]
fn exit_codes() {
    let fig = model("fig.mts");
    assert_eq!(
        run(&["dist", &fig, "trace-m", "--from", "{x}", "--to", "{nope}"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["dist", &fig, "nonsense", "--from", "{x}", "--to", "{y}"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["equiv", "/nonexistent.mts", "bisim"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "--max-iter",
            "1",
            "dist",
            &fig,
            "trace-m",
            "--from",
            "{x}",
            "--to",
            "{y}"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(run(&["verify", &fig, "oracle"]).status.code(), Some(3));
    assert_eq!(
        run(&["eval", &fig, "not(true)", "--fragment", "sim-q"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_line() {
    let dir = std::env::temp_dir().join(format!("mts-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.mts");
    std::fs::write(&bad, "states: a\nalphabet: l\ntrans: a l b\n").unwrap();
    let out = run(&["equiv", bad.to_str().unwrap(), "bisim"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}
