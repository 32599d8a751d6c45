//! End-to-end tests of the `subsel` binary: exit codes, flag validation,
//! output formats, and determinism of the written artifacts.

use std::path::Path;
use std::process::{Command, Output};

fn subsel(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsel"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_csv(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn select_ipm_writes_k_indices() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(
        dir.path(),
        "a.csv",
        "3,0,0\n0,2,0\n0,0,1\n2.9,0.1,0\n0,1.9,0.2\n",
    );
    let out = subsel(
        &[
            "select", "--method", "ipm", "--k", "3", "--input", &input, "--output", "r.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["indices"].as_array().unwrap().len(), 3);
}

#[test]
fn uniform_on_ten_rows_picks_ends() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..10).map(|i| format!("{i},1\n")).collect();
    let input = write_csv(dir.path(), "a.csv", &rows);
    let out = subsel(
        &[
            "select", "--method", "uniform", "--k", "2", "--input", &input, "--output", "u.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("u.json")).unwrap()).unwrap();
    assert_eq!(doc["indices"], serde_json::json!([0, 9]));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "a.csv", "1,0\n0,1\n");

    // ipm-compound without --scores
    let out = subsel(
        &[
            "select",
            "--method",
            "ipm-compound",
            "--k",
            "1",
            "--input",
            &input,
            "--output",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // unknown method
    let out = subsel(
        &[
            "select", "--method", "nonsense", "--k", "1", "--input", &input, "--output", "r.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // ipm without any stopping criterion
    let out = subsel(
        &[
            "select", "--method", "ipm", "--input", &input, "--output", "r.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // unknown suite name
    let out = subsel(&["suite", "--name", "nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // clap-level usage failure
    let out = subsel(&["select", "--no-such-flag"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn data_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();

    // missing input file
    let out = subsel(
        &[
            "select",
            "--method",
            "ipm",
            "--k",
            "1",
            "--input",
            "missing.csv",
            "--output",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));

    // ragged CSV names the line on stderr
    let input = write_csv(dir.path(), "bad.csv", "1,2\n3\n");
    let out = subsel(
        &[
            "select", "--method", "ipm", "--k", "1", "--input", &input, "--output", "r.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":2:"), "stderr was: {stderr}");

    // k larger than the row count is a data error for random
    let input = write_csv(dir.path(), "a.csv", "1,0\n0,1\n");
    let out = subsel(
        &[
            "select", "--method", "random", "--k", "5", "--input", &input, "--output", "r.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn result_json_is_deterministic_modulo_elapsed() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..12)
        .map(|i| format!("{},{},{}\n", i % 4, (i * 7 % 5) as f64 * 0.5, i))
        .collect();
    let input = write_csv(dir.path(), "a.csv", &rows);
    for (run, name) in [("r1.json", "r2.json")]
        .iter()
        .flat_map(|(a, b)| [(1, *a), (2, *b)])
    {
        let _ = run;
        let out = subsel(
            &[
                "select", "--method", "kmedoids", "--k", "3", "--seed", "9", "--input", &input,
                "--output", name,
            ],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let mut docs: Vec<serde_json::Value> = ["r1.json", "r2.json"]
        .iter()
        .map(|n| {
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(n)).unwrap()).unwrap()
        })
        .collect();
    for doc in &mut docs {
        doc["elapsed_seconds"] = serde_json::json!(0.0);
    }
    assert_eq!(docs[0], docs[1]);
}

#[test]
fn synth_select_eval_round_trip_with_binary() {
    let dir = tempfile::tempdir().unwrap();
    let out = subsel(
        &[
            "synth",
            "--kind",
            "controlled-spectrum",
            "--sigmas",
            "3,2,1",
            "--m",
            "12",
            "--n",
            "6",
            "--seed",
            "3",
            "--output",
            "data.bin",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("data.labels.csv").exists());

    let out = subsel(
        &[
            "select", "--method", "ipm", "--k", "3", "--input", "data.bin", "--output", "r.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = subsel(
        &[
            "eval", "--input", "data.bin", "--result", "r.json", "--trials", "20",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    // Rank-3 matrix, 3 selected rows: the selection spans everything and
    // the ratio collapses to zero.
    assert!(
        stdout.contains("error_ratio_vs_random: 0"),
        "stdout: {stdout}"
    );
}

#[test]
fn diagnose_rank_one_reports_unit_rom() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "a.csv", "1,2\n2,4\n3,6\n");
    let out = subsel(&["diagnose", "--input", &input], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("rom: 1"), "stdout: {stdout}");
    assert!(stdout.contains("correlation_bound_margin:"));
}

#[test]
fn compound_scores_change_the_selection() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..8).map(|i| format!("{},{}\n", 8 - i, i)).collect();
    let input = write_csv(dir.path(), "a.csv", &rows);
    let scores = write_csv(dir.path(), "q.csv", "0\n0\n0\n0\n0\n0\n0\n1\n");
    let out = subsel(
        &[
            "select",
            "--method",
            "ipm-compound",
            "--k",
            "2",
            "--alpha0",
            "0",
            "--decay",
            "1",
            "--scores",
            &scores,
            "--input",
            &input,
            "--output",
            "c.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(doc["indices"][0], 7, "alpha0 = 0 must follow the scores");
}

#[test]
fn bench_grid_row_count_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "methods": ["ipm", "random"],
        "sizes": [{"m": 20, "n": 6}, {"m": 30, "n": 6}, {"m": 40, "n": 6}],
        "ks": [2],
        "trials": 20,
        "seed": 1,
        "generator": {"kind": "gaussian_clusters", "clusters": 4, "spread": 0.4}
    }"#;
    let config_path = write_csv(dir.path(), "bench.json", config);
    let out = subsel(
        &["bench", "--config", &config_path, "--output", "grid.csv"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "method,M,N,K,trial,seed,error,error_ratio_vs_random,elapsed_seconds"
    );
    // 2 methods x 3 sizes x 1 k x 20 trials
    assert_eq!(lines.len() - 1, 120);
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 9);
    }
    // Random rows are their own reference, so their ratio is exactly 1.
    for line in lines[1..].iter().filter(|l| l.starts_with("random,")) {
        let ratio = line.split(',').nth(7).unwrap();
        assert_eq!(ratio, "1");
    }
}

#[test]
fn suite_outlier_runs_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = subsel(
        &["suite", "--name", "outlier", "--output", "report.json"],
        dir.path(),
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    assert!(stdout.contains("suite: outlier"), "stdout: {stdout}");
    assert!(stdout.contains("detgreedy-mean-outliers-selected"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["suite"], "outlier");
    assert!(report["checks"].as_array().unwrap().len() >= 5);
}
