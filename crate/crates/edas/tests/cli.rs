//! End-to-end tests of the `edas` binary: exit codes, output formats,
//! determinism, and the plot file contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn edas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exits normally")
}

fn write_temp(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn temp_dir(label: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("edas-cli-{label}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn rank_table_is_headed_by_the_top_model() {
    let leaderboard = fixture("relation_prediction.csv");
    let output = edas(&["rank", "--leaderboard", leaderboard.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("model"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("RotatE"), "first row: {first}");
    assert_eq!(text.lines().count(), 11);
    // Table mode rounds to 4 decimals.
    assert!(first.contains("1.0000"));
}

#[test]
fn rank_output_is_deterministic() {
    let leaderboard = fixture("relation_prediction.csv");
    let args = [
        "rank",
        "--leaderboard",
        leaderboard.to_str().unwrap(),
        "--format",
        "csv",
    ];
    let first = edas(&args);
    let second = edas(&args);
    assert_eq!(first.stdout, second.stdout);
    let json = [
        "rank",
        "--leaderboard",
        leaderboard.to_str().unwrap(),
        "--format",
        "json",
    ];
    assert_eq!(edas(&json).stdout, edas(&json).stdout);
}

#[test]
fn rank_csv_round_trips_m_and_rank_exactly() {
    let leaderboard = fixture("relation_prediction.csv");
    let output = edas(&[
        "rank",
        "--leaderboard",
        leaderboard.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&output), 0);
    let csv = stdout(&output);
    let records =
        edas::ingest::parse_leaderboard(&csv, edas::ingest::LeaderboardFormat::Csv).unwrap();
    let matrix = edas::fixtures::relation_prediction_matrix();
    let breakdown = edas::evaluate(&matrix);
    for (i, model) in matrix.model_names().iter().enumerate() {
        let m = records
            .iter()
            .find(|r| &r.model == model && r.metric == "M")
            .unwrap();
        assert_eq!(
            m.value,
            breakdown.appraisal()[i],
            "M round-trip for {model}"
        );
        let rank = records
            .iter()
            .find(|r| &r.model == model && r.metric == "rank")
            .unwrap();
        assert_eq!(rank.value as usize, breakdown.ranks()[i]);
    }
}

#[test]
fn rank_on_a_single_model_scores_one_half() {
    let dir = temp_dir("single");
    let board = write_temp(
        &dir,
        "single.csv",
        "model,dataset,metric,value\nonly,d1,MRR,0.42\nonly,d1,MR,7\n",
    );
    let output = edas(&["rank", "--leaderboard", board.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("only"));
    assert!(text.contains("0.5000"));
    assert!(text.trim_end().ends_with('1'));
}

#[test]
fn missing_config_file_exits_2_naming_the_path() {
    let leaderboard = fixture("relation_prediction.csv");
    let output = edas(&[
        "rank",
        "--leaderboard",
        leaderboard.to_str().unwrap(),
        "--config",
        "/nonexistent/criteria.json",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("/nonexistent/criteria.json"));
}

#[test]
fn missing_leaderboard_exits_2() {
    let output = edas(&["rank", "--leaderboard", "/nonexistent/board.csv"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("/nonexistent/board.csv"));
}

#[test]
fn malformed_value_exits_2_and_missing_cell_exits_3() {
    let dir = temp_dir("errors");
    let bad = write_temp(&dir, "bad.csv", "model,dataset,metric,value\nm,d,MRR,abc\n");
    let output = edas(&["rank", "--leaderboard", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("line 2"));

    let holes = write_temp(
        &dir,
        "holes.csv",
        "model,dataset,metric,value\nm1,d1,MRR,0.5\nm2,d1,MRR,0.6\nm1,d2,MRR,0.7\n",
    );
    let output = edas(&["rank", "--leaderboard", holes.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr(&output).contains("m2"));

    // The imputation flag turns the same input into a success.
    let output = edas(&[
        "rank",
        "--leaderboard",
        holes.to_str().unwrap(),
        "--impute-average",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
}

#[test]
fn json_leaderboards_are_accepted() {
    let dir = temp_dir("json");
    let board = write_temp(
        &dir,
        "board.json",
        r#"[{"model": "a", "dataset": "d", "metric": "MRR", "value": 0.9},
            {"model": "b", "dataset": "d", "metric": "MRR", "value": 0.1}]"#,
    );
    let output = edas(&["rank", "--leaderboard", board.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    assert!(stdout(&output).lines().nth(1).unwrap().starts_with('a'));
}

#[test]
fn weight_renormalization_warns_on_stderr() {
    let dir = temp_dir("weights");
    let board = write_temp(
        &dir,
        "board.csv",
        "model,dataset,metric,value\na,d,MRR,0.9\nb,d,MRR,0.1\na,d,MR,5\nb,d,MR,9\n",
    );
    let config = write_temp(
        &dir,
        "criteria.json",
        r#"{"directions": {"MR": "cost", "MRR": "benefit"},
            "weights": {"d/MR": 2.0, "d/MRR": 6.0}}"#,
    );
    let output = edas(&[
        "rank",
        "--leaderboard",
        board.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let err = stderr(&output);
    assert!(err.contains("warning"), "stderr: {err}");
    assert!(err.contains("8"), "stderr should name the off sum: {err}");
}

#[test]
fn metrics_command_reports_the_hand_computed_values() {
    let dir = temp_dir("metrics");
    let ranks = write_temp(&dir, "ranks.txt", "1\n3\n12\n");
    let output = edas(&[
        "metrics",
        ranks.to_str().unwrap(),
        "--k",
        "1",
        "--k",
        "3",
        "--k",
        "10",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("MR") && text.contains("5.3333"));
    assert!(text.contains("MRR") && text.contains("0.4722"));
    assert!(text.contains("Hits@1") && text.contains("0.3333"));
    assert!(text.contains("Hits@3"));
    assert!(text.contains("Hits@10"));
    // Ranks 1 and 3 are <= 10; 12 is not.
    assert_eq!(text.matches("0.6667").count(), 2);
}

#[test]
fn metrics_on_a_perfect_singleton_is_all_ones() {
    let dir = temp_dir("metrics1");
    let ranks = write_temp(&dir, "one.txt", "1\n");
    let output = edas(&["metrics", ranks.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert_eq!(text.matches("1.0000").count(), 5);
}

#[test]
fn metrics_error_paths_exit_2() {
    let dir = temp_dir("metrics-err");
    let empty = write_temp(&dir, "empty.txt", "");
    assert_eq!(exit_code(&edas(&["metrics", empty.to_str().unwrap()])), 2);
    let bad = write_temp(&dir, "bad.txt", "1\nfoo\n");
    let output = edas(&["metrics", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("line 2"));
    let zero = write_temp(&dir, "zero.txt", "0\n");
    assert_eq!(exit_code(&edas(&["metrics", zero.to_str().unwrap()])), 2);
    let ranks = write_temp(&dir, "ok.txt", "1\n2\n");
    let output = edas(&["metrics", ranks.to_str().unwrap(), "--k", "0"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn correlate_rejects_unknown_targets() {
    let leaderboard = fixture("relation_prediction.csv");
    let board = leaderboard.to_str().unwrap();
    let output = edas(&[
        "correlate",
        "--leaderboard",
        board,
        "--target",
        "mean:NoSuchMetric",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("NoSuchMetric"));
    // A bare metric name is ambiguous.
    let output = edas(&["correlate", "--leaderboard", board, "--target", "MRR"]);
    assert_eq!(exit_code(&output), 2);
    // Valid specs succeed in both shapes.
    for target in ["mean:MRR", "FB15k-237/Hit@10"] {
        let output = edas(&["correlate", "--leaderboard", board, "--target", target]);
        assert_eq!(exit_code(&output), 0, "target {target}");
        assert!(stdout(&output).contains("pearson r"));
    }
}

#[test]
fn ablate_prints_one_column_per_removed_metric() {
    let leaderboard = fixture("ablation_subset.csv");
    let board = leaderboard.to_str().unwrap();
    let output = edas(&[
        "ablate",
        "--leaderboard",
        board,
        "--remove",
        "MRR",
        "--remove",
        "MR",
        "--remove",
        "Hit@1",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let header = text.lines().next().unwrap();
    assert!(header.contains("-MRR") && header.contains("-MR") && header.contains("-Hit@1"));
    assert!(header.contains("max_change"));
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().nth(1).unwrap().starts_with("RotatE"));
}

#[test]
fn ablate_error_paths() {
    let leaderboard = fixture("ablation_subset.csv");
    let board = leaderboard.to_str().unwrap();
    let output = edas(&["ablate", "--leaderboard", board, "--remove", "NDCG"]);
    assert_eq!(exit_code(&output), 2);
    // Removing every metric family at once leaves nothing to rank on.
    let output = edas(&[
        "ablate",
        "--leaderboard",
        board,
        "--remove",
        "MR",
        "--remove",
        "MRR",
        "--remove",
        "Hit@1",
        "--remove",
        "Hit@10",
    ]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn plot_writes_svg_and_sibling_csv() {
    let dir = temp_dir("plot");
    let leaderboard = fixture("relation_prediction.csv");
    let out = dir.join("scatter.svg");
    let output = edas(&[
        "plot",
        "--leaderboard",
        leaderboard.to_str().unwrap(),
        "--x",
        "mean:MRR",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 10);
    let csv = std::fs::read_to_string(dir.join("scatter.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
    let rotate = csv.lines().find(|l| l.starts_with("RotatE,")).unwrap();
    let fields: Vec<&str> = rotate.split(',').collect();
    let x: f64 = fields[1].parse().unwrap();
    let y: f64 = fields[2].parse().unwrap();
    assert!((x - 0.6098).abs() < 1e-9, "mean MRR for RotatE: {x}");
    assert!((y - 1.0).abs() < 0.02, "appraisal for RotatE: {y}");
}

#[test]
fn plot_error_paths() {
    let leaderboard = fixture("relation_prediction.csv");
    let board = leaderboard.to_str().unwrap();
    // Unresolvable spec.
    let output = edas(&[
        "plot",
        "--leaderboard",
        board,
        "--x",
        "MRR",
        "--out",
        "/tmp/x.svg",
    ]);
    assert_eq!(exit_code(&output), 2);
    // Unwritable output path.
    let output = edas(&[
        "plot",
        "--leaderboard",
        board,
        "--x",
        "mean:MRR",
        "--out",
        "/nonexistent-dir/figure.svg",
    ]);
    assert_eq!(exit_code(&output), 4);
    assert!(stderr(&output).contains("/nonexistent-dir/figure.svg"));
}

#[test]
fn format_flag_rejects_unknown_encodings() {
    let leaderboard = fixture("relation_prediction.csv");
    let output = edas(&[
        "rank",
        "--leaderboard",
        leaderboard.to_str().unwrap(),
        "--format",
        "yaml",
    ]);
    assert_eq!(exit_code(&output), 2);
}
