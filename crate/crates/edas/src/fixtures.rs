//! Bundled benchmark tables, transcribed from published knowledge-graph
//! completion leaderboards. Shipped both as files under `fixtures/` and as
//! embedded strings here so library consumers and tests can load them
//! without touching the filesystem.

use crate::error::Result;
use crate::ingest::{assemble, parse_leaderboard, CriteriaConfig, LeaderboardFormat};
use crate::matrix::DecisionMatrix;

/// Relation-prediction leaderboard: 10 models x (5 datasets x 4 metrics).
pub const RELATION_PREDICTION_CSV: &str = include_str!("../fixtures/relation_prediction.csv");

/// Tail-prediction leaderboard: 7 models x (4 datasets x 3 metrics).
pub const TAIL_PREDICTION_CSV: &str = include_str!("../fixtures/tail_prediction.csv");

/// The 8-model subset used for the leave-one-metric-out study.
pub const ABLATION_SUBSET_CSV: &str = include_str!("../fixtures/ablation_subset.csv");

/// Published per-model scoring table for the relation-prediction leaderboard.
pub const RELATION_PREDICTION_EDAS_CSV: &str =
    include_str!("../fixtures/relation_prediction_edas.csv");

/// Published per-model scoring table for the tail-prediction leaderboard.
pub const TAIL_PREDICTION_EDAS_CSV: &str = include_str!("../fixtures/tail_prediction_edas.csv");

/// The stock criteria configuration (MR cost, MRR/Hit@k benefit).
pub const DEFAULT_CRITERIA_JSON: &str = include_str!("../fixtures/default_criteria.json");

/// One row of a published scoring table.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishedScore {
    pub model: String,
    pub wpda_sum: f64,
    pub wnda_sum: f64,
    pub nwpda: f64,
    pub nwnda: f64,
    pub m: f64,
    pub rank: usize,
}

/// Parses a published scoring table (`model,wpda_sum,wnda_sum,nwpda,nwnda,m,rank`).
pub fn parse_published_scores(text: &str) -> Vec<PublishedScore> {
    text.lines()
        .skip(1)
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 7, "malformed published-score row: {line}");
            PublishedScore {
                model: fields[0].to_string(),
                wpda_sum: fields[1].parse().unwrap(),
                wnda_sum: fields[2].parse().unwrap(),
                nwpda: fields[3].parse().unwrap(),
                nwnda: fields[4].parse().unwrap(),
                m: fields[5].parse().unwrap(),
                rank: fields[6].parse().unwrap(),
            }
        })
        .collect()
}

fn matrix_from(csv: &str) -> Result<DecisionMatrix> {
    let records = parse_leaderboard(csv, LeaderboardFormat::Csv)?;
    assemble(&records, &CriteriaConfig::default())
}

/// The relation-prediction fixture as a ready decision matrix (10 x 20).
pub fn relation_prediction_matrix() -> DecisionMatrix {
    matrix_from(RELATION_PREDICTION_CSV).expect("bundled fixture is valid")
}

/// The tail-prediction fixture as a ready decision matrix (7 x 12).
pub fn tail_prediction_matrix() -> DecisionMatrix {
    matrix_from(TAIL_PREDICTION_CSV).expect("bundled fixture is valid")
}

/// The ablation subset as a ready decision matrix (8 x 20).
pub fn ablation_subset_matrix() -> DecisionMatrix {
    matrix_from(ABLATION_SUBSET_CSV).expect("bundled fixture is valid")
}
