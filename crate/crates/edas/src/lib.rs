//! Distance-from-average scoring for multi-metric, multi-dataset model
//! leaderboards.
//!
//! Given an n-model x m-criterion decision matrix (for instance
//! knowledge-graph-completion results: MR, MRR, Hit@k over several
//! benchmarks), the pipeline measures each model's positive and negative
//! deviation from the per-criterion average, aggregates the deviations under
//! criterion weights, max-normalizes, and combines them into a single
//! appraisal score `M` in [0, 1] with a deterministic descending ranking.
//!
//! The crate also computes the underlying rank metrics (MR, MRR, Hits@k)
//! from raw rank lists, validates rankings with Pearson/Kendall correlation
//! against traditional metrics, and measures ranking stability under
//! leave-one-metric-out ablation. Long-form CSV/JSON leaderboards are
//! ingested via [`ingest`]; the `edas` binary exposes everything on the
//! command line.
//!
//! ```
//! use edas::{evaluate, fixtures};
//!
//! let matrix = fixtures::relation_prediction_matrix();
//! let breakdown = evaluate(&matrix);
//! let best = breakdown.ranks().iter().position(|&r| r == 1).unwrap();
//! assert_eq!(matrix.model_names()[best], "RotatE");
//! ```

pub mod analysis;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod ingest;
pub mod matrix;
pub mod plot;
pub mod rank_metrics;
pub mod report;

pub use error::{Error, Result};
pub use eval::{
    appraisal_scores, column_averages, distances, evaluate, evaluate_seq, evaluate_with, normalize,
    rank, weighted_sums, EdasBreakdown, Grid, ZeroAveragePolicy,
};
pub use matrix::{Criterion, DecisionMatrix, Direction};
pub use rank_metrics::{hits_at_k, mean_rank, mean_reciprocal_rank, RankList};
