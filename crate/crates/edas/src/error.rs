//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by matrix construction, scoring, ingestion, and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A decision matrix needs at least one model and one criterion.
    #[error("decision matrix must have at least one model and one criterion")]
    EmptyMatrix,

    /// Model names must be unique within a matrix.
    #[error("duplicate model name `{0}`")]
    DuplicateModel(String),

    /// Criterion names must be unique within a matrix.
    #[error("duplicate criterion name `{0}`")]
    DuplicateCriterion(String),

    /// Every score must be a finite, non-negative real.
    #[error("score for model `{model}`, criterion `{criterion}` is {value}; scores must be finite and non-negative")]
    InvalidScore {
        model: String,
        criterion: String,
        value: f64,
    },

    /// Criterion weights must be non-negative.
    #[error("criterion `{0}` has a negative weight")]
    NegativeWeight(String),

    /// At least one criterion must carry positive weight.
    #[error("criterion weights sum to zero")]
    ZeroWeightSum,

    /// A column averaged to zero while the epsilon guard was disabled.
    #[error("criterion `{0}` averages to zero; every score in the column is zero")]
    ZeroAverageColumn(String),

    /// Input shapes disagree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Rank lists must contain at least one rank.
    #[error("rank list is empty")]
    EmptyRankList,

    /// Ranks are strictly positive integers.
    #[error("line {line}: `{text}` is not a positive integer rank")]
    InvalidRank { line: usize, text: String },

    /// Hits@k requires a cutoff of at least 1.
    #[error("hits@k requires k >= 1, got {0}")]
    InvalidK(u64),

    /// Correlation is undefined for a constant vector.
    #[error("correlation is undefined: input vector has zero variance")]
    ZeroVariance,

    /// Correlation statistics need a minimum sample size.
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    /// No criterion matches the requested metric name.
    #[error("unknown metric or criterion `{0}`")]
    UnknownMetric(String),

    /// Removing a metric may not empty the criteria set.
    #[error("removing `{0}` would leave no criteria")]
    NoCriteriaLeft(String),

    /// Malformed leaderboard input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Each (model, dataset, metric) triple may appear once.
    #[error("duplicate record for model `{model}`, dataset `{dataset}`, metric `{metric}`")]
    DuplicateRecord {
        model: String,
        dataset: String,
        metric: String,
    },

    /// Every metric in a leaderboard needs a declared direction.
    #[error("no direction declared for metric `{0}`")]
    MissingDirection(String),

    /// A model lacks a score for a criterion under the error policy.
    #[error("missing cell for model `{model}`, dataset `{dataset}`, metric `{metric}`")]
    MissingCell {
        model: String,
        dataset: String,
        metric: String,
    },

    /// Assembly needs at least one record.
    #[error("no leaderboard records to assemble")]
    EmptyInput,

    /// The criteria configuration is inconsistent.
    #[error("invalid criteria config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
