//! Leaderboard ingestion: long-form CSV/JSON records plus a criteria
//! configuration, assembled into a validated [`DecisionMatrix`].
//!
//! CSV input carries the header `model,dataset,metric,value` (UTF-8, `.`
//! decimal separator, LF or CRLF). JSON input is an array of objects with
//! the same four keys. Criteria are named `dataset/metric` with `/` reserved
//! as the separator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Criterion, DecisionMatrix, Direction};

/// One leaderboard cell: a model's value for a metric on a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeaderboardRecord {
    pub model: String,
    pub dataset: String,
    pub metric: String,
    pub value: f64,
}

/// Input encodings accepted by [`parse_leaderboard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeaderboardFormat {
    Csv,
    Json,
}

/// How to treat a (model, criterion) cell with no record.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum MissingPolicy {
    /// Reject the input. Default: silent imputation distorts cross-dataset
    /// comparison.
    #[default]
    #[serde(rename = "error")]
    Error,
    /// Fill the cell with the column average of the present values, which
    /// zeroes its distance-from-average contributions.
    #[serde(rename = "impute")]
    ImputeColumnAverage,
}

/// Metric directions, optional explicit weights, and the missing-cell policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaConfig {
    /// Metric name -> direction. Every metric in the leaderboard must appear.
    pub directions: BTreeMap<String, Direction>,
    /// Optional criterion-name -> weight map ("dataset/metric" keys). Equal
    /// weights when absent. Renormalized to sum to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, f64>>,
    #[serde(default, rename = "missing")]
    pub missing_policy: MissingPolicy,
}

impl Default for CriteriaConfig {
    /// The stock direction table: MR is a cost metric; MRR and Hit@k are
    /// benefit metrics. Unknown metrics always need an explicit direction.
    fn default() -> Self {
        let mut directions = BTreeMap::new();
        directions.insert("MR".to_string(), Direction::Cost);
        for metric in ["MRR", "Hit@1", "Hit@3", "Hit@10"] {
            directions.insert(metric.to_string(), Direction::Benefit);
        }
        Self {
            directions,
            weights: None,
            missing_policy: MissingPolicy::Error,
        }
    }
}

impl CriteriaConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// True when the explicit weights deviate from sum 1 by more than 1e-6;
    /// callers may want to warn before the silent renormalization.
    pub fn weights_need_renormalization(&self) -> bool {
        match &self.weights {
            Some(weights) => {
                let sum: f64 = weights.values().sum();
                (sum - 1.0).abs() > 1e-6
            }
            None => false,
        }
    }
}

/// Parses leaderboard text into records, rejecting malformed rows and
/// duplicate (model, dataset, metric) triples.
pub fn parse_leaderboard(text: &str, format: LeaderboardFormat) -> Result<Vec<LeaderboardRecord>> {
    let records = match format {
        LeaderboardFormat::Csv => parse_csv(text)?,
        LeaderboardFormat::Json => {
            serde_json::from_str::<Vec<LeaderboardRecord>>(text).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            })?
        }
    };
    let mut seen = std::collections::BTreeSet::new();
    for record in &records {
        if !record.value.is_finite() || record.value < 0.0 {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "value {} for ({}, {}, {}) must be finite and non-negative",
                    record.value, record.model, record.dataset, record.metric
                ),
            });
        }
        let key = (
            record.model.clone(),
            record.dataset.clone(),
            record.metric.clone(),
        );
        if !seen.insert(key) {
            return Err(Error::DuplicateRecord {
                model: record.model.clone(),
                dataset: record.dataset.clone(),
                metric: record.metric.clone(),
            });
        }
    }
    Ok(records)
}

fn parse_csv(text: &str) -> Result<Vec<LeaderboardRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    {
        let headers = reader.headers().map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        let expected = ["model", "dataset", "metric", "value"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "header must be `model,dataset,metric,value`, got `{}`",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
    }
    let mut records = Vec::new();
    for result in reader.records() {
        let row = result.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = row.position().map(|p| p.line() as usize).unwrap_or(0);
        if row.len() != 4 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 4 fields, got {}", row.len()),
            });
        }
        let value: f64 = row[3].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{}` is not a number", &row[3]),
        })?;
        records.push(LeaderboardRecord {
            model: row[0].to_string(),
            dataset: row[1].to_string(),
            metric: row[2].to_string(),
            value,
        });
    }
    Ok(records)
}

/// Builds the decision matrix: criteria are the distinct (dataset, metric)
/// pairs sorted lexicographically and named `dataset/metric`; model order
/// follows first appearance; missing cells follow the configured policy;
/// weights default to equal and explicit weights are renormalized to sum 1.
pub fn assemble(records: &[LeaderboardRecord], config: &CriteriaConfig) -> Result<DecisionMatrix> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut model_names: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for record in records {
        if !model_names.contains(&record.model) {
            model_names.push(record.model.clone());
        }
        let pair = (record.dataset.clone(), record.metric.clone());
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    pairs.sort();

    for (_, metric) in &pairs {
        if !config.directions.contains_key(metric) {
            return Err(Error::MissingDirection(metric.clone()));
        }
    }

    let m = pairs.len();
    let criteria: Vec<Criterion> = pairs
        .iter()
        .map(|(dataset, metric)| {
            let name = format!("{dataset}/{metric}");
            let weight = match &config.weights {
                Some(weights) => *weights.get(&name).ok_or_else(|| {
                    Error::InvalidConfig(format!("no weight for criterion `{name}`"))
                })?,
                None => 1.0 / m as f64,
            };
            Ok(Criterion::new(name, config.directions[metric], weight))
        })
        .collect::<Result<_>>()?;

    let column_of: BTreeMap<(String, String), usize> = pairs
        .iter()
        .cloned()
        .enumerate()
        .map(|(j, pair)| (pair, j))
        .collect();
    let row_of: BTreeMap<&String, usize> = model_names
        .iter()
        .enumerate()
        .map(|(i, name)| (name, i))
        .collect();

    let n = model_names.len();
    let mut cells: Vec<Option<f64>> = vec![None; n * m];
    for record in records {
        let i = row_of[&record.model];
        let j = column_of[&(record.dataset.clone(), record.metric.clone())];
        cells[i * m + j] = Some(record.value);
    }

    let mut rows = vec![vec![0.0; m]; n];
    for j in 0..m {
        let present: Vec<f64> = (0..n).filter_map(|i| cells[i * m + j]).collect();
        let column_average = present.iter().sum::<f64>() / present.len() as f64;
        for i in 0..n {
            rows[i][j] = match cells[i * m + j] {
                Some(value) => value,
                None => match config.missing_policy {
                    MissingPolicy::Error => {
                        let (dataset, metric) = &pairs[j];
                        return Err(Error::MissingCell {
                            model: model_names[i].clone(),
                            dataset: dataset.clone(),
                            metric: metric.clone(),
                        });
                    }
                    MissingPolicy::ImputeColumnAverage => column_average,
                },
            };
        }
    }

    DecisionMatrix::new(model_names, criteria, rows)
}

/// Serializes a matrix back to long-form records. Criterion names split at
/// the first `/`; names without a separator get an empty dataset.
pub fn to_records(matrix: &DecisionMatrix) -> Vec<LeaderboardRecord> {
    let mut records = Vec::with_capacity(matrix.n_models() * matrix.n_criteria());
    for (i, model) in matrix.model_names().iter().enumerate() {
        for (j, criterion) in matrix.criteria().iter().enumerate() {
            let (dataset, metric) = criterion
                .name
                .split_once('/')
                .unwrap_or(("", criterion.name.as_str()));
            records.push(LeaderboardRecord {
                model: model.clone(),
                dataset: dataset.to_string(),
                metric: metric.to_string(),
                value: matrix.score(i, j),
            });
        }
    }
    records
}
