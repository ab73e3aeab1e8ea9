//! Decision-matrix domain types: criteria with direction and weight, and the
//! n-model x m-criterion score grid all scoring operates on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether larger values of a criterion are better (benefit) or worse (cost).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Benefit,
    Cost,
}

/// A named evaluation axis with a direction and a weight.
///
/// Criterion names follow the `dataset/metric` scheme when assembled from
/// leaderboard records; free-form names are accepted for hand-built matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub name: String,
    pub direction: Direction,
    pub weight: f64,
}

impl Criterion {
    pub fn new(name: impl Into<String>, direction: Direction, weight: f64) -> Self {
        Self {
            name: name.into(),
            direction,
            weight,
        }
    }
}

/// The metric component of a criterion name: the part after the first `/`,
/// or the whole name when no separator is present.
pub fn metric_component(name: &str) -> &str {
    match name.split_once('/') {
        Some((_, metric)) => metric,
        None => name,
    }
}

/// An n-model x m-criterion grid of finite, non-negative scores.
///
/// Construction validates every invariant; weights are renormalized to sum
/// to exactly 1. All scoring operations take the matrix as immutable input.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    model_names: Vec<String>,
    criteria: Vec<Criterion>,
    /// Row-major n x m score grid.
    scores: Vec<f64>,
}

impl DecisionMatrix {
    /// Builds a matrix from per-model score rows.
    ///
    /// Rejects empty inputs, duplicate model or criterion names, shape
    /// mismatches, non-finite or negative scores, and negative or all-zero
    /// weights. Weights are renormalized to sum to 1.
    pub fn new(
        model_names: Vec<String>,
        criteria: Vec<Criterion>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if model_names.is_empty() || criteria.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if rows.len() != model_names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} score rows for {} models",
                rows.len(),
                model_names.len()
            )));
        }
        for (i, name) in model_names.iter().enumerate() {
            if model_names[..i].contains(name) {
                return Err(Error::DuplicateModel(name.clone()));
            }
        }
        for (j, criterion) in criteria.iter().enumerate() {
            if criteria[..j].iter().any(|c| c.name == criterion.name) {
                return Err(Error::DuplicateCriterion(criterion.name.clone()));
            }
            if criterion.weight < 0.0 || !criterion.weight.is_finite() {
                return Err(Error::NegativeWeight(criterion.name.clone()));
            }
        }

        let m = criteria.len();
        let mut scores = Vec::with_capacity(model_names.len() * m);
        for (row, model) in rows.iter().zip(&model_names) {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "row for model `{model}` has {} scores, expected {m}",
                    row.len()
                )));
            }
            for (value, criterion) in row.iter().zip(&criteria) {
                if !value.is_finite() || *value < 0.0 {
                    return Err(Error::InvalidScore {
                        model: model.clone(),
                        criterion: criterion.name.clone(),
                        value: *value,
                    });
                }
            }
            scores.extend_from_slice(row);
        }

        let mut criteria = criteria;
        normalize_weights(&mut criteria)?;

        Ok(Self {
            model_names,
            criteria,
            scores,
        })
    }

    pub fn n_models(&self) -> usize {
        self.model_names.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn model_names(&self) -> &[String] {
        &self.model_names
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn score(&self, model: usize, criterion: usize) -> f64 {
        self.scores[model * self.criteria.len() + criterion]
    }

    /// The score row for one model.
    pub fn row(&self, model: usize) -> &[f64] {
        let m = self.criteria.len();
        &self.scores[model * m..(model + 1) * m]
    }

    pub fn criterion_index(&self, name: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.name == name)
    }

    /// Indices of criteria whose metric component equals `metric`.
    pub(crate) fn metric_columns(&self, metric: &str) -> Vec<usize> {
        self.criteria
            .iter()
            .enumerate()
            .filter(|(_, c)| metric_component(&c.name) == metric)
            .map(|(j, _)| j)
            .collect()
    }

    /// A copy of the matrix without every criterion matching `metric`;
    /// remaining criteria receive equal weights.
    pub fn without_metric(&self, metric: &str) -> Result<Self> {
        let dropped = self.metric_columns(metric);
        if dropped.is_empty() {
            return Err(Error::UnknownMetric(metric.to_string()));
        }
        if dropped.len() == self.criteria.len() {
            return Err(Error::NoCriteriaLeft(metric.to_string()));
        }
        let kept: Vec<usize> = (0..self.criteria.len())
            .filter(|j| !dropped.contains(j))
            .collect();
        let weight = 1.0 / kept.len() as f64;
        let criteria = kept
            .iter()
            .map(|&j| {
                Criterion::new(
                    self.criteria[j].name.clone(),
                    self.criteria[j].direction,
                    weight,
                )
            })
            .collect();
        let rows = (0..self.n_models())
            .map(|i| kept.iter().map(|&j| self.score(i, j)).collect())
            .collect();
        Self::new(self.model_names.clone(), criteria, rows)
    }
}

/// Renormalizes weights to sum to exactly 1. Deviations below 1e-6 are
/// treated as rounding; larger ones are still accepted and rescaled, the
/// caller decides whether to surface a warning.
fn normalize_weights(criteria: &mut [Criterion]) -> Result<()> {
    let sum: f64 = criteria.iter().map(|c| c.weight).sum();
    if sum <= 0.0 {
        return Err(Error::ZeroWeightSum);
    }
    if (sum - 1.0).abs() > f64::EPSILON {
        for criterion in criteria.iter_mut() {
            criterion.weight /= sum;
        }
    }
    Ok(())
}
