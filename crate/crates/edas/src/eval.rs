//! The distance-from-average scoring pipeline.
//!
//! Seven steps take a [`DecisionMatrix`] to a ranked appraisal: per-criterion
//! averages, positive/negative distances from the average, weighted
//! aggregation, max-normalization, the appraisal score
//! `M = (NWPDA + (1 - NWNDA)) / 2`, and a descending stable rank.
//!
//! With the `parallel` feature (default) the distance and aggregation steps
//! run data-parallel over rows/columns via rayon. Per-cell work is
//! independent and per-column/per-row summation order is preserved, so the
//! parallel and sequential paths produce bitwise-identical results;
//! [`evaluate_seq`] exposes the single-threaded path directly.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{DecisionMatrix, Direction};

/// What to do when a criterion column averages to zero (which, with
/// non-negative scores, means the whole column is zero).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ZeroAveragePolicy {
    /// Replace the zero denominator with 1e-12. The numerators are zero too,
    /// so the column contributes nothing. Default.
    #[default]
    Epsilon,
    /// Reject the degenerate column with [`Error::ZeroAverageColumn`].
    Error,
}

const ZERO_AVERAGE_EPSILON: f64 = 1e-12;

/// A dense row-major n x m grid of per-cell deviations.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    data: Vec<f64>,
    cols: usize,
}

impl Grid {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            data: vec![0.0; rows * cols],
            cols,
        }
    }

    pub fn rows(&self) -> usize {
        self.data.len().checked_div(self.cols).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }
}

/// Every intermediate quantity of one pipeline run, plus the final ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct EdasBreakdown {
    averages: Vec<f64>,
    pda: Grid,
    nda: Grid,
    wpda: Vec<f64>,
    wnda: Vec<f64>,
    nwpda: Vec<f64>,
    nwnda: Vec<f64>,
    appraisal: Vec<f64>,
    ranks: Vec<usize>,
}

impl EdasBreakdown {
    pub fn averages(&self) -> &[f64] {
        &self.averages
    }

    pub fn pda(&self) -> &Grid {
        &self.pda
    }

    pub fn nda(&self) -> &Grid {
        &self.nda
    }

    pub fn wpda(&self) -> &[f64] {
        &self.wpda
    }

    pub fn wnda(&self) -> &[f64] {
        &self.wnda
    }

    pub fn nwpda(&self) -> &[f64] {
        &self.nwpda
    }

    pub fn nwnda(&self) -> &[f64] {
        &self.nwnda
    }

    /// The appraisal score M per model, in [0, 1].
    pub fn appraisal(&self) -> &[f64] {
        &self.appraisal
    }

    /// Rank per model: 1 is best; ties keep input order.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Model indices ordered best-first.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.ranks.len()];
        for (model, &rank) in self.ranks.iter().enumerate() {
            order[rank - 1] = model;
        }
        order
    }
}

#[cfg(feature = "parallel")]
fn column_mean(matrix: &DecisionMatrix, col: usize) -> f64 {
    let n = matrix.n_models();
    let first = matrix.score(0, col);
    let mut sum = 0.0;
    let mut constant = true;
    for row in 0..n {
        let value = matrix.score(row, col);
        sum += value;
        constant &= value == first;
    }
    // A constant column averages to exactly that constant; summation
    // rounding must not move it, or every cell picks up a phantom
    // deviation that normalization then amplifies.
    if constant {
        first
    } else {
        sum / n as f64
    }
}

/// Per-criterion arithmetic means over all models.
pub fn column_averages(matrix: &DecisionMatrix) -> Vec<f64> {
    #[cfg(feature = "parallel")]
    {
        (0..matrix.n_criteria())
            .into_par_iter()
            .map(|j| column_mean(matrix, j))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        column_averages_seq(matrix)
    }
}

/// Sequential [`column_averages`]. Accumulates row-by-row, which visits each
/// column's entries in the same ascending-row order as the strided parallel
/// path, so the two agree bitwise (constant columns short-circuit to the
/// shared value in both).
pub fn column_averages_seq(matrix: &DecisionMatrix) -> Vec<f64> {
    let (n, m) = (matrix.n_models(), matrix.n_criteria());
    let first = matrix.row(0).to_vec();
    let mut sums = vec![0.0; m];
    let mut constant = vec![true; m];
    for i in 0..n {
        let row = matrix.row(i);
        for j in 0..m {
            sums[j] += row[j];
            constant[j] &= row[j] == first[j];
        }
    }
    (0..m)
        .map(|j| {
            if constant[j] {
                first[j]
            } else {
                sums[j] / n as f64
            }
        })
        .collect()
}

fn distance_row(
    scores: &[f64],
    directions: &[Direction],
    averages: &[f64],
    denominators: &[f64],
    pda: &mut [f64],
    nda: &mut [f64],
) {
    for j in 0..scores.len() {
        let x = scores[j];
        // Deviations are measured from the true average; the denominator is
        // the epsilon-guarded one (they differ only for all-zero columns).
        let above = (x - averages[j]).max(0.0) / denominators[j];
        let below = (averages[j] - x).max(0.0) / denominators[j];
        let (p, n) = match directions[j] {
            Direction::Benefit => (above, below),
            Direction::Cost => (below, above),
        };
        pda[j] = p;
        nda[j] = n;
    }
}

fn guarded_denominators(
    matrix: &DecisionMatrix,
    averages: &[f64],
    policy: ZeroAveragePolicy,
) -> Result<Vec<f64>> {
    if averages.len() != matrix.n_criteria() {
        return Err(Error::DimensionMismatch(format!(
            "{} averages for {} criteria",
            averages.len(),
            matrix.n_criteria()
        )));
    }
    averages
        .iter()
        .zip(matrix.criteria())
        .map(|(&avg, criterion)| {
            if avg > 0.0 {
                Ok(avg)
            } else {
                match policy {
                    ZeroAveragePolicy::Epsilon => Ok(ZERO_AVERAGE_EPSILON),
                    ZeroAveragePolicy::Error => {
                        Err(Error::ZeroAverageColumn(criterion.name.clone()))
                    }
                }
            }
        })
        .collect()
}

/// Positive and negative distance from the average, per cell, direction-aware.
///
/// Exactly one of `pda[i][j]`, `nda[i][j]` is nonzero unless the score equals
/// the column average (then both are zero).
pub fn distances(
    matrix: &DecisionMatrix,
    averages: &[f64],
    policy: ZeroAveragePolicy,
) -> Result<(Grid, Grid)> {
    let denominators = guarded_denominators(matrix, averages, policy)?;
    let directions: Vec<Direction> = matrix.criteria().iter().map(|c| c.direction).collect();
    let (n, m) = (matrix.n_models(), matrix.n_criteria());
    let mut pda = Grid::zeros(n, m);
    let mut nda = Grid::zeros(n, m);
    #[cfg(feature = "parallel")]
    {
        pda.data
            .par_chunks_mut(m)
            .zip(nda.data.par_chunks_mut(m))
            .enumerate()
            .for_each(|(i, (p, q))| {
                distance_row(matrix.row(i), &directions, averages, &denominators, p, q)
            });
    }
    #[cfg(not(feature = "parallel"))]
    {
        pda.data
            .chunks_mut(m)
            .zip(nda.data.chunks_mut(m))
            .enumerate()
            .for_each(|(i, (p, q))| {
                distance_row(matrix.row(i), &directions, averages, &denominators, p, q)
            });
    }
    Ok((pda, nda))
}

/// Sequential [`distances`].
pub fn distances_seq(
    matrix: &DecisionMatrix,
    averages: &[f64],
    policy: ZeroAveragePolicy,
) -> Result<(Grid, Grid)> {
    let denominators = guarded_denominators(matrix, averages, policy)?;
    let directions: Vec<Direction> = matrix.criteria().iter().map(|c| c.direction).collect();
    let (n, m) = (matrix.n_models(), matrix.n_criteria());
    let mut pda = Grid::zeros(n, m);
    let mut nda = Grid::zeros(n, m);
    pda.data
        .chunks_mut(m)
        .zip(nda.data.chunks_mut(m))
        .enumerate()
        .for_each(|(i, (p, q))| {
            distance_row(matrix.row(i), &directions, averages, &denominators, p, q)
        });
    Ok((pda, nda))
}

fn weighted_row(row: &[f64], weights: &[f64]) -> f64 {
    row.iter().zip(weights).map(|(v, w)| w * v).sum()
}

fn check_weighted_dims(pda: &Grid, nda: &Grid, n_criteria: usize) -> Result<()> {
    if pda.cols != nda.cols || pda.data.len() != nda.data.len() {
        return Err(Error::DimensionMismatch(format!(
            "pda grid is {}x{}, nda grid is {}x{}",
            pda.rows(),
            pda.cols(),
            nda.rows(),
            nda.cols()
        )));
    }
    if pda.cols != n_criteria {
        return Err(Error::DimensionMismatch(format!(
            "{} grid columns for {} criteria",
            pda.cols, n_criteria
        )));
    }
    Ok(())
}

/// Weight-aggregated positive and negative distances per model.
pub fn weighted_sums(
    pda: &Grid,
    nda: &Grid,
    criteria: &[crate::matrix::Criterion],
) -> Result<(Vec<f64>, Vec<f64>)> {
    #[cfg(feature = "parallel")]
    {
        check_weighted_dims(pda, nda, criteria.len())?;
        let weights: Vec<f64> = criteria.iter().map(|c| c.weight).collect();
        let wpda = pda
            .data
            .par_chunks(pda.cols)
            .map(|row| weighted_row(row, &weights))
            .collect();
        let wnda = nda
            .data
            .par_chunks(nda.cols)
            .map(|row| weighted_row(row, &weights))
            .collect();
        Ok((wpda, wnda))
    }
    #[cfg(not(feature = "parallel"))]
    {
        weighted_sums_seq(pda, nda, criteria)
    }
}

/// Sequential [`weighted_sums`].
pub fn weighted_sums_seq(
    pda: &Grid,
    nda: &Grid,
    criteria: &[crate::matrix::Criterion],
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_weighted_dims(pda, nda, criteria.len())?;
    let weights: Vec<f64> = criteria.iter().map(|c| c.weight).collect();
    let wpda = pda
        .data
        .chunks(pda.cols)
        .map(|row| weighted_row(row, &weights))
        .collect();
    let wnda = nda
        .data
        .chunks(nda.cols)
        .map(|row| weighted_row(row, &weights))
        .collect();
    Ok((wpda, wnda))
}

fn max_normalize(values: &[f64]) -> Vec<f64> {
    let max = values.iter().cloned().fold(0.0_f64, f64::max);
    if max > 0.0 {
        values.iter().map(|v| v / max).collect()
    } else {
        // All-average field: every entry normalizes to zero.
        vec![0.0; values.len()]
    }
}

/// Max-normalizes WPDA and WNDA into [0, 1]. A zero max maps the whole
/// vector to zeros; otherwise the max entry becomes exactly 1.
pub fn normalize(wpda: &[f64], wnda: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (max_normalize(wpda), max_normalize(wnda))
}

/// The appraisal score `M = (NWPDA + (1 - NWNDA)) / 2`, per model.
pub fn appraisal_scores(nwpda: &[f64], nwnda: &[f64]) -> Vec<f64> {
    nwpda
        .iter()
        .zip(nwnda)
        .map(|(p, n)| 0.5 * (p + (1.0 - n)))
        .collect()
}

/// Ranks by descending appraisal; ties keep first-occurrence input order.
pub fn rank(appraisal: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..appraisal.len()).collect();
    order.sort_by(|&a, &b| {
        appraisal[b]
            .partial_cmp(&appraisal[a])
            .unwrap_or(Ordering::Equal)
    });
    let mut ranks = vec![0; appraisal.len()];
    for (position, &model) in order.iter().enumerate() {
        ranks[model] = position + 1;
    }
    ranks
}

fn assemble_breakdown(
    matrix: &DecisionMatrix,
    averages: Vec<f64>,
    pda: Grid,
    nda: Grid,
) -> Result<EdasBreakdown> {
    let (wpda, wnda) = weighted_sums(&pda, &nda, matrix.criteria())?;
    let (nwpda, nwnda) = normalize(&wpda, &wnda);
    let appraisal = appraisal_scores(&nwpda, &nwnda);
    let ranks = rank(&appraisal);
    Ok(EdasBreakdown {
        averages,
        pda,
        nda,
        wpda,
        wnda,
        nwpda,
        nwnda,
        appraisal,
        ranks,
    })
}

/// Runs the full pipeline with the default zero-average guard.
pub fn evaluate(matrix: &DecisionMatrix) -> EdasBreakdown {
    evaluate_with(matrix, ZeroAveragePolicy::Epsilon).expect("epsilon policy cannot fail")
}

/// Runs the full pipeline with an explicit zero-average policy.
pub fn evaluate_with(matrix: &DecisionMatrix, policy: ZeroAveragePolicy) -> Result<EdasBreakdown> {
    let averages = column_averages(matrix);
    let (pda, nda) = distances(matrix, &averages, policy)?;
    assemble_breakdown(matrix, averages, pda, nda)
}

/// Single-threaded pipeline; the result is bitwise-identical to
/// [`evaluate`]. Useful for tiny matrices and as the benchmark baseline.
pub fn evaluate_seq(matrix: &DecisionMatrix) -> EdasBreakdown {
    let averages = column_averages_seq(matrix);
    let (pda, nda) = distances_seq(matrix, &averages, ZeroAveragePolicy::Epsilon)
        .expect("epsilon policy cannot fail");
    let (wpda, wnda) =
        weighted_sums_seq(&pda, &nda, matrix.criteria()).expect("grids match the matrix");
    let (nwpda, nwnda) = normalize(&wpda, &wnda);
    let appraisal = appraisal_scores(&nwpda, &nwnda);
    let ranks = rank(&appraisal);
    EdasBreakdown {
        averages,
        pda,
        nda,
        wpda,
        wnda,
        nwpda,
        nwnda,
        appraisal,
        ranks,
    }
}
