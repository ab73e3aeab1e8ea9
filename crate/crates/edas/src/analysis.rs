//! Statistical validation of the appraisal ranking: Pearson and Kendall
//! correlation against traditional metrics, cross-dataset metric means, and
//! leave-one-metric-out ablation.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::eval::{evaluate, EdasBreakdown};
use crate::matrix::DecisionMatrix;

/// Pearson and Kendall statistics for one (M, target) pair.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CorrelationReport {
    pub pair_label: String,
    pub pearson_r: f64,
    pub pearson_p: f64,
    pub kendall_tau: f64,
    pub kendall_p: f64,
    pub n: usize,
}

/// Rank shifts after removing one metric family across all datasets.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AblationReport {
    pub removed_metric: String,
    pub original_ranks: BTreeMap<String, usize>,
    pub new_ranks: BTreeMap<String, usize>,
    pub max_change: usize,
}

impl AblationReport {
    /// Absolute rank shift for one model.
    pub fn change(&self, model: &str) -> Option<usize> {
        let old = self.original_ranks.get(model)?;
        let new = self.new_ranks.get(model)?;
        Some(old.abs_diff(*new))
    }
}

/// What to correlate M against: the cross-dataset mean of a metric
/// (`mean:MRR`) or a single criterion column (`FB15k-237/Hit@10`).
/// A bare metric name is rejected as ambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorrelationTarget {
    MetricMean(String),
    Criterion(String),
}

impl FromStr for CorrelationTarget {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        if let Some(metric) = spec.strip_prefix("mean:") {
            if metric.is_empty() {
                return Err(Error::UnknownMetric(spec.to_string()));
            }
            return Ok(Self::MetricMean(metric.to_string()));
        }
        if spec.contains('/') {
            return Ok(Self::Criterion(spec.to_string()));
        }
        Err(Error::UnknownMetric(format!(
            "{spec} (expected `mean:<metric>` or `<dataset>/<metric>`)"
        )))
    }
}

impl std::fmt::Display for CorrelationTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::MetricMean(metric) => write!(f, "mean:{metric}"),
            Self::Criterion(name) => write!(f, "{name}"),
        }
    }
}

/// Sample Pearson correlation with a two-sided p-value from the t
/// distribution with n-2 degrees of freedom.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_pair(x, y)?;
    let n = x.len();
    let mean_x = x.iter().sum::<f64>() / n as f64;
    let mean_y = y.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);

    let df = (n - 2) as f64;
    let p = if 1.0 - r * r <= 0.0 {
        0.0
    } else {
        // t = r * sqrt(df / (1 - r^2)); two-sided p = I_{df/(df+t^2)}(df/2, 1/2)
        let t2 = r * r * df / (1.0 - r * r);
        regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2))
    };
    Ok((r, p.clamp(0.0, 1.0)))
}

/// Kendall tau-b with tie correction.
///
/// Two-sided p-value: exact inversion-count enumeration when n < 10 and both
/// vectors are tie-free, otherwise the normal approximation with the
/// tie-corrected variance and a one-unit continuity correction.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_pair(x, y)?;
    let n = x.len();
    let counts = count_pairs(x, y);
    let total = (n * (n - 1) / 2) as f64;
    let denom = (total - counts.tied_x as f64) * (total - counts.tied_y as f64);
    if denom <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let s = counts.concordant as f64 - counts.discordant as f64;
    let tau = (s / denom.sqrt()).clamp(-1.0, 1.0);

    let p = if n < 10 && counts.tied_x == 0 && counts.tied_y == 0 {
        exact_kendall_p(n, counts.discordant)
    } else {
        normal_kendall_p(x, y, s)
    };
    Ok((tau, p.clamp(0.0, 1.0)))
}

/// Per-model arithmetic mean over every criterion whose metric component
/// matches `metric` (one column per dataset under `dataset/metric` naming).
pub fn mean_metric(matrix: &DecisionMatrix, metric: &str) -> Result<Vec<f64>> {
    let columns = matrix.metric_columns(metric);
    if columns.is_empty() {
        return Err(Error::UnknownMetric(metric.to_string()));
    }
    Ok((0..matrix.n_models())
        .map(|i| columns.iter().map(|&j| matrix.score(i, j)).sum::<f64>() / columns.len() as f64)
        .collect())
}

/// Correlates the appraisal scores with a metric mean or a single criterion
/// column. Cost metrics are expected to correlate negatively; the raw
/// coefficient is reported without sign flipping.
pub fn correlate(
    matrix: &DecisionMatrix,
    breakdown: &EdasBreakdown,
    target: &CorrelationTarget,
) -> Result<CorrelationReport> {
    if breakdown.appraisal().len() != matrix.n_models() {
        return Err(Error::DimensionMismatch(format!(
            "breakdown covers {} models, matrix has {}",
            breakdown.appraisal().len(),
            matrix.n_models()
        )));
    }
    let values = match target {
        CorrelationTarget::MetricMean(metric) => mean_metric(matrix, metric)?,
        CorrelationTarget::Criterion(name) => {
            let j = matrix
                .criterion_index(name)
                .ok_or_else(|| Error::UnknownMetric(name.clone()))?;
            (0..matrix.n_models()).map(|i| matrix.score(i, j)).collect()
        }
    };
    let m = breakdown.appraisal();
    let (pearson_r, pearson_p) = pearson(m, &values)?;
    let (tau, kendall_p) = kendall_tau(m, &values)?;
    Ok(CorrelationReport {
        pair_label: format!("M vs {target}"),
        pearson_r,
        pearson_p,
        kendall_tau: tau,
        kendall_p,
        n: matrix.n_models(),
    })
}

/// Drops every criterion matching `metric`, re-weights the remainder
/// equally, re-evaluates, and reports per-model rank shifts.
pub fn ablate(matrix: &DecisionMatrix, metric: &str) -> Result<AblationReport> {
    let reduced = matrix.without_metric(metric)?;
    let original = evaluate(matrix);
    let rerun = evaluate(&reduced);
    let original_ranks: BTreeMap<String, usize> = matrix
        .model_names()
        .iter()
        .cloned()
        .zip(original.ranks().iter().copied())
        .collect();
    let new_ranks: BTreeMap<String, usize> = reduced
        .model_names()
        .iter()
        .cloned()
        .zip(rerun.ranks().iter().copied())
        .collect();
    let max_change = original_ranks
        .iter()
        .map(|(model, &rank)| rank.abs_diff(new_ranks[model]))
        .max()
        .unwrap_or(0);
    Ok(AblationReport {
        removed_metric: metric.to_string(),
        original_ranks,
        new_ranks,
        max_change,
    })
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::TooFewSamples {
            need: 3,
            got: x.len(),
        });
    }
    Ok(())
}

struct PairCounts {
    concordant: u64,
    discordant: u64,
    tied_x: u64,
    tied_y: u64,
}

/// Sort-based pair classification: sorts by (x, y), derives x-tie and joint
/// tie counts from runs, counts discordant pairs as merge-sort swaps over the
/// y sequence, and recovers concordant pairs from the totals.
fn count_pairs(x: &[f64], y: &[f64]) -> PairCounts {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        x[a].partial_cmp(&x[b])
            .unwrap()
            .then(y[a].partial_cmp(&y[b]).unwrap())
    });

    let tie_pairs = |sizes: &[u64]| sizes.iter().map(|t| t * (t - 1) / 2).sum::<u64>();

    let mut x_runs = Vec::new();
    let mut xy_runs = Vec::new();
    let mut x_run = 1u64;
    let mut xy_run = 1u64;
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if x[a] == x[b] {
            x_run += 1;
            if y[a] == y[b] {
                xy_run += 1;
            } else {
                xy_runs.push(xy_run);
                xy_run = 1;
            }
        } else {
            x_runs.push(x_run);
            x_run = 1;
            xy_runs.push(xy_run);
            xy_run = 1;
        }
    }
    x_runs.push(x_run);
    xy_runs.push(xy_run);
    let tied_x = tie_pairs(&x_runs);
    let tied_xy = tie_pairs(&xy_runs);

    // Discordant pairs = inversions of the y sequence taken in x order
    // (joint ties excluded below via the inclusion-exclusion identity).
    let mut ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let swaps = merge_count(&mut ys);

    let mut y_sorted: Vec<f64> = y.to_vec();
    y_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut y_runs = Vec::new();
    let mut y_run = 1u64;
    for w in y_sorted.windows(2) {
        if w[0] == w[1] {
            y_run += 1;
        } else {
            y_runs.push(y_run);
            y_run = 1;
        }
    }
    y_runs.push(y_run);
    let tied_y = tie_pairs(&y_runs);

    let total = (n * (n - 1) / 2) as u64;
    let discordant = swaps;
    // total = concordant + discordant + (tied_x - tied_xy) + (tied_y - tied_xy) + tied_xy
    let concordant = total + tied_xy - tied_x - tied_y - discordant;
    PairCounts {
        concordant,
        discordant,
        tied_x,
        tied_y,
    }
}

/// Counts inversions while merge-sorting in place. Equal elements are not
/// inversions.
fn merge_count(values: &mut [f64]) -> u64 {
    let n = values.len();
    let mut buffer = vec![0.0; n];
    let mut swaps = 0u64;
    let mut width = 1;
    while width < n {
        let mut start = 0;
        while start + width < n {
            let mid = start + width;
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid && j < end {
                if values[j] < values[i] {
                    swaps += (mid - i) as u64;
                    buffer[k] = values[j];
                    j += 1;
                } else {
                    buffer[k] = values[i];
                    i += 1;
                }
                k += 1;
            }
            buffer[k..k + (mid - i)].copy_from_slice(&values[i..mid]);
            buffer[k + (mid - i)..end].copy_from_slice(&values[j..end]);
            values[start..end].copy_from_slice(&buffer[start..end]);
            start = end;
        }
        width *= 2;
    }
    swaps
}

/// Exact two-sided p-value for untied samples: the null distribution of the
/// discordant-pair count is the inversion-count (Mahonian) distribution.
fn exact_kendall_p(n: usize, discordant: u64) -> f64 {
    let total = (n * (n - 1) / 2) as u64;
    // counts[k] = number of permutations of n with k inversions
    let mut counts = vec![1.0_f64];
    for size in 2..=n {
        let max_inv = counts.len() - 1 + (size - 1);
        let mut next = vec![0.0; max_inv + 1];
        let mut window = 0.0;
        for k in 0..=max_inv {
            if k < counts.len() {
                window += counts[k];
            }
            if k >= size {
                window -= counts[k - size];
            }
            next[k] = window;
        }
        counts = next;
    }
    let permutations: f64 = counts.iter().sum();
    let s_obs = (total as i64 - 2 * discordant as i64).unsigned_abs();
    let extreme: f64 = (0..=total)
        .filter(|&d| (total as i64 - 2 * d as i64).unsigned_abs() >= s_obs)
        .map(|d| counts[d as usize])
        .sum();
    extreme / permutations
}

/// Normal approximation with the tie-corrected variance of S and a one-unit
/// continuity correction.
fn normal_kendall_p(x: &[f64], y: &[f64], s: f64) -> f64 {
    let n = x.len() as f64;
    let tie_sizes = |values: &[f64]| -> Vec<f64> {
        let mut sorted: Vec<f64> = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut runs = Vec::new();
        let mut run = 1.0;
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                run += 1.0;
            } else {
                runs.push(run);
                run = 1.0;
            }
        }
        runs.push(run);
        runs
    };
    let tx = tie_sizes(x);
    let ty = tie_sizes(y);
    let sum = |sizes: &[f64], f: &dyn Fn(f64) -> f64| sizes.iter().map(|&t| f(t)).sum::<f64>();
    let vt = sum(&tx, &|t| t * (t - 1.0) * (2.0 * t + 5.0));
    let vu = sum(&ty, &|t| t * (t - 1.0) * (2.0 * t + 5.0));
    let t1 = sum(&tx, &|t| t * (t - 1.0));
    let u1 = sum(&ty, &|t| t * (t - 1.0));
    let t2 = sum(&tx, &|t| t * (t - 1.0) * (t - 2.0));
    let u2 = sum(&ty, &|t| t * (t - 1.0) * (t - 2.0));
    let var_s = (n * (n - 1.0) * (2.0 * n + 5.0) - vt - vu) / 18.0
        + t1 * u1 / (2.0 * n * (n - 1.0))
        + t2 * u2 / (9.0 * n * (n - 1.0) * (n - 2.0));
    if var_s <= 0.0 {
        return 1.0;
    }
    let s_corrected = (s.abs() - 1.0).max(0.0);
    let z = s_corrected / var_s.sqrt();
    erfc(z / std::f64::consts::SQRT_2)
}

/// Regularized incomplete beta function I_x(a, b) via Lentz's continued
/// fraction.
fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 3e-16;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Lanczos log-gamma (g = 7, 9 coefficients).
fn ln_gamma(x: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        std::f64::consts::PI.ln() - (std::f64::consts::PI * x).sin().ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = COEFFS[0];
        for (i, &coefficient) in COEFFS.iter().enumerate().skip(1) {
            acc += coefficient / (x + i as f64);
        }
        let t = x + 7.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Complementary error function, fractional error below 1.2e-7.
#[allow(clippy::excessive_precision)]
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let ans = t
        * (-z * z - 1.265_512_23
            + t * (1.000_023_68
                + t * (0.374_091_96
                    + t * (0.096_784_18
                        + t * (-0.186_288_06
                            + t * (0.278_868_07
                                + t * (-1.135_203_98
                                    + t * (1.488_515_87
                                        + t * (-0.822_152_23 + t * 0.170_872_77)))))))))
            .exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}
