//! Reference implementations for differential testing, plus a deterministic
//! RNG. Everything here is deliberately naive: straight loops over the
//! defining formulas, sharing no code with the library's compute paths.
//! When the two disagree, the reference is right.

#![allow(dead_code)] // each test binary uses a subset

use edas::matrix::{DecisionMatrix, Direction};

/// Every intermediate of the reference pipeline.
pub struct ReferenceBreakdown {
    pub averages: Vec<f64>,
    pub pda: Vec<Vec<f64>>,
    pub nda: Vec<Vec<f64>>,
    pub wpda: Vec<f64>,
    pub wnda: Vec<f64>,
    pub nwpda: Vec<f64>,
    pub nwnda: Vec<f64>,
    pub appraisal: Vec<f64>,
    pub ranks: Vec<usize>,
}

/// Straight-from-the-definitions scoring pipeline.
pub fn reference_evaluate(matrix: &DecisionMatrix) -> ReferenceBreakdown {
    let n = matrix.n_models();
    let m = matrix.n_criteria();

    let mut averages = vec![0.0; m];
    for (j, average) in averages.iter_mut().enumerate() {
        let mut total = 0.0;
        let mut constant = true;
        for i in 0..n {
            total += matrix.score(i, j);
            constant &= matrix.score(i, j) == matrix.score(0, j);
        }
        // The mean of a constant column is that constant, exactly.
        *average = if constant {
            matrix.score(0, j)
        } else {
            total / n as f64
        };
    }

    let mut pda = vec![vec![0.0; m]; n];
    let mut nda = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            let x = matrix.score(i, j);
            let avg = averages[j];
            // Zero-average guard: distances stay measured from the true
            // average, only the denominator is substituted.
            let denominator = if avg > 0.0 { avg } else { 1e-12 };
            match matrix.criteria()[j].direction {
                Direction::Benefit => {
                    pda[i][j] = f64::max(0.0, x - avg) / denominator;
                    nda[i][j] = f64::max(0.0, avg - x) / denominator;
                }
                Direction::Cost => {
                    pda[i][j] = f64::max(0.0, avg - x) / denominator;
                    nda[i][j] = f64::max(0.0, x - avg) / denominator;
                }
            }
        }
    }

    let mut wpda = vec![0.0; n];
    let mut wnda = vec![0.0; n];
    for i in 0..n {
        for j in 0..m {
            let w = matrix.criteria()[j].weight;
            wpda[i] += w * pda[i][j];
            wnda[i] += w * nda[i][j];
        }
    }

    let max_of = |values: &[f64]| {
        values
            .iter()
            .fold(0.0_f64, |a, &b| if b > a { b } else { a })
    };
    let wpda_max = max_of(&wpda);
    let wnda_max = max_of(&wnda);
    let nwpda: Vec<f64> = wpda
        .iter()
        .map(|&v| if wpda_max > 0.0 { v / wpda_max } else { 0.0 })
        .collect();
    let nwnda: Vec<f64> = wnda
        .iter()
        .map(|&v| if wnda_max > 0.0 { v / wnda_max } else { 0.0 })
        .collect();

    let appraisal: Vec<f64> = nwpda
        .iter()
        .zip(&nwnda)
        .map(|(p, q)| 0.5 * (p + (1.0 - q)))
        .collect();

    // Rank by definition: 1 + (# strictly better) + (# equal that appear earlier).
    let mut ranks = vec![0; n];
    for i in 0..n {
        let mut rank = 1;
        for k in 0..n {
            if appraisal[k] > appraisal[i] || (appraisal[k] == appraisal[i] && k < i) {
                rank += 1;
            }
        }
        ranks[i] = rank;
    }

    ReferenceBreakdown {
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

/// Definition-level Pearson: r from the covariance formula, two-sided p by
/// Simpson quadrature of the unnormalized t density (no special functions).
pub fn reference_pearson(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let mx = mean(x);
    let my = mean(y);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    let r = sxy / (sxx * syy).sqrt();
    let df = (n - 2) as f64;
    if 1.0 - r * r <= 0.0 {
        return (r.clamp(-1.0, 1.0), 0.0);
    }
    let t = r.abs() * (df / (1.0 - r * r)).sqrt();
    (r, student_t_two_sided_p(t, df))
}

/// Two-sided tail probability of the t distribution by quadrature.
///
/// Substituting u = tan(theta) maps both the tail integral and the
/// half-line normalizer onto finite intervals; the gamma-function
/// normalization cancels in the ratio.
pub fn student_t_two_sided_p(t_abs: f64, df: f64) -> f64 {
    let density = |theta: f64| {
        let u = theta.tan();
        let sec2 = 1.0 + u * u; // du = sec^2(theta) d(theta)
        (1.0 + u * u / df).powf(-(df + 1.0) / 2.0) * sec2
    };
    let half = std::f64::consts::FRAC_PI_2;
    let tail = simpson(&density, t_abs.atan(), half, 1024);
    let total = simpson(&density, 0.0, half, 1024);
    (tail / total).clamp(0.0, 1.0)
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels * 2;
    let h = (b - a) / n as f64;
    let mut total = f(a) + f(b);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        total += weight * f(a + i as f64 * h);
    }
    total * h / 3.0
}

/// Brute-force Kendall tau-b: classify every pair.
pub fn reference_kendall_tau(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut concordant = 0.0;
    let mut discordant = 0.0;
    let mut tied_x = 0.0;
    let mut tied_y = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 && dy == 0.0 {
                // joint tie: contributes to neither correction term
            } else if dx == 0.0 {
                tied_x += 1.0;
            } else if dy == 0.0 {
                tied_y += 1.0;
            } else if (dx > 0.0) == (dy > 0.0) {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    }
    let total = (n * (n - 1)) as f64 / 2.0;
    (concordant - discordant) / ((total - tied_x) * (total - tied_y)).sqrt()
}

/// Exact two-sided Kendall p for untied data by enumerating every
/// permutation and counting discordant pairs from scratch.
pub fn reference_kendall_exact_p(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    assert!(n <= 8, "full enumeration only for n <= 8");
    // Observed |S| = |concordant - discordant|.
    let s_of = |perm_y: &[f64]| {
        let mut s = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                let dx = x[i] - x[j];
                let dy = perm_y[i] - perm_y[j];
                if (dx > 0.0) == (dy > 0.0) {
                    s += 1;
                } else {
                    s -= 1;
                }
            }
        }
        s
    };
    let observed = s_of(y).abs();

    let mut perm: Vec<usize> = (0..n).collect();
    let mut extreme = 0u64;
    let mut count = 0u64;
    permute(&mut perm, 0, &mut |p| {
        let shuffled: Vec<f64> = p.iter().map(|&i| y[i]).collect();
        count += 1;
        if s_of(&shuffled).abs() >= observed {
            extreme += 1;
        }
    });
    extreme as f64 / count as f64
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// xorshift64* — a tiny deterministic RNG for data generation in tests and
/// benches.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [low, high).
    pub fn range(&mut self, low: f64, high: f64) -> f64 {
        low + self.unit() * (high - low)
    }

    /// Uniform integer in [low, high].
    pub fn int(&mut self, low: usize, high: usize) -> usize {
        low + (self.next_u64() as usize) % (high - low + 1)
    }
}

/// A random valid decision matrix with mixed directions and equal weights.
pub fn random_matrix(rng: &mut XorShift, n: usize, m: usize) -> DecisionMatrix {
    use edas::matrix::Criterion;
    let criteria = (0..m)
        .map(|j| {
            let direction = if rng.unit() < 0.4 {
                Direction::Cost
            } else {
                Direction::Benefit
            };
            Criterion::new(format!("d{}/c{j}", j % 3), direction, 1.0 / m as f64)
        })
        .collect();
    let names = (0..n).map(|i| format!("model{i}")).collect();
    let rows = (0..n)
        .map(|_| (0..m).map(|_| rng.range(0.0, 50.0)).collect())
        .collect();
    DecisionMatrix::new(names, criteria, rows).expect("generated matrix is valid")
}
