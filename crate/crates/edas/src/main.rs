//! Command-line interface: score leaderboards, compute rank metrics,
//! correlate rankings with traditional metrics, run leave-one-metric-out
//! ablations, and emit scatter-plot data.
//!
//! Exit codes: 0 success, 2 input/parse errors, 3 semantic/validation
//! errors, 4 output I/O errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use edas::analysis::{ablate, correlate, mean_metric, CorrelationTarget};
use edas::ingest::{assemble, parse_leaderboard, CriteriaConfig, LeaderboardFormat, MissingPolicy};
use edas::matrix::metric_component;
use edas::plot::{points_csv, scatter_svg, ScatterPoint};
use edas::rank_metrics::{hits_at_k, mean_rank, mean_reciprocal_rank, RankList};
use edas::report::{
    render_ablation, render_correlation, render_metrics, render_rank, OutputFormat,
};
use edas::{evaluate, DecisionMatrix, Error};

#[derive(Parser)]
#[command(
    name = "edas",
    version,
    about = "Aggregate multi-metric, multi-dataset leaderboards into one ranked score"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score and rank every model in a leaderboard.
    Rank {
        /// Long-form leaderboard file (.csv or .json).
        #[arg(long)]
        leaderboard: PathBuf,
        /// Criteria config JSON; defaults to the built-in direction table.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output format: table, csv, or json.
        #[arg(long, default_value = "table")]
        format: String,
        /// Impute missing cells with the column average instead of failing.
        #[arg(long)]
        impute_average: bool,
    },
    /// Compute MR, MRR, and Hits@k from a file of ranks (one per line).
    Metrics {
        /// File with one positive integer rank per line.
        ranks_file: PathBuf,
        /// Hits@k cutoff; repeatable. Defaults to 1, 3, 10.
        #[arg(long = "k")]
        ks: Vec<u64>,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Correlate the appraisal score M with a metric mean or one criterion.
    Correlate {
        #[arg(long)]
        leaderboard: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// `mean:<metric>` or `<dataset>/<metric>`.
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "table")]
        format: String,
        #[arg(long)]
        impute_average: bool,
    },
    /// Re-rank after removing each named metric across all datasets.
    Ablate {
        #[arg(long)]
        leaderboard: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Metric to remove; repeatable.
        #[arg(long = "remove", required = true)]
        remove: Vec<String>,
        #[arg(long, default_value = "table")]
        format: String,
        #[arg(long)]
        impute_average: bool,
    },
    /// Write a scatter plot of M against a metric spec (SVG + sibling CSV).
    Plot {
        #[arg(long)]
        leaderboard: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// X-axis spec: `mean:<metric>` or `<dataset>/<metric>`.
        #[arg(long)]
        x: String,
        /// Output SVG path; the point CSV lands next to it.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        impute_average: bool,
    },
}

/// A diagnostic plus the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            // Malformed input or configuration.
            Error::Parse { .. }
            | Error::DuplicateRecord { .. }
            | Error::MissingDirection(_)
            | Error::InvalidConfig(_)
            | Error::UnknownMetric(_)
            | Error::EmptyRankList
            | Error::InvalidRank { .. }
            | Error::InvalidK(_) => 2,
            // Structurally valid input that fails validation or analysis.
            Error::EmptyMatrix
            | Error::DuplicateModel(_)
            | Error::DuplicateCriterion(_)
            | Error::InvalidScore { .. }
            | Error::NegativeWeight(_)
            | Error::ZeroWeightSum
            | Error::ZeroAverageColumn(_)
            | Error::DimensionMismatch(_)
            | Error::MissingCell { .. }
            | Error::EmptyInput
            | Error::NoCriteriaLeft(_)
            | Error::TooFewSamples { .. }
            | Error::ZeroVariance => 3,
        };
        Self::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("edas: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Rank {
            leaderboard,
            config,
            format,
            impute_average,
        } => {
            let format = parse_format(&format)?;
            let matrix = load_matrix(&leaderboard, config.as_deref(), impute_average)?;
            let breakdown = evaluate(&matrix);
            print!("{}", render_rank(&matrix, &breakdown, format));
            Ok(())
        }
        Command::Metrics {
            ranks_file,
            ks,
            format,
        } => {
            let format = parse_format(&format)?;
            let text = read_input(&ranks_file)?;
            let list = RankList::from_lines(&text)?;
            let ks = if ks.is_empty() { vec![1, 3, 10] } else { ks };
            let mut hits = Vec::with_capacity(ks.len());
            for k in ks {
                hits.push((k, hits_at_k(&list, k)?));
            }
            print!(
                "{}",
                render_metrics(mean_rank(&list), mean_reciprocal_rank(&list), &hits, format)
            );
            Ok(())
        }
        Command::Correlate {
            leaderboard,
            config,
            target,
            format,
            impute_average,
        } => {
            let format = parse_format(&format)?;
            let target: CorrelationTarget = target.parse()?;
            let matrix = load_matrix(&leaderboard, config.as_deref(), impute_average)?;
            let breakdown = evaluate(&matrix);
            let report = correlate(&matrix, &breakdown, &target)?;
            print!("{}", render_correlation(&report, format));
            Ok(())
        }
        Command::Ablate {
            leaderboard,
            config,
            remove,
            format,
            impute_average,
        } => {
            let format = parse_format(&format)?;
            let matrix = load_matrix(&leaderboard, config.as_deref(), impute_average)?;
            // Each metric is ablated independently, but removing the whole
            // requested set may not cover every criterion.
            let survivors = matrix
                .criteria()
                .iter()
                .filter(|c| !remove.iter().any(|m| metric_component(&c.name) == m))
                .count();
            if survivors == 0 {
                return Err(Error::NoCriteriaLeft(remove.join(", ")).into());
            }
            let mut reports = Vec::with_capacity(remove.len());
            for metric in &remove {
                reports.push(ablate(&matrix, metric)?);
            }
            print!("{}", render_ablation(&reports, format));
            Ok(())
        }
        Command::Plot {
            leaderboard,
            config,
            x,
            out,
            impute_average,
        } => {
            let spec: CorrelationTarget = x.parse()?;
            let matrix = load_matrix(&leaderboard, config.as_deref(), impute_average)?;
            let breakdown = evaluate(&matrix);
            let xs = resolve_values(&matrix, &spec)?;
            let points: Vec<ScatterPoint> = matrix
                .model_names()
                .iter()
                .zip(xs.iter().zip(breakdown.appraisal()))
                .map(|(model, (&x, &y))| ScatterPoint {
                    label: model.clone(),
                    x,
                    y,
                })
                .collect();
            write_output(&out, &scatter_svg(&points, &spec.to_string(), "M"))?;
            let csv_path = out.with_extension("csv");
            write_output(&csv_path, &points_csv(&points))?;
            eprintln!("edas: wrote {} and {}", out.display(), csv_path.display());
            Ok(())
        }
    }
}

fn parse_format(text: &str) -> Result<OutputFormat, Failure> {
    Ok(text.parse()?)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::new(4, format!("cannot write {}: {e}", path.display())))
}

fn load_matrix(
    leaderboard: &Path,
    config: Option<&Path>,
    impute_average: bool,
) -> Result<DecisionMatrix, Failure> {
    let mut criteria_config = match config {
        Some(path) => {
            let text = read_input(path)?;
            CriteriaConfig::from_json(&text)?
        }
        None => CriteriaConfig::default(),
    };
    if impute_average {
        criteria_config.missing_policy = MissingPolicy::ImputeColumnAverage;
    }
    if criteria_config.weights_need_renormalization() {
        let sum: f64 = criteria_config
            .weights
            .as_ref()
            .map(|w| w.values().sum())
            .unwrap_or(1.0);
        eprintln!("edas: warning: criterion weights sum to {sum}; renormalizing to 1");
    }

    let text = read_input(leaderboard)?;
    let format = match leaderboard.extension().and_then(|e| e.to_str()) {
        Some("json") => LeaderboardFormat::Json,
        _ => LeaderboardFormat::Csv,
    };
    let records = parse_leaderboard(&text, format)?;
    Ok(assemble(&records, &criteria_config)?)
}

fn resolve_values(matrix: &DecisionMatrix, spec: &CorrelationTarget) -> Result<Vec<f64>, Failure> {
    match spec {
        CorrelationTarget::MetricMean(metric) => Ok(mean_metric(matrix, metric)?),
        CorrelationTarget::Criterion(name) => {
            let j = matrix
                .criterion_index(name)
                .ok_or_else(|| Error::UnknownMetric(name.clone()))?;
            Ok((0..matrix.n_models()).map(|i| matrix.score(i, j)).collect())
        }
    }
}
