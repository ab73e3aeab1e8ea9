//! Rendering of scoring, metric, correlation, and ablation results in the
//! three output encodings. Table mode rounds to 4 decimals; CSV and JSON
//! carry full precision (shortest round-trip representation).

use std::str::FromStr;

use serde_json::json;

use crate::analysis::{AblationReport, CorrelationReport};
use crate::error::{Error, Result};
use crate::eval::EdasBreakdown;
use crate::matrix::DecisionMatrix;

/// Output encoding for every command.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    /// Human-readable fixed-width columns, 4-decimal rounding.
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Self::Table),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown format `{other}` (expected table, csv, or json)"
            ))),
        }
    }
}

/// Per-model scoring rows in rank order: WPDA_sum, WNDA_sum, NWPDA, NWNDA,
/// M, Rank. The CSV encoding is long-form `model,dataset,metric,value` with
/// dataset `edas`, so it re-parses through the ingestion path.
pub fn render_rank(
    matrix: &DecisionMatrix,
    breakdown: &EdasBreakdown,
    format: OutputFormat,
) -> String {
    let order = breakdown.order();
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "{:<12} {:>9} {:>9} {:>9} {:>9} {:>9} {:>5}\n",
                "model", "WPDA_sum", "WNDA_sum", "NWPDA", "NWNDA", "M", "rank"
            ));
            for &i in &order {
                out.push_str(&format!(
                    "{:<12} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>5}\n",
                    matrix.model_names()[i],
                    breakdown.wpda()[i],
                    breakdown.wnda()[i],
                    breakdown.nwpda()[i],
                    breakdown.nwnda()[i],
                    breakdown.appraisal()[i],
                    breakdown.ranks()[i],
                ));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("model,dataset,metric,value\n");
            for &i in &order {
                let model = &matrix.model_names()[i];
                for (metric, value) in [
                    ("WPDA_sum", breakdown.wpda()[i]),
                    ("WNDA_sum", breakdown.wnda()[i]),
                    ("NWPDA", breakdown.nwpda()[i]),
                    ("NWNDA", breakdown.nwnda()[i]),
                    ("M", breakdown.appraisal()[i]),
                    ("rank", breakdown.ranks()[i] as f64),
                ] {
                    out.push_str(&format!("{model},edas,{metric},{value}\n"));
                }
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = order
                .iter()
                .map(|&i| {
                    json!({
                        "model": matrix.model_names()[i],
                        "wpda_sum": breakdown.wpda()[i],
                        "wnda_sum": breakdown.wnda()[i],
                        "nwpda": breakdown.nwpda()[i],
                        "nwnda": breakdown.nwnda()[i],
                        "m": breakdown.appraisal()[i],
                        "rank": breakdown.ranks()[i],
                    })
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows).expect("json rows serialize");
            out.push('\n');
            out
        }
    }
}

/// MR, MRR, and Hits@k rows for the requested cutoffs.
pub fn render_metrics(mr: f64, mrr: f64, hits: &[(u64, f64)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!("{:<10} {:>9.4}\n", "MR", mr));
            out.push_str(&format!("{:<10} {:>9.4}\n", "MRR", mrr));
            for (k, value) in hits {
                out.push_str(&format!("{:<10} {:>9.4}\n", format!("Hits@{k}"), value));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("metric,value\n");
            out.push_str(&format!("MR,{mr}\n"));
            out.push_str(&format!("MRR,{mrr}\n"));
            for (k, value) in hits {
                out.push_str(&format!("Hits@{k},{value}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let hits: Vec<_> = hits
                .iter()
                .map(|(k, value)| json!({"k": k, "value": value}))
                .collect();
            let mut out = serde_json::to_string_pretty(&json!({
                "mr": mr,
                "mrr": mrr,
                "hits": hits,
            }))
            .expect("metrics serialize");
            out.push('\n');
            out
        }
    }
}

/// Pearson r/p and Kendall tau/p for one correlation pair.
pub fn render_correlation(report: &CorrelationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!("pair:        {}\n", report.pair_label));
            out.push_str(&format!("n:           {}\n", report.n));
            out.push_str(&format!("pearson r:   {:>9.4}\n", report.pearson_r));
            out.push_str(&format!("pearson p:   {:>9.4}\n", report.pearson_p));
            out.push_str(&format!("kendall tau: {:>9.4}\n", report.kendall_tau));
            out.push_str(&format!("kendall p:   {:>9.4}\n", report.kendall_p));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("pair,n,pearson_r,pearson_p,kendall_tau,kendall_p\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.pair_label,
                report.n,
                report.pearson_r,
                report.pearson_p,
                report.kendall_tau,
                report.kendall_p
            ));
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
    }
}

/// Rank table after removing each metric: one column per removal plus the
/// per-model maximum shift, rows ordered by original rank.
pub fn render_ablation(reports: &[AblationReport], format: OutputFormat) -> String {
    assert!(!reports.is_empty(), "at least one ablation report");
    let mut models: Vec<&String> = reports[0].original_ranks.keys().collect();
    models.sort_by_key(|model| reports[0].original_ranks[*model]);
    let max_change_of = |model: &str| -> usize {
        reports
            .iter()
            .filter_map(|r| r.change(model))
            .max()
            .unwrap_or(0)
    };
    match format {
        OutputFormat::Table => {
            let mut out = format!("{:<12} {:>8}", "model", "original");
            for report in reports {
                out.push_str(&format!(" {:>10}", format!("-{}", report.removed_metric)));
            }
            out.push_str(&format!(" {:>10}\n", "max_change"));
            for model in &models {
                out.push_str(&format!(
                    "{:<12} {:>8}",
                    model, reports[0].original_ranks[*model]
                ));
                for report in reports {
                    out.push_str(&format!(" {:>10}", report.new_ranks[*model]));
                }
                out.push_str(&format!(" {:>10}\n", max_change_of(model)));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("model,original");
            for report in reports {
                out.push_str(&format!(",removed_{}", report.removed_metric));
            }
            out.push_str(",max_change\n");
            for model in &models {
                out.push_str(&format!("{},{}", model, reports[0].original_ranks[*model]));
                for report in reports {
                    out.push_str(&format!(",{}", report.new_ranks[*model]));
                }
                out.push_str(&format!(",{}\n", max_change_of(model)));
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
            out
        }
    }
}
