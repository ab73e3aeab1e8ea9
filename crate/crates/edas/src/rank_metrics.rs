//! Rank-based evaluation metrics over raw rank lists: mean rank, mean
//! reciprocal rank, and hits@k.

use crate::error::{Error, Result};

/// A non-empty list of positive integer ranks, one per test query.
///
/// Fractional (tie-averaged) ranks are rejected by construction: the list
/// only takes integers. Whether the ranks were produced under a filtered or
/// raw protocol is up to the producer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankList {
    ranks: Vec<u64>,
}

impl RankList {
    /// Validates that the list is non-empty and every rank is >= 1.
    pub fn new(ranks: Vec<u64>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::EmptyRankList);
        }
        if let Some(position) = ranks.iter().position(|&r| r == 0) {
            return Err(Error::InvalidRank {
                line: position + 1,
                text: "0".to_string(),
            });
        }
        Ok(Self { ranks })
    }

    /// Parses one positive integer per line. Blank lines are rejected, not
    /// skipped, so line numbers in errors match the input file.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut ranks = Vec::new();
        for (index, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            let rank: u64 = trimmed.parse().map_err(|_| Error::InvalidRank {
                line: index + 1,
                text: trimmed.to_string(),
            })?;
            if rank == 0 {
                return Err(Error::InvalidRank {
                    line: index + 1,
                    text: trimmed.to_string(),
                });
            }
            ranks.push(rank);
        }
        if ranks.is_empty() {
            return Err(Error::EmptyRankList);
        }
        Ok(Self { ranks })
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    /// Number of test queries.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        // Construction rejects empty lists.
        false
    }
}

/// Arithmetic mean of the ranks; always >= 1.
pub fn mean_rank(list: &RankList) -> f64 {
    let sum: f64 = list.ranks.iter().map(|&r| r as f64).sum();
    sum / list.len() as f64
}

/// Mean of reciprocal ranks; in (0, 1].
pub fn mean_reciprocal_rank(list: &RankList) -> f64 {
    let sum: f64 = list.ranks.iter().map(|&r| 1.0 / r as f64).sum();
    sum / list.len() as f64
}

/// Fraction of ranks <= k; monotone non-decreasing in k.
pub fn hits_at_k(list: &RankList, k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let hits = list.ranks.iter().filter(|&&r| r <= k).count();
    Ok(hits as f64 / list.len() as f64)
}
