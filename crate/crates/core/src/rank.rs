//! Turning scores into removal orders.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::CentralityScores;
use crate::error::{Error, Result};

/// How nodes with exactly equal scores are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieRule {
    #[default]
    IdAscending,
    /// Shuffle each tie block with a generator seeded by this value.
    SeededShuffle(u64),
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieRule::IdAscending => f.write_str("id-ascending"),
            TieRule::SeededShuffle(seed) => write!(f, "shuffle:{seed}"),
        }
    }
}

impl FromStr for TieRule {
    type Err = Error;

    /// `id-ascending` (or `id`), or `shuffle:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" | "id-ascending" => Ok(TieRule::IdAscending),
            _ => s
                .strip_prefix("shuffle:")
                .and_then(|seed| seed.parse().ok())
                .map(TieRule::SeededShuffle)
                .ok_or_else(|| Error::InvalidParam(format!("unknown tie rule `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    /// Node ids, highest score first.
    pub order: Vec<usize>,
    pub tie_rule: TieRule,
}

/// Sorts node ids by descending score. Scores must be finite.
pub fn rank_values(values: &[f64], tie_rule: TieRule) -> Result<Ranking> {
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    // stable sort keeps ascending ids inside tie blocks; -0.0 and 0.0 tie
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("finite scores"));
    if let TieRule::SeededShuffle(seed) = tie_rule {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start = 0;
        while start < order.len() {
            let score = values[order[start]];
            let end = start + order[start..].iter().take_while(|&&v| values[v] == score).count();
            order[start..end].shuffle(&mut rng);
            start = end;
        }
    }
    Ok(Ranking { order, tie_rule })
}

pub fn rank(scores: &CentralityScores, tie_rule: TieRule) -> Result<Ranking> {
    rank_values(&scores.values, tie_rule)
}
