//! Most destructive attack: the pointwise minimum of several attack curves.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::attack::{mean_relative, AttackCurve, Strategy};
use crate::error::{Error, Result};

/// A (strategy, node) pair reaching the minimum at some position. `strategy`
/// indexes `MdaCurve::source_strategies`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub strategy: usize,
    pub node: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdaPosition {
    pub gcc_size: u32,
    pub winner: Candidate,
    /// Every source reaching `gcc_size` here, in source order. Contains
    /// `winner` unless the winner was replaced by `with_winners`.
    pub alternatives: Vec<Candidate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdaCurve {
    pub n: usize,
    pub initial_gcc: u32,
    pub positions: Vec<MdaPosition>,
    pub source_strategies: Vec<Strategy>,
}

impl MdaCurve {
    pub fn gcc_sizes(&self) -> Vec<u32> {
        self.positions.iter().map(|p| p.gcc_size).collect()
    }

    pub fn relative(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.positions.iter().map(|p| p.gcc_size as f64 / n).collect()
    }

    pub fn initial_relative(&self) -> f64 {
        self.initial_gcc as f64 / self.n as f64
    }

    pub fn winner_strategy(&self, position: usize) -> &Strategy {
        &self.source_strategies[self.positions[position].winner.strategy]
    }

    /// Replaces the winner at each position. A winner need not be among the
    /// position's alternatives: the rationality assignment may credit a node
    /// whose own removal elsewhere produced the same component size.
    pub fn with_winners(mut self, winners: &[Candidate]) -> Result<Self> {
        if winners.len() != self.n {
            return Err(Error::Mismatch(format!(
                "{} winners for {} positions",
                winners.len(),
                self.n
            )));
        }
        for (pos, &w) in self.positions.iter_mut().zip(winners) {
            if w.strategy >= self.source_strategies.len() || w.node >= self.n {
                return Err(Error::Mismatch(format!(
                    "winner {w:?} is outside {} strategies and {} nodes",
                    self.source_strategies.len(),
                    self.n
                )));
            }
            pos.winner = w;
        }
        Ok(self)
    }
}

/// Checks that all curves describe the same graph size and are well formed.
pub(crate) fn check_aligned(curves: &[AttackCurve]) -> Result<()> {
    let first = curves
        .first()
        .ok_or_else(|| Error::Mismatch("no curves to stack".into()))?;
    for c in curves {
        if c.n != first.n || c.gcc_sizes.len() != first.n || c.order.len() != first.n {
            return Err(Error::Mismatch(format!(
                "strategy {} has {} positions, expected {}",
                c.strategy,
                c.gcc_sizes.len(),
                first.n
            )));
        }
        if c.initial_gcc != first.initial_gcc {
            return Err(Error::Mismatch(format!(
                "strategy {} starts from a different graph",
                c.strategy
            )));
        }
    }
    Ok(())
}

/// Pointwise minimum with full provenance. Among tied sources the first in
/// input order is the winner.
pub fn stack(curves: &[AttackCurve]) -> Result<MdaCurve> {
    check_aligned(curves)?;
    let n = curves[0].n;
    let positions = (0..n)
        .map(|j| {
            let gcc_size = curves.iter().map(|c| c.gcc_sizes[j]).min().expect("non-empty");
            let alternatives: Vec<Candidate> = curves
                .iter()
                .enumerate()
                .filter(|(_, c)| c.gcc_sizes[j] == gcc_size)
                .map(|(s, c)| Candidate {
                    strategy: s,
                    node: c.order[j],
                })
                .collect();
            MdaPosition {
                gcc_size,
                winner: alternatives[0],
                alternatives,
            }
        })
        .collect();
    Ok(MdaCurve {
        n,
        initial_gcc: curves[0].initial_gcc,
        positions,
        source_strategies: curves.iter().map(|c| c.strategy.clone()).collect(),
    })
}

/// `D = (1/N) * sum_i (g0 - G(i))`.
pub fn destruction(mda: &MdaCurve, g0: f64) -> f64 {
    g0 - worst_robustness(mda)
}

/// Mean relative largest-component size along the stacked curve.
pub fn worst_robustness(mda: &MdaCurve) -> f64 {
    mean_relative(&mda.gcc_sizes(), mda.n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub strategy: Strategy,
    /// Zero-based, half-open position ranges this strategy wins, ascending.
    pub ranges: Vec<Range<usize>>,
}

impl Segment {
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranges.iter().flat_map(|r| r.clone())
    }

    pub fn len(&self) -> usize {
        self.ranges.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }
}

/// For every source strategy, the positions where it is the recorded winner.
pub fn decompose(mda: &MdaCurve) -> Vec<Segment> {
    let mut segments: Vec<Segment> = mda
        .source_strategies
        .iter()
        .map(|s| Segment {
            strategy: s.clone(),
            ranges: Vec::new(),
        })
        .collect();
    for (j, pos) in mda.positions.iter().enumerate() {
        let ranges = &mut segments[pos.winner.strategy].ranges;
        match ranges.last_mut() {
            Some(last) if last.end == j => last.end = j + 1,
            _ => ranges.push(j..j + 1),
        }
    }
    segments
}
