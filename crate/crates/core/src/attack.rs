//! Node-removal simulation.
//!
//! `simulate_removal` runs the attack backwards: nodes are inserted in reverse
//! removal order and merged with a union-find structure, so the whole curve
//! costs one pass over the edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::centrality::{compute_centrality, CentralityParams, Metric};
use crate::error::{Error, Result};
use crate::graph::{largest_surviving_component, Graph};
use crate::rank::{rank_values, TieRule};

/// Label of the ranking that produced a curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Strategy {
    Metric(Metric),
    Custom(String),
}

impl Strategy {
    pub fn custom() -> Self {
        Strategy::Custom("custom".into())
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Metric(m) => m.fmt(f),
            Strategy::Custom(name) => f.write_str(name),
        }
    }
}

impl FromStr for Strategy {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(s.parse::<Metric>()
            .map(Strategy::Metric)
            .unwrap_or_else(|_| Strategy::Custom(s.to_string())))
    }
}

impl From<Metric> for Strategy {
    fn from(m: Metric) -> Self {
        Strategy::Metric(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackCurve {
    pub strategy: Strategy,
    pub order: Vec<usize>,
    /// Entry `i` is the largest component size after removing `order[..=i]`.
    pub gcc_sizes: Vec<u32>,
    pub n: usize,
    /// Largest component size of the intact graph.
    pub initial_gcc: u32,
}

impl AttackCurve {
    pub fn with_strategy(mut self, strategy: impl Into<Strategy>) -> Self {
        self.strategy = strategy.into();
        self
    }

    pub fn relative(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.gcc_sizes.iter().map(|&s| s as f64 / n).collect()
    }

    /// Relative size of the intact graph's largest component, `G(0)`.
    pub fn initial_relative(&self) -> f64 {
        self.initial_gcc as f64 / self.n as f64
    }

    /// Mean relative largest-component size over all removal steps.
    pub fn robustness(&self) -> f64 {
        mean_relative(&self.gcc_sizes, self.n)
    }
}

/// `(1/N) * sum(size / N)`, summed in integers first.
pub(crate) fn mean_relative(sizes: &[u32], n: usize) -> f64 {
    let total: u64 = sizes.iter().map(|&s| s as u64).sum();
    total as f64 / (n as f64 * n as f64)
}

pub fn check_permutation(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::NotPermutation(format!(
            "expected {n} entries, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::NotPermutation(format!("node {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotPermutation(format!("node {v} repeated")));
        }
    }
    Ok(())
}

struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Merges the sets of `a` and `b`, returning the size of the result.
    fn union(&mut self, a: usize, b: usize) -> u32 {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return self.size[ra];
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.size[ra]
    }
}

/// Exact largest-component sequence for removing nodes in `order`.
pub fn simulate_removal(g: &Graph, order: &[usize]) -> Result<AttackCurve> {
    let n = g.node_count();
    check_permutation(n, order)?;
    let mut sets = DisjointSets::new(n);
    let mut present = vec![false; n];
    let mut gcc_sizes = vec![0u32; n];
    let mut best = 0u32;
    // after inserting order[t..], the graph is the one left once order[..t] is gone
    for t in (0..n).rev() {
        gcc_sizes[t] = best;
        let v = order[t];
        present[v] = true;
        best = best.max(1);
        for &u in g.neighbors(v) {
            let u = u as usize;
            if present[u] {
                best = best.max(sets.union(u, v));
            }
        }
    }
    Ok(AttackCurve {
        strategy: Strategy::custom(),
        order: order.to_vec(),
        gcc_sizes,
        n,
        initial_gcc: best,
    })
}

/// Reference implementation: recount components from scratch after every
/// removal. Quadratic; meant for checking `simulate_removal`.
pub fn naive_curve_oracle(g: &Graph, order: &[usize]) -> Result<AttackCurve> {
    let n = g.node_count();
    check_permutation(n, order)?;
    let mut gone = vec![false; n];
    let initial_gcc = largest_surviving_component(g, &gone) as u32;
    let gcc_sizes = order
        .iter()
        .map(|&v| {
            gone[v] = true;
            largest_surviving_component(g, &gone) as u32
        })
        .collect();
    Ok(AttackCurve {
        strategy: Strategy::custom(),
        order: order.to_vec(),
        gcc_sizes,
        n,
        initial_gcc,
    })
}

/// Centrality, ranking and simulation in one step.
pub fn attack_by_strategy(
    g: &Graph,
    metric: Metric,
    params: &CentralityParams,
    tie_rule: TieRule,
) -> Result<AttackCurve> {
    let scores = compute_centrality(g, metric, params)?;
    let ranking = rank_values(&scores.values, tie_rule)?;
    Ok(simulate_removal(g, &ranking.order)?.with_strategy(metric))
}
