//! Maximum rationality: how close the stacked curve comes to removing every
//! node exactly once.
//!
//! Each position of the stacked curve may be reached by several (strategy,
//! node) pairs. We assign one node per position, preferring nodes that have
//! been used least, then swap unused nodes in where an overused node sits.
//! The score is the fraction of nodes that end up used at least once.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attack::{simulate_removal, AttackCurve};
use crate::centrality::{compute_centrality, CentralityParams, Metric};
use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorConfig, Model};
use crate::mda::{check_aligned, stack, Candidate, MdaCurve};
use crate::rank::{rank_values, TieRule};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MrReport {
    /// How many positions each node is assigned to.
    pub counters: Vec<u32>,
    /// Nodes never assigned.
    pub u0: usize,
    pub mr: f64,
    /// Node chosen at each position.
    pub assignment: Vec<usize>,
    /// Replacement passes run, including the final pass that changed nothing.
    pub iterations: usize,
}

impl MrReport {
    fn rescore(&mut self) {
        let n = self.counters.len();
        self.u0 = self.counters.iter().filter(|&&c| c == 0).count();
        self.mr = (n - self.u0) as f64 / n as f64;
    }
}

/// Nodes reaching the pointwise minimum at position `j`, ascending, deduplicated.
fn candidates_at(curves: &[AttackCurve], j: usize, out: &mut Vec<usize>) {
    let min = curves.iter().map(|c| c.gcc_sizes[j]).min().expect("non-empty");
    out.clear();
    out.extend(curves.iter().filter(|c| c.gcc_sizes[j] == min).map(|c| c.order[j]));
    out.sort_unstable();
    out.dedup();
}

/// Greedy left-to-right assignment: at each position take the candidate with
/// the smallest counter, lowest id first.
pub fn build_assignment(curves: &[AttackCurve]) -> Result<MrReport> {
    check_aligned(curves)?;
    let n = curves[0].n;
    let mut counters = vec![0u32; n];
    let mut assignment = Vec::with_capacity(n);
    let mut cands = Vec::new();
    for j in 0..n {
        candidates_at(curves, j, &mut cands);
        let chosen = *cands
            .iter()
            .min_by_key(|&&v| (counters[v], v))
            .expect("at least one candidate");
        counters[chosen] += 1;
        assignment.push(chosen);
    }
    let mut report = MrReport {
        counters,
        u0: 0,
        mr: 0.0,
        assignment,
        iterations: 0,
    };
    report.rescore();
    Ok(report)
}

/// Nodes grouped by their r values: node `v` appears under size `s` when
/// some strategy leaves a largest component of size `s` right after
/// removing `v`. Each group is ascending and deduplicated.
fn nodes_by_r_value(curves: &[AttackCurve]) -> HashMap<u32, Vec<usize>> {
    let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
    for c in curves {
        for (&v, &s) in c.order.iter().zip(&c.gcc_sizes) {
            groups.entry(s).or_default().push(v);
        }
    }
    for g in groups.values_mut() {
        g.sort_unstable();
        g.dedup();
    }
    groups
}

/// Swaps unused nodes in for occupants assigned more than once, until a full
/// pass over the positions changes nothing. An unused node may take position
/// `j` when one of its r values equals the stacked minimum at `j`. Every swap
/// lowers `u0` by one, so the loop terminates.
pub fn optimize_and_score(mut report: MrReport, curves: &[AttackCurve]) -> Result<MrReport> {
    check_aligned(curves)?;
    let n = curves[0].n;
    if report.assignment.len() != n || report.counters.len() != n {
        return Err(Error::Mismatch("report does not belong to these curves".into()));
    }
    let groups = nodes_by_r_value(curves);
    let minima: Vec<u32> = (0..n)
        .map(|j| curves.iter().map(|c| c.gcc_sizes[j]).min().expect("non-empty"))
        .collect();
    loop {
        report.iterations += 1;
        let mut swapped = false;
        for (j, min) in minima.iter().enumerate() {
            let Some(cands) = groups.get(min) else { continue };
            for &c in cands {
                let occupant = report.assignment[j];
                if report.counters[occupant] < 2 {
                    break;
                }
                if report.counters[c] == 0 {
                    report.counters[occupant] -= 1;
                    report.counters[c] = 1;
                    report.assignment[j] = c;
                    swapped = true;
                }
            }
        }
        if !swapped {
            break;
        }
    }
    report.rescore();
    Ok(report)
}

pub fn maximum_rationality(curves: &[AttackCurve]) -> Result<MrReport> {
    optimize_and_score(build_assignment(curves)?, curves)
}

/// Stacked curve whose recorded winners follow the rationality assignment
/// instead of input order.
pub fn stack_rational(curves: &[AttackCurve]) -> Result<(MdaCurve, MrReport)> {
    let report = maximum_rationality(curves)?;
    let mda = stack(curves)?;
    let minima = mda.gcc_sizes();
    let winners: Vec<Candidate> = report
        .assignment
        .iter()
        .enumerate()
        .map(|(j, &node)| {
            let direct = curves.iter().position(|c| c.order[j] == node && c.gcc_sizes[j] == minima[j]);
            let strategy = direct
                .or_else(|| {
                    curves.iter().position(|c| {
                        let t = c.order.iter().position(|&v| v == node).expect("permutation");
                        c.gcc_sizes[t] == minima[j]
                    })
                })
                .expect("assigned nodes always match the minimum");
            Candidate { strategy, node }
        })
        .collect();
    let mda = mda.with_winners(&winners)?;
    Ok((mda, report))
}

/// One curve per metric, sharing a single centrality pass per metric.
pub fn strategy_curves(
    g: &crate::graph::Graph,
    metrics: &[Metric],
    params: &CentralityParams,
    tie_rule: TieRule,
) -> Result<Vec<AttackCurve>> {
    metrics
        .iter()
        .map(|&m| {
            let scores = compute_centrality(g, m, params)?;
            let order = rank_values(&scores.values, tie_rule)?.order;
            Ok(simulate_removal(g, &order)?.with_strategy(m))
        })
        .collect()
}

/// Whether several strategy sets are scored on the same graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Seeding {
    /// Every strategy set sees the same instances (paired comparison).
    #[default]
    Shared,
    /// Each strategy set gets its own instances.
    Fresh,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MrExperiment {
    pub model: Model,
    pub n: usize,
    pub mean_degree: usize,
    pub instances: usize,
    pub seed: u64,
    /// Each entry is scored separately; `q` is its length.
    pub strategy_sets: Vec<Vec<Metric>>,
    pub params: CentralityParams,
    pub seeding: Seeding,
}

impl MrExperiment {
    pub fn new(model: Model, n: usize, mean_degree: usize, instances: usize, seed: u64) -> Self {
        MrExperiment {
            model,
            n,
            mean_degree,
            instances,
            seed,
            strategy_sets: vec![Metric::BASELINE.to_vec()],
            params: CentralityParams::default(),
            seeding: Seeding::Shared,
        }
    }

    pub fn with_strategy_sets(mut self, sets: Vec<Vec<Metric>>) -> Self {
        self.strategy_sets = sets;
        self
    }
}

/// Right-tail bands of the MR distribution: (0.95, 1], (0.90, 0.95], ...,
/// (0.70, 0.75]. Values at or below 0.70 go to `below`.
pub const BAND_EDGES: [f64; 6] = [0.95, 0.90, 0.85, 0.80, 0.75, 0.70];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MrStats {
    pub family: Model,
    pub mean_degree: usize,
    pub q: usize,
    pub max: f64,
    pub min: f64,
    pub mean: f64,
    pub bands: [usize; 6],
    pub below: usize,
    /// Per-instance MR, in instance order.
    pub values: Vec<f64>,
}

impl MrStats {
    pub fn from_values(family: Model, mean_degree: usize, q: usize, values: Vec<f64>) -> Self {
        let mut bands = [0usize; 6];
        let mut below = 0;
        for &v in &values {
            match BAND_EDGES.iter().position(|&edge| v > edge) {
                Some(b) => bands[b] += 1,
                None => below += 1,
            }
        }
        MrStats {
            family,
            mean_degree,
            q,
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            mean: values.iter().sum::<f64>() / values.len() as f64,
            bands,
            below,
            values,
        }
    }
}

pub const MR_CSV_HEADER: &str =
    "family,k,q,max,min,mean,mr_95_100,mr_90_95,mr_85_90,mr_80_85,mr_75_80,mr_70_75";

/// One row per statistics record, under `MR_CSV_HEADER`.
pub fn mr_stats_csv(stats: &[MrStats]) -> String {
    let mut out = String::from(MR_CSV_HEADER);
    out.push('\n');
    for s in stats {
        let _ = write!(
            out,
            "{},{},{},{:.4},{:.4},{:.4}",
            s.family, s.mean_degree, s.q, s.max, s.min, s.mean
        );
        for b in s.bands {
            let _ = write!(out, ",{b}");
        }
        out.push('\n');
    }
    out
}

/// `count` instance seeds drawn from a generator keyed by `seed` and `stream`.
pub fn instance_seeds(seed: u64, stream: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..count).map(|_| rng.next_u64()).collect()
}

fn mr_on_instance(exp: &MrExperiment, seed: u64, sets: &[Vec<Metric>]) -> Result<Vec<f64>> {
    let config = GeneratorConfig::new(exp.model, exp.n, exp.mean_degree, seed);
    let g = generate(&config)?;
    let mut metrics: Vec<Metric> = sets.iter().flatten().copied().collect();
    metrics.sort();
    metrics.dedup();
    let curves = strategy_curves(&g, &metrics, &exp.params, TieRule::IdAscending)?;
    sets.iter()
        .map(|set| {
            let chosen: Vec<AttackCurve> = set
                .iter()
                .map(|m| curves[metrics.binary_search(m).expect("metric computed")].clone())
                .collect();
            Ok(maximum_rationality(&chosen)?.mr)
        })
        .collect()
}

/// Generates instances, scores every strategy set on them and summarizes.
/// Returns one record per strategy set, in input order.
pub fn mr_experiment(exp: &MrExperiment) -> Result<Vec<MrStats>> {
    if exp.instances == 0 {
        return Err(Error::InvalidParam("instances must be at least 1".into()));
    }
    if exp.strategy_sets.is_empty() || exp.strategy_sets.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidParam("every strategy set needs at least one metric".into()));
    }
    GeneratorConfig::new(exp.model, exp.n, exp.mean_degree, exp.seed).validate()?;

    let per_set: Vec<Vec<f64>> = match exp.seeding {
        Seeding::Shared => {
            let rows: Vec<Vec<f64>> = instance_seeds(exp.seed, 0, exp.instances)
                .into_par_iter()
                .map(|s| mr_on_instance(exp, s, &exp.strategy_sets))
                .collect::<Result<_>>()?;
            (0..exp.strategy_sets.len())
                .map(|k| rows.iter().map(|r| r[k]).collect())
                .collect()
        }
        Seeding::Fresh => exp
            .strategy_sets
            .iter()
            .enumerate()
            .map(|(k, set)| {
                instance_seeds(exp.seed, k as u64 + 1, exp.instances)
                    .into_par_iter()
                    .map(|s| Ok(mr_on_instance(exp, s, std::slice::from_ref(set))?[0]))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?,
    };
    Ok(exp
        .strategy_sets
        .iter()
        .zip(per_set)
        .map(|(set, values)| MrStats::from_values(exp.model, exp.mean_degree, set.len(), values))
        .collect())
}
