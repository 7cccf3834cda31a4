//! Shortest-path centralities. All three run one BFS per source node; sources
//! are processed in fixed-size chunks so that per-chunk partial sums are
//! merged in the same order regardless of thread count.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{bfs_distances, Graph};

const CHUNK: usize = 32;

/// Runs `per_source` for every source, each chunk with its own scratch state,
/// and adds the per-chunk accumulators in chunk order.
fn accumulate_over_sources<S, I, F>(g: &Graph, init: I, per_source: F) -> Vec<f64>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, usize, &mut [f64]) + Sync,
{
    let n = g.node_count();
    let chunks: Vec<usize> = (0..n).step_by(CHUNK).collect();
    let partials: Vec<Vec<f64>> = chunks
        .par_iter()
        .map(|&lo| {
            let mut scratch = init();
            let mut acc = vec![0.0; n];
            for s in lo..(lo + CHUNK).min(n) {
                per_source(&mut scratch, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}

/// Harmonic closeness: `sum over j != i of 1 / d(i, j)`, unreachable pairs
/// contributing zero.
///
/// Terms are grouped by distance so nodes with equal distance profiles get
/// bit-identical scores.
pub fn closeness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], VecDeque::new(), Vec::<usize>::new()),
            |(dist, queue, counts), s| {
                bfs_distances(g, s, dist, queue);
                counts.clear();
                for &d in dist.iter() {
                    if d != u32::MAX && d > 0 {
                        let d = d as usize;
                        if counts.len() <= d {
                            counts.resize(d + 1, 0);
                        }
                        counts[d] += 1;
                    }
                }
                counts
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(d, &c)| c as f64 / d as f64)
                    .sum()
            },
        )
        .collect()
}

struct BfsDag {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    order: Vec<usize>,
    preds: Vec<Vec<u32>>,
    delta: Vec<f64>,
    queue: VecDeque<usize>,
}

impl BfsDag {
    fn new(n: usize) -> Self {
        BfsDag {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            order: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            delta: vec![0.0; n],
            queue: VecDeque::new(),
        }
    }

    /// Shortest-path DAG from `s`; `order` lists reached nodes by distance.
    fn build(&mut self, g: &Graph, s: usize) {
        for &v in &self.order {
            self.dist[v] = -1;
            self.sigma[v] = 0.0;
            self.preds[v].clear();
            self.delta[v] = 0.0;
        }
        self.order.clear();
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let dv = self.dist[v];
            for &w in g.neighbors(v) {
                let w = w as usize;
                if self.dist[w] < 0 {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == dv + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v as u32);
                }
            }
        }
    }
}

/// Shortest-path betweenness (Brandes accumulation), unnormalized, each
/// unordered pair counted once, endpoints excluded.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut bc = accumulate_over_sources(
        g,
        || BfsDag::new(n),
        |dag, s, acc| {
            dag.build(g, s);
            for &w in dag.order.iter().rev() {
                let coeff = (1.0 + dag.delta[w]) / dag.sigma[w];
                for &v in &dag.preds[w] {
                    let v = v as usize;
                    dag.delta[v] += dag.sigma[v] * coeff;
                }
                if w != s {
                    acc[w] += dag.delta[w];
                }
            }
        },
    );
    for b in bc.iter_mut() {
        *b /= 2.0;
    }
    bc
}

/// Load centrality: every target sends one unit of flow back towards the
/// source, splitting it equally among its shortest-path predecessors at each
/// step. A node's load is the flow it relays. Unnormalized, pairs counted once.
pub fn load(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut lc = accumulate_over_sources(
        g,
        || BfsDag::new(n),
        |dag, s, acc| {
            dag.build(g, s);
            // delta doubles as the flow buffer; start every reached node at 1.
            for &v in &dag.order {
                dag.delta[v] = 1.0;
            }
            for &v in dag.order.iter().rev() {
                let preds = &dag.preds[v];
                if preds.is_empty() || preds[0] as usize == s {
                    continue;
                }
                let share = dag.delta[v] / preds.len() as f64;
                for &x in preds {
                    dag.delta[x as usize] += share;
                }
            }
            for &v in &dag.order {
                if v != s {
                    acc[v] += dag.delta[v] - 1.0;
                }
            }
        },
    );
    for l in lc.iter_mut() {
        *l /= 2.0;
    }
    lc
}
