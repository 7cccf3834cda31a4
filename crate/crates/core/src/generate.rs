//! Seeded random-graph models: Barabási–Albert, Erdős–Rényi, Watts–Strogatz
//! and random regular graphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Ba,
    Er,
    Ws,
    Regular,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Ba, Model::Er, Model::Ws, Model::Regular];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Ba => "ba",
            Model::Er => "er",
            Model::Ws => "ws",
            Model::Regular => "regular",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Model> {
        match s.to_ascii_lowercase().as_str() {
            "ba" => Ok(Model::Ba),
            "er" => Ok(Model::Er),
            "ws" => Ok(Model::Ws),
            "regular" | "rr" => Ok(Model::Regular),
            other => Err(Error::InvalidConfig(format!("unknown model `{other}`"))),
        }
    }
}

pub const DEFAULT_WS_REWIRE_PROB: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    /// Target mean degree. BA uses `m = mean_degree / 2` edges per new node.
    pub mean_degree: usize,
    pub seed: u64,
    pub ws_rewire_prob: f64,
}

impl GeneratorConfig {
    pub fn new(model: Model, n: usize, mean_degree: usize, seed: u64) -> Self {
        GeneratorConfig {
            model,
            n,
            mean_degree,
            seed,
            ws_rewire_prob: DEFAULT_WS_REWIRE_PROB,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorConfig { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.mean_degree;
        let n = self.n;
        if k == 0 {
            return Err(Error::InvalidConfig("mean degree must be positive".into()));
        }
        if n < k + 1 {
            return Err(Error::InvalidConfig(format!(
                "n = {n} is too small for mean degree {k}"
            )));
        }
        match self.model {
            Model::Ba | Model::Ws if !k.is_multiple_of(2) => Err(Error::InvalidConfig(format!(
                "{} needs an even mean degree, got {k}",
                self.model
            ))),
            Model::Regular if !(n * k).is_multiple_of(2) => Err(Error::InvalidConfig(format!(
                "no {k}-regular graph on {n} nodes (n*k is odd)"
            ))),
            Model::Ws if !(0.0..=1.0).contains(&self.ws_rewire_prob) => Err(Error::InvalidConfig(
                format!("rewiring probability {} outside [0, 1]", self.ws_rewire_prob),
            )),
            _ => Ok(()),
        }
    }
}

/// Builds the graph described by `config`. Pure in `config`.
pub fn generate(config: &GeneratorConfig) -> Result<Graph> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.n;
    let k = config.mean_degree;
    let edges = match config.model {
        Model::Ba => barabasi_albert(n, k / 2, &mut rng),
        Model::Er => erdos_renyi(n, k as f64 / (n - 1) as f64, &mut rng),
        Model::Ws => watts_strogatz(n, k, config.ws_rewire_prob, &mut rng),
        Model::Regular => random_regular(n, k, &mut rng)?,
    };
    Ok(Graph::from_edges(n, edges).0)
}

/// Preferential attachment grown from a clique on `m + 1` nodes.
fn barabasi_albert(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * m);
    // Every edge endpoint, so a uniform pick is degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n * m);
    for i in 0..=m {
        for j in i + 1..=m {
            edges.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    edges
}

/// G(n, p) using geometric skips between successive present edges.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    if p <= 0.0 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                edges.push((v, w));
            }
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as usize));
        }
    }
    edges
}

/// Ring lattice with `k / 2` neighbors per side; each lattice edge `(u, u + j)`
/// is rewired to a uniformly chosen non-neighbor of `u` with probability `beta`.
fn watts_strogatz(n: usize, k: usize, beta: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(k + 2); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            if rng.gen::<f64>() >= beta {
                continue;
            }
            let v = (u + j) % n;
            if !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].retain(|&x| x != v);
            adj[v].retain(|&x| x != u);
            adj[u].push(w);
            adj[w].push(u);
        }
    }
    let mut edges = Vec::with_capacity(n * k / 2);
    for (u, nbrs) in adj.iter().enumerate() {
        edges.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
    }
    edges
}

const REGULAR_MAX_ATTEMPTS: usize = 1000;

/// Random `k`-regular graph by stub pairing: stubs are shuffled and paired,
/// pairs that would form a loop or a repeated edge go back into the pool and
/// are re-paired; an attempt that paints itself into a corner is restarted.
fn random_regular(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    for _ in 0..REGULAR_MAX_ATTEMPTS {
        if let Some(edges) = try_pairing(n, k, rng) {
            let mut edges: Vec<_> = edges.into_iter().collect();
            edges.sort_unstable();
            return Ok(edges);
        }
    }
    Err(Error::InvalidConfig(format!(
        "could not draw a simple {k}-regular graph on {n} nodes in {REGULAR_MAX_ATTEMPTS} attempts"
    )))
}

fn try_pairing(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Option<HashSet<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(n * k / 2);
    let mut stubs: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, k)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && edges.insert((a, b)) {
                continue;
            }
            *leftover.entry(a).or_default() += 1;
            *leftover.entry(b).or_default() += 1;
        }
        if !pairing_can_continue(&edges, &leftover) {
            return None;
        }
        stubs = leftover
            .iter()
            .flat_map(|(&node, &count)| std::iter::repeat_n(node, count))
            .collect();
    }
    Some(edges)
}

fn pairing_can_continue(edges: &HashSet<(usize, usize)>, leftover: &BTreeMap<usize, usize>) -> bool {
    if leftover.is_empty() {
        return true;
    }
    let nodes: BTreeSet<usize> = leftover.keys().copied().collect();
    nodes.iter().any(|&a| {
        nodes
            .range(a + 1..)
            .any(|&b| !edges.contains(&(a, b)))
    })
}
