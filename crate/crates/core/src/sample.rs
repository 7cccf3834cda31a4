//! Connected subgraph sampling for large empirical networks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Grows a connected node set of exactly `size` nodes: start at a random node
/// inside a large-enough component, then repeatedly add a uniformly chosen
/// node from the frontier (nodes adjacent to the set but not in it).
///
/// Returned ids are sorted ascending.
pub fn sample_connected_nodes(g: &Graph, size: usize, seed: u64) -> Result<Vec<usize>> {
    let (comp, sizes) = g.components();
    let largest = sizes.iter().copied().max().unwrap_or(0);
    if size == 0 || size > largest {
        return Err(Error::ComponentTooSmall {
            requested: size,
            largest,
        });
    }
    let eligible: Vec<usize> = (0..g.node_count()).filter(|&i| sizes[comp[i]] >= size).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = eligible[rng.gen_range(0..eligible.len())];

    let mut grow = Grower {
        sample: Vec::with_capacity(size),
        frontier: Vec::new(),
        in_sample: vec![false; g.node_count()],
        in_frontier: vec![false; g.node_count()],
    };
    grow.admit(g, start);
    while grow.sample.len() < size {
        // The component holds at least `size` nodes, so the frontier cannot run dry.
        let pick = rng.gen_range(0..grow.frontier.len());
        let node = grow.frontier.swap_remove(pick);
        grow.in_frontier[node] = false;
        grow.admit(g, node);
    }
    let mut sample = grow.sample;
    sample.sort_unstable();
    Ok(sample)
}

struct Grower {
    sample: Vec<usize>,
    frontier: Vec<usize>,
    in_sample: Vec<bool>,
    in_frontier: Vec<bool>,
}

impl Grower {
    fn admit(&mut self, g: &Graph, node: usize) {
        self.in_sample[node] = true;
        self.sample.push(node);
        for &v in g.neighbors(node) {
            let v = v as usize;
            if !self.in_sample[v] && !self.in_frontier[v] {
                self.in_frontier[v] = true;
                self.frontier.push(v);
            }
        }
    }
}

/// Connected subgraph on exactly `size` nodes with all internal edges kept,
/// relabeled to `0..size` preserving the original id order.
pub fn sample_connected_subgraph(g: &Graph, size: usize, seed: u64) -> Result<Graph> {
    let nodes = sample_connected_nodes(g, size, seed)?;
    Ok(g.induced_subgraph(&nodes))
}
