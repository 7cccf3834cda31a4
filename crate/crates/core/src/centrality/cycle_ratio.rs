//! Cycle ratio: node importance from membership in the set of shortest cycles.
//!
//! For every node `i` we find the length of the shortest cycle through `i`
//! and collect all cycles of that length through `i`. The union over all
//! nodes is the shortest cycle set `S`. With `c_ij` the number of cycles in
//! `S` containing both `i` and `j` (and `c_ii` those containing `i`):
//!
//! ```text
//! r_i = 0                              if c_ii = 0
//! r_i = sum over j with c_ij > 0 of c_ij / c_jj   otherwise
//! ```
//!
//! Cycles longer than the configured cap are ignored; nodes whose shortest
//! cycle exceeds the cap count as acyclic.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::Graph;

struct Scratch {
    dist: Vec<u32>,
    branch: Vec<u32>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
    on_path: Vec<bool>,
    path: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![u32::MAX; n],
            branch: vec![u32::MAX; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
            on_path: vec![false; n],
            path: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = u32::MAX;
            self.branch[v] = u32::MAX;
        }
        self.touched.clear();
        self.queue.clear();
    }

    /// BFS from `root` up to `depth_limit`, labelling every node with the
    /// neighbor of `root` it descends from. Returns the length of the
    /// shortest cycle through `root` if it is at most `max_len`.
    fn shortest_cycle_through(&mut self, g: &Graph, root: usize, max_len: usize) -> Option<usize> {
        self.reset();
        let depth_limit = (max_len / 2) as u32;
        self.dist[root] = 0;
        self.touched.push(root);
        for &v in g.neighbors(root) {
            let v = v as usize;
            self.dist[v] = 1;
            self.branch[v] = v as u32;
            self.touched.push(v);
            self.queue.push_back(v);
        }
        let mut best = usize::MAX;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u] as usize;
            if 2 * du >= best {
                break;
            }
            for &v in g.neighbors(u) {
                let v = v as usize;
                if v == root {
                    continue;
                }
                if self.dist[v] == u32::MAX {
                    if (du as u32) < depth_limit {
                        self.dist[v] = du as u32 + 1;
                        self.branch[v] = self.branch[u];
                        self.touched.push(v);
                        self.queue.push_back(v);
                    }
                } else if self.branch[v] != self.branch[u] {
                    best = best.min(du + self.dist[v] as usize + 1);
                }
            }
        }
        (best <= max_len).then_some(best)
    }

    /// All simple cycles through `root` of exactly `len` edges, each as a
    /// sorted node list. Requires the BFS labels from `shortest_cycle_through`.
    fn cycles_through(&mut self, g: &Graph, root: usize, len: usize, out: &mut Vec<Vec<u32>>) {
        self.path.clear();
        self.path.push(root as u32);
        self.on_path[root] = true;
        self.extend(g, root, root, len, out);
        self.on_path[root] = false;
    }

    fn extend(&mut self, g: &Graph, root: usize, at: usize, len: usize, out: &mut Vec<Vec<u32>>) {
        let steps = self.path.len();
        for &y in g.neighbors(at) {
            let y = y as usize;
            if y == root {
                // Orientation filter: each cycle is walked in both directions;
                // keep the walk whose second node is smaller than its last.
                if steps == len && self.path[1] < at as u32 {
                    let mut cycle = self.path.clone();
                    cycle.sort_unstable();
                    out.push(cycle);
                }
                continue;
            }
            if steps >= len || self.on_path[y] {
                continue;
            }
            let d = self.dist[y];
            if d == u32::MAX || d as usize > len - steps {
                continue;
            }
            self.on_path[y] = true;
            self.path.push(y as u32);
            self.extend(g, root, y, len, out);
            self.path.pop();
            self.on_path[y] = false;
        }
    }
}

/// The shortest cycle set `S`: for each node, every cycle of minimal length
/// through it (capped at `max_cycle_len`), deduplicated. Cycles are returned
/// as sorted node lists in lexicographic order.
///
/// A minimal cycle through a node has no chord (a chord would split it into
/// two shorter cycles, one still through that node), so its node set
/// identifies it uniquely.
pub fn shortest_cycle_set(g: &Graph, max_cycle_len: usize) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut all: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, i| {
                let mut found = Vec::new();
                if let Some(len) = scratch.shortest_cycle_through(g, i, max_cycle_len) {
                    scratch.cycles_through(g, i, len, &mut found);
                }
                found
            },
        )
        .flatten()
        .collect();
    all.sort_unstable();
    all.dedup();
    all
}

pub fn cycle_ratio(g: &Graph, max_cycle_len: usize) -> Vec<f64> {
    let n = g.node_count();
    let cycles = shortest_cycle_set(g, max_cycle_len);
    let mut own = vec![0usize; n];
    for c in &cycles {
        for &v in c {
            own[v as usize] += 1;
        }
    }
    // r_i = sum over cycles C containing i of sum over j in C of 1 / c_jj
    let mut ratio = vec![0.0; n];
    for c in &cycles {
        let weight: f64 = c.iter().map(|&j| 1.0 / own[j as usize] as f64).sum();
        for &v in c {
            ratio[v as usize] += weight;
        }
    }
    ratio
}
