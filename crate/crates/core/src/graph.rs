//! Undirected simple graphs in compressed adjacency form, plus edge-list
//! ingestion and a few connectivity queries used throughout the crate.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Immutable undirected simple graph on nodes `0..n`.
///
/// Neighbor lists are sorted and free of self-loops and duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

/// What `Graph::from_edges` threw away while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeStats {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl Graph {
    /// Builds a simple graph, silently dropping self-loops and repeated edges
    /// (in either orientation). Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> (Graph, EdgeStats) {
        let mut stats = EdgeStats::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32));
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        stats.duplicates = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(a, b) in &pairs {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        (Graph { offsets, targets }, stats)
    }

    /// Graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    #[inline]
    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|i| self.degree(i)).collect()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.node_count() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    /// Component id per node (ids assigned in order of lowest member) and the
    /// size of each component.
    pub fn components(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            comp[start] = id;
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in self.neighbors(u) {
                    let v = v as usize;
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            sizes.push(size);
        }
        (comp, sizes)
    }

    pub fn largest_component_size(&self) -> usize {
        self.components().1.into_iter().max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.largest_component_size() == self.node_count()
    }

    /// Subgraph induced by `nodes`, relabeled to `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![u32::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            index[old] = new as u32;
        }
        let mut edges = Vec::new();
        for (new_u, &u) in nodes.iter().enumerate() {
            for &v in self.neighbors(u) {
                let new_v = index[v as usize];
                if new_v != u32::MAX && (new_v as usize) > new_u {
                    edges.push((new_u, new_v as usize));
                }
            }
        }
        Graph::from_edges(nodes.len(), edges).0
    }

    /// Text form understood by [`parse_edge_list`]: a comment header then one
    /// `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edge_count() * 10 + 32);
        let _ = writeln!(out, "# nodes {} edges {}", self.node_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_edge_list())?;
        Ok(())
    }
}

/// A graph read from an edge list together with the original node labels.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[id]` is the token that id was assigned from.
    pub labels: Vec<String>,
    pub dropped: EdgeStats,
}

impl LoadedGraph {
    /// Two-column sidecar: original label, contiguous id.
    pub fn relabel_map(&self) -> String {
        let mut out = String::from("label,id\n");
        for (id, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "{label},{id}");
        }
        out
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped; ids are assigned in order of first appearance.
///
/// A `# nodes N ...` header (as written by [`Graph::to_edge_list`]) switches to
/// numeric ids when every label is an integer below `N`, so that isolated nodes
/// and id order survive a round trip.
pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut declared_nodes: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("nodes") {
                declared_nodes = words.next().and_then(|w| w.parse().ok());
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected two node labels, got `{line}`"),
                })
            }
        };
        let u = intern(&mut ids, &mut labels, a);
        let v = intern(&mut ids, &mut labels, b);
        edges.push((u, v));
    }

    if edges.is_empty() {
        return match declared_nodes {
            Some(n) if n > 0 => Ok(LoadedGraph {
                graph: Graph::empty(n),
                labels: (0..n).map(|i| i.to_string()).collect(),
                dropped: EdgeStats::default(),
            }),
            _ => Err(Error::EmptyInput),
        };
    }

    if let Some(declared) = declared_nodes {
        let numeric: Option<Vec<usize>> = labels
            .iter()
            .map(|l| l.parse::<usize>().ok().filter(|&x| x < declared))
            .collect();
        if let Some(numeric) = numeric {
            let edges = edges.into_iter().map(|(u, v)| (numeric[u], numeric[v]));
            let (graph, dropped) = Graph::from_edges(declared, edges);
            let labels = (0..declared).map(|i| i.to_string()).collect();
            return Ok(LoadedGraph { graph, labels, dropped });
        }
    }

    let (graph, dropped) = Graph::from_edges(labels.len(), edges);
    Ok(LoadedGraph { graph, labels, dropped })
}

fn intern<'a>(ids: &mut HashMap<&'a str, usize>, labels: &mut Vec<String>, label: &'a str) -> usize {
    *ids.entry(label).or_insert_with(|| {
        labels.push(label.to_string());
        labels.len() - 1
    })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

pub fn write_relabel_map(loaded: &LoadedGraph, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(loaded.relabel_map().as_bytes())?;
    Ok(())
}

/// Size of the largest component of `g` with `removed` nodes deleted,
/// divided by the original node count.
pub fn gcc_relative_size(g: &Graph, removed: &[usize]) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let mut gone = vec![false; n];
    for &r in removed {
        gone[r] = true;
    }
    largest_surviving_component(g, &gone) as f64 / n as f64
}

/// Largest component among nodes with `gone[i] == false`.
pub(crate) fn largest_surviving_component(g: &Graph, gone: &[bool]) -> usize {
    let n = g.node_count();
    let mut seen = gone.to_vec();
    let mut best = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                let v = v as usize;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// BFS hop distances from `source`; `u32::MAX` marks unreachable nodes.
pub(crate) fn bfs_distances(g: &Graph, source: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in g.neighbors(u) {
            let v = v as usize;
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
}
