//! Power-iteration and walk-based centralities.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn adjacency_times(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = g.neighbors(i).iter().map(|&j| x[j as usize]).sum();
    }
}

fn normalize_l2(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Principal eigenvector of the adjacency matrix, unit L2 norm, together with
/// its Rayleigh-quotient eigenvalue.
///
/// Iterates `x <- (A + I) x`: same eigenvectors as `A`, but the shift keeps
/// bipartite graphs from oscillating between `+λ` and `-λ`.
pub fn eigenvector(g: &Graph, tolerance: f64, max_iterations: usize) -> Result<(Vec<f64>, f64)> {
    let n = g.node_count();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iterations {
        adjacency_times(g, &x, &mut next);
        for (nx, xi) in next.iter_mut().zip(&x) {
            *nx += xi;
        }
        normalize_l2(&mut next);
        let change = max_abs_diff(&next, &x);
        std::mem::swap(&mut x, &mut next);
        if change < tolerance {
            adjacency_times(g, &x, &mut next);
            let lambda = x.iter().zip(&next).map(|(a, b)| a * b).sum();
            return Ok((x, lambda));
        }
    }
    Err(Error::NotConverged {
        metric: "eigenvector".into(),
        iterations: max_iterations,
    })
}

/// PageRank on the undirected graph: every edge is a link both ways and
/// isolated nodes spread their mass uniformly. Scores sum to one.
pub fn pagerank(g: &Graph, damping: f64, tolerance: f64, max_iterations: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    let nf = n as f64;
    let out_share: Vec<f64> = (0..n)
        .map(|i| match g.degree(i) {
            0 => 0.0,
            d => 1.0 / d as f64,
        })
        .collect();
    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut spread = vec![0.0; n];
    for _ in 0..max_iterations {
        let dangling: f64 = (0..n).filter(|&i| g.degree(i) == 0).map(|i| x[i]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for i in 0..n {
            spread[i] = x[i] * out_share[i];
        }
        for (i, nx) in next.iter_mut().enumerate() {
            let inflow: f64 = g.neighbors(i).iter().map(|&j| spread[j as usize]).sum();
            *nx = base + damping * inflow;
        }
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < tolerance {
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= total);
            return Ok(x);
        }
    }
    Err(Error::NotConverged {
        metric: "pagerank".into(),
        iterations: max_iterations,
    })
}

/// HITS authority scores. On an undirected graph hubs and authorities
/// coincide, so this is the dominant eigenvector of `A·Aᵀ = A²`, unit L2 norm.
pub fn hits(g: &Graph, tolerance: f64, max_iterations: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut hub = vec![0.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iterations {
        adjacency_times(g, &x, &mut hub);
        adjacency_times(g, &hub, &mut next);
        if next.iter().all(|&v| v == 0.0) {
            // edgeless graph: every node scores the same
            return Ok(x);
        }
        normalize_l2(&mut next);
        let change = max_abs_diff(&next, &x);
        std::mem::swap(&mut x, &mut next);
        if change < tolerance {
            return Ok(x);
        }
    }
    Err(Error::NotConverged {
        metric: "hits".into(),
        iterations: max_iterations,
    })
}

/// Subgraph centrality `[exp(A)]_ii`, approximated by the series
/// `sum_{k=0..terms} (A^k)_ii / k!`.
pub fn subgraph(g: &Graph, terms: usize) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0.0; n], vec![0.0; n]),
            |(walk, next), i| {
                walk.fill(0.0);
                walk[i] = 1.0;
                let mut total = 1.0;
                for k in 1..=terms {
                    adjacency_times(g, walk, next);
                    let inv = 1.0 / k as f64;
                    next.iter_mut().for_each(|v| *v *= inv);
                    std::mem::swap(walk, next);
                    total += walk[i];
                }
                total
            },
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorConfig, Model};
    use crate::graph::fixtures::*;

    #[test]
    fn pagerank_on_cycle_is_uniform() {
        let pr = pagerank(&cycle(5), 0.85, 1e-10, 200).unwrap();
        for v in pr {
            assert!((v - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn pagerank_sums_to_one_and_is_permutation_invariant() {
        let (g, _) = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (5, 5)]);
        let pr = pagerank(&g, 0.85, 1e-10, 200).unwrap();
        assert!((pr.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(pr.iter().all(|&v| v > 0.0));
        // relabel with a fixed permutation and compare node by node
        let perm = [6, 4, 2, 0, 1, 3, 5];
        let (h, _) = Graph::from_edges(7, g.edges().map(|(u, v)| (perm[u], perm[v])));
        let pr_h = pagerank(&h, 0.85, 1e-10, 200).unwrap();
        for i in 0..7 {
            assert!((pr[i] - pr_h[perm[i]]).abs() < 1e-9);
        }
    }

    #[test]
    fn pagerank_reports_non_convergence() {
        let g = generate(&GeneratorConfig::new(Model::Ba, 100, 4, 1)).unwrap();
        let err = pagerank(&g, 0.85, 1e-10, 3).unwrap_err();
        assert!(err.to_string().contains("pagerank"));
    }

    #[test]
    fn eigenvector_satisfies_eigen_equation() {
        for (model, k) in [(Model::Ba, 4), (Model::Er, 6), (Model::Ws, 4)] {
            let g = generate(&GeneratorConfig::new(model, 300, k, 3)).unwrap();
            let (x, lambda) = eigenvector(&g, 1e-10, 20_000).unwrap();
            let mut ax = vec![0.0; x.len()];
            adjacency_times(&g, &x, &mut ax);
            let resid = ax.iter().zip(&x).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
            assert!(resid < 1e-6, "{model}: residual {resid}");
            assert!(x.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn eigenvector_converges_on_bipartite_graphs() {
        let (x, lambda) = eigenvector(&star(4), 1e-12, 10_000).unwrap();
        assert!((lambda - 2.0).abs() < 1e-9);
        assert!(x[0] > x[1]);
        assert!(eigenvector(&path(6), 1e-10, 10_000).is_ok());
    }

    #[test]
    fn hits_matches_eigenvector_ranking_on_connected_graph() {
        let g = generate(&GeneratorConfig::new(Model::Er, 200, 6, 9)).unwrap();
        let (ev, _) = eigenvector(&g, 1e-12, 20_000).unwrap();
        let h = hits(&g, 1e-12, 20_000).unwrap();
        // same Perron vector up to sign on the giant component
        let comp = g.components().0;
        let giant = comp[ev.iter().enumerate().fold(0, |b, (i, v)| if *v > ev[b] { i } else { b })];
        for i in 0..g.node_count() {
            if comp[i] == giant {
                assert!((ev[i] - h[i]).abs() < 1e-5, "node {i}: {} vs {}", ev[i], h[i]);
            }
        }
    }

    #[test]
    fn subgraph_centrality_of_triangle() {
        // exp(A) for K3: diagonal = (e^2 + 2 e^-1) / 3
        let exact = ((2.0f64).exp() + 2.0 * (-1.0f64).exp()) / 3.0;
        let sc = subgraph(&complete(3), 20);
        for v in sc {
            assert!((v - exact).abs() < 1e-12);
        }
        // star center sits on more closed walks than the leaves
        let s = subgraph(&star(4), 20);
        assert!(s[0] > s[1]);
    }
}
