use rayon::prelude::*;

use crate::graph::Graph;

/// Collective influence at radius `radius`:
/// `(k_i - 1) * sum over j at distance exactly radius of (k_j - 1)`.
pub fn collective_influence(g: &Graph, radius: usize) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::<usize>::new(), Vec::<usize>::new()),
            |(dist, frontier, touched), i| {
                let ki = g.degree(i) as f64;
                for &v in touched.iter() {
                    dist[v] = u32::MAX;
                }
                touched.clear();
                frontier.clear();
                dist[i] = 0;
                touched.push(i);
                frontier.push(i);
                for depth in 1..=radius as u32 {
                    let mut next = Vec::new();
                    for &u in frontier.iter() {
                        for &v in g.neighbors(u) {
                            let v = v as usize;
                            if dist[v] == u32::MAX {
                                dist[v] = depth;
                                touched.push(v);
                                next.push(v);
                            }
                        }
                    }
                    *frontier = next;
                }
                let boundary: f64 = frontier.iter().map(|&j| g.degree(j) as f64 - 1.0).sum();
                (ki - 1.0) * boundary
            },
        )
        .collect()
}
