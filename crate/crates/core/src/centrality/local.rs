use crate::graph::Graph;

pub fn degree(g: &Graph) -> Vec<usize> {
    g.degrees()
}

/// Largest `h` such that the node has at least `h` neighbors of degree `>= h`.
pub fn h_index(g: &Graph) -> Vec<usize> {
    let mut buf = Vec::new();
    (0..g.node_count())
        .map(|i| {
            buf.clear();
            buf.extend(g.neighbors(i).iter().map(|&j| g.degree(j as usize)));
            buf.sort_unstable_by(|a, b| b.cmp(a));
            buf.iter()
                .enumerate()
                .take_while(|&(idx, &d)| d > idx)
                .count()
        })
        .collect()
}

/// k-core index of every node (Batagelj–Zaversnik bucket peeling).
pub fn coreness(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in g.neighbors(v) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    /// Literal peeling: repeatedly strip nodes of degree < k.
    fn coreness_by_peeling(g: &Graph) -> Vec<usize> {
        let n = g.node_count();
        let mut core = vec![0; n];
        let mut alive = vec![true; n];
        let mut k = 0;
        while alive.iter().any(|&a| a) {
            loop {
                let live_deg = |v: usize, alive: &[bool]| {
                    g.neighbors(v).iter().filter(|&&u| alive[u as usize]).count()
                };
                let doomed: Vec<usize> = (0..n).filter(|&v| alive[v] && live_deg(v, &alive) <= k).collect();
                if doomed.is_empty() {
                    break;
                }
                for v in doomed {
                    alive[v] = false;
                    core[v] = k;
                }
            }
            k += 1;
        }
        core
    }

    #[test]
    fn star_degree_and_h_index() {
        let g = star(4);
        assert_eq!(degree(&g), vec![4, 1, 1, 1, 1]);
        assert_eq!(h_index(&g), vec![1, 1, 1, 1, 1]);
        assert_eq!(coreness(&g), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn cycle_coreness_is_two() {
        assert_eq!(coreness(&cycle(5)), vec![2; 5]);
        assert_eq!(h_index(&cycle(5)), vec![2; 5]);
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(coreness(&complete(5)), vec![4; 5]);
        assert_eq!(h_index(&complete(4)), vec![3; 4]);
        assert_eq!(coreness(&Graph::empty(3)), vec![0; 3]);
    }

    #[test]
    fn clique_with_tail() {
        // K4 on 0..4 with a path 3-4-5 hanging off.
        let (g, _) = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(coreness(&g), vec![3, 3, 3, 3, 1, 1]);
        assert_eq!(coreness(&g), coreness_by_peeling(&g));
        assert_eq!(h_index(&g), vec![3, 3, 3, 3, 1, 1]);
    }

    #[test]
    fn peeling_agrees_on_random_graphs() {
        use crate::generate::{generate, GeneratorConfig, Model};
        for seed in 0..5 {
            let g = generate(&GeneratorConfig::new(Model::Er, 80, 5, seed)).unwrap();
            assert_eq!(coreness(&g), coreness_by_peeling(&g));
        }
    }
}
