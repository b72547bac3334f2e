use crate::error::{Error, Result};

use super::{orient, Graph};

pub const DEFAULT_MAX_EXACT_N: usize = 20;

// 2^30 subset table entries is already several gigabytes.
const SUBSET_TABLE_LIMIT: usize = 30;

/// `Σ_{(u,v) ∈ E} min(d_u, d_v)`.
///
/// Computed edge-wise and again vertex-wise as `Σ_u d⁺_u · d_u` over the
/// degree orientation; the two must agree on every graph.
pub fn cn_sum(g: &Graph) -> u64 {
    let edge_wise: u64 = g
        .edges()
        .map(|(u, v)| g.degree(u).min(g.degree(v)) as u64)
        .sum();
    let o = orient(g);
    let vertex_wise: u64 = g
        .vertices()
        .map(|u| (o.out_degree(u) * g.degree(u)) as u64)
        .sum();
    assert_eq!(edge_wise, vertex_wise, "edge-wise and vertex-wise min-degree sums disagree");
    edge_wise
}

/// Largest minimum degree met while repeatedly deleting a minimum-degree
/// vertex (bucket peeling, linear time).
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = g.max_degree();

    // bin[d] = first position in `order` of the block of vertices with current degree d.
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
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        order[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    let mut k = 0;
    for i in 0..n {
        let v = order[i];
        k = k.max(deg[v]);
        for &u in g.neighbors(v as u32) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    k
}

/// Arboricity by brute force over vertex subsets:
/// `max_{|S| ≥ 2} ⌈m(S) / (|S| − 1)⌉`, and 0 for an edgeless graph.
pub fn exact_arboricity(g: &Graph, max_n: usize) -> Result<usize> {
    let n = g.n();
    let limit = max_n.min(SUBSET_TABLE_LIMIT);
    if n > limit {
        return Err(Error::InstanceTooLarge { n, max_n: limit });
    }
    if g.m() == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | (1 << w)))
        .collect();

    // edges[S] = edges[S without its lowest vertex v] + |N(v) ∩ S|
    let mut edges = vec![0u16; 1 << n];
    let mut best = 0;
    for s in 1u32..(1u32 << n) {
        let v = s.trailing_zeros();
        let rest = s & (s - 1);
        let e = edges[rest as usize] + (adj[v as usize] & rest).count_ones() as u16;
        edges[s as usize] = e;
        let size = s.count_ones() as usize;
        if size >= 2 {
            best = best.max((e as usize).div_ceil(size - 1));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_forest, VertexId};

    fn complete(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn star(leaves: u32) -> Graph {
        Graph::from_edges(leaves as usize + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn cn_sum_examples() {
        assert_eq!(cn_sum(&complete(2)), 1);
        assert_eq!(cn_sum(&complete(3)), 6);
        assert_eq!(cn_sum(&star(3)), 3);
        assert_eq!(cn_sum(&complete(4)), 18);
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy(&complete(3)), 2);
        for k in 1..6 {
            assert_eq!(degeneracy(&star(k)), 1);
        }
        assert_eq!(degeneracy(&Graph::edgeless(4)), 0);
        assert_eq!(degeneracy(&complete(6)), 5);
    }

    #[test]
    fn arboricity_examples() {
        assert_eq!(exact_arboricity(&complete(3), 20).unwrap(), 2);
        assert_eq!(exact_arboricity(&star(5), 20).unwrap(), 1);
        let path = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(exact_arboricity(&path, 20).unwrap(), 1);
        assert_eq!(exact_arboricity(&complete(4), 20).unwrap(), 2);
        assert_eq!(exact_arboricity(&complete(5), 20).unwrap(), 3);
        assert_eq!(exact_arboricity(&Graph::edgeless(3), 20).unwrap(), 0);
    }

    #[test]
    fn k4_is_covered_by_two_forests() {
        let k4 = complete(4);
        let a: [(VertexId, VertexId); 3] = [(0, 1), (1, 2), (2, 3)];
        let b: [(VertexId, VertexId); 3] = [(0, 2), (0, 3), (1, 3)];
        assert!(is_forest(4, a) && is_forest(4, b));
        let mut cover: Vec<_> = a.iter().chain(&b).copied().collect();
        cover.sort_unstable();
        assert_eq!(cover, k4.edges().collect::<Vec<_>>());
    }

    #[test]
    fn arboricity_refuses_large_instances() {
        let g = Graph::edgeless(21);
        assert!(matches!(
            exact_arboricity(&g, DEFAULT_MAX_EXACT_N),
            Err(Error::InstanceTooLarge { n: 21, max_n: 20 })
        ));
    }
}
