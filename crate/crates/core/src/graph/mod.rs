//! Immutable simple undirected graphs in compressed adjacency form.
//!
//! Vertices are the dense IDs `0..n`. Every neighbor list is sorted by ID,
//! which fixes the canonical order used by the orientation and the forest
//! labeling.

mod arboricity;
mod order;

pub use arboricity::{cn_sum, degeneracy, exact_arboricity, DEFAULT_MAX_EXACT_N};
pub use order::{
    forest_decomposition, is_forest, orient, precedes, precedes_by_degree, ForestDecomposition,
    Orientation,
};

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge endpoints may come in either
    /// order; self-loops, repeated edges and out-of-range IDs are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > VertexId::MAX as usize {
            return Err(Error::InvalidArgument(format!("n = {n} exceeds the vertex ID range")));
        }
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_unique(n, &canon))
    }

    /// `edges` must be sorted, deduplicated, with `u < v < n` in each pair.
    pub(crate) fn from_sorted_unique(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0; acc];
        // Scanning pairs in lexicographic order fills every list in ascending
        // ID order: for vertex w, lower neighbors arrive as (u, w) before any
        // higher neighbor arrives as (w, v).
        for &(u, v) in edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        let g = Self { offsets, neighbors };
        debug_assert!((0..n).all(|v| g.neighbors(v as VertexId).windows(2).all(|w| w[0] < w[1])));
        g
    }

    pub fn edgeless(n: usize) -> Self {
        Self::from_sorted_unique(n, &[])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.n()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.contains(v) && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(|v| v as VertexId)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Exact average degree `2m/n`. Zero for the empty vertex set.
    pub fn average_degree(&self) -> Ratio<i128> {
        if self.n() == 0 {
            return Ratio::from_integer(0);
        }
        Ratio::new(2 * self.m() as i128, self.n() as i128)
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "vertex {v} out of range for n = {}",
                self.n()
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(Graph::from_edges(3, [(0, 0)]), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (2, 1), (4, 3)]).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(g.neighbors(1), &[0, 2, 3]);
        for (u, v) in g.edges() {
            assert!(g.has_edge(u, v) && g.has_edge(v, u));
        }
        let deg_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(deg_sum, 2 * g.m());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 4), (1, 2), (1, 3), (3, 4)]);
    }

    #[test]
    fn average_degree_is_exact() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.average_degree(), Ratio::new(4, 3));
        assert_eq!(Graph::edgeless(5).average_degree(), Ratio::from_integer(0));
    }
}
