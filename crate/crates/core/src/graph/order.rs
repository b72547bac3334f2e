use crate::error::Result;

use super::{Graph, VertexId};

/// The degree ordering: `u ≺ v` iff `d_u < d_v`, or the degrees tie and `u < v`.
pub fn precedes(g: &Graph, u: VertexId, v: VertexId) -> Result<bool> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(precedes_by_degree(g.degree(u), u, g.degree(v), v))
}

/// Same order, from already-known degrees. This is the form the sampler uses,
/// since it learns degrees through oracle queries.
#[inline]
pub fn precedes_by_degree(du: usize, u: VertexId, dv: usize, v: VertexId) -> bool {
    (du, u) < (dv, v)
}

/// The graph with every edge directed from its `≺`-smaller endpoint.
#[derive(Clone, Debug)]
pub struct Orientation<'g> {
    graph: &'g Graph,
    offsets: Vec<usize>,
    out: Vec<VertexId>,
}

pub fn orient(g: &Graph) -> Orientation<'_> {
    let mut offsets = Vec::with_capacity(g.n() + 1);
    let mut out = Vec::with_capacity(g.m());
    offsets.push(0);
    for u in g.vertices() {
        let du = g.degree(u);
        out.extend(
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| precedes_by_degree(du, u, g.degree(v), v)),
        );
        offsets.push(out.len());
    }
    Orientation { graph: g, offsets, out }
}

impl<'g> Orientation<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Out-neighbors of `u`, ascending by ID.
    pub fn out_neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.out[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn out_degree(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.graph.vertices().map(|u| self.out_degree(u)).collect()
    }

    pub fn max_out_degree(&self) -> usize {
        self.graph.vertices().map(|u| self.out_degree(u)).max().unwrap_or(0)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.graph
            .vertices()
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Kahn's algorithm; `true` iff every vertex gets removed.
    pub fn is_acyclic(&self) -> bool {
        let n = self.graph.n();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.arcs() {
            indeg[v as usize] += 1;
        }
        let mut stack: Vec<VertexId> = self.graph.vertices().filter(|&v| indeg[v as usize] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &v in self.out_neighbors(u) {
                indeg[v as usize] -= 1;
                if indeg[v as usize] == 0 {
                    stack.push(v);
                }
            }
        }
        seen == n
    }
}

/// Labels on the arcs of an [`Orientation`]: each vertex numbers its outgoing
/// arcs `1..=d⁺_u` in out-neighbor ID order. Arcs sharing a label form a forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestDecomposition {
    /// `(source, target, label)` for every arc, grouped by source.
    pub labeled: Vec<(VertexId, VertexId, usize)>,
    pub num_labels: usize,
}

impl ForestDecomposition {
    pub fn class(&self, label: usize) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.labeled
            .iter()
            .filter(move |&&(_, _, l)| l == label)
            .map(|&(u, v, _)| (u, v))
    }

    /// Every label class, checked for cycles as an undirected edge set.
    pub fn all_classes_acyclic(&self, n: usize) -> bool {
        (1..=self.num_labels).all(|l| is_forest(n, self.class(l)))
    }
}

pub fn forest_decomposition(g: &Graph) -> ForestDecomposition {
    let o = orient(g);
    let labeled = o
        .arcs()
        .scan((VertexId::MAX, 0usize), |(prev, next), (u, v)| {
            if u != *prev {
                *prev = u;
                *next = 0;
            }
            *next += 1;
            Some((u, v, *next))
        })
        .collect();
    ForestDecomposition { labeled, num_labels: o.max_out_degree() }
}

/// Union-find cycle check over an undirected edge list on vertices `0..n`.
pub fn is_forest<I>(n: usize, edges: I) -> bool
where
    I: IntoIterator<Item = (VertexId, VertexId)>,
{
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in edges {
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn star(leaves: u32) -> Graph {
        Graph::from_edges(leaves as usize + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn precedes_examples() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!precedes(&path, 1, 1).unwrap());
        assert!(precedes(&path, 0, 1).unwrap());
        let t = triangle();
        assert!(precedes(&t, 1, 2).unwrap());
        assert!(!precedes(&t, 2, 1).unwrap());
        assert!(matches!(precedes(&t, 0, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&triangle()).out_degrees(), vec![2, 1, 0]);
        assert_eq!(orient(&star(3)).out_degrees(), vec![0, 1, 1, 1]);
        assert_eq!(orient(&Graph::edgeless(4)).out_degrees(), vec![0; 4]);
    }

    #[test]
    fn forest_decomposition_examples() {
        let fd = forest_decomposition(&triangle());
        assert_eq!(fd.num_labels, 2);
        assert_eq!(fd.labeled, vec![(0, 1, 1), (0, 2, 2), (1, 2, 1)]);
        assert!(fd.all_classes_acyclic(3));

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let fd = forest_decomposition(&path);
        assert_eq!(orient(&path).out_degrees(), vec![1, 0, 1]);
        assert_eq!(fd.num_labels, 1);

        let fd = forest_decomposition(&Graph::edgeless(3));
        assert_eq!(fd.num_labels, 0);
        assert!(fd.labeled.is_empty());
    }

    #[test]
    fn is_forest_detects_cycles() {
        assert!(is_forest(4, [(0, 1), (1, 2), (2, 3)]));
        assert!(!is_forest(3, [(0, 1), (1, 2), (2, 0)]));
        assert!(is_forest(3, std::iter::empty()));
    }
}
