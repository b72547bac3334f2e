//! Metered access to a [`Graph`] through the three adjacency-list queries:
//! uniform vertex, degree, and uniform neighbor.
//!
//! A session never reports `n`, `m`, or the edge set. Pair queries are not
//! offered. Randomness comes from ChaCha8 seeded with a 64-bit seed; the
//! generator's 64-bit stream selector gives independent substreams, so
//! parallel trials use `(seed, stream = trial index)` and stay reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub vertex: u64,
    pub degree: u64,
    pub neighbor: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.vertex + self.degree + self.neighbor
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryEvent {
    Vertex(VertexId),
    Degree(VertexId, usize),
    Neighbor(VertexId, VertexId),
}

pub struct OracleSession<'g> {
    graph: &'g Graph,
    rng: ChaCha8Rng,
    counts: QueryCounts,
    transcript: Option<Vec<QueryEvent>>,
}

impl<'g> OracleSession<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        Self::with_stream(graph, seed, 0)
    }

    pub fn with_stream(graph: &'g Graph, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self {
            graph,
            rng,
            counts: QueryCounts::default(),
            transcript: None,
        }
    }

    /// Records every answered query from now on.
    pub fn record_transcript(&mut self) {
        self.transcript.get_or_insert_with(Vec::new);
    }

    pub fn transcript(&self) -> Option<&[QueryEvent]> {
        self.transcript.as_deref()
    }

    #[inline]
    fn log(&mut self, event: QueryEvent) {
        if let Some(t) = &mut self.transcript {
            t.push(event);
        }
    }

    #[inline]
    pub fn random_vertex(&mut self) -> Result<VertexId> {
        let n = self.graph.n();
        if n == 0 {
            return Err(Error::InvalidState("vertex query on a graph with no vertices"));
        }
        let v = self.rng.random_range(0..n as VertexId);
        self.counts.vertex += 1;
        self.log(QueryEvent::Vertex(v));
        Ok(v)
    }

    #[inline]
    pub fn degree(&mut self, v: VertexId) -> Result<usize> {
        self.graph.check_vertex(v)?;
        let d = self.graph.degree(v);
        self.counts.degree += 1;
        self.log(QueryEvent::Degree(v, d));
        Ok(d)
    }

    #[inline]
    pub fn random_neighbor(&mut self, v: VertexId) -> Result<VertexId> {
        self.graph.check_vertex(v)?;
        let nbrs = self.graph.neighbors(v);
        if nbrs.is_empty() {
            return Err(Error::NoNeighbor(v));
        }
        let w = nbrs[self.rng.random_range(0..nbrs.len() as u32) as usize];
        self.counts.neighbor += 1;
        self.log(QueryEvent::Neighbor(v, w));
        Ok(w)
    }

    // Infallible forms for callers that have already established n ≥ 1 and
    // only pass IDs the session itself produced. They count, record, and
    // consume randomness exactly like the checked queries.

    pub(crate) fn has_vertices(&self) -> bool {
        self.graph.n() > 0
    }

    #[inline]
    pub(crate) fn vertex_nonempty(&mut self) -> VertexId {
        let v = self.rng.random_range(0..self.graph.n() as VertexId);
        self.counts.vertex += 1;
        self.log(QueryEvent::Vertex(v));
        v
    }

    #[inline]
    pub(crate) fn degree_of_known(&mut self, v: VertexId) -> usize {
        let d = self.graph.degree(v);
        self.counts.degree += 1;
        self.log(QueryEvent::Degree(v, d));
        d
    }

    /// `v` must have been returned by this session and have degree ≥ 1.
    #[inline]
    pub(crate) fn neighbor_of_known(&mut self, v: VertexId) -> VertexId {
        let nbrs = self.graph.neighbors(v);
        let w = nbrs[self.rng.random_range(0..nbrs.len() as u32) as usize];
        self.counts.neighbor += 1;
        self.log(QueryEvent::Neighbor(v, w));
        w
    }

    /// Counter snapshot. Only answered queries are counted; a call that
    /// returns an error leaves the counters unchanged.
    pub fn query_count(&self) -> QueryCounts {
        self.counts
    }
}
