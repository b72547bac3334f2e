//! Graph families with known size, average degree, and an arboricity
//! certificate. Random families are deterministic given their seed.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{degeneracy, is_forest, Graph, VertexId};
use crate::validators::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphSpec {
    /// Vertex 0 joined to each of `1..n`.
    Star { n: usize },
    Path { n: usize },
    Complete { n: usize },
    /// Union of `k` random spanning trees; an edge repeated by a later layer is dropped from it.
    ForestUnion { n: usize, k: usize, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    /// A clique on `0..k` followed by `n_iso` isolated vertices.
    IsolatedPlusClique { n_iso: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaProvenance {
    /// Closed form for the family.
    Analytic,
    /// Explicit forest cover kept from construction.
    Constructive,
    /// Degeneracy of the constructed graph.
    Degeneracy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_ratio", deserialize_with = "de_ratio")]
    pub d: Rational,
    /// Upper bound on the arboricity (exact for the analytic families).
    pub alpha: usize,
    pub provenance: AlphaProvenance,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn de_ratio<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: GraphSpec,
    pub graph: Graph,
    pub certificate: Certificate,
    /// The covering forests, for families built as a union of forests.
    pub forests: Option<Vec<Vec<(VertexId, VertexId)>>>,
}

impl Generated {
    /// Checks the retained forest cover: each layer acyclic, layers
    /// partition the edge set, and there are at most `alpha` of them.
    pub fn verify_forest_cover(&self) -> bool {
        let Some(layers) = &self.forests else { return false };
        let n = self.graph.n();
        let mut all: Vec<_> = layers.iter().flatten().copied().collect();
        all.sort_unstable();
        layers.iter().filter(|l| !l.is_empty()).count() <= self.certificate.alpha
            && layers.iter().all(|l| is_forest(n, l.iter().copied()))
            && all.iter().copied().eq(self.graph.edges())
    }
}

impl GraphSpec {
    pub fn generate(&self) -> Result<Generated> {
        self.check_params()?;
        let mut forests = None;
        let (graph, alpha, provenance) = match *self {
            GraphSpec::Star { n } => {
                let g = Graph::from_edges(n, (1..n as VertexId).map(|l| (0, l)))?;
                let a = usize::from(n >= 2);
                (g, a, AlphaProvenance::Analytic)
            }
            GraphSpec::Path { n } => {
                let g = Graph::from_edges(n, (1..n as VertexId).map(|v| (v - 1, v)))?;
                let a = usize::from(n >= 2);
                (g, a, AlphaProvenance::Analytic)
            }
            GraphSpec::Complete { n } => {
                (clique(n, n)?, clique_arboricity(n), AlphaProvenance::Analytic)
            }
            GraphSpec::IsolatedPlusClique { n_iso, k } => {
                (clique(n_iso + k, k)?, clique_arboricity(k), AlphaProvenance::Analytic)
            }
            GraphSpec::ForestUnion { n, k, seed } => {
                let layers = forest_layers(n, k, seed);
                let g = Graph::from_edges(n, layers.iter().flatten().copied())?;
                let used = layers.iter().filter(|l| !l.is_empty()).count();
                forests = Some(layers);
                (g, used, AlphaProvenance::Constructive)
            }
            GraphSpec::ErdosRenyi { n, p, seed } => {
                let g = Graph::from_edges(n, gnp_edges(n, p, seed))?;
                let a = degeneracy(&g);
                (g, a, AlphaProvenance::Degeneracy)
            }
        };
        let certificate = Certificate {
            n: graph.n(),
            m: graph.m(),
            d: graph.average_degree(),
            alpha,
            provenance,
        };
        Ok(Generated { spec: self.clone(), graph, certificate, forests })
    }

    fn check_params(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match *self {
            GraphSpec::Star { n }
            | GraphSpec::Path { n }
            | GraphSpec::Complete { n }
            | GraphSpec::ForestUnion { n, .. }
            | GraphSpec::ErdosRenyi { n, .. }
                if n == 0 =>
            {
                bad(format!("{self}: n must be at least 1"))
            }
            GraphSpec::ErdosRenyi { p, .. } if !(0.0..=1.0).contains(&p) => {
                bad(format!("{self}: p must lie in [0, 1]"))
            }
            GraphSpec::IsolatedPlusClique { n_iso, k } if n_iso + k == 0 => {
                bad(format!("{self}: graph must have at least one vertex"))
            }
            _ => Ok(()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            GraphSpec::Star { .. } => "star",
            GraphSpec::Path { .. } => "path",
            GraphSpec::Complete { .. } => "complete",
            GraphSpec::ForestUnion { .. } => "forest_union",
            GraphSpec::ErdosRenyi { .. } => "erdos_renyi",
            GraphSpec::IsolatedPlusClique { .. } => "isolated_plus_clique",
        }
    }
}

fn clique_arboricity(k: usize) -> usize {
    if k >= 2 {
        k.div_ceil(2)
    } else {
        0
    }
}

fn clique(n: usize, k: usize) -> Result<Graph> {
    let k = k as VertexId;
    Graph::from_edges(n, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
}

/// `k` random spanning trees: each tree visits a random permutation and hangs
/// every vertex under a uniformly chosen earlier one. Edges already present in
/// an earlier layer are skipped, which leaves each layer a forest.
fn forest_layers(n: usize, k: usize, seed: u64) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = std::collections::HashSet::new();
    let mut layers = Vec::with_capacity(k);
    for _ in 0..k {
        let mut perm: Vec<VertexId> = (0..n as VertexId).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let mut layer = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let parent = perm[rng.random_range(0..i)];
            let e = (perm[i].min(parent), perm[i].max(parent));
            if present.insert(e) {
                layer.push(e);
            }
        }
        layers.push(layer);
    }
    layers
}

/// G(n, p) by geometric skipping over the pairs `(w, v)`, `w < v`.
fn gnp_edges(n: usize, p: f64, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n as VertexId {
            edges.extend((0..v).map(|w| (w, v)));
        }
        return edges;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1i64, -1i64);
    let n = n as i64;
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((w as VertexId, v as VertexId));
        }
    }
    edges
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphSpec::Star { n } | GraphSpec::Path { n } | GraphSpec::Complete { n } => {
                write!(f, "{}:{n}", self.family())
            }
            GraphSpec::ForestUnion { n, k, seed } => write!(f, "forest_union:{n},{k}@{seed}"),
            GraphSpec::ErdosRenyi { n, p, seed } => write!(f, "erdos_renyi:{n},{p}@{seed}"),
            GraphSpec::IsolatedPlusClique { n_iso, k } => {
                write!(f, "isolated_plus_clique:{n_iso},{k}")
            }
        }
    }
}

/// Parses `family:p1[,p2][@seed]`, e.g. `star:10000`, `erdos_renyi:10000,0.001@42`.
/// The seed defaults to 0.
impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("graph spec {s:?}: {why}"));
        let (family, rest) = s.split_once(':').ok_or_else(|| bad("expected family:params"))?;
        let (params, seed) = match rest.split_once('@') {
            Some((p, seed)) => (p, seed.trim().parse::<u64>().map_err(|_| bad("bad seed"))?),
            None => (rest, 0),
        };
        let params: Vec<&str> = params.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize> {
            params
                .get(i)
                .ok_or_else(|| bad("missing parameter"))?
                .parse()
                .map_err(|_| bad("parameter is not a nonnegative integer"))
        };
        let arity = |k: usize| if params.len() == k { Ok(()) } else { Err(bad("wrong number of parameters")) };
        let spec = match family.trim() {
            "star" => arity(1).and_then(|_| Ok(GraphSpec::Star { n: int(0)? }))?,
            "path" => arity(1).and_then(|_| Ok(GraphSpec::Path { n: int(0)? }))?,
            "complete" => arity(1).and_then(|_| Ok(GraphSpec::Complete { n: int(0)? }))?,
            "forest_union" => {
                arity(2)?;
                GraphSpec::ForestUnion { n: int(0)?, k: int(1)?, seed }
            }
            "erdos_renyi" => {
                arity(2)?;
                let p = params[1].parse().map_err(|_| bad("p is not a number"))?;
                GraphSpec::ErdosRenyi { n: int(0)?, p, seed }
            }
            "isolated_plus_clique" => {
                arity(2)?;
                GraphSpec::IsolatedPlusClique { n_iso: int(0)?, k: int(1)? }
            }
            _ => return Err(bad("unknown family")),
        };
        Ok(spec)
    }
}
