use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use avgdeg_core::generators::AlphaProvenance;
use avgdeg_core::graph::degeneracy;
use avgdeg_core::io::read_edge_list;
use avgdeg_core::validators::ratio_to_f64;
use avgdeg_core::{Graph, GraphSpec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Ers,
    ErsGen,
    BirthdayN,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Ers => "ers",
            Algo::ErsGen => "ers-gen",
            Algo::BirthdayN => "birthday-n",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Either a generator spec (`family:params[@seed]`) or an edge-list path.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    Spec(GraphSpec),
    File(PathBuf),
}

impl FromStr for GraphSource {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s.parse::<GraphSpec>() {
            Ok(spec) => Ok(GraphSource::Spec(spec)),
            Err(_) if Path::new(s).exists() => Ok(GraphSource::File(PathBuf::from(s))),
            Err(e) if s.contains(':') && !s.contains(std::path::MAIN_SEPARATOR) => Err(e.into()),
            Err(_) => bail!("{s:?} is neither a graph spec nor an existing edge-list file"),
        }
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Spec(spec) => write!(f, "{spec}"),
            GraphSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphIdentity {
    pub family: String,
    pub params: String,
    pub n: usize,
    pub m: usize,
    pub d: f64,
    pub d_exact: String,
    pub alpha: usize,
    pub alpha_provenance: String,
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub identity: GraphIdentity,
}

impl GraphSource {
    pub fn load(&self) -> anyhow::Result<LoadedGraph> {
        match self {
            GraphSource::Spec(spec) => {
                let g = spec.generate()?;
                let c = &g.certificate;
                let identity = GraphIdentity {
                    family: spec.family().to_string(),
                    params: spec.to_string(),
                    n: c.n,
                    m: c.m,
                    d: ratio_to_f64(c.d),
                    d_exact: c.d.to_string(),
                    alpha: c.alpha,
                    alpha_provenance: provenance_name(c.provenance).to_string(),
                };
                Ok(LoadedGraph { graph: g.graph, identity })
            }
            GraphSource::File(path) => {
                let graph = read_edge_list(path)
                    .with_context(|| format!("loading {}", path.display()))?;
                let d = graph.average_degree();
                let identity = GraphIdentity {
                    family: "file".to_string(),
                    params: path.display().to_string(),
                    n: graph.n(),
                    m: graph.m(),
                    d: ratio_to_f64(d),
                    d_exact: d.to_string(),
                    alpha: degeneracy(&graph),
                    alpha_provenance: "degeneracy".to_string(),
                };
                Ok(LoadedGraph { graph, identity })
            }
        }
    }
}

fn provenance_name(p: AlphaProvenance) -> &'static str {
    match p {
        AlphaProvenance::Analytic => "analytic",
        AlphaProvenance::Constructive => "constructive",
        AlphaProvenance::Degeneracy => "degeneracy",
    }
}

/// One benchmark campaign: every epsilon in the grid, `trials` runs each.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub algo: Algo,
    pub eps: Vec<f64>,
    pub c: f64,
    pub trials: u64,
    pub seed: u64,
    /// ERS arboricity bound; defaults to the graph's certified bound.
    pub alpha: Option<f64>,
    /// ERS-gen vertex count; defaults to the true `n`.
    pub n: Option<u64>,
    pub max_iterations: u32,
    pub max_samples: u64,
    pub workers: Option<usize>,
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(graph: GraphSource, algo: Algo) -> Self {
        Self {
            graph,
            algo,
            eps: vec![0.1],
            c: avgdeg_core::estimators::DEFAULT_C,
            trials: 1,
            seed: 0,
            alpha: None,
            n: None,
            max_iterations: avgdeg_core::estimators::DEFAULT_MAX_ITERATIONS,
            max_samples: avgdeg_core::estimators::DEFAULT_MAX_SAMPLES,
            workers: None,
            timing: false,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.eps.is_empty() {
            bail!("epsilon grid is empty");
        }
        let upper = if self.algo == Algo::BirthdayN { 1.0 } else { 0.5 };
        for &e in &self.eps {
            if !(e > 0.0 && e < upper) {
                bail!("epsilon {e} outside (0, {upper}) for {}", self.algo.name());
            }
        }
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            bail!("c must be positive");
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0 && a.is_finite()) {
                bail!("alpha must be positive");
            }
        }
        if self.n == Some(0) {
            bail!("n must be positive");
        }
        if self.workers == Some(0) {
            bail!("workers must be at least 1");
        }
        Ok(())
    }
}

/// Key-value experiment file (TOML). Every key is optional here; command-line
/// flags take precedence over the file.
///
/// ```toml
/// graph = "star:10000"
/// algo = "ers"            # ers | ers-gen | birthday-n
/// eps = [0.05, 0.1, 0.2]
/// c = 6400.0
/// trials = 400
/// seed = 1
/// alpha = 1.0             # ers only
/// n = 10000               # ers-gen only
/// out = "results.csv"
/// format = "csv"          # csv | json
/// workers = 4
/// timing = false
/// max_iterations = 64
/// max_samples = 4294967296
/// ```
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub graph: Option<String>,
    pub algo: Option<Algo>,
    pub eps: Option<Vec<f64>>,
    pub c: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
    pub n: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub timing: Option<bool>,
    pub max_iterations: Option<u32>,
    pub max_samples: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
