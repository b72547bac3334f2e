//! Average-degree estimation by geometric threshold search.
//!
//! Both estimators draw batches of the one-edge sample `X_i` (see
//! [`draw_sample`]) and stop as soon as a batch mean exceeds the current
//! threshold τ. On each failed pass the batch size doubles while τ halves
//! ([`ers`], seeded with an arboricity bound) or quarters ([`ers_gen`], seeded
//! with the vertex count). So `s·τ` or `s·√τ` stays fixed from pass to pass.

mod birthday;

pub use birthday::{collision_floor, estimate_n_birthday, BirthdayReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::precedes_by_degree;
use crate::oracle::{OracleSession, QueryCounts};

pub const DEFAULT_C: f64 = 6400.0;
pub const DEFAULT_MAX_ITERATIONS: u32 = 64;
/// Cap on the samples one run may draw across all passes.
pub const DEFAULT_MAX_SAMPLES: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub epsilon: f64,
    pub c: f64,
    pub max_iterations: u32,
    pub max_samples: u64,
}

impl EstimatorConfig {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            c: DEFAULT_C,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            max_samples: DEFAULT_MAX_SAMPLES,
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: u32) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_max_samples(mut self, max_samples: u64) -> Self {
        self.max_samples = max_samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must lie in (0, 1/2), got {}",
                self.epsilon
            )));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidArgument(format!("c must be positive, got {}", self.c)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        Ok(())
    }

    /// Batch size of the first pass, `⌈c/ε²⌉`.
    pub fn initial_samples(&self) -> u64 {
        (self.c / (self.epsilon * self.epsilon)).ceil() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pass {
    pub samples: u64,
    pub tau: f64,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    /// Mean of the final pass; `None` when the run stopped on a cap.
    pub estimate: Option<f64>,
    pub iterations: u32,
    pub final_s: u64,
    pub final_tau: f64,
    pub samples_total: u64,
    pub queries: QueryCounts,
    pub terminated: bool,
    pub passes: Vec<Pass>,
}

/// One draw of `X_i`: a uniform vertex `u`, a uniform neighbor `v`, and
/// `2·d_u` if `u ≺ v`, else 0.
///
/// A degree-0 vertex yields 0 after two queries (vertex, degree) instead of
/// issuing a neighbor query that has no answer; it has no out-neighbors, so
/// the expectation is unchanged. Otherwise exactly four queries are used.
#[inline]
pub fn draw_sample(session: &mut OracleSession<'_>) -> Result<u64> {
    if !session.has_vertices() {
        return Err(Error::InvalidState("sample requested from a graph with no vertices"));
    }
    Ok(sample_nonempty(session))
}

#[inline]
fn sample_nonempty(session: &mut OracleSession<'_>) -> u64 {
    let u = session.vertex_nonempty();
    let du = session.degree_of_known(u);
    if du == 0 {
        return 0;
    }
    let v = session.neighbor_of_known(u);
    let dv = session.degree_of_known(v);
    if precedes_by_degree(du, u, dv, v) {
        2 * du as u64
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug)]
enum Schedule {
    Halving,
    Quartering,
}

/// Threshold search seeded with an upper bound on the arboricity.
///
/// The session never learns `n`. Guarantees hold only when
/// `alpha_bound ≥ α(G)`; smaller values still run to termination or a cap.
pub fn ers(
    session: &mut OracleSession<'_>,
    alpha_bound: f64,
    cfg: &EstimatorConfig,
) -> Result<EstimateReport> {
    if !(alpha_bound > 0.0 && alpha_bound.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "alpha bound must be positive, got {alpha_bound}"
        )));
    }
    search(session, alpha_bound, Schedule::Halving, cfg)
}

/// Threshold search for graphs of unknown arboricity; τ starts at the
/// vertex count, which the caller supplies explicitly.
pub fn ers_gen(
    session: &mut OracleSession<'_>,
    n_known: u64,
    cfg: &EstimatorConfig,
) -> Result<EstimateReport> {
    if n_known == 0 {
        return Err(Error::InvalidArgument("vertex count must be positive".into()));
    }
    search(session, n_known as f64, Schedule::Quartering, cfg)
}

fn search(
    session: &mut OracleSession<'_>,
    initial_tau: f64,
    schedule: Schedule,
    cfg: &EstimatorConfig,
) -> Result<EstimateReport> {
    cfg.validate()?;
    if !session.has_vertices() {
        return Err(Error::InvalidState("estimation requested on a graph with no vertices"));
    }
    let mut s = cfg.initial_samples();
    // Scaling by a power of two is exact in binary floating point, so τ is
    // always exactly initial_tau / 2^i (or / 4^i).
    let shrink = match schedule {
        Schedule::Halving => 0.5,
        Schedule::Quartering => 0.25,
    };
    let mut tau = initial_tau;
    let mut passes = Vec::new();
    let mut samples_total = 0u64;
    let mut terminated = false;

    for _ in 0..cfg.max_iterations {
        if samples_total.saturating_add(s) > cfg.max_samples {
            break;
        }
        let mut sum = 0u64;
        for _ in 0..s {
            sum += sample_nonempty(session);
        }
        samples_total += s;
        let mean = sum as f64 / s as f64;
        passes.push(Pass { samples: s, tau, mean });
        if mean > tau {
            terminated = true;
            break;
        }
        match s.checked_mul(2) {
            Some(next) => s = next,
            None => break,
        }
        tau *= shrink;
    }

    let last = passes.last().copied();
    Ok(EstimateReport {
        estimate: terminated.then(|| last.map(|p| p.mean)).flatten(),
        iterations: passes.len() as u32,
        final_s: last.map_or(0, |p| p.samples),
        final_tau: last.map_or(initial_tau, |p| p.tau),
        samples_total,
        queries: session.query_count(),
        terminated,
        passes,
    })
}
