//! Exact checks of the identities and inequalities the estimators rely on,
//! evaluated on concrete graphs, plus an empirical termination profile.

use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::estimators::{ers, ers_gen, EstimatorConfig};
use crate::graph::{cn_sum, degeneracy, exact_arboricity, orient, Graph, DEFAULT_MAX_EXACT_N};
use crate::oracle::OracleSession;

pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSource {
    /// Brute-force subset density maximization.
    Exact,
    /// Upper bound supplied by the caller (e.g. a generator certificate).
    Supplied,
    /// Degeneracy, an upper bound on the arboricity.
    Degeneracy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCertificate {
    pub value: usize,
    pub source: AlphaSource,
}

impl AlphaCertificate {
    pub fn exact(g: &Graph, max_n: usize) -> Result<Self> {
        Ok(Self { value: exact_arboricity(g, max_n)?, source: AlphaSource::Exact })
    }

    /// Exact when `n ≤ max_n`, otherwise the degeneracy bound.
    pub fn best_available(g: &Graph, max_n: usize) -> Self {
        Self::exact(g, max_n)
            .unwrap_or_else(|_| Self { value: degeneracy(g), source: AlphaSource::Degeneracy })
    }
}

/// Exact first and second moments of one draw of the sampler.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub e_x: Rational,
    pub e_x2: Rational,
    pub var_x: Rational,
    pub d: Rational,
    pub alpha_exact: Option<usize>,
    /// `8·d·α`, present when `alpha_exact` is.
    pub bound_var: Option<Rational>,
}

impl MomentReport {
    pub fn mean_matches_average_degree(&self) -> bool {
        self.e_x == self.d
    }

    pub fn variance_bound(&self, alpha: usize) -> Rational {
        self.d * Rational::from_integer(8 * alpha as i128)
    }

    pub fn variance_within(&self, alpha: usize) -> bool {
        self.var_x <= self.variance_bound(alpha)
    }
}

/// `E[X] = (2/n)·Σ d⁺_u` and `E[X²] = (4/n)·Σ d⁺_u·d_u`, from the orientation.
/// Arboricity is computed when `n ≤ 20`.
pub fn exact_moments(g: &Graph) -> MomentReport {
    let alpha = exact_arboricity(g, DEFAULT_MAX_EXACT_N).ok();
    moments_with_alpha(g, alpha)
}

pub fn moments_with_alpha(g: &Graph, alpha: Option<usize>) -> MomentReport {
    let n = g.n() as i128;
    let o = orient(g);
    let (sum_out, sum_out_deg) = g.vertices().fold((0i128, 0i128), |(a, b), u| {
        let out = o.out_degree(u) as i128;
        (a + out, b + out * g.degree(u) as i128)
    });
    let (e_x, e_x2) = if n == 0 {
        (Rational::zero(), Rational::zero())
    } else {
        (Rational::new(2 * sum_out, n), Rational::new(4 * sum_out_deg, n))
    };
    let var_x = e_x2 - e_x * e_x;
    let d = g.average_degree();
    let bound_var = alpha.map(|a| d * Rational::from_integer(8 * a as i128));
    MomentReport { e_x, e_x2, var_x, d, alpha_exact: alpha, bound_var }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnVerdict {
    pub cn_sum: u64,
    pub m: u64,
    pub alpha: AlphaCertificate,
    /// `2·m·α`
    pub bound: u64,
    pub pass: bool,
}

/// `Σ_{(u,v)∈E} min(d_u, d_v) ≤ 2mα`. Uses `alpha` if given, otherwise the
/// exact arboricity (failing with instance-too-large beyond `max_n`).
pub fn check_cn_bound(g: &Graph, alpha: Option<usize>, max_n: usize) -> Result<CnVerdict> {
    let alpha = match alpha {
        Some(value) => AlphaCertificate { value, source: AlphaSource::Supplied },
        None => AlphaCertificate::exact(g, max_n)?,
    };
    Ok(cn_verdict(g, alpha))
}

pub fn cn_verdict(g: &Graph, alpha: AlphaCertificate) -> CnVerdict {
    let s = cn_sum(g);
    let m = g.m() as u64;
    let bound = 2 * m * alpha.value as u64;
    CnVerdict { cn_sum: s, m, alpha, bound, pass: s <= bound }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sqrt2mVerdict {
    pub alpha: AlphaCertificate,
    pub two_m: u64,
    pub max_out_degree: u64,
    pub floor_sqrt_two_m: u64,
    /// `α² ≤ 2m`
    pub alpha_pass: bool,
    /// `max d⁺ ≤ ⌊√(2m)⌋`
    pub out_degree_pass: bool,
}

impl Sqrt2mVerdict {
    pub fn pass(&self) -> bool {
        self.alpha_pass && self.out_degree_pass
    }
}

pub fn check_sqrt2m_bound(g: &Graph, max_n: usize) -> Result<Sqrt2mVerdict> {
    Ok(sqrt2m_verdict(g, AlphaCertificate::exact(g, max_n)?))
}

pub fn sqrt2m_verdict(g: &Graph, alpha: AlphaCertificate) -> Sqrt2mVerdict {
    let two_m = 2 * g.m() as u64;
    let a = alpha.value as u64;
    let max_out = orient(g).max_out_degree() as u64;
    let floor_sqrt = two_m.isqrt();
    Sqrt2mVerdict {
        alpha,
        two_m,
        max_out_degree: max_out,
        floor_sqrt_two_m: floor_sqrt,
        alpha_pass: a * a <= two_m,
        out_degree_pass: max_out <= floor_sqrt,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum Algorithm {
    Ers { alpha: f64 },
    ErsGen { n: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub estimate: Option<f64>,
    pub final_tau: f64,
    pub iterations: u32,
    pub in_range: bool,
    pub early: bool,
    pub queries: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TerminationProfile {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub d: f64,
    pub trials: u64,
    pub seed: u64,
    /// Runs that stopped while `τ > 8d`.
    pub early_terminations: u64,
    pub early_rate: f64,
    /// Binomial standard deviation of the rate at `p = 1/4`.
    pub early_sigma: f64,
    /// Rate within `[1/4, 1/4 + 3σ]`: tolerated, but worth a look.
    pub early_flagged: bool,
    pub early_pass: bool,
    pub successes: u64,
    pub success_rate: f64,
    pub capped: u64,
    pub queries_min: u64,
    pub queries_median: u64,
    pub queries_max: u64,
    pub outcomes: Vec<TrialOutcome>,
}

pub const EARLY_TERMINATION_BOUND: f64 = 0.25;

/// Runs `trials` independent estimations. Trial `i` uses oracle stream `i`
/// under `seed`, so the profile does not depend on scheduling.
pub fn termination_profile(
    g: &Graph,
    algorithm: Algorithm,
    cfg: &EstimatorConfig,
    trials: u64,
    seed: u64,
) -> Result<TerminationProfile> {
    cfg.validate()?;
    let d = ratio_to_f64(g.average_degree());
    let eps = cfg.epsilon;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut session = OracleSession::with_stream(g, seed, trial);
            let r = match algorithm {
                Algorithm::Ers { alpha } => ers(&mut session, alpha, cfg)?,
                Algorithm::ErsGen { n } => ers_gen(&mut session, n, cfg)?,
            };
            Ok(TrialOutcome {
                trial,
                estimate: r.estimate,
                final_tau: r.final_tau,
                iterations: r.iterations,
                in_range: r.estimate.is_some_and(|x| within(x, d, eps)),
                early: r.terminated && r.final_tau > 8.0 * d,
                queries: r.queries.total(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let t = trials as f64;
    let early = outcomes.iter().filter(|o| o.early).count() as u64;
    let successes = outcomes.iter().filter(|o| o.in_range).count() as u64;
    let capped = outcomes.iter().filter(|o| o.estimate.is_none()).count() as u64;
    let early_rate = early as f64 / t;
    let early_sigma = (EARLY_TERMINATION_BOUND * (1.0 - EARLY_TERMINATION_BOUND) / t).sqrt();
    let mut q: Vec<u64> = outcomes.iter().map(|o| o.queries).collect();
    q.sort_unstable();
    Ok(TerminationProfile {
        algorithm,
        epsilon: eps,
        d,
        trials,
        seed,
        early_terminations: early,
        early_rate,
        early_sigma,
        early_flagged: early_rate >= EARLY_TERMINATION_BOUND
            && early_rate <= EARLY_TERMINATION_BOUND + 3.0 * early_sigma,
        early_pass: early_rate <= EARLY_TERMINATION_BOUND + 3.0 * early_sigma,
        successes,
        success_rate: successes as f64 / t,
        capped,
        queries_min: q.first().copied().unwrap_or(0),
        queries_median: median(&q),
        queries_max: q.last().copied().unwrap_or(0),
        outcomes,
    })
}

/// `|x − d| ≤ ε·d`
pub fn within(x: f64, d: f64, eps: f64) -> bool {
    (x - d).abs() <= eps * d
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Lower median of a sorted slice; 0 when empty.
pub fn median(sorted: &[u64]) -> u64 {
    if sorted.is_empty() {
        0
    } else {
        sorted[(sorted.len() - 1) / 2]
    }
}
