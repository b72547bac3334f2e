use std::time::Instant;

use anyhow::Context;
use avgdeg_core::validators::{median, within};
use avgdeg_core::{ers, ers_gen, estimate_n_birthday, EstimatorConfig, Graph, OracleSession};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Algo, ExperimentConfig, GraphIdentity};

pub const SCHEMA_VERSION: u32 = 1;

/// Success rate an estimator summary must reach.
pub const ESTIMATOR_SUCCESS_THRESHOLD: f64 = 2.0 / 3.0;
/// Success rate a vertex-count summary must reach.
pub const BIRTHDAY_SUCCESS_THRESHOLD: f64 = 0.9;
/// Largest allowed max/min spread of the median scaling ratio over the grid.
pub const SCALING_SPREAD_LIMIT: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub algorithm: &'static str,
    pub epsilon: f64,
    pub trial: u64,
    pub estimate: Option<f64>,
    pub rel_error: Option<f64>,
    pub in_range: bool,
    pub terminated: bool,
    pub iterations: u32,
    pub final_s: u64,
    pub final_tau: Option<f64>,
    pub samples_total: u64,
    pub vertex_queries: u64,
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub total_queries: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub algorithm: &'static str,
    pub epsilon: f64,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub threshold: f64,
    pub capped: u64,
    pub queries_min: u64,
    pub queries_median: u64,
    pub queries_max: u64,
    /// Median of the dimensionless query ratio (see [`scaling_ratio`]).
    pub scaling_ratio_median: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingCheck {
    pub ratio: &'static str,
    pub min: f64,
    pub max: f64,
    pub spread: f64,
    pub limit: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub graph: GraphIdentity,
    pub algorithm: &'static str,
    pub c: f64,
    pub base_seed: u64,
    pub rows: Vec<ResultRow>,
    pub summaries: Vec<Summary>,
    pub scaling: Option<ScalingCheck>,
    pub pass: bool,
}

/// Query counts normalized by the predicted complexity, so that a correct
/// scaling law gives a ratio independent of ε:
/// `q·ε²·d/α` (ers), `q·ε²·√(d/n)` (ers-gen), `q_vertex/√n` (birthday-n).
pub fn scaling_ratio(algo: Algo, row: &ResultRow, id: &GraphIdentity, alpha: f64, n: f64) -> f64 {
    let eps2 = row.epsilon * row.epsilon;
    match algo {
        Algo::Ers => row.total_queries as f64 * eps2 * id.d / alpha,
        Algo::ErsGen => row.total_queries as f64 * eps2 * (id.d / n).sqrt(),
        Algo::BirthdayN => row.vertex_queries as f64 / (id.n as f64).sqrt(),
    }
}

pub fn scaling_ratio_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Ers => "queries*eps^2*d/alpha",
        Algo::ErsGen => "queries*eps^2*sqrt(d/n)",
        Algo::BirthdayN => "vertex_queries/sqrt(n)",
    }
}

pub fn run(config: &ExperimentConfig) -> anyhow::Result<CampaignReport> {
    config.validate()?;
    let loaded = config.graph.load()?;
    let id = loaded.identity;
    let alpha = config.alpha.unwrap_or(id.alpha.max(1) as f64);
    let n_known = config.n.unwrap_or(id.n as u64);

    let jobs: Vec<(usize, u64)> = (0..config.eps.len())
        .flat_map(|e| (0..config.trials).map(move |t| (e, t)))
        .collect();
    let execute = || {
        jobs.par_iter()
            .map(|&(e, t)| run_trial(config, &loaded.graph, &id, alpha, n_known, e, t))
            .collect::<anyhow::Result<Vec<_>>>()
    };
    let mut rows = match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .context("building worker pool")?
            .install(execute)?,
        None => execute()?,
    };
    rows.sort_by(|a, b| {
        a.epsilon
            .total_cmp(&b.epsilon)
            .then(a.trial.cmp(&b.trial))
    });

    let threshold = match config.algo {
        Algo::BirthdayN => BIRTHDAY_SUCCESS_THRESHOLD,
        _ => ESTIMATOR_SUCCESS_THRESHOLD,
    };
    let mut summaries = Vec::new();
    let mut eps_sorted = config.eps.clone();
    eps_sorted.sort_by(f64::total_cmp);
    eps_sorted.dedup();
    for &eps in &eps_sorted {
        let group: Vec<&ResultRow> = rows.iter().filter(|r| r.epsilon == eps).collect();
        let trials = group.len() as u64;
        let successes = group.iter().filter(|r| r.in_range).count() as u64;
        let capped = group.iter().filter(|r| !r.terminated).count() as u64;
        let mut q: Vec<u64> = group.iter().map(|r| r.total_queries).collect();
        q.sort_unstable();
        let mut ratios: Vec<f64> = group
            .iter()
            .map(|r| scaling_ratio(config.algo, r, &id, alpha, n_known as f64))
            .collect();
        ratios.sort_by(f64::total_cmp);
        let success_rate = successes as f64 / trials as f64;
        summaries.push(Summary {
            algorithm: config.algo.name(),
            epsilon: eps,
            trials,
            successes,
            success_rate,
            threshold,
            capped,
            queries_min: q[0],
            queries_median: median(&q),
            queries_max: q[q.len() - 1],
            scaling_ratio_median: ratios[(ratios.len() - 1) / 2],
            pass: success_rate >= threshold && capped == 0,
        });
    }

    let scaling = (summaries.len() >= 2 && config.algo != Algo::BirthdayN).then(|| {
        let (min, max) = summaries.iter().fold((f64::INFINITY, 0f64), |(lo, hi), s| {
            (lo.min(s.scaling_ratio_median), hi.max(s.scaling_ratio_median))
        });
        let spread = max / min;
        ScalingCheck {
            ratio: scaling_ratio_name(config.algo),
            min,
            max,
            spread,
            limit: SCALING_SPREAD_LIMIT,
            pass: spread <= SCALING_SPREAD_LIMIT,
        }
    });
    let pass = summaries.iter().all(|s| s.pass) && scaling.as_ref().is_none_or(|s| s.pass);
    Ok(CampaignReport {
        schema_version: SCHEMA_VERSION,
        graph: id,
        algorithm: config.algo.name(),
        c: config.c,
        base_seed: config.seed,
        rows,
        summaries,
        scaling,
        pass,
    })
}

/// Oracle stream for trial `t` at grid position `e`.
pub fn trial_stream(e: usize, t: u64) -> u64 {
    ((e as u64) << 32) | (t & 0xffff_ffff)
}

fn run_trial(
    config: &ExperimentConfig,
    graph: &Graph,
    id: &GraphIdentity,
    alpha: f64,
    n_known: u64,
    e: usize,
    trial: u64,
) -> anyhow::Result<ResultRow> {
    let eps = config.eps[e];
    let mut session = OracleSession::with_stream(graph, config.seed, trial_stream(e, trial));
    let start = Instant::now();
    let mut row = ResultRow {
        algorithm: config.algo.name(),
        epsilon: eps,
        trial,
        estimate: None,
        rel_error: None,
        in_range: false,
        terminated: false,
        iterations: 0,
        final_s: 0,
        final_tau: None,
        samples_total: 0,
        vertex_queries: 0,
        degree_queries: 0,
        neighbor_queries: 0,
        total_queries: 0,
        wall_ms: None,
    };
    match config.algo {
        Algo::Ers | Algo::ErsGen => {
            let cfg = EstimatorConfig {
                epsilon: eps,
                c: config.c,
                max_iterations: config.max_iterations,
                max_samples: config.max_samples,
            };
            let r = if config.algo == Algo::Ers {
                ers(&mut session, alpha, &cfg)?
            } else {
                ers_gen(&mut session, n_known, &cfg)?
            };
            row.estimate = r.estimate;
            row.rel_error = r.estimate.map(|x| (x - id.d).abs() / id.d);
            row.in_range = r.estimate.is_some_and(|x| within(x, id.d, eps));
            row.terminated = r.terminated;
            row.iterations = r.iterations;
            row.final_s = r.final_s;
            row.final_tau = Some(r.final_tau);
            row.samples_total = r.samples_total;
        }
        Algo::BirthdayN => {
            let r = estimate_n_birthday(&mut session, eps)?;
            let n = id.n as f64;
            let x = r.estimate as f64;
            row.estimate = Some(x);
            row.rel_error = Some((x - n).abs() / n);
            row.in_range = x >= (1.0 - eps) * n && x <= n / (1.0 - eps);
            row.terminated = true;
            row.samples_total = r.draws;
        }
    }
    let q = session.query_count();
    row.vertex_queries = q.vertex;
    row.degree_queries = q.degree;
    row.neighbor_queries = q.neighbor;
    row.total_queries = q.total();
    if config.timing {
        row.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(row)
}
