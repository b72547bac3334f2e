use std::io::Write;

use crate::runner::{CampaignReport, ResultRow};

/// Column order of the results CSV (schema version 1). `wall_ms` is appended
/// only when timing is enabled, since it is the one nondeterministic field.
pub const CSV_COLUMNS: &[&str] = &[
    "family",
    "params",
    "n",
    "m",
    "d",
    "alpha",
    "algorithm",
    "epsilon",
    "trial",
    "estimate",
    "rel_error",
    "in_range",
    "terminated",
    "iterations",
    "final_s",
    "final_tau",
    "samples_total",
    "vertex_queries",
    "degree_queries",
    "neighbor_queries",
    "total_queries",
];

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(report: &CampaignReport, out: W, timing: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = CSV_COLUMNS.to_vec();
    if timing {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    let g = &report.graph;
    for r in &report.rows {
        let mut rec = vec![
            g.family.clone(),
            g.params.clone(),
            g.n.to_string(),
            g.m.to_string(),
            g.d.to_string(),
            g.alpha.to_string(),
        ];
        rec.extend(row_fields(r));
        if timing {
            rec.push(opt(r.wall_ms));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn row_fields(r: &ResultRow) -> Vec<String> {
    vec![
        r.algorithm.to_string(),
        r.epsilon.to_string(),
        r.trial.to_string(),
        opt(r.estimate),
        opt(r.rel_error),
        r.in_range.to_string(),
        r.terminated.to_string(),
        r.iterations.to_string(),
        r.final_s.to_string(),
        opt(r.final_tau),
        r.samples_total.to_string(),
        r.vertex_queries.to_string(),
        r.degree_queries.to_string(),
        r.neighbor_queries.to_string(),
        r.total_queries.to_string(),
    ]
}

pub fn write_json<W: Write>(report: &CampaignReport, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}

pub fn print_summary<W: Write>(report: &CampaignReport, mut out: W) -> std::io::Result<()> {
    let g = &report.graph;
    writeln!(
        out,
        "graph {} (n={}, m={}, d={}, alpha={} [{}]), algorithm {}, c={}",
        g.params, g.n, g.m, g.d_exact, g.alpha, g.alpha_provenance, report.algorithm, report.c
    )?;
    writeln!(
        out,
        "{:>8} {:>7} {:>9} {:>10} {:>12} {:>12} {:>12} {:>12}  result",
        "eps", "trials", "success", "threshold", "q_min", "q_median", "q_max", "ratio_med"
    )?;
    for s in &report.summaries {
        writeln!(
            out,
            "{:>8} {:>7} {:>9.4} {:>10.4} {:>12} {:>12} {:>12} {:>12.4}  {}",
            s.epsilon,
            s.trials,
            s.success_rate,
            s.threshold,
            s.queries_min,
            s.queries_median,
            s.queries_max,
            s.scaling_ratio_median,
            if s.pass { "PASS" } else { "FAIL" }
        )?;
        if s.capped > 0 {
            writeln!(out, "         {} run(s) hit the iteration or sample cap", s.capped)?;
        }
    }
    if let Some(sc) = &report.scaling {
        writeln!(
            out,
            "scaling {}: median spread {:.3} over the grid (limit {}) {}",
            sc.ratio,
            sc.spread,
            sc.limit,
            if sc.pass { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(())
}
