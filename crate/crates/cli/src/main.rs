use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use avgdeg_cli::{exit, output, run, validate_graph, Algo, ConfigFile, ExperimentConfig, Format, GraphSource};
use avgdeg_core::graph::DEFAULT_MAX_EXACT_N;
use avgdeg_core::io::write_edge_list;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "avgdeg", version, about = "Sublinear average-degree estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a trial campaign and write per-trial results.
    Run(RunArgs),
    /// Check the exact lemma and moment identities on one graph.
    Validate {
        /// Graph spec (e.g. `complete:5`) or edge-list path.
        #[arg(long)]
        graph: String,
        /// Largest n for which the arboricity is computed exactly.
        #[arg(long, default_value_t = DEFAULT_MAX_EXACT_N)]
        max_exact_n: usize,
    },
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with any of the options below; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graph spec `family:params[@seed]` or edge-list path.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum)]
    algo: Option<Algo>,
    /// Comma-separated epsilon grid.
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Arboricity bound for `ers` (default: the graph's certified bound).
    #[arg(long, conflicts_with = "n")]
    alpha: Option<f64>,
    /// Vertex count for `ers-gen` (default: the true n).
    #[arg(long)]
    n: Option<u64>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    workers: Option<usize>,
    /// Add a wall-time column (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    max_iterations: Option<u32>,
    #[arg(long)]
    max_samples: Option<u64>,
}

fn build_config(args: RunArgs) -> anyhow::Result<(ExperimentConfig, Option<PathBuf>, Format)> {
    let file = match &args.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let graph: GraphSource = args
        .graph
        .or(file.graph)
        .ok_or_else(|| anyhow!("--graph is required"))?
        .parse()?;
    let algo = args.algo.or(file.algo).ok_or_else(|| anyhow!("--algo is required"))?;
    let mut cfg = ExperimentConfig::new(graph, algo);
    if let Some(eps) = args.eps.or(file.eps) {
        cfg.eps = eps;
    }
    if let Some(c) = args.c.or(file.c) {
        cfg.c = c;
    }
    if let Some(t) = args.trials.or(file.trials) {
        cfg.trials = t;
    }
    if let Some(s) = args.seed.or(file.seed) {
        cfg.seed = s;
    }
    cfg.alpha = args.alpha.or(file.alpha);
    cfg.n = args.n.or(file.n);
    cfg.workers = args.workers.or(file.workers);
    cfg.timing = args.timing || file.timing.unwrap_or(false);
    if let Some(m) = args.max_iterations.or(file.max_iterations) {
        cfg.max_iterations = m;
    }
    if let Some(m) = args.max_samples.or(file.max_samples) {
        cfg.max_samples = m;
    }
    cfg.validate()?;
    let format = args.format.or(file.format).unwrap_or_default();
    Ok((cfg, args.out.or(file.out), format))
}

fn cmd_run(args: RunArgs) -> Result<u8, anyhow::Error> {
    let (cfg, out, format) = build_config(args)?;
    let report = run(&cfg)?;
    let sink: Box<dyn Write> = match &out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => output::write_csv(&report, sink, cfg.timing)?,
        Format::Json => output::write_json(&report, sink)?,
    }
    // Keep stdout clean for the data when no output file is given.
    if out.is_some() {
        output::print_summary(&report, io::stdout().lock())?;
    } else {
        output::print_summary(&report, io::stderr().lock())?;
    }
    Ok(if report.pass { exit::SUCCESS } else { exit::THRESHOLD_FAILURE })
}

fn cmd_validate(graph: &str, max_exact_n: usize) -> anyhow::Result<u8> {
    let loaded = graph.parse::<GraphSource>()?.load()?;
    let report = validate_graph(&loaded.graph, max_exact_n);
    println!("graph {} (n={}, m={})", loaded.identity.params, report.n, report.m);
    for c in &report.checks {
        println!("{c}");
    }
    Ok(if report.pass() { exit::SUCCESS } else { exit::THRESHOLD_FAILURE })
}

fn cmd_gen(graph: &str, out: &PathBuf) -> anyhow::Result<u8> {
    let loaded = graph.parse::<GraphSource>()?.load()?;
    write_edge_list(&loaded.graph, out)?;
    println!("{}", serde_json::to_string(&loaded.identity)?);
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Validate { graph, max_exact_n } => cmd_validate(&graph, max_exact_n),
        Command::Gen { graph, out } => cmd_gen(&graph, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::USAGE)
        }
    }
}
