//! The `spanex` command: batch experiments over generated or loaded
//! instances, written as CSV or JSON reports.

pub mod config;
pub mod explore;
pub mod report;
pub mod spanner;
pub mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use spanex_core::instances::format_graph;
use spanex_core::{EdgeId, Instance, InstanceSpec, Rational};

use config::{parse_instance_arg, Algorithm, Checks, DeltaExpr, ExperimentConfig, Format};
use report::{write_rows, Verdicts};

#[derive(Debug, Parser)]
#[command(name = "spanex", version, about = "Online graph exploration and greedy spanner experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run exploration algorithms and report cost ratios.
    Explore(RunArgs),
    /// Build greedy spanners and report lightness.
    Spanner(RunArgs),
    /// Run every verification over a seed matrix and summarize violations.
    Verify(VerifyArgs),
    /// Write an instance as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Experiment configuration (JSON).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Instance spec as inline JSON, a .json file, or an edge-list file. Repeatable.
    #[arg(long = "instance", value_name = "JSON|FILE")]
    pub instances: Vec<String>,
    /// Blocking parameter, `p/q` or `log2n`. Repeatable.
    #[arg(long = "delta", value_name = "P/Q|log2n")]
    pub deltas: Vec<DeltaExpr>,
    /// Also run the nearest-neighbour baseline.
    #[arg(long)]
    pub nearest: bool,
    /// Spanner parameter `p/q`. Repeatable.
    #[arg(long = "epsilon", value_name = "P/Q")]
    pub epsilons: Vec<Rational>,
    /// Overrides the seed of every instance.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Enforce every verification, including the slow ones.
    #[arg(long)]
    pub strict: bool,
    /// Directory for per-run traversal logs (explore only).
    #[arg(long, value_name = "DIR")]
    pub logs: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Remove this edge from every spanner that contains it before checking.
    #[arg(long, value_name = "EDGE")]
    pub drop_edge: Option<EdgeId>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long = "instance", value_name = "JSON|FILE")]
    pub instance: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Edge list when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Runs a command; `Ok(false)` means an enforced check failed.
pub fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Explore(args) => {
            let config = resolve(&args)?;
            with_pool(config.parallelism, || cmd_explore(&config, args.logs.as_deref()))
        }
        Command::Spanner(args) => {
            let config = resolve(&args)?;
            with_pool(config.parallelism, || cmd_spanner(&config))
        }
        Command::Verify(args) => {
            let mut config = resolve(&args.run)?;
            config.checks = Checks::all();
            with_pool(config.parallelism, || cmd_verify(&config, args.run.seed.unwrap_or(0), args.drop_edge))
        }
        Command::Gen(args) => cmd_gen(&args),
    }
}

/// Merges the config file (if any) with the flags.
pub fn resolve(args: &RunArgs) -> anyhow::Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    for arg in &args.instances {
        config.instances.extend(parse_instance_arg(arg)?);
    }
    for &delta in &args.deltas {
        config.algorithms.push(Algorithm::Blocking { delta, tie_break: None });
    }
    if args.nearest {
        config.algorithms.push(Algorithm::NearestNeighbor);
    }
    for &eps in &args.epsilons {
        if !eps.is_positive() {
            bail!("epsilon must be positive, got {eps}");
        }
        config.epsilons.push(eps);
    }
    if let Some(seed) = args.seed {
        for spec in &mut config.instances {
            spec.seed = seed;
        }
    }
    if let Some(out) = &args.out {
        config.output.path = Some(out.clone());
    }
    if let Some(format) = args.format {
        config.output.format = format;
    }
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        config.parallelism = Some(jobs);
    }
    if args.strict {
        config.checks = Checks::all();
    }
    Ok(config)
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(e) => {
            log::warn!("falling back to the global thread pool: {e}");
            f()
        }
    }
}

fn build_all(specs: &[InstanceSpec]) -> anyhow::Result<Vec<Instance>> {
    specs.par_iter().map(|s| s.build().with_context(|| format!("building instance {}", s.id()))).collect()
}

fn cmd_explore(config: &ExperimentConfig, logs: Option<&Path>) -> anyhow::Result<bool> {
    if config.instances.is_empty() || config.algorithms.is_empty() {
        bail!("explore needs at least one instance and one algorithm (--delta or --nearest)");
    }
    let instances = build_all(&config.instances)?;
    let jobs: Vec<(&Instance, &Algorithm)> =
        instances.iter().flat_map(|i| config.algorithms.iter().map(move |a| (i, a))).collect();
    let mut runs = jobs
        .par_iter()
        .map(|&(inst, alg)| {
            explore::explore(inst, alg, &config.checks)
                .with_context(|| format!("{} on {}", alg.name(), inst.id))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    runs.sort_by(|a, b| {
        (&a.row.instance, a.row.algorithm, a.row.delta).cmp(&(&b.row.instance, b.row.algorithm, b.row.delta))
    });
    if let Some(dir) = logs {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, run) in runs.iter().enumerate() {
            let path = dir.join(format!("{i:04}-{}.json", run.row.algorithm));
            let text = serde_json::to_string_pretty(&run.record())?;
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let rows: Vec<_> = runs.into_iter().map(|r| r.row).collect();
    let passed = rows.iter().all(|r| r.pass);
    write_rows("explore", &rows, passed, config.output.format, config.output.path.as_deref())?;
    Ok(passed)
}

fn cmd_spanner(config: &ExperimentConfig) -> anyhow::Result<bool> {
    if config.instances.is_empty() || config.epsilons.is_empty() {
        bail!("spanner needs at least one instance and one --epsilon");
    }
    let instances = build_all(&config.instances)?;
    let rows = spanner_rows(&instances, &config.epsilons, None, &config.checks)?;
    let passed = rows.iter().all(|r| r.pass);
    write_rows("spanner", &rows, passed, config.output.format, config.output.path.as_deref())?;
    Ok(passed)
}

fn spanner_rows(
    instances: &[Instance],
    epsilons: &[Rational],
    drop_edge: Option<EdgeId>,
    checks: &Checks,
) -> anyhow::Result<Vec<spanner::SpannerRow>> {
    let jobs: Vec<(&Instance, Rational)> = instances.iter().flat_map(|i| epsilons.iter().map(move |&e| (i, e))).collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(inst, eps)| {
            spanner::spanner(inst, eps, drop_edge, checks).with_context(|| format!("spanner on {} at {eps}", inst.id))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    rows.sort_by(|a, b| (&a.instance, a.epsilon).cmp(&(&b.instance, b.epsilon)));
    Ok(rows)
}

fn cmd_verify(config: &ExperimentConfig, seed: u64, drop_edge: Option<EdgeId>) -> anyhow::Result<bool> {
    let specs = if config.instances.is_empty() { verify::default_matrix(seed) } else { config.instances.clone() };
    let algorithms = if config.algorithms.is_empty() { verify::default_algorithms() } else { config.algorithms.clone() };
    let epsilons = if config.epsilons.is_empty() { verify::default_epsilons() } else { config.epsilons.clone() };
    let instances = build_all(&specs)?;

    let jobs: Vec<(&Instance, &Algorithm)> =
        instances.iter().flat_map(|i| algorithms.iter().map(move |a| (i, a))).collect();
    let mut explore_rows = jobs
        .par_iter()
        .map(|&(inst, alg)| {
            explore::explore(inst, alg, &config.checks)
                .map(|r| r.row)
                .with_context(|| format!("{} on {}", alg.name(), inst.id))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    explore_rows.sort_by(|a, b| (&a.instance, a.algorithm, a.delta).cmp(&(&b.instance, b.algorithm, b.delta)));
    let spanner_rows = spanner_rows(&instances, &epsilons, drop_edge, &config.checks)?;
    let mut tsp = instances
        .par_iter()
        .map(|inst| Ok((inst.id.clone(), verify::tsp_agreement(inst)?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    tsp.sort_by(|a, b| a.0.cmp(&b.0));

    let summary = verify::summarize(&explore_rows, &spanner_rows, &tsp);
    let passed = summary.iter().all(|r| r.failed == 0)
        && explore_rows.iter().all(|r| r.passes(&config.checks))
        && spanner_rows.iter().all(|r| r.passes(&config.checks));
    for row in summary.iter().filter(|r| r.failed > 0) {
        log::error!("{}: {} of {} runs failed, first: {}", row.check, row.failed, row.runs, row.first_failure);
    }
    write_rows("verify", &summary, passed, config.output.format, config.output.path.as_deref())?;
    Ok(passed)
}

fn cmd_gen(args: &GenArgs) -> anyhow::Result<bool> {
    let mut specs = parse_instance_arg(&args.instance)?;
    if specs.len() != 1 {
        bail!("gen takes exactly one instance, got {}", specs.len());
    }
    let mut spec = specs.remove(0);
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let inst = spec.build().with_context(|| format!("building instance {}", spec.id()))?;
    let g = &inst.graph;
    let text = match args.format {
        None => format!("# {}\n{}", inst.id, format_graph(g)),
        Some(Format::Json) => {
            let edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
            let doc = serde_json::json!({
                "id": inst.id,
                "spec": inst.spec,
                "n": g.vertex_count(),
                "m": g.edge_count(),
                "start": inst.start,
                "warnings": inst.warnings,
                "edges": edges,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["u", "v", "weight"])?;
            for e in g.edges() {
                w.write_record([e.u.to_string(), e.v.to_string(), e.weight.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}
