//! Command-line surface. One binary, five subcommands: `gen` writes graphs
//! and hardware topologies as edge lists, `embed` runs one embedder on one
//! instance, `run` drives a config through the experiment runner, `report`
//! renders results into CSV tables, and `faults` applies node removals to a
//! topology.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 I/O error, 3 embedding
//! failure (`embed` only).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::algorithms::{embed, EmbedParams, Status, Target};
use crate::analysis::{read_results_lenient, report};
use crate::embedding::{metrics, validate, Embedding};
use crate::faults::{inject_faults, FaultSpec};
use crate::gen::GraphSpec;
use crate::graph::Graph;
use crate::runner::{
    resolve_config, resolve_workers, resume, run, Overrides, RunOptions, RunSummary,
    RunnerError, RESULTS_FILE,
};
use crate::topology::TopologyDescriptor;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_EMBED_FAILED: i32 = 3;

#[derive(Debug)]
enum CliError {
    /// Bad flags, bad parameters, bad config: exit 1.
    Usage(String),
    /// Filesystem trouble: exit 2.
    Io(String),
    /// The embedder returned a non-success status: exit 3.
    EmbedFailed,
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::EmbedFailed => EXIT_EMBED_FAILED,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

#[derive(Parser, Debug)]
#[command(
    name = "minorbench",
    version,
    about = "Minor-embedding benchmark toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a source graph or hardware topology as an edge list
    Gen(GenArgs),
    /// Embed one source graph into one target and print the result as JSON
    Embed(EmbedArgs),
    /// Execute an experiment config (or resume an interrupted run)
    Run(RunArgs),
    /// Aggregate a results file into CSV tables
    Report(ReportArgs),
    /// Remove nodes from a topology and export what remains
    Faults(FaultsArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Hardware topology kind: chimera, pegasus, or zephyr
    #[arg(long, conflicts_with = "family")]
    topology: Option<String>,
    /// Source-graph family (complete, path, erdos_renyi, ...)
    #[arg(long)]
    family: Option<String>,
    /// Rows (chimera) or size (pegasus, zephyr); edges per node (barabasi_albert)
    #[arg(long)]
    m: Option<u32>,
    /// Columns (chimera) or node count (most families)
    #[arg(long)]
    n: Option<u32>,
    /// Shore size (chimera, zephyr)
    #[arg(long)]
    t: Option<u32>,
    /// Degree (d_regular) or dimension (hypercube)
    #[arg(long)]
    d: Option<u32>,
    /// Neighbors per side (watts_strogatz)
    #[arg(long)]
    k: Option<u32>,
    /// Shore sizes (complete_bipartite)
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    /// Parts (turan) or branching factor (balanced_tree)
    #[arg(long)]
    r: Option<u32>,
    /// Lattice width and height
    #[arg(long)]
    w: Option<u32>,
    #[arg(long)]
    h: Option<u32>,
    /// Edge probability (erdos_renyi)
    #[arg(long)]
    p: Option<f64>,
    /// Rewiring probability (watts_strogatz)
    #[arg(long)]
    beta: Option<f64>,
    /// Within-block edge probability (stochastic_block)
    #[arg(long)]
    pin: Option<f64>,
    /// Between-block edge probability (stochastic_block)
    #[arg(long)]
    pout: Option<f64>,
    /// Block sizes (stochastic_block), comma separated
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<u32>>,
    /// Circulant offsets, comma separated
    #[arg(long, value_delimiter = ',')]
    offsets: Option<Vec<u32>>,
    /// Target topology id for planted / native_subgraph, e.g. chimera(4,4,4)
    #[arg(long)]
    target: Option<String>,
    /// Chain count (planted)
    #[arg(long)]
    chains: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print "<nodes> <edges>" instead of the edge list
    #[arg(long)]
    stats: bool,
    /// Write the edge list here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    /// Source graph edge-list file
    #[arg(long)]
    source: PathBuf,
    /// Target topology id, e.g. chimera(16,16,4)
    #[arg(long, conflicts_with = "target")]
    topology: Option<String>,
    /// Target edge-list file (an arbitrary hardware graph)
    #[arg(long)]
    target: Option<PathBuf>,
    /// Algorithm id: clique, pathfinder, pssa (tunable: pssa{alpha:0.9})
    #[arg(long)]
    algorithm: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = 30.0)]
    timeout: f64,
    /// Remove ⌊N·f⌋ target nodes before embedding
    #[arg(long, conflicts_with = "fault_pattern")]
    fault_rate: Option<f64>,
    /// Seed for the fault draw (defaults to --seed)
    #[arg(long)]
    fault_seed: Option<u64>,
    /// Remove exactly the nodes listed in this file
    #[arg(long)]
    fault_pattern: Option<PathBuf>,
    /// Re-check the returned embedding against the validator
    #[arg(long)]
    validate: bool,
    /// Write the result JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Experiment config (YAML); omit when resuming
    config: Option<PathBuf>,
    /// Resume an interrupted run from its output directory
    #[arg(long, conflicts_with = "config")]
    resume: Option<PathBuf>,
    /// Worker threads (default: MINORBENCH_WORKERS, then all cores)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    master_seed: Option<u64>,
    #[arg(long)]
    timeout_s: Option<f64>,
    /// Trials per (graph, topology, fault, algorithm) cell
    #[arg(long)]
    trials: Option<u32>,
    /// Output directory (default: runs/<name>)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Results file, or a run directory containing results.jsonl
    results: PathBuf,
    /// Output directory for the CSV tables (default: <run dir>/report)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FaultsArgs {
    /// Topology id, e.g. chimera(16,16,4)
    #[arg(long)]
    topology: String,
    /// Fraction of nodes to remove (exactly ⌊N·f⌋)
    #[arg(long, conflicts_with = "pattern")]
    f: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// File listing node ids to remove, one per line
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Print "<nodes> <edges> <removed>" instead of the edge list
    #[arg(long)]
    stats: bool,
    /// Write the faulted edge list here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the removed node ids, one per line
    #[arg(long)]
    emit_pattern: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the selected command,
/// returning the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Embed(args) => cmd_embed(args),
        Command::Run(args) => cmd_run(args),
        Command::Report(args) => cmd_report(args),
        Command::Faults(args) => cmd_faults(args),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            match &e {
                CliError::Usage(m) | CliError::Io(m) => eprintln!("error: {m}"),
                CliError::EmbedFailed => {}
            }
            e.code()
        }
    }
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("{family} requires {flag}")))
}

fn parse_topology(id: &str) -> Result<TopologyDescriptor, CliError> {
    id.parse::<TopologyDescriptor>().map_err(|e| usage(e.to_string()))
}

fn graph_spec_from_flags(args: &GenArgs) -> Result<GraphSpec, CliError> {
    let family = args.family.as_deref().expect("caller checked");
    let f = family;
    let spec = match family {
        "erdos_renyi" => GraphSpec::ErdosRenyi {
            n: need(args.n, "--n", f)?,
            p: need(args.p, "--p", f)?,
            seed: args.seed,
        },
        "watts_strogatz" => GraphSpec::WattsStrogatz {
            n: need(args.n, "--n", f)?,
            k: need(args.k, "--k", f)?,
            beta: need(args.beta, "--beta", f)?,
            seed: args.seed,
        },
        "barabasi_albert" => GraphSpec::BarabasiAlbert {
            n: need(args.n, "--n", f)?,
            m: need(args.m, "--m", f)?,
            seed: args.seed,
        },
        "d_regular" => GraphSpec::DRegular {
            n: need(args.n, "--n", f)?,
            d: need(args.d, "--d", f)?,
            seed: args.seed,
        },
        "stochastic_block" => {
            let sizes = need(args.sizes.clone(), "--sizes", f)?;
            let pin = need(args.pin, "--pin", f)?;
            let pout = need(args.pout, "--pout", f)?;
            let p = (0..sizes.len())
                .map(|i| {
                    (0..sizes.len()).map(|j| if i == j { pin } else { pout }).collect()
                })
                .collect();
            GraphSpec::StochasticBlock { sizes, p, seed: args.seed }
        }
        "complete" => GraphSpec::Complete { n: need(args.n, "--n", f)? },
        "complete_bipartite" => GraphSpec::CompleteBipartite {
            a: need(args.a, "--a", f)?,
            b: need(args.b, "--b", f)?,
        },
        "turan" => GraphSpec::Turan { n: need(args.n, "--n", f)?, r: need(args.r, "--r", f)? },
        "circulant" => GraphSpec::Circulant {
            n: need(args.n, "--n", f)?,
            offsets: need(args.offsets.clone(), "--offsets", f)?,
        },
        "hypercube" => GraphSpec::Hypercube { d: need(args.d, "--d", f)? },
        "grid" => GraphSpec::Grid { w: need(args.w, "--w", f)?, h: need(args.h, "--h", f)? },
        "triangular" => GraphSpec::Triangular {
            w: need(args.w, "--w", f)?,
            h: need(args.h, "--h", f)?,
        },
        "honeycomb" => GraphSpec::Honeycomb {
            w: need(args.w, "--w", f)?,
            h: need(args.h, "--h", f)?,
        },
        "kagome" => GraphSpec::Kagome { w: need(args.w, "--w", f)?, h: need(args.h, "--h", f)? },
        "king" => GraphSpec::King { w: need(args.w, "--w", f)?, h: need(args.h, "--h", f)? },
        "path" => GraphSpec::Path { n: need(args.n, "--n", f)? },
        "cycle" => GraphSpec::Cycle { n: need(args.n, "--n", f)? },
        "star" => GraphSpec::Star { n: need(args.n, "--n", f)? },
        "wheel" => GraphSpec::Wheel { n: need(args.n, "--n", f)? },
        "balanced_tree" => GraphSpec::BalancedTree {
            r: need(args.r, "--r", f)?,
            h: need(args.h, "--h", f)?,
        },
        "planted" => GraphSpec::Planted {
            target: parse_topology(&need(args.target.clone(), "--target", f)?)?,
            chains: need(args.chains, "--chains", f)?,
            seed: args.seed,
        },
        "native_subgraph" => GraphSpec::NativeSubgraph {
            target: parse_topology(&need(args.target.clone(), "--target", f)?)?,
            n: need(args.n, "--n", f)?,
            seed: args.seed,
        },
        other => return Err(usage(format!("unknown family `{other}`"))),
    };
    Ok(spec)
}

fn emit_graph(graph: &Graph, stats: bool, out: Option<&Path>) -> Result<(), CliError> {
    if stats {
        println!("{} {}", graph.node_count(), graph.edge_count());
    }
    if let Some(path) = out {
        write_file(path, &graph.to_edge_list())?;
    } else if !stats {
        print!("{}", graph.to_edge_list());
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let graph = if let Some(kind) = args.topology.as_deref() {
        let descriptor = match kind {
            "chimera" => TopologyDescriptor::Chimera {
                m: need(args.m, "--m", kind)?,
                n: need(args.n, "--n", kind)?,
                t: need(args.t, "--t", kind)?,
            },
            "pegasus" => TopologyDescriptor::Pegasus { m: need(args.m, "--m", kind)? },
            "zephyr" => TopologyDescriptor::Zephyr {
                m: need(args.m, "--m", kind)?,
                t: need(args.t, "--t", kind)?,
            },
            other => return Err(usage(format!("unknown topology `{other}`"))),
        };
        descriptor.build().map_err(|e| usage(e.to_string()))?
    } else if args.family.is_some() {
        let spec = graph_spec_from_flags(&args)?;
        spec.generate().map_err(|e| usage(e.to_string()))?
    } else {
        return Err(usage("pass either --topology or --family"));
    };
    emit_graph(&graph, args.stats, args.out.as_deref())
}

/// What `embed` prints: the runner's per-trial fields minus scheduling
/// context, plus the embedding itself.
#[derive(Debug, Serialize)]
struct EmbedOutput {
    status: Status,
    algorithm: String,
    algorithm_version: String,
    seed: u64,
    wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    qubit_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_chain_length: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean_chain_length: Option<f64>,
    counters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validated: Option<bool>,
    embedding: Embedding,
}

fn cmd_embed(args: EmbedArgs) -> Result<(), CliError> {
    let source = Graph::from_edge_list(&read_file(&args.source)?)
        .map_err(|e| usage(format!("{}: {e}", args.source.display())))?;

    let descriptor = args.topology.as_deref().map(parse_topology).transpose()?;
    let pristine = match (&descriptor, &args.target) {
        (Some(d), None) => d.build().map_err(|e| usage(e.to_string()))?,
        (None, Some(path)) => Graph::from_edge_list(&read_file(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        _ => return Err(usage("pass exactly one of --topology or --target")),
    };

    let fault = if let Some(f) = args.fault_rate {
        Some(FaultSpec::Rate { f, seed: args.fault_seed.unwrap_or(args.seed) })
    } else if let Some(path) = &args.fault_pattern {
        Some(
            FaultSpec::pattern_from_text(&read_file(path)?)
                .map_err(|e| usage(e.to_string()))?,
        )
    } else {
        None
    };
    let target_graph = match &fault {
        Some(spec) => inject_faults(&pristine, spec).map_err(|e| usage(e.to_string()))?,
        None => pristine,
    };
    // faulted hardware keeps its descriptor: template embedders see the
    // intended topology and must cope with the holes
    let target = Target::new(&target_graph, descriptor.as_ref());

    let params = EmbedParams::new(args.seed, args.timeout);
    let started = Instant::now();
    let result = embed(&args.algorithm, &source, &target, &params)
        .map_err(|e| usage(e.to_string()))?;
    let wall_time_s = started.elapsed().as_secs_f64();

    let mut status = result.status;
    let mut validated = None;
    if args.validate && status == Status::Success {
        let report = validate(&source, &target_graph, &result.embedding);
        validated = Some(report.valid());
        if !report.valid() {
            status = Status::Failure;
        }
    }
    let m = (status == Status::Success).then(|| metrics(&result.embedding));
    let output = EmbedOutput {
        status,
        algorithm: args.algorithm.clone(),
        algorithm_version: result.version,
        seed: args.seed,
        wall_time_s,
        qubit_count: m.map(|m| m.qubit_count),
        max_chain_length: m.map(|m| m.max_chain_length),
        mean_chain_length: m.map(|m| m.mean_chain_length),
        counters: result.counters,
        validated,
        embedding: result.embedding,
    };
    let json = serde_json::to_string_pretty(&output).expect("output serializes");
    match &args.out {
        Some(path) => write_file(path, &json)?,
        None => println!("{json}"),
    }
    if status == Status::Success {
        Ok(())
    } else {
        Err(CliError::EmbedFailed)
    }
}

fn runner_error(e: RunnerError) -> CliError {
    match e {
        RunnerError::Io { .. } => CliError::Io(e.to_string()),
        _ => usage(e.to_string()),
    }
}

fn print_run_summary(dir: &Path, summary: &RunSummary) {
    println!(
        "{}: {} tasks, {} already complete, {} executed",
        dir.display(),
        summary.tasks_total,
        summary.already_complete,
        summary.executed
    );
    for (status, count) in &summary.statuses {
        println!("  {status}: {count}");
    }
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let opts = RunOptions { workers: resolve_workers(args.workers), max_trials: None };
    if let Some(dir) = &args.resume {
        if args.master_seed.is_some()
            || args.timeout_s.is_some()
            || args.trials.is_some()
            || args.out.is_some()
        {
            return Err(usage("--resume replays the stored config; overrides only apply to fresh runs"));
        }
        let (config, summary) = resume(dir, &opts).map_err(runner_error)?;
        print_run_summary(&config.output_dir, &summary);
        return Ok(());
    }
    let Some(config_path) = &args.config else {
        return Err(usage("pass a config file, or --resume <dir>"));
    };
    let text = read_file(config_path)?;
    let config_dir = config_path.parent().unwrap_or(Path::new("."));
    let overrides = Overrides {
        master_seed: args.master_seed,
        timeout_s: args.timeout_s,
        trials_per_pair: args.trials,
        output_dir: args.out.clone(),
    };
    let config =
        resolve_config(&text, config_dir, &overrides).map_err(|e| usage(e.to_string()))?;
    let summary = run(&config, &opts).map_err(runner_error)?;
    print_run_summary(&config.output_dir, &summary);
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let results = if args.results.is_dir() {
        args.results.join(RESULTS_FILE)
    } else {
        args.results.clone()
    };
    let out = args.out.clone().unwrap_or_else(|| {
        results.parent().unwrap_or(Path::new(".")).join("report")
    });
    let (records, warnings) =
        read_results_lenient(&results).map_err(|e| CliError::Io(e.to_string()))?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    let summary = report(&records, &out).map_err(|e| CliError::Io(e.to_string()))?;
    println!(
        "{} records, {} skipped, {} tables in {}",
        summary.records,
        warnings.len(),
        summary.files.len(),
        out.display()
    );
    Ok(())
}

fn cmd_faults(args: FaultsArgs) -> Result<(), CliError> {
    let descriptor = parse_topology(&args.topology)?;
    let pristine = descriptor.build().map_err(|e| usage(e.to_string()))?;
    let spec = if let Some(f) = args.f {
        FaultSpec::Rate { f, seed: args.seed }
    } else if let Some(path) = &args.pattern {
        FaultSpec::pattern_from_text(&read_file(path)?).map_err(|e| usage(e.to_string()))?
    } else {
        return Err(usage("pass --f or --pattern"));
    };
    let faulted = inject_faults(&pristine, &spec).map_err(|e| usage(e.to_string()))?;

    if let Some(path) = &args.emit_pattern {
        let removed: Vec<String> = pristine
            .nodes()
            .iter()
            .filter(|v| !faulted.has_node(**v))
            .map(|v| v.to_string())
            .collect();
        let mut text = removed.join("\n");
        text.push('\n');
        write_file(path, &text)?;
    }
    if args.stats {
        let removed = pristine.node_count() - faulted.node_count();
        println!("{} {} {}", faulted.node_count(), faulted.edge_count(), removed);
    }
    if let Some(path) = &args.out {
        write_file(path, &faulted.to_edge_list())?;
    } else if !args.stats {
        print!("{}", faulted.to_edge_list());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen_args(extra: &[&str]) -> GenArgs {
        let mut argv = vec!["minorbench", "gen"];
        argv.extend(extra);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Gen(args) => args,
            other => panic!("expected gen, parsed {other:?}"),
        }
    }

    #[test]
    fn family_flags_cover_every_family() {
        let cases: &[(&[&str], &str)] = &[
            (&["--family", "erdos_renyi", "--n", "10", "--p", "0.5"], "erdos_renyi"),
            (
                &["--family", "watts_strogatz", "--n", "10", "--k", "4", "--beta", "0.1"],
                "watts_strogatz",
            ),
            (&["--family", "barabasi_albert", "--n", "10", "--m", "2"], "barabasi_albert"),
            (&["--family", "d_regular", "--n", "10", "--d", "3"], "d_regular"),
            (
                &[
                    "--family",
                    "stochastic_block",
                    "--sizes",
                    "5,5",
                    "--pin",
                    "0.9",
                    "--pout",
                    "0.1",
                ],
                "stochastic_block",
            ),
            (&["--family", "complete", "--n", "5"], "complete"),
            (&["--family", "complete_bipartite", "--a", "3", "--b", "4"], "complete_bipartite"),
            (&["--family", "turan", "--n", "9", "--r", "3"], "turan"),
            (&["--family", "circulant", "--n", "10", "--offsets", "1,2"], "circulant"),
            (&["--family", "hypercube", "--d", "3"], "hypercube"),
            (&["--family", "grid", "--w", "3", "--h", "4"], "grid"),
            (&["--family", "triangular", "--w", "3", "--h", "3"], "triangular"),
            (&["--family", "honeycomb", "--w", "2", "--h", "2"], "honeycomb"),
            (&["--family", "kagome", "--w", "2", "--h", "2"], "kagome"),
            (&["--family", "king", "--w", "3", "--h", "3"], "king"),
            (&["--family", "path", "--n", "5"], "path"),
            (&["--family", "cycle", "--n", "5"], "cycle"),
            (&["--family", "star", "--n", "5"], "star"),
            (&["--family", "wheel", "--n", "5"], "wheel"),
            (&["--family", "balanced_tree", "--r", "2", "--h", "3"], "balanced_tree"),
            (
                &["--family", "planted", "--target", "chimera(2,2,4)", "--chains", "4"],
                "planted",
            ),
            (
                &["--family", "native_subgraph", "--target", "chimera(2,2,4)", "--n", "8"],
                "native_subgraph",
            ),
        ];
        for (argv, family) in cases {
            let spec = graph_spec_from_flags(&gen_args(argv)).unwrap();
            assert_eq!(spec.family(), *family);
            spec.generate().unwrap();
        }
    }

    #[test]
    fn missing_required_flags_name_the_flag() {
        let err = graph_spec_from_flags(&gen_args(&["--family", "erdos_renyi", "--n", "10"]));
        match err {
            Err(CliError::Usage(m)) => assert!(m.contains("--p"), "{m}"),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn exit_codes_partition_the_error_space() {
        assert_eq!(usage("x").code(), EXIT_USAGE);
        assert_eq!(CliError::Io("x".into()).code(), EXIT_IO);
        assert_eq!(CliError::EmbedFailed.code(), EXIT_EMBED_FAILED);
    }

    #[test]
    fn unknown_flags_are_parse_errors() {
        assert!(Cli::try_parse_from(["minorbench", "gen", "--nope"]).is_err());
        assert!(Cli::try_parse_from(["minorbench", "bogus"]).is_err());
    }
}
