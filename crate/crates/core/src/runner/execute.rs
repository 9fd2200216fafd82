//! Task generation, parallel execution, and result persistence.
//!
//! A run expands its config into a deterministic task list, executes tasks on
//! a worker pool, and appends one JSON record per trial to `results.jsonl`.
//! Records are written strictly in task order through a reorder buffer, so the
//! results file is always a prefix of the same byte sequence no matter how
//! many workers ran or how often the run was interrupted. Trial seeds derive
//! from trial keys, never from scheduling, for the same reason.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithms::{embed, Status, Target};
use crate::algorithms::EmbedParams;
use crate::embedding::{metrics, validate, Embedding};
use crate::faults::inject_faults;
use crate::graph::Graph;
use crate::rng::fnv1a;
use crate::topology::TopologyDescriptor;

use super::config::{ConfigError, ExperimentConfig};

pub const RESOLVED_CONFIG_FILE: &str = "experiment_resolved.yaml";
pub const RESULTS_FILE: &str = "results.jsonl";
pub const CHECKPOINT_FILE: &str = "checkpoint.json";

/// Embeddings at most this many qubits are stored inline in the record;
/// larger ones go to `embeddings/task<index>.json` next to the results.
pub const EMBED_INLINE_MAX_QUBITS: u64 = 10_000;

/// Checkpoint after this many newly written records.
const CHECKPOINT_EVERY: usize = 16;

#[derive(Debug, Error)]
pub enum RunnerError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot build `{id}`: {message}")]
    Build { id: String, message: String },
    #[error(
        "run state in `{dir}` is inconsistent: {message}; \
         refusing to guess, start over in a fresh output directory"
    )]
    CorruptState { dir: PathBuf, message: String },
    #[error("I/O failure while {context}: {source}")]
    Io { context: String, source: std::io::Error },
}

fn io_err(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> RunnerError {
    let context = context.into();
    move |source| RunnerError::Io { context, source }
}

/// Identity of one trial. Its canonical string drives both seeding and
/// resume bookkeeping, so it must never depend on scheduling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialKey {
    pub graph_id: String,
    pub topology: String,
    pub fault: String,
    pub algorithm: String,
    pub trial: u32,
}

impl TrialKey {
    pub fn canonical(&self) -> String {
        format!(
            "{}|{}|{}|{}|{}",
            self.graph_id, self.topology, self.algorithm, self.fault, self.trial
        )
    }
}

/// Trial seed: a stable hash of the master seed and the trial identity.
/// Reordering the task list or changing worker counts cannot change it.
pub fn derive_trial_seed(master_seed: u64, key: &TrialKey) -> u64 {
    let bytes = master_seed.to_le_bytes().into_iter().chain(key.canonical().into_bytes());
    fnv1a(bytes)
}

/// One unit of work: indices into the config's lists plus the trial identity.
#[derive(Debug, Clone)]
pub struct Task {
    pub index: usize,
    pub key: TrialKey,
    pub graph: usize,
    pub topology: usize,
    pub fault: usize,
    pub algorithm: usize,
}

/// Graphs and hosts built once per run and shared read-only by all workers.
pub struct Catalog {
    /// Parallel to `config.graphs`.
    pub graphs: Vec<Arc<Graph>>,
    pub categories: Vec<&'static str>,
    /// `hosts[t][f]`: topology `t` with fault entry `f` applied.
    pub hosts: Vec<Vec<Arc<Graph>>>,
    pub descriptors: Vec<TopologyDescriptor>,
}

pub fn build_catalog(config: &ExperimentConfig) -> Result<Catalog, RunnerError> {
    let mut graphs = Vec::with_capacity(config.graphs.len());
    let mut categories = Vec::with_capacity(config.graphs.len());
    for spec in &config.graphs {
        let graph = spec
            .generate()
            .map_err(|e| RunnerError::Build { id: spec.id(), message: e.to_string() })?;
        graphs.push(Arc::new(graph));
        categories.push(spec.family());
    }

    let mut hosts = Vec::with_capacity(config.topologies.len());
    for desc in &config.topologies {
        let base = desc
            .build()
            .map_err(|e| RunnerError::Build { id: desc.to_string(), message: e.to_string() })?;
        let mut per_fault = Vec::with_capacity(config.faults.len());
        for entry in &config.faults {
            let spec = entry
                .to_fault_spec()
                .map_err(|message| RunnerError::Build { id: entry.id(), message })?;
            let host = inject_faults(&base, &spec)
                .map_err(|e| RunnerError::Build { id: entry.id(), message: e.to_string() })?;
            per_fault.push(Arc::new(host));
        }
        hosts.push(per_fault);
    }

    Ok(Catalog { graphs, categories, hosts, descriptors: config.topologies.clone() })
}

/// Cartesian product graphs x topologies x faults x algorithms x trials,
/// skipping pairs where the source cannot possibly fit the (faulted) host.
pub fn build_tasks(config: &ExperimentConfig, catalog: &Catalog) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (gi, spec) in config.graphs.iter().enumerate() {
        let graph_id = spec.id();
        let n = catalog.graphs[gi].node_count();
        for (ti, desc) in config.topologies.iter().enumerate() {
            let topology = desc.to_string();
            for (fi, fault) in config.faults.iter().enumerate() {
                if n > catalog.hosts[ti][fi].node_count() {
                    continue;
                }
                let fault_id = fault.id();
                for (ai, algorithm) in config.algorithms.iter().enumerate() {
                    for trial in 0..config.trials_per_pair {
                        tasks.push(Task {
                            index: tasks.len(),
                            key: TrialKey {
                                graph_id: graph_id.clone(),
                                topology: topology.clone(),
                                fault: fault_id.clone(),
                                algorithm: algorithm.clone(),
                                trial,
                            },
                            graph: gi,
                            topology: ti,
                            fault: fi,
                            algorithm: ai,
                        });
                    }
                }
            }
        }
    }
    tasks
}

/// One line of `results.jsonl`. Field order is fixed by this declaration;
/// wall-clock fields (`wall_time_s`, `wall_overrun_s`) are the only ones
/// allowed to differ between reruns of the same config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialRecord {
    pub graph_id: String,
    pub category: String,
    pub graph_nodes: u64,
    pub graph_edges: u64,
    pub topology: String,
    pub fault: String,
    pub algorithm: String,
    pub trial: u32,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub qubit_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_chain_length: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_chain_length: Option<f64>,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_overrun_s: Option<f64>,
    pub counters: BTreeMap<String, u64>,
    pub algorithm_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub embedding: Option<Embedding>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub embedding_ref: Option<String>,
}

impl TrialRecord {
    pub fn key(&self) -> TrialKey {
        TrialKey {
            graph_id: self.graph_id.clone(),
            topology: self.topology.clone(),
            fault: self.fault.clone(),
            algorithm: self.algorithm.clone(),
            trial: self.trial,
        }
    }
}

/// Runs one task. Wall time wraps the embed call only; validation and graph
/// lookup stay outside the measured window. A SUCCESS whose embedding fails
/// validation is demoted to FAILURE with a `validator_violations` counter.
fn execute_task(config: &ExperimentConfig, catalog: &Catalog, task: &Task) -> TrialRecord {
    let source = &catalog.graphs[task.graph];
    let host = &catalog.hosts[task.topology][task.fault];
    let descriptor = &catalog.descriptors[task.topology];
    let seed = derive_trial_seed(config.master_seed, &task.key);
    let params = EmbedParams::new(seed, config.timeout_s);
    let target = Target::new(host, Some(descriptor));

    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        embed(&task.key.algorithm, source, &target, &params)
    }));
    let wall_time_s = start.elapsed().as_secs_f64();

    let mut counters = BTreeMap::new();
    let (mut status, mut embedding, version) = match outcome {
        Ok(Ok(result)) => {
            counters = result.counters;
            (result.status, Some(result.embedding), result.version)
        }
        Ok(Err(err)) => {
            // config validation should make this unreachable; record, not panic
            counters.insert("dispatch_error".into(), 1);
            let _ = err;
            (Status::Failure, None, "unknown".into())
        }
        Err(_) => {
            counters.insert("panicked".into(), 1);
            (Status::Failure, None, "unknown".into())
        }
    };

    if status == Status::Success {
        let emb = embedding.as_ref().expect("success carries an embedding");
        let report = validate(source, host, emb);
        if !report.valid() {
            counters.insert("validator_violations".into(), report.violations.len() as u64);
            status = Status::Failure;
            embedding = None;
        }
    }

    let (qubit_count, max_chain_length, mean_chain_length) = match (&status, &embedding) {
        (Status::Success, Some(emb)) => {
            let m = metrics(emb);
            (Some(m.qubit_count), Some(m.max_chain_length), Some(m.mean_chain_length))
        }
        _ => (None, None, None),
    };

    let wall_overrun_s =
        (wall_time_s > config.timeout_s).then(|| wall_time_s - config.timeout_s);

    TrialRecord {
        graph_id: task.key.graph_id.clone(),
        category: catalog.categories[task.graph].to_owned(),
        graph_nodes: source.node_count() as u64,
        graph_edges: source.edge_count() as u64,
        topology: task.key.topology.clone(),
        fault: task.key.fault.clone(),
        algorithm: task.key.algorithm.clone(),
        trial: task.key.trial,
        seed,
        status,
        qubit_count,
        max_chain_length,
        mean_chain_length,
        wall_time_s,
        wall_overrun_s,
        counters,
        algorithm_version: version,
        embedding: if status == Status::Success { embedding } else { None },
        embedding_ref: None,
    }
}

/// Moves an oversized embedding out of the record into a sidecar file.
/// Returns the record actually persisted.
fn offload_embedding(
    record: &mut TrialRecord,
    task_index: usize,
    output_dir: &Path,
    inline_max: u64,
) -> Result<(), RunnerError> {
    let Some(qubits) = record.qubit_count else { return Ok(()) };
    if qubits <= inline_max {
        return Ok(());
    }
    let emb = record.embedding.take().expect("metrics imply an embedding");
    let dir = output_dir.join("embeddings");
    std::fs::create_dir_all(&dir).map_err(io_err("creating the embeddings directory"))?;
    let rel = format!("embeddings/task{task_index}.json");
    std::fs::write(output_dir.join(&rel), emb.to_json())
        .map_err(io_err(format!("writing {rel}")))?;
    record.embedding_ref = Some(rel);
    Ok(())
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub workers: usize,
    /// Stop cleanly after this many newly executed trials; used to exercise
    /// interruption in tests.
    pub max_trials: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: resolve_workers(None), max_trials: None }
    }
}

/// Worker count: explicit flag, else `MINORBENCH_WORKERS`, else the number
/// of CPUs; always at least 1.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("MINORBENCH_WORKERS").ok().and_then(|v| v.parse().ok()))
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub tasks_total: usize,
    pub already_complete: usize,
    pub executed: usize,
    pub statuses: BTreeMap<String, u64>,
}

impl RunSummary {
    pub fn complete(&self) -> bool {
        self.already_complete + self.executed == self.tasks_total
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Checkpoint {
    completed_keys: Vec<String>,
}

/// Executes the experiment. Fresh directories start from zero; directories
/// holding a partial `results.jsonl` continue where they stopped, because the
/// file is always an in-order prefix of the full deterministic record
/// sequence. The resolved config is written before any trial runs.
pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunSummary, RunnerError> {
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(io_err("creating the output directory"))?;

    let resolved_path = dir.join(RESOLVED_CONFIG_FILE);
    let yaml = serde_yaml::to_string(config).expect("config serialization is infallible");
    std::fs::write(&resolved_path, &yaml).map_err(io_err("writing the resolved config"))?;

    let catalog = build_catalog(config)?;
    let tasks = build_tasks(config, &catalog);
    let completed = reconcile_existing(dir, &tasks, config.master_seed)?;

    let mut summary = RunSummary {
        tasks_total: tasks.len(),
        already_complete: completed,
        executed: 0,
        statuses: BTreeMap::new(),
    };
    let stop = match opts.max_trials {
        Some(m) => (completed + m).min(tasks.len()),
        None => tasks.len(),
    };
    if completed >= stop {
        return Ok(summary);
    }

    let results_path = dir.join(RESULTS_FILE);
    let mut out = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&results_path)
        .map_err(io_err("opening results.jsonl"))?;

    let cursor = AtomicUsize::new(completed);
    let expected = stop - completed;
    let (tx, rx) = mpsc::channel::<(usize, TrialRecord)>();

    let run_state: Result<(), RunnerError> = std::thread::scope(|scope| {
        for _ in 0..opts.workers.max(1) {
            let tx = tx.clone();
            let cursor = &cursor;
            let tasks = &tasks;
            let catalog = &catalog;
            scope.spawn(move || {
                loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    if i >= stop {
                        break;
                    }
                    let record = execute_task(config, catalog, &tasks[i]);
                    if tx.send((i, record)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        let mut buffer: BTreeMap<usize, TrialRecord> = BTreeMap::new();
        let mut next = completed;
        let mut since_checkpoint = 0usize;
        let mut checkpoint_keys: Vec<String> =
            tasks[..completed].iter().map(|t| t.key.canonical()).collect();

        for _ in 0..expected {
            let (i, record) = rx.recv().map_err(|_| RunnerError::Io {
                context: "collecting worker results".into(),
                source: std::io::Error::other("a worker exited without reporting"),
            })?;
            *summary.statuses.entry(status_name(record.status).to_owned()).or_insert(0) += 1;
            summary.executed += 1;
            buffer.insert(i, record);
            while let Some(mut record) = buffer.remove(&next) {
                offload_embedding(&mut record, next, dir, EMBED_INLINE_MAX_QUBITS)?;
                let line =
                    serde_json::to_string(&record).expect("record serialization is infallible");
                writeln!(out, "{line}").map_err(io_err("appending to results.jsonl"))?;
                checkpoint_keys.push(tasks[next].key.canonical());
                next += 1;
                since_checkpoint += 1;
                if since_checkpoint >= CHECKPOINT_EVERY {
                    out.flush().map_err(io_err("flushing results.jsonl"))?;
                    write_checkpoint(dir, &checkpoint_keys)?;
                    since_checkpoint = 0;
                }
            }
        }
        out.flush().map_err(io_err("flushing results.jsonl"))?;
        write_checkpoint(dir, &checkpoint_keys)?;
        Ok(())
    });
    run_state?;

    Ok(summary)
}

/// Continues a run from its output directory alone.
pub fn resume(output_dir: &Path, opts: &RunOptions) -> Result<(ExperimentConfig, RunSummary), RunnerError> {
    let path = output_dir.join(RESOLVED_CONFIG_FILE);
    let text = std::fs::read_to_string(&path)
        .map_err(io_err(format!("reading {}", path.display())))?;
    let mut config: ExperimentConfig =
        serde_yaml::from_str(&text).map_err(ConfigError::Parse)?;
    // the directory may have been moved since the original run
    config.output_dir = output_dir.to_path_buf();
    let summary = run(&config, opts)?;
    Ok((config, summary))
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Success => "SUCCESS",
        Status::Timeout => "TIMEOUT",
        Status::Failure => "FAILURE",
        Status::Oom => "OOM",
    }
}

fn write_checkpoint(dir: &Path, keys: &[String]) -> Result<(), RunnerError> {
    let tmp = dir.join(format!("{CHECKPOINT_FILE}.tmp"));
    let body = serde_json::to_string(&Checkpoint { completed_keys: keys.to_vec() })
        .expect("checkpoint serialization is infallible");
    std::fs::write(&tmp, body).map_err(io_err("writing the checkpoint"))?;
    std::fs::rename(&tmp, dir.join(CHECKPOINT_FILE)).map_err(io_err("publishing the checkpoint"))
}

/// Validates existing results against the task list and returns how many
/// leading tasks are already done. A torn final line (interrupted mid-write)
/// is trimmed; anything else that disagrees with the expected sequence is an
/// error rather than a guess.
fn reconcile_existing(dir: &Path, tasks: &[Task], master_seed: u64) -> Result<usize, RunnerError> {
    let results_path = dir.join(RESULTS_FILE);
    let corrupt = |message: String| RunnerError::CorruptState { dir: dir.to_path_buf(), message };

    let text = match std::fs::read_to_string(&results_path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
        Err(e) => return Err(io_err("reading results.jsonl")(e)),
    };

    let mut completed = 0usize;
    let mut good_bytes = 0usize;
    let mut lines = text.split_inclusive('\n').peekable();
    while let Some(line) = lines.next() {
        let is_last = lines.peek().is_none();
        let parsed = if line.ends_with('\n') {
            serde_json::from_str::<TrialRecord>(line.trim_end_matches('\n')).ok()
        } else {
            None // no newline: the write was cut short
        };
        match parsed {
            Some(record) => {
                let expected = tasks.get(completed).map(|t| &t.key);
                if expected != Some(&record.key())
                    || record.seed != derive_trial_seed(master_seed, &record.key())
                {
                    return Err(corrupt(format!(
                        "record {completed} does not match the task list; \
                         the results were produced by a different config"
                    )));
                }
                completed += 1;
                good_bytes += line.len();
            }
            None if is_last => {
                let file = std::fs::OpenOptions::new()
                    .write(true)
                    .open(&results_path)
                    .map_err(io_err("reopening results.jsonl"))?;
                file.set_len(good_bytes as u64).map_err(io_err("trimming a torn record"))?;
                break;
            }
            None => {
                return Err(corrupt(format!("unparseable record at line {}", completed + 1)));
            }
        }
    }

    // the checkpoint must agree with the task list; the results file stays
    // the source of truth for how far the run actually got, so a checkpoint
    // ahead of a torn results file only means those trials run again
    match std::fs::read_to_string(dir.join(CHECKPOINT_FILE)) {
        Ok(body) => {
            let checkpoint: Checkpoint = serde_json::from_str(&body)
                .map_err(|e| corrupt(format!("unreadable checkpoint: {e}")))?;
            if checkpoint.completed_keys.len() > tasks.len() {
                return Err(corrupt("checkpoint lists more trials than the config defines".into()));
            }
            for (i, key) in checkpoint.completed_keys.iter().enumerate() {
                if tasks[i].key.canonical() != *key {
                    return Err(corrupt(format!("checkpoint key {i} disagrees with the task list")));
                }
            }
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(io_err("reading the checkpoint")(e)),
    }

    Ok(completed)
}

/// Reads a results file back into records. Used by reports and tests.
pub fn read_records(path: &Path) -> Result<Vec<TrialRecord>, RunnerError> {
    let text = std::fs::read_to_string(path)
        .map_err(io_err(format!("reading {}", path.display())))?;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let record: TrialRecord = serde_json::from_str(line).map_err(|e| RunnerError::Io {
            context: format!("parsing record {}", i + 1),
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })?;
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::super::config::{resolve_config, Overrides};
    use super::*;

    fn demo_config(dir: &Path) -> ExperimentConfig {
        let text = "name: demo\n\
                    graphs:\n\
                    \x20 - {family: path, n: 6}\n\
                    \x20 - {family: complete, n: 4}\n\
                    \x20 - {family: star, n: 5}\n\
                    topologies:\n  - chimera(2,2,4)\n\
                    faults:\n  - {mode: rate, f: 0}\n  - {mode: rate, f: 0.1}\n\
                    algorithms:\n  - clique\n  - pathfinder\n\
                    trials_per_pair: 2\n\
                    timeout_s: 10\n";
        let overrides =
            Overrides { output_dir: Some(dir.to_path_buf()), ..Overrides::default() };
        resolve_config(text, Path::new("."), &overrides).unwrap()
    }

    #[test]
    fn seeds_depend_on_the_key_not_the_schedule() {
        let key = |trial| TrialKey {
            graph_id: "path(n=6)".into(),
            topology: "chimera(2,2,4)".into(),
            fault: "rate(f=0,seed=42)".into(),
            algorithm: "pathfinder".into(),
            trial,
        };
        assert_eq!(derive_trial_seed(42, &key(0)), derive_trial_seed(42, &key(0)));
        assert_ne!(derive_trial_seed(42, &key(0)), derive_trial_seed(42, &key(1)));
        assert_ne!(derive_trial_seed(42, &key(0)), derive_trial_seed(43, &key(0)));
    }

    #[test]
    fn task_list_is_the_filtered_cartesian_product() {
        let tmp = tempfile::tempdir().unwrap();
        let config = demo_config(tmp.path());
        let catalog = build_catalog(&config).unwrap();
        let tasks = build_tasks(&config, &catalog);
        // 3 graphs x 1 topology x 2 faults x 2 algorithms x 2 trials
        assert_eq!(tasks.len(), 24);
        assert!(tasks.iter().enumerate().all(|(i, t)| t.index == i));
        let keys: BTreeSet<String> = tasks.iter().map(|t| t.key.canonical()).collect();
        assert_eq!(keys.len(), tasks.len(), "keys are unique");
        // distinct trials of one pair get distinct seeds
        let seeds: BTreeSet<u64> =
            tasks.iter().map(|t| derive_trial_seed(config.master_seed, &t.key)).collect();
        assert_eq!(seeds.len(), tasks.len());
    }

    #[test]
    fn oversized_sources_are_filtered_out() {
        let tmp = tempfile::tempdir().unwrap();
        let text = "name: big\n\
                    graphs:\n  - {family: complete, n: 40}\n  - {family: path, n: 5}\n\
                    topologies:\n  - chimera(2,2,4)\n\
                    algorithms:\n  - clique\n";
        let overrides =
            Overrides { output_dir: Some(tmp.path().to_path_buf()), ..Overrides::default() };
        let config = resolve_config(text, Path::new("."), &overrides).unwrap();
        let catalog = build_catalog(&config).unwrap();
        let tasks = build_tasks(&config, &catalog);
        // K_40 cannot fit a 32-qubit host in any embedding; only path(5) runs
        assert_eq!(tasks.len(), 1);
        assert_eq!(tasks[0].key.graph_id, "path(n=5)");
    }

    #[test]
    fn run_executes_everything_and_is_reproducible() {
        let tmp = tempfile::tempdir().unwrap();
        let dir_a = tmp.path().join("a");
        let dir_b = tmp.path().join("b");
        let opts = RunOptions { workers: 2, max_trials: None };

        let mut config = demo_config(&dir_a);
        let summary = run(&config, &opts).unwrap();
        assert_eq!(summary.tasks_total, 24);
        assert_eq!(summary.executed, 24);
        assert!(summary.complete());
        assert!(dir_a.join(RESOLVED_CONFIG_FILE).is_file());

        config.output_dir = dir_b.clone();
        let opts_single = RunOptions { workers: 1, max_trials: None };
        run(&config, &opts_single).unwrap();

        let strip = |path: &Path| {
            let records = read_records(&path.join(RESULTS_FILE)).unwrap();
            records
                .into_iter()
                .map(|mut r| {
                    r.wall_time_s = 0.0;
                    r.wall_overrun_s = None;
                    serde_json::to_string(&r).unwrap()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&dir_a), strip(&dir_b), "worker count must not affect results");

        // every persisted SUCCESS validates at read-back
        let catalog = build_catalog(&config).unwrap();
        let by_id: BTreeMap<String, usize> =
            config.graphs.iter().enumerate().map(|(i, g)| (g.id(), i)).collect();
        let fault_index: BTreeMap<String, usize> =
            config.faults.iter().enumerate().map(|(i, f)| (f.id(), i)).collect();
        for record in read_records(&dir_a.join(RESULTS_FILE)).unwrap() {
            if record.status == Status::Success {
                let emb = record.embedding.as_ref().expect("inline at this scale");
                let source = &catalog.graphs[by_id[&record.graph_id]];
                let host = &catalog.hosts[0][fault_index[&record.fault]];
                assert!(validate(source, host, emb).valid());
                assert_eq!(record.qubit_count, Some(metrics(emb).qubit_count));
            } else {
                assert!(record.embedding.is_none());
            }
        }
    }

    #[test]
    fn interruption_and_resume_match_an_uninterrupted_run() {
        let tmp = tempfile::tempdir().unwrap();
        let dir_once = tmp.path().join("once");
        let dir_steps = tmp.path().join("steps");

        let mut config = demo_config(&dir_once);
        run(&config, &RunOptions { workers: 2, max_trials: None }).unwrap();

        config.output_dir = dir_steps.clone();
        for step in [5usize, 7, 100] {
            let opts = RunOptions { workers: 2, max_trials: Some(step) };
            run(&config, &opts).unwrap();
        }
        let (_, summary) = resume(&dir_steps, &RunOptions::default()).unwrap();
        assert_eq!(summary.executed, 0, "resume on a complete run is a no-op");
        assert_eq!(summary.already_complete, 24);

        let normalize = |dir: &Path| {
            read_records(&dir.join(RESULTS_FILE))
                .unwrap()
                .into_iter()
                .map(|mut r| {
                    r.wall_time_s = 0.0;
                    r.wall_overrun_s = None;
                    r
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(normalize(&dir_once), normalize(&dir_steps));
    }

    #[test]
    fn torn_final_lines_are_trimmed_and_foreign_results_are_refused() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("run");
        let config = demo_config(&dir);
        run(&config, &RunOptions { workers: 1, max_trials: Some(3) }).unwrap();

        // tear the last record mid-line
        let path = dir.join(RESULTS_FILE);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() - 17]).unwrap();
        run(&config, &RunOptions { workers: 1, max_trials: None }).unwrap();
        let records = read_records(&path).unwrap();
        assert_eq!(records.len(), 24, "torn record re-executed, everything else kept");

        // results from some other experiment must be refused, not merged
        let mut other = config.clone();
        other.master_seed = 77;
        let err = run(&other, &RunOptions { workers: 1, max_trials: None }).unwrap_err();
        assert!(matches!(err, RunnerError::CorruptState { .. }));
    }

    #[test]
    fn sidecar_offload_respects_the_threshold() {
        let tmp = tempfile::tempdir().unwrap();
        let emb = Embedding::from_chains([(0, vec![0, 1]), (1, vec![2])]);
        let mut record = TrialRecord {
            graph_id: "g".into(),
            category: "path".into(),
            graph_nodes: 2,
            graph_edges: 1,
            topology: "t".into(),
            fault: "rate(f=0,seed=42)".into(),
            algorithm: "clique".into(),
            trial: 0,
            seed: 1,
            status: Status::Success,
            qubit_count: Some(3),
            max_chain_length: Some(2),
            mean_chain_length: Some(1.5),
            wall_time_s: 0.0,
            wall_overrun_s: None,
            counters: BTreeMap::new(),
            algorithm_version: "clique/0.1.0".into(),
            embedding: Some(emb.clone()),
            embedding_ref: None,
        };

        let mut inline = record.clone();
        offload_embedding(&mut inline, 0, tmp.path(), 10).unwrap();
        assert!(inline.embedding.is_some() && inline.embedding_ref.is_none());

        offload_embedding(&mut record, 7, tmp.path(), 2).unwrap();
        assert!(record.embedding.is_none());
        let rel = record.embedding_ref.as_deref().unwrap();
        assert_eq!(rel, "embeddings/task7.json");
        let stored = std::fs::read_to_string(tmp.path().join(rel)).unwrap();
        assert_eq!(Embedding::from_json(&stored).unwrap(), emb);
    }

    #[test]
    fn worker_resolution_prefers_flag_then_env() {
        assert_eq!(resolve_workers(Some(3)), 3);
        assert!(resolve_workers(None) >= 1);
    }
}
