//! Experiment configuration: strict YAML schema, named graph presets, and
//! resolution into a fully explicit config that is saved next to the results.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::algorithms::{algorithm_ids, parse_algorithm_id};
use crate::faults::FaultSpec;
use crate::gen::GraphSpec;
use crate::topology::TopologyDescriptor;

pub const DEFAULT_MASTER_SEED: u64 = 42;
pub const DEFAULT_TIMEOUT_S: f64 = 30.0;
pub const DEFAULT_TRIALS_PER_PAIR: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// `path` points at the offending key, e.g. `faults[2].f`.
    #[error("config `{path}`: {message}")]
    Invalid { path: String, message: String },
    #[error("config does not parse: {0}")]
    Parse(#[from] serde_yaml::Error),
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { path: path.into(), message: message.into() }
}

/// One fault model applied to the hardware graph before embedding. `Rate`
/// entries always carry a concrete seed after resolution; `Pattern` paths are
/// made absolute relative to the config file so resumed runs find them.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FaultEntry {
    Rate { f: f64, seed: u64 },
    Pattern { path: PathBuf },
}

impl FaultEntry {
    /// Stable identifier used inside trial keys and result records.
    pub fn id(&self) -> String {
        match self {
            FaultEntry::Rate { f, seed } => format!("rate(f={f},seed={seed})"),
            FaultEntry::Pattern { path } => format!("pattern({})", path.display()),
        }
    }

    /// The rate-0 entry: hardware untouched. Retention statistics condition
    /// on this baseline.
    pub fn is_baseline(&self) -> bool {
        matches!(self, FaultEntry::Rate { f, .. } if *f == 0.0)
    }

    pub fn to_fault_spec(&self) -> Result<FaultSpec, String> {
        match self {
            FaultEntry::Rate { f, seed } => Ok(FaultSpec::Rate { f: *f, seed: *seed }),
            FaultEntry::Pattern { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read `{}`: {e}", path.display()))?;
                FaultSpec::pattern_from_text(&text).map_err(|e| e.to_string())
            }
        }
    }
}

/// Strict intermediate form: serde's internally tagged enums ignore unknown
/// keys, so fault entries deserialize through this flat struct instead.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFault {
    mode: String,
    f: Option<f64>,
    seed: Option<u64>,
    path: Option<PathBuf>,
}

impl RawFault {
    fn into_entry(self, at: &str, default_seed: u64) -> Result<FaultEntry, ConfigError> {
        match self.mode.as_str() {
            "rate" => {
                if self.path.is_some() {
                    return Err(invalid(format!("{at}.path"), "not a rate field"));
                }
                let f = self.f.ok_or_else(|| invalid(format!("{at}.f"), "missing"))?;
                if !(0.0..=1.0).contains(&f) {
                    return Err(invalid(format!("{at}.f"), format!("{f} outside [0, 1]")));
                }
                Ok(FaultEntry::Rate { f, seed: self.seed.unwrap_or(default_seed) })
            }
            "pattern" => {
                if self.f.is_some() || self.seed.is_some() {
                    return Err(invalid(at, "pattern entries take only `path`"));
                }
                let path = self.path.ok_or_else(|| invalid(format!("{at}.path"), "missing"))?;
                Ok(FaultEntry::Pattern { path })
            }
            other => Err(invalid(format!("{at}.mode"), format!("unknown mode `{other}`"))),
        }
    }
}

impl<'de> Deserialize<'de> for FaultEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // used when re-reading a resolved config, where seeds are concrete
        let raw = RawFault::deserialize(d)?;
        if raw.mode == "rate" && raw.seed.is_none() {
            return Err(serde::de::Error::custom("resolved rate entry lacks a seed"));
        }
        raw.into_entry("faults", 0).map_err(serde::de::Error::custom)
    }
}

/// On-disk schema as users write it. Everything optional has a documented
/// default; unknown keys are rejected.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: String,
    master_seed: Option<u64>,
    timeout_s: Option<f64>,
    trials_per_pair: Option<u32>,
    #[serde(default)]
    graphs: Vec<GraphSpec>,
    #[serde(default)]
    presets: Vec<String>,
    #[serde(default)]
    topologies: Vec<TopologyDescriptor>,
    #[serde(default)]
    faults: Vec<RawFault>,
    #[serde(default)]
    algorithms: Vec<String>,
    output_dir: Option<PathBuf>,
}

/// Fully explicit experiment description. This is what
/// `experiment_resolved.yaml` contains; a run is reproducible from it alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub artifact_version: String,
    /// Unix epoch seconds at resolution time. Excluded from reproducibility
    /// comparisons.
    pub created_at: u64,
    pub master_seed: u64,
    pub timeout_s: f64,
    pub trials_per_pair: u32,
    pub graphs: Vec<GraphSpec>,
    pub topologies: Vec<TopologyDescriptor>,
    pub faults: Vec<FaultEntry>,
    pub algorithms: Vec<String>,
    pub output_dir: PathBuf,
}

/// Command-line overrides applied during resolution; the resolved file
/// reflects them.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub master_seed: Option<u64>,
    pub timeout_s: Option<f64>,
    pub trials_per_pair: Option<u32>,
    pub output_dir: Option<PathBuf>,
}

/// Parses and resolves a config. `config_dir` anchors relative pattern paths.
pub fn resolve_config(
    text: &str,
    config_dir: &Path,
    overrides: &Overrides,
) -> Result<ExperimentConfig, ConfigError> {
    let raw: RawConfig = serde_yaml::from_str(text)?;
    if raw.name.is_empty() || raw.name.contains(['/', '\\']) {
        return Err(invalid("name", "must be a non-empty name without path separators"));
    }

    let master_seed = overrides.master_seed.or(raw.master_seed).unwrap_or(DEFAULT_MASTER_SEED);
    let timeout_s = overrides.timeout_s.or(raw.timeout_s).unwrap_or(DEFAULT_TIMEOUT_S);
    if !(timeout_s > 0.0) {
        return Err(invalid("timeout_s", format!("{timeout_s} is not positive")));
    }
    let trials_per_pair =
        overrides.trials_per_pair.or(raw.trials_per_pair).unwrap_or(DEFAULT_TRIALS_PER_PAIR);
    if trials_per_pair == 0 {
        return Err(invalid("trials_per_pair", "must be at least 1"));
    }

    let mut graphs = raw.graphs;
    for (i, name) in raw.presets.iter().enumerate() {
        let specs = preset(name).ok_or_else(|| {
            let known = preset_names().join(", ");
            invalid(format!("presets[{i}]"), format!("unknown preset `{name}` (known: {known})"))
        })?;
        graphs.extend(specs);
    }
    let mut seen = std::collections::BTreeSet::new();
    graphs.retain(|spec| seen.insert(spec.id()));
    if graphs.is_empty() {
        return Err(invalid("graphs", "need at least one graph (explicit or via presets)"));
    }
    if raw.topologies.is_empty() {
        return Err(invalid("topologies", "need at least one topology"));
    }
    if raw.algorithms.is_empty() {
        return Err(invalid("algorithms", "need at least one algorithm"));
    }
    for (i, id) in raw.algorithms.iter().enumerate() {
        let at = format!("algorithms[{i}]");
        let (base, _) = parse_algorithm_id(id).map_err(|e| invalid(&at, e.to_string()))?;
        if !algorithm_ids().contains(&base) {
            let known = algorithm_ids().join(", ");
            return Err(invalid(&at, format!("unknown algorithm `{base}` (known: {known})")));
        }
    }

    let mut faults = Vec::with_capacity(raw.faults.len().max(1));
    for (i, rf) in raw.faults.into_iter().enumerate() {
        let mut entry = rf.into_entry(&format!("faults[{i}]"), master_seed)?;
        if let FaultEntry::Pattern { path } = &mut entry {
            if path.is_relative() {
                *path = config_dir.join(&*path);
            }
            if !path.is_file() {
                return Err(invalid(
                    format!("faults[{i}].path"),
                    format!("`{}` does not exist", path.display()),
                ));
            }
        }
        faults.push(entry);
    }
    if faults.is_empty() {
        faults.push(FaultEntry::Rate { f: 0.0, seed: master_seed });
    }

    let output_dir = overrides
        .output_dir
        .clone()
        .or(raw.output_dir)
        .unwrap_or_else(|| PathBuf::from("runs").join(&raw.name));

    let created_at = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);

    Ok(ExperimentConfig {
        name: raw.name,
        artifact_version: format!("minorbench/{}", env!("CARGO_PKG_VERSION")),
        created_at,
        master_seed,
        timeout_s,
        trials_per_pair,
        graphs,
        topologies: raw.topologies,
        faults,
        algorithms: raw.algorithms,
        output_dir,
    })
}

pub fn preset_names() -> &'static [&'static str] {
    &["sensitivity", "medium30", "fault40"]
}

/// Named graph lists documented in `docs/presets.md`. Fixed content: changing
/// a preset changes trial seeds downstream, so additions get new names.
pub fn preset(name: &str) -> Option<Vec<GraphSpec>> {
    use GraphSpec::*;
    let chim224 = TopologyDescriptor::Chimera { m: 2, n: 2, t: 4 };
    match name {
        // one small instance per generator family
        "sensitivity" => Some(vec![
            Complete { n: 8 },
            CompleteBipartite { a: 4, b: 4 },
            Turan { n: 8, r: 3 },
            Circulant { n: 10, offsets: vec![1, 2] },
            Hypercube { d: 3 },
            Grid { w: 3, h: 3 },
            Triangular { w: 3, h: 3 },
            Honeycomb { w: 2, h: 2 },
            Kagome { w: 2, h: 2 },
            King { w: 3, h: 3 },
            Path { n: 10 },
            Cycle { n: 10 },
            Star { n: 8 },
            Wheel { n: 8 },
            BalancedTree { r: 2, h: 3 },
            ErdosRenyi { n: 15, p: 0.25, seed: 1 },
            WattsStrogatz { n: 12, k: 4, beta: 0.1, seed: 1 },
            BarabasiAlbert { n: 12, m: 2, seed: 1 },
            DRegular { n: 10, d: 3, seed: 1 },
            StochasticBlock {
                sizes: vec![6, 6],
                p: vec![vec![0.7, 0.1], vec![0.1, 0.7]],
                seed: 1,
            },
            Planted { target: chim224, chains: 6, seed: 1 },
            NativeSubgraph { target: chim224, n: 12, seed: 1 },
        ]),
        // 30 medium-size graphs for cross-topology comparisons
        "medium30" => Some(vec![
            Complete { n: 8 },
            Complete { n: 10 },
            Complete { n: 12 },
            Complete { n: 14 },
            ErdosRenyi { n: 20, p: 0.3, seed: 1 },
            ErdosRenyi { n: 25, p: 0.25, seed: 2 },
            ErdosRenyi { n: 30, p: 0.2, seed: 3 },
            ErdosRenyi { n: 35, p: 0.15, seed: 4 },
            BarabasiAlbert { n: 25, m: 3, seed: 5 },
            BarabasiAlbert { n: 30, m: 2, seed: 6 },
            BarabasiAlbert { n: 35, m: 3, seed: 7 },
            WattsStrogatz { n: 24, k: 4, beta: 0.1, seed: 8 },
            WattsStrogatz { n: 30, k: 6, beta: 0.2, seed: 9 },
            DRegular { n: 20, d: 4, seed: 10 },
            DRegular { n: 26, d: 3, seed: 11 },
            StochasticBlock {
                sizes: vec![12, 12],
                p: vec![vec![0.5, 0.1], vec![0.1, 0.5]],
                seed: 12,
            },
            Grid { w: 5, h: 5 },
            Grid { w: 6, h: 4 },
            Triangular { w: 4, h: 4 },
            King { w: 4, h: 4 },
            Hypercube { d: 4 },
            Turan { n: 12, r: 4 },
            CompleteBipartite { a: 6, b: 6 },
            Circulant { n: 16, offsets: vec![1, 2, 3] },
            Honeycomb { w: 3, h: 3 },
            Path { n: 30 },
            Cycle { n: 30 },
            Star { n: 12 },
            Wheel { n: 16 },
            BalancedTree { r: 2, h: 4 },
        ]),
        // 40 small graphs, most of which embed on an intact chimera(4,4,4)
        "fault40" => Some(vec![
            Complete { n: 5 },
            Complete { n: 6 },
            Complete { n: 7 },
            Complete { n: 8 },
            Complete { n: 9 },
            Complete { n: 10 },
            Path { n: 12 },
            Path { n: 16 },
            Path { n: 20 },
            Path { n: 24 },
            Cycle { n: 12 },
            Cycle { n: 16 },
            Cycle { n: 20 },
            Cycle { n: 24 },
            Star { n: 8 },
            Star { n: 10 },
            Star { n: 12 },
            Star { n: 14 },
            Grid { w: 3, h: 3 },
            Grid { w: 3, h: 4 },
            Grid { w: 4, h: 4 },
            Grid { w: 4, h: 5 },
            BalancedTree { r: 2, h: 3 },
            Wheel { n: 10 },
            Wheel { n: 12 },
            Turan { n: 9, r: 3 },
            CompleteBipartite { a: 4, b: 4 },
            CompleteBipartite { a: 5, b: 5 },
            Hypercube { d: 3 },
            Triangular { w: 3, h: 3 },
            King { w: 3, h: 3 },
            ErdosRenyi { n: 15, p: 0.25, seed: 1 },
            ErdosRenyi { n: 18, p: 0.2, seed: 2 },
            ErdosRenyi { n: 20, p: 0.2, seed: 3 },
            BarabasiAlbert { n: 16, m: 2, seed: 4 },
            BarabasiAlbert { n: 20, m: 2, seed: 5 },
            WattsStrogatz { n: 16, k: 4, beta: 0.1, seed: 6 },
            DRegular { n: 14, d: 3, seed: 7 },
            Circulant { n: 14, offsets: vec![1, 2] },
            Honeycomb { w: 3, h: 3 },
        ]),
        _ => None,
    }
}

/// Human-readable one-line summary used by the CLI after resolution.
pub fn describe(config: &ExperimentConfig) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "{}: {} graphs x {} topologies x {} faults x {} algorithms x {} trials",
        config.name,
        config.graphs.len(),
        config.topologies.len(),
        config.faults.len(),
        config.algorithms.len(),
        config.trials_per_pair,
    );
    s
}
