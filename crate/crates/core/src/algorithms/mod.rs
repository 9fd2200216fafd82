//! Embedding algorithms behind one contract: every embedder takes a source
//! graph, a target, and [`EmbedParams`], and returns an [`AlgorithmResult`]
//! whose embedding is non-empty exactly when the status is `Success`.
//!
//! Calls are pure with respect to their inputs and deterministic for a fixed
//! seed; deadlines are honored cooperatively, so wall time can overshoot the
//! budget by at most one internal check interval (one shortest-path run for
//! the path heuristic, [`pssa::DEADLINE_STRIDE`] annealing steps for the
//! annealer).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::Embedding;
use crate::graph::Graph;
use crate::topology::TopologyDescriptor;

pub mod clique;
pub mod pathfinder;
pub mod pssa;

pub use clique::embed_clique;
pub use pathfinder::embed_pathfinder;
pub use pssa::embed_pssa;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Success,
    Timeout,
    Failure,
    Oom,
}

impl Status {
    pub fn is_success(self) -> bool {
        self == Status::Success
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmResult {
    pub embedding: Embedding,
    pub status: Status,
    pub counters: BTreeMap<String, u64>,
    pub version: String,
}

impl AlgorithmResult {
    /// A successful result. Panics on an empty embedding: success without an
    /// embedding would break the status invariant.
    pub fn success(embedding: Embedding, counters: Counters, version: &str) -> Self {
        assert!(!embedding.is_empty(), "success requires a non-empty embedding");
        AlgorithmResult {
            embedding,
            status: Status::Success,
            counters: counters.0,
            version: version.to_owned(),
        }
    }

    /// A non-success result; the embedding is always empty.
    pub fn unsuccessful(status: Status, counters: Counters, version: &str) -> Self {
        assert!(status != Status::Success);
        AlgorithmResult {
            embedding: Embedding::empty(),
            status,
            counters: counters.0,
            version: version.to_owned(),
        }
    }
}

/// Counter map under construction; keys are algorithm-internal statistics.
#[derive(Debug, Default, Clone)]
pub struct Counters(pub BTreeMap<String, u64>);

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: u64) {
        self.0.insert(key.to_owned(), value);
    }

    pub fn add(&mut self, key: &str, delta: u64) {
        *self.0.entry(key.to_owned()).or_insert(0) += delta;
    }
}

/// What an embedder is pointed at: the hardware graph as it stands (possibly
/// with faults applied) plus, when known, the descriptor of the pristine
/// topology it came from. The descriptor unlocks template-based embedders.
#[derive(Debug, Clone, Copy)]
pub struct Target<'a> {
    pub graph: &'a Graph,
    pub descriptor: Option<&'a TopologyDescriptor>,
}

impl<'a> Target<'a> {
    pub fn new(graph: &'a Graph, descriptor: Option<&'a TopologyDescriptor>) -> Self {
        Target { graph, descriptor }
    }

    pub fn bare(graph: &'a Graph) -> Self {
        Target { graph, descriptor: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedParams {
    pub seed: u64,
    /// Wall-clock budget in seconds.
    pub deadline_s: f64,
    /// Algorithm-specific knobs; unset keys fall back to per-algorithm
    /// defaults (`sweeps` for the path heuristic; `alpha`, `budget_coeff`,
    /// `shift_weight` for the annealer).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tuning: BTreeMap<String, f64>,
}

impl EmbedParams {
    pub fn new(seed: u64, deadline_s: f64) -> Self {
        EmbedParams { seed, deadline_s, tuning: BTreeMap::new() }
    }

    pub fn with_tuning(mut self, key: &str, value: f64) -> Self {
        self.tuning.insert(key.to_owned(), value);
        self
    }

    pub fn tuning_or(&self, key: &str, default: f64) -> f64 {
        self.tuning.get(key).copied().unwrap_or(default)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AlgorithmError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("invalid algorithm parameters: {0}")]
    InvalidParams(String),
}

/// Cooperative wall-clock budget shared by the embedders.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: Instant,
    limit: Duration,
}

impl Deadline {
    pub fn new(limit: Duration) -> Self {
        Deadline { start: Instant::now(), limit }
    }

    pub fn from_seconds(s: f64) -> Self {
        Deadline::new(Duration::from_secs_f64(s.max(0.0)))
    }

    pub fn expired(&self) -> bool {
        self.start.elapsed() >= self.limit
    }

    /// Remaining budget in seconds, clamped at zero.
    pub fn remaining_s(&self) -> f64 {
        (self.limit.saturating_sub(self.start.elapsed())).as_secs_f64()
    }
}

/// The registered algorithm ids, in reporting order.
pub fn algorithm_ids() -> &'static [&'static str] {
    &["clique", "pathfinder", "pssa"]
}

/// Splits an algorithm id into its base name and tuning overrides. Plain
/// names pass through; `pssa{alpha:0.95,budget_coeff:50}` yields overrides
/// applied on top of [`EmbedParams::tuning`].
pub fn parse_algorithm_id(id: &str) -> Result<(&str, BTreeMap<String, f64>), AlgorithmError> {
    let Some((base, rest)) = id.split_once('{') else {
        return Ok((id, BTreeMap::new()));
    };
    let body = rest
        .strip_suffix('}')
        .ok_or_else(|| AlgorithmError::InvalidParams(format!("unterminated `{{` in `{id}`")))?;
    let mut overrides = BTreeMap::new();
    for part in body.split(',') {
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| AlgorithmError::InvalidParams(format!("expected key:value, got `{part}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| AlgorithmError::InvalidParams(format!("`{value}` is not a number")))?;
        overrides.insert(key.trim().to_owned(), value);
    }
    Ok((base, overrides))
}

/// Dispatches to a registered embedder. Accepts parameterized ids; tuning
/// overrides in the id shadow the ones in `params`. Input graphs are never
/// mutated and the call is deterministic for a fixed seed.
pub fn embed(
    algorithm_id: &str,
    source: &Graph,
    target: &Target,
    params: &EmbedParams,
) -> Result<AlgorithmResult, AlgorithmError> {
    if !(params.deadline_s > 0.0) {
        return Err(AlgorithmError::InvalidParams(format!(
            "deadline must be positive, got {}",
            params.deadline_s
        )));
    }
    let (base, overrides) = parse_algorithm_id(algorithm_id)?;
    let params = if overrides.is_empty() {
        params.clone()
    } else {
        let mut merged = params.clone();
        merged.tuning.extend(overrides);
        merged
    };
    match base {
        "clique" => Ok(embed_clique(source, target, &params)),
        "pathfinder" => Ok(embed_pathfinder(source, target, &params)),
        "pssa" => Ok(embed_pssa(source, target, &params)),
        other => Err(AlgorithmError::UnknownAlgorithm(other.to_owned())),
    }
}
