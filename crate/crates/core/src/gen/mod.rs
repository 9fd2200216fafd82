//! Source graph generation.
//!
//! A [`GraphSpec`] names a family plus its parameters (and a seed where the
//! family is randomized) and maps to a concrete [`Graph`] through
//! [`generate`]. Specs carry a stable id string used in trial keys and report
//! rows, so two runs of the same spec always mean the same graph.
//!
//! Deserialization is strict: unknown fields and unknown family names are
//! errors, not warnings, because silently ignored keys in an experiment file
//! would change what a run measures.

mod deterministic;
pub mod planted;
mod random;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::topology::{TopologyDescriptor, TopologyError};

pub use planted::{gen_native_subgraph, gen_planted, NativeSample, PlantedInstance};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid parameters for {family}: {message}")]
    InvalidParams { family: &'static str, message: String },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("sampling for {family} failed after {attempts} attempts")]
    SamplingFailure { family: &'static str, attempts: u32 },
    #[error("partition for planted graph failed after {attempts} attempts")]
    PartitionFailure { attempts: u32 },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

pub(crate) fn invalid(family: &'static str, message: impl Into<String>) -> GenError {
    GenError::InvalidParams { family, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphSpec {
    ErdosRenyi { n: u32, p: f64, seed: u64 },
    WattsStrogatz { n: u32, k: u32, beta: f64, seed: u64 },
    BarabasiAlbert { n: u32, m: u32, seed: u64 },
    DRegular { n: u32, d: u32, seed: u64 },
    StochasticBlock { sizes: Vec<u32>, p: Vec<Vec<f64>>, seed: u64 },
    Complete { n: u32 },
    CompleteBipartite { a: u32, b: u32 },
    Turan { n: u32, r: u32 },
    Circulant { n: u32, offsets: Vec<u32> },
    Hypercube { d: u32 },
    Grid { w: u32, h: u32 },
    Triangular { w: u32, h: u32 },
    Honeycomb { w: u32, h: u32 },
    Kagome { w: u32, h: u32 },
    King { w: u32, h: u32 },
    Path { n: u32 },
    Cycle { n: u32 },
    Star { n: u32 },
    Wheel { n: u32 },
    BalancedTree { r: u32, h: u32 },
    Planted { target: TopologyDescriptor, chains: u32, seed: u64 },
    NativeSubgraph { target: TopologyDescriptor, n: u32, seed: u64 },
}

impl GraphSpec {
    /// Family label; doubles as the category key in reports.
    pub fn family(&self) -> &'static str {
        match self {
            GraphSpec::ErdosRenyi { .. } => "erdos_renyi",
            GraphSpec::WattsStrogatz { .. } => "watts_strogatz",
            GraphSpec::BarabasiAlbert { .. } => "barabasi_albert",
            GraphSpec::DRegular { .. } => "d_regular",
            GraphSpec::StochasticBlock { .. } => "stochastic_block",
            GraphSpec::Complete { .. } => "complete",
            GraphSpec::CompleteBipartite { .. } => "complete_bipartite",
            GraphSpec::Turan { .. } => "turan",
            GraphSpec::Circulant { .. } => "circulant",
            GraphSpec::Hypercube { .. } => "hypercube",
            GraphSpec::Grid { .. } => "grid",
            GraphSpec::Triangular { .. } => "triangular",
            GraphSpec::Honeycomb { .. } => "honeycomb",
            GraphSpec::Kagome { .. } => "kagome",
            GraphSpec::King { .. } => "king",
            GraphSpec::Path { .. } => "path",
            GraphSpec::Cycle { .. } => "cycle",
            GraphSpec::Star { .. } => "star",
            GraphSpec::Wheel { .. } => "wheel",
            GraphSpec::BalancedTree { .. } => "balanced_tree",
            GraphSpec::Planted { .. } => "planted",
            GraphSpec::NativeSubgraph { .. } => "native_subgraph",
        }
    }

    /// Stable identifier: family, parameters in declaration order, then the
    /// seed after `#` for randomized families.
    pub fn id(&self) -> String {
        let mut s = String::new();
        match self {
            GraphSpec::ErdosRenyi { n, p, seed } => {
                let _ = write!(s, "erdos_renyi(n={n},p={p})#{seed}");
            }
            GraphSpec::WattsStrogatz { n, k, beta, seed } => {
                let _ = write!(s, "watts_strogatz(n={n},k={k},beta={beta})#{seed}");
            }
            GraphSpec::BarabasiAlbert { n, m, seed } => {
                let _ = write!(s, "barabasi_albert(n={n},m={m})#{seed}");
            }
            GraphSpec::DRegular { n, d, seed } => {
                let _ = write!(s, "d_regular(n={n},d={d})#{seed}");
            }
            GraphSpec::StochasticBlock { sizes, p, seed } => {
                let _ = write!(s, "stochastic_block(sizes={}", join(sizes));
                let rows: Vec<String> = p.iter().map(|row| join(row)).collect();
                let _ = write!(s, ",p=[{}])#{seed}", rows.join(","));
            }
            GraphSpec::Complete { n } => {
                let _ = write!(s, "complete(n={n})");
            }
            GraphSpec::CompleteBipartite { a, b } => {
                let _ = write!(s, "complete_bipartite(a={a},b={b})");
            }
            GraphSpec::Turan { n, r } => {
                let _ = write!(s, "turan(n={n},r={r})");
            }
            GraphSpec::Circulant { n, offsets } => {
                let _ = write!(s, "circulant(n={n},offsets={})", join(offsets));
            }
            GraphSpec::Hypercube { d } => {
                let _ = write!(s, "hypercube(d={d})");
            }
            GraphSpec::Grid { w, h } => {
                let _ = write!(s, "grid(w={w},h={h})");
            }
            GraphSpec::Triangular { w, h } => {
                let _ = write!(s, "triangular(w={w},h={h})");
            }
            GraphSpec::Honeycomb { w, h } => {
                let _ = write!(s, "honeycomb(w={w},h={h})");
            }
            GraphSpec::Kagome { w, h } => {
                let _ = write!(s, "kagome(w={w},h={h})");
            }
            GraphSpec::King { w, h } => {
                let _ = write!(s, "king(w={w},h={h})");
            }
            GraphSpec::Path { n } => {
                let _ = write!(s, "path(n={n})");
            }
            GraphSpec::Cycle { n } => {
                let _ = write!(s, "cycle(n={n})");
            }
            GraphSpec::Star { n } => {
                let _ = write!(s, "star(n={n})");
            }
            GraphSpec::Wheel { n } => {
                let _ = write!(s, "wheel(n={n})");
            }
            GraphSpec::BalancedTree { r, h } => {
                let _ = write!(s, "balanced_tree(r={r},h={h})");
            }
            GraphSpec::Planted { target, chains, seed } => {
                let _ = write!(s, "planted(target={target},chains={chains})#{seed}");
            }
            GraphSpec::NativeSubgraph { target, n, seed } => {
                let _ = write!(s, "native_subgraph(target={target},n={n})#{seed}");
            }
        }
        s
    }

    /// Builds the graph this spec describes; see [`generate`].
    pub fn generate(&self) -> Result<Graph, GenError> {
        generate(self)
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Builds the graph a spec describes. Equal specs give equal graphs.
pub fn generate(spec: &GraphSpec) -> Result<Graph, GenError> {
    match spec {
        GraphSpec::ErdosRenyi { n, p, seed } => random::erdos_renyi(*n, *p, *seed),
        GraphSpec::WattsStrogatz { n, k, beta, seed } => {
            random::watts_strogatz(*n, *k, *beta, *seed)
        }
        GraphSpec::BarabasiAlbert { n, m, seed } => random::barabasi_albert(*n, *m, *seed),
        GraphSpec::DRegular { n, d, seed } => random::d_regular(*n, *d, *seed),
        GraphSpec::StochasticBlock { sizes, p, seed } => {
            random::stochastic_block(sizes, p, *seed)
        }
        GraphSpec::Complete { n } => deterministic::complete(*n),
        GraphSpec::CompleteBipartite { a, b } => deterministic::complete_bipartite(*a, *b),
        GraphSpec::Turan { n, r } => deterministic::turan(*n, *r),
        GraphSpec::Circulant { n, offsets } => deterministic::circulant(*n, offsets),
        GraphSpec::Hypercube { d } => deterministic::hypercube(*d),
        GraphSpec::Grid { w, h } => deterministic::grid(*w, *h),
        GraphSpec::Triangular { w, h } => deterministic::triangular(*w, *h),
        GraphSpec::Honeycomb { w, h } => deterministic::honeycomb(*w, *h),
        GraphSpec::Kagome { w, h } => deterministic::kagome(*w, *h),
        GraphSpec::King { w, h } => deterministic::king(*w, *h),
        GraphSpec::Path { n } => deterministic::path(*n),
        GraphSpec::Cycle { n } => deterministic::cycle(*n),
        GraphSpec::Star { n } => deterministic::star(*n),
        GraphSpec::Wheel { n } => deterministic::wheel(*n),
        GraphSpec::BalancedTree { r, h } => deterministic::balanced_tree(*r, *h),
        GraphSpec::Planted { target, chains, seed } => {
            gen_planted(target, *chains, *seed).map(|inst| inst.graph)
        }
        GraphSpec::NativeSubgraph { target, n, seed } => {
            gen_native_subgraph(target, *n, *seed).map(|sample| sample.graph)
        }
    }
}

// ---------------------------------------------------------------------------
// Strict deserialization. Internally tagged serde enums ignore unknown
// fields, so specs are pulled apart by hand: every field is taken exactly
// once and leftovers are errors.

struct Fields {
    family: String,
    map: BTreeMap<String, serde_yaml::Value>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Result<serde_yaml::Value, String> {
        self.map
            .remove(key)
            .ok_or_else(|| format!("{}: missing field `{key}`", self.family))
    }

    fn u32(&mut self, key: &str) -> Result<u32, String> {
        let value = self.take(key)?;
        value
            .as_u64()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| format!("{}: field `{key}` must be a non-negative integer", self.family))
    }

    fn u64(&mut self, key: &str) -> Result<u64, String> {
        let value = self.take(key)?;
        value
            .as_u64()
            .ok_or_else(|| format!("{}: field `{key}` must be a non-negative integer", self.family))
    }

    fn f64(&mut self, key: &str) -> Result<f64, String> {
        let value = self.take(key)?;
        value
            .as_f64()
            .ok_or_else(|| format!("{}: field `{key}` must be a number", self.family))
    }

    fn u32_list(&mut self, key: &str) -> Result<Vec<u32>, String> {
        let value = self.take(key)?;
        serde_yaml::from_value(value)
            .map_err(|_| format!("{}: field `{key}` must be a list of integers", self.family))
    }

    fn f64_matrix(&mut self, key: &str) -> Result<Vec<Vec<f64>>, String> {
        let value = self.take(key)?;
        serde_yaml::from_value(value)
            .map_err(|_| format!("{}: field `{key}` must be a matrix of numbers", self.family))
    }

    fn topology(&mut self, key: &str) -> Result<TopologyDescriptor, String> {
        let value = self.take(key)?;
        serde_yaml::from_value::<TopologyDescriptor>(value)
            .map_err(|e| format!("{}: field `{key}`: {e}", self.family))
    }

    fn finish(self) -> Result<(), String> {
        if let Some(key) = self.map.keys().next() {
            Err(format!("{}: unknown field `{key}`", self.family))
        } else {
            Ok(())
        }
    }
}

#[derive(Deserialize)]
struct RawSpec {
    family: String,
    #[serde(flatten)]
    rest: BTreeMap<String, serde_yaml::Value>,
}

impl TryFrom<RawSpec> for GraphSpec {
    type Error = String;

    fn try_from(raw: RawSpec) -> Result<Self, String> {
        let mut f = Fields { family: raw.family.clone(), map: raw.rest };
        let spec = match raw.family.as_str() {
            "erdos_renyi" => GraphSpec::ErdosRenyi {
                n: f.u32("n")?,
                p: f.f64("p")?,
                seed: f.u64("seed")?,
            },
            "watts_strogatz" => GraphSpec::WattsStrogatz {
                n: f.u32("n")?,
                k: f.u32("k")?,
                beta: f.f64("beta")?,
                seed: f.u64("seed")?,
            },
            "barabasi_albert" => GraphSpec::BarabasiAlbert {
                n: f.u32("n")?,
                m: f.u32("m")?,
                seed: f.u64("seed")?,
            },
            "d_regular" => GraphSpec::DRegular {
                n: f.u32("n")?,
                d: f.u32("d")?,
                seed: f.u64("seed")?,
            },
            "stochastic_block" => GraphSpec::StochasticBlock {
                sizes: f.u32_list("sizes")?,
                p: f.f64_matrix("p")?,
                seed: f.u64("seed")?,
            },
            "complete" => GraphSpec::Complete { n: f.u32("n")? },
            "complete_bipartite" => {
                GraphSpec::CompleteBipartite { a: f.u32("a")?, b: f.u32("b")? }
            }
            "turan" => GraphSpec::Turan { n: f.u32("n")?, r: f.u32("r")? },
            "circulant" => {
                GraphSpec::Circulant { n: f.u32("n")?, offsets: f.u32_list("offsets")? }
            }
            "hypercube" => GraphSpec::Hypercube { d: f.u32("d")? },
            "grid" => GraphSpec::Grid { w: f.u32("w")?, h: f.u32("h")? },
            "triangular" => GraphSpec::Triangular { w: f.u32("w")?, h: f.u32("h")? },
            "honeycomb" => GraphSpec::Honeycomb { w: f.u32("w")?, h: f.u32("h")? },
            "kagome" => GraphSpec::Kagome { w: f.u32("w")?, h: f.u32("h")? },
            "king" => GraphSpec::King { w: f.u32("w")?, h: f.u32("h")? },
            "path" => GraphSpec::Path { n: f.u32("n")? },
            "cycle" => GraphSpec::Cycle { n: f.u32("n")? },
            "star" => GraphSpec::Star { n: f.u32("n")? },
            "wheel" => GraphSpec::Wheel { n: f.u32("n")? },
            "balanced_tree" => GraphSpec::BalancedTree { r: f.u32("r")?, h: f.u32("h")? },
            "planted" => GraphSpec::Planted {
                target: f.topology("target")?,
                chains: f.u32("chains")?,
                seed: f.u64("seed")?,
            },
            "native_subgraph" => GraphSpec::NativeSubgraph {
                target: f.topology("target")?,
                n: f.u32("n")?,
                seed: f.u64("seed")?,
            },
            other => return Err(format!("unknown graph family `{other}`")),
        };
        f.finish()?;
        Ok(spec)
    }
}

impl<'de> Deserialize<'de> for GraphSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawSpec::deserialize(deserializer)?;
        GraphSpec::try_from(raw).map_err(serde::de::Error::custom)
    }
}
