//! Simulated hardware faults: dead qubits removed from a target graph before
//! embedding, either a uniform random fraction or an explicit id list.
//!
//! Surviving nodes keep their original ids, so chains found on a faulted
//! target remain meaningful on the pristine one and fault patterns taken
//! from real calibration data line up without translation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::rng::{rng_from_seed, sample_prefix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FaultSpec {
    /// Remove exactly `⌊N · f⌋` nodes, drawn without replacement by the
    /// seeded generator.
    Rate { f: f64, seed: u64 },
    /// Remove exactly the listed nodes.
    Pattern { nodes: Vec<NodeId> },
}

#[derive(Debug, Error, PartialEq)]
pub enum FaultError {
    #[error("fault rate must lie in [0, 1], got {0}")]
    InvalidRate(f64),
    #[error("fault pattern names node {node}, which the target does not have")]
    InvalidPattern { node: NodeId },
}

impl FaultSpec {
    /// Parses a fault-pattern file: one node id per line, `#` starts a
    /// comment, blank lines ignored.
    pub fn pattern_from_text(text: &str) -> Result<FaultSpec, PatternParseError> {
        let mut nodes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let node = line
                .parse()
                .map_err(|_| PatternParseError { line: idx + 1, text: line.to_owned() })?;
            nodes.push(node);
        }
        Ok(FaultSpec::Pattern { nodes })
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("fault pattern line {line} is not a node id: `{text}`")]
pub struct PatternParseError {
    pub line: usize,
    pub text: String,
}

/// Returns `target` with the faulted nodes and their incident edges removed.
/// The result is the induced subgraph on the survivors, ids unchanged.
pub fn inject_faults(target: &Graph, spec: &FaultSpec) -> Result<Graph, FaultError> {
    let removed: BTreeSet<NodeId> = match spec {
        FaultSpec::Rate { f, seed } => {
            if !(0.0..=1.0).contains(f) {
                return Err(FaultError::InvalidRate(*f));
            }
            let count = removal_count(target.node_count(), *f);
            let mut rng = rng_from_seed(*seed);
            sample_prefix(&mut rng, target.nodes(), count).into_iter().collect()
        }
        FaultSpec::Pattern { nodes } => {
            for &v in nodes {
                if !target.has_node(v) {
                    return Err(FaultError::InvalidPattern { node: v });
                }
            }
            nodes.iter().copied().collect()
        }
    };
    let survivors = target.nodes().iter().copied().filter(|v| !removed.contains(v));
    let edges = target
        .edges()
        .iter()
        .copied()
        .filter(|(u, v)| !removed.contains(u) && !removed.contains(v));
    Ok(Graph::with_nodes(survivors, edges).expect("survivors come from a valid graph"))
}

/// `⌊n · f⌋`, evaluated as if in real arithmetic: products that should be
/// whole numbers but land a hair below one in binary (0.29 * 100) snap to it.
fn removal_count(n: usize, f: f64) -> usize {
    let product = n as f64 * f;
    if (product - product.round()).abs() < 1e-9 {
        product.round() as usize
    } else {
        product.floor() as usize
    }
}

/// Fraction of baseline-successful problems still successful at some fault
/// rate; `None` when the baseline is empty.
pub fn retention<T: Ord>(baseline: &BTreeSet<T>, at_rate: &BTreeSet<T>) -> Option<f64> {
    if baseline.is_empty() {
        return None;
    }
    let kept = baseline.intersection(at_rate).count();
    Some(kept as f64 / baseline.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::TopologyDescriptor;

    fn rate(f: f64, seed: u64) -> FaultSpec {
        FaultSpec::Rate { f, seed }
    }

    fn chimera(m: u32, n: u32, t: u32) -> Graph {
        TopologyDescriptor::Chimera { m, n, t }.build().unwrap()
    }

    #[test]
    fn zero_rate_changes_nothing() {
        let g = chimera(2, 2, 4);
        assert_eq!(inject_faults(&g, &rate(0.0, 99)).unwrap(), g);
    }

    #[test]
    fn quarter_rate_on_full_chimera_removes_512() {
        let g = chimera(16, 16, 4);
        let faulted = inject_faults(&g, &rate(0.25, 7)).unwrap();
        assert_eq!(faulted.node_count(), 2048 - 512);
    }

    #[test]
    fn removal_counts_match_integer_arithmetic() {
        // grid of (numerator, denominator) pairs standing for f
        let grid = [(0u64, 1u64), (1, 100), (5, 100), (10, 100), (20, 100), (25, 100)];
        let targets = [
            chimera(4, 4, 4),
            TopologyDescriptor::Pegasus { m: 4 }.build().unwrap(),
            TopologyDescriptor::Zephyr { m: 3, t: 4 }.build().unwrap(),
        ];
        for g in &targets {
            let n = g.node_count() as u64;
            let mut last_removed = 0;
            for (num, den) in grid {
                let f = num as f64 / den as f64;
                let faulted = inject_faults(g, &rate(f, 11)).unwrap();
                let removed = n - faulted.node_count() as u64;
                assert_eq!(removed, n * num / den, "n={n}, f={f}");
                assert!(removed >= last_removed, "budget not monotone at f={f}");
                last_removed = removed;
            }
        }
    }

    #[test]
    fn near_integer_products_round_like_real_arithmetic() {
        assert_eq!(removal_count(100, 0.29), 29);
        assert_eq!(removal_count(100, 0.07), 7);
        assert_eq!(removal_count(2048, 0.1), 204);
        assert_eq!(removal_count(10, 1.0), 10);
        assert_eq!(removal_count(0, 0.5), 0);
    }

    #[test]
    fn faulted_graph_is_the_induced_subgraph() {
        let g = chimera(3, 3, 4);
        let faulted = inject_faults(&g, &rate(0.2, 3)).unwrap();
        for &v in faulted.nodes() {
            assert!(g.has_node(v), "id {v} invented");
        }
        for &(u, v) in faulted.edges() {
            assert!(g.has_edge(u, v), "edge ({u},{v}) invented");
        }
        for &(u, v) in g.edges() {
            if faulted.has_node(u) && faulted.has_node(v) {
                assert!(faulted.has_edge(u, v), "edge ({u},{v}) dropped");
            }
        }
    }

    #[test]
    fn rate_mode_is_seed_deterministic() {
        let g = chimera(3, 3, 4);
        assert_eq!(
            inject_faults(&g, &rate(0.1, 5)).unwrap(),
            inject_faults(&g, &rate(0.1, 5)).unwrap()
        );
        assert_ne!(
            inject_faults(&g, &rate(0.1, 5)).unwrap(),
            inject_faults(&g, &rate(0.1, 6)).unwrap()
        );
    }

    #[test]
    fn rate_bounds_are_enforced() {
        let g = chimera(1, 1, 4);
        assert_eq!(inject_faults(&g, &rate(-0.1, 0)), Err(FaultError::InvalidRate(-0.1)));
        assert_eq!(inject_faults(&g, &rate(1.5, 0)), Err(FaultError::InvalidRate(1.5)));
        assert_eq!(inject_faults(&g, &rate(1.0, 0)).unwrap().node_count(), 0);
    }

    #[test]
    fn pattern_mode_removes_exactly_the_listed_nodes() {
        let g = chimera(2, 2, 4);
        let spec = FaultSpec::Pattern { nodes: vec![0, 5, 17] };
        let faulted = inject_faults(&g, &spec).unwrap();
        assert_eq!(faulted.node_count(), g.node_count() - 3);
        for v in [0, 5, 17] {
            assert!(!faulted.has_node(v));
        }
        let bad = FaultSpec::Pattern { nodes: vec![1, 999] };
        assert_eq!(inject_faults(&g, &bad), Err(FaultError::InvalidPattern { node: 999 }));
    }

    #[test]
    fn pattern_text_parsing() {
        let spec = FaultSpec::pattern_from_text("5\n# dead column\n 17 # drifted\n\n3\n").unwrap();
        assert_eq!(spec, FaultSpec::Pattern { nodes: vec![5, 17, 3] });
        let err = FaultSpec::pattern_from_text("5\nseven\n").unwrap_err();
        assert_eq!((err.line, err.text.as_str()), (2, "seven"));
        assert!(FaultSpec::pattern_from_text("-3\n").is_err());
    }

    #[test]
    fn retention_fractions() {
        let set = |items: &[&str]| -> BTreeSet<String> {
            items.iter().map(|s| s.to_string()).collect()
        };
        let baseline = set(&["a", "b", "c", "d"]);
        assert_eq!(retention(&baseline, &set(&["a", "b", "c"])), Some(0.75));
        assert_eq!(retention(&BTreeSet::<String>::new(), &set(&["a"])), None);
        // 20 trials at the fault rate, 17 baseline successes, 13 shared
        let baseline: BTreeSet<u32> = (0..17).collect();
        let at_rate: BTreeSet<u32> = (0..13).chain(17..24).collect();
        assert_eq!(at_rate.len(), 20);
        assert_eq!(retention(&baseline, &at_rate), Some(13.0 / 17.0));
    }
}
