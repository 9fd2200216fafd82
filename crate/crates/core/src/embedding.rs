//! Minor embeddings and their structural validation.
//!
//! An embedding maps each source node to a chain, a non-empty set of target
//! nodes. It is valid when chains are pairwise disjoint, each chain induces a
//! connected subgraph of the target, and every source edge has at least one
//! target edge between the two chains. [`validate`] checks all of that
//! defensively against the actual target graph and reports every violation it
//! finds rather than stopping at the first.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId};

/// Chains keyed by source node. Chain qubit lists are sorted and duplicate
/// free; iteration order is ascending source node id.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    chains: BTreeMap<NodeId, Vec<NodeId>>,
}

impl Embedding {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_chains(chains: impl IntoIterator<Item = (NodeId, Vec<NodeId>)>) -> Self {
        let chains = chains
            .into_iter()
            .map(|(node, mut qubits)| {
                qubits.sort_unstable();
                qubits.dedup();
                (node, qubits)
            })
            .collect();
        Embedding { chains }
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Number of source nodes with a chain.
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    pub fn chain(&self, node: NodeId) -> Option<&[NodeId]> {
        self.chains.get(&node).map(|c| c.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &[NodeId])> {
        self.chains.iter().map(|(&n, c)| (n, c.as_slice()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("embedding serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let mut emb: Embedding = serde_json::from_str(text)?;
        for qubits in emb.chains.values_mut() {
            qubits.sort_unstable();
            qubits.dedup();
        }
        Ok(emb)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingMetrics {
    /// Total qubits over all chains.
    pub qubit_count: u64,
    pub max_chain_length: u64,
    /// Average chain length over source nodes; 0 for the empty embedding.
    pub mean_chain_length: f64,
}

pub fn metrics(embedding: &Embedding) -> EmbeddingMetrics {
    let mut total = 0u64;
    let mut max = 0u64;
    for (_, chain) in embedding.iter() {
        total += chain.len() as u64;
        max = max.max(chain.len() as u64);
    }
    let mean = if embedding.chain_count() == 0 {
        0.0
    } else {
        total as f64 / embedding.chain_count() as f64
    };
    EmbeddingMetrics { qubit_count: total, max_chain_length: max, mean_chain_length: mean }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Source node without a chain, or with an empty one.
    MissingChain { node: NodeId },
    /// Chain keyed by a node the source graph does not have.
    UnknownSourceNode { node: NodeId },
    /// Chain uses a node the target graph does not have.
    InvalidTargetNode { node: NodeId, qubit: NodeId },
    /// Two chains share a qubit.
    OverlappingChains { first: NodeId, second: NodeId, qubit: NodeId },
    /// Chain does not induce a connected subgraph of the target.
    DisconnectedChain { node: NodeId },
    /// Source edge with no target edge between the two chains.
    UncoveredEdge { u: NodeId, v: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Every violation found, in a deterministic order.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_class(&self, probe: fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(probe)
    }
}

pub fn validate(source: &Graph, target: &Graph, embedding: &Embedding) -> ValidationReport {
    let mut violations = Vec::new();

    for (node, chain) in embedding.iter() {
        if !source.has_node(node) {
            violations.push(Violation::UnknownSourceNode { node });
        }
        if chain.is_empty() {
            violations.push(Violation::MissingChain { node });
        }
    }
    for &node in source.nodes() {
        if embedding.chain(node).is_none() {
            violations.push(Violation::MissingChain { node });
        }
    }

    // owner map; doubles as the membership index for coverage checks
    let mut owner: HashMap<NodeId, NodeId> = HashMap::new();
    for (node, chain) in embedding.iter() {
        for &q in chain {
            if !target.has_node(q) {
                violations.push(Violation::InvalidTargetNode { node, qubit: q });
            }
            match owner.entry(q) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(node);
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    violations.push(Violation::OverlappingChains {
                        first: *e.get(),
                        second: node,
                        qubit: q,
                    });
                }
            }
        }
    }

    for (node, chain) in embedding.iter() {
        if !chain_connected(target, chain) {
            violations.push(Violation::DisconnectedChain { node });
        }
    }

    for &(u, v) in source.edges() {
        let (Some(cu), Some(cv)) = (embedding.chain(u), embedding.chain(v)) else {
            violations.push(Violation::UncoveredEdge { u, v });
            continue;
        };
        if cu.is_empty() || cv.is_empty() {
            violations.push(Violation::UncoveredEdge { u, v });
            continue;
        }
        // walk the smaller chain's neighborhoods
        let (walk, other) = if cu.len() <= cv.len() { (cu, v) } else { (cv, u) };
        let covered = walk
            .iter()
            .any(|&q| target.neighbors(q).iter().any(|w| owner.get(w) == Some(&other)));
        if !covered {
            violations.push(Violation::UncoveredEdge { u, v });
        }
    }

    violations.sort();
    violations.dedup();
    ValidationReport { violations }
}

/// True when the target nodes of `chain` that exist induce a connected
/// subgraph. Qubits outside the target are skipped here; they are reported
/// separately as invalid target nodes.
fn chain_connected(target: &Graph, chain: &[NodeId]) -> bool {
    let live: Vec<NodeId> = chain.iter().copied().filter(|&q| target.has_node(q)).collect();
    if live.len() <= 1 {
        return true;
    }
    let in_chain: HashMap<NodeId, usize> = live.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let mut seen = vec![false; live.len()];
    seen[0] = true;
    let mut stack = vec![live[0]];
    let mut reached = 1;
    while let Some(q) = stack.pop() {
        for &w in target.neighbors(q) {
            if let Some(&i) = in_chain.get(&w) {
                if !seen[i] {
                    seen[i] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
    }
    reached == live.len()
}
