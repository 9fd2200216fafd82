//! Template-based clique embedder.
//!
//! The target topology's native clique template is a list of pairwise
//! coupled, vertex-disjoint, connected chains, so embedding any source with
//! `n` nodes is just handing the first `n` template chains to the source
//! nodes in id order. The source's edges are never inspected: whatever they
//! are, the template covers them. On faulted targets only chains with every
//! qubit intact are kept; couplers between intact chains survive node
//! removal automatically, so the filtered template stays valid.

use crate::embedding::Embedding;
use crate::graph::Graph;

use super::{AlgorithmResult, Counters, EmbedParams, Status, Target};

pub const VERSION: &str = "clique/0.1.0";

/// Embeds `source` onto the target's clique template. Fails when the source
/// has more nodes than the template has surviving chains. A single-node
/// source needs no chain structure and is placed on the lowest qubit id.
pub fn embed_clique(source: &Graph, target: &Target, _params: &EmbedParams) -> AlgorithmResult {
    let n = source.node_count();
    let mut counters = Counters::new();
    counters.set("requested_nodes", n as u64);

    if n == 0 || n > target.graph.node_count() {
        counters.set("capacity_exceeded", u64::from(n > 0));
        return AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION);
    }
    if n == 1 {
        let qubit = target.graph.nodes()[0];
        let embedding = Embedding::from_chains([(source.nodes()[0], vec![qubit])]);
        return AlgorithmResult::success(embedding, counters, VERSION);
    }

    let Some(descriptor) = target.descriptor else {
        counters.set("no_template", 1);
        return AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION);
    };
    let Ok(template) = descriptor.clique_template() else {
        counters.set("no_template", 1);
        return AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION);
    };
    counters.set("template_capacity", template.len() as u64);

    let surviving: Vec<Vec<_>> = template
        .into_iter()
        .filter(|chain| chain.iter().all(|&q| target.graph.has_node(q)))
        .collect();
    counters.set("surviving_chains", surviving.len() as u64);

    if surviving.len() < n {
        counters.set("capacity_exceeded", 1);
        return AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION);
    }
    let embedding =
        Embedding::from_chains(source.nodes().iter().copied().zip(surviving.into_iter().take(n)));
    AlgorithmResult::success(embedding, counters, VERSION)
}
