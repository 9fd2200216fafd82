//! Instances manufactured from a hardware topology so that a correct answer
//! is known by construction.
//!
//! `gen_planted` partitions the topology into connected chains and returns
//! the quotient graph together with the partition as a witness embedding:
//! any sound embedder given that graph and that topology must succeed, and
//! the witness bounds how good a solution can be expected to be.
//!
//! `gen_native_subgraph` carves out a random connected induced subgraph and
//! remembers where each node came from, so embedding it back is possible
//! with every chain a single qubit.

use std::collections::BTreeSet;

use rand::Rng;

use super::{invalid, GenError};
use crate::embedding::Embedding;
use crate::graph::{Graph, NodeId};
use crate::rng::{rng_from_seed, sample_prefix};
use crate::topology::TopologyDescriptor;

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub witness: Embedding,
}

/// Grow `chains` connected regions from random seeds until the topology is
/// exhausted, then contract each region to one node. Growth always extends a
/// currently smallest region, which keeps chain sizes near-uniform.
pub fn gen_planted(
    target: &TopologyDescriptor,
    chains: u32,
    seed: u64,
) -> Result<PlantedInstance, GenError> {
    let host = target.build()?;
    let total = host.node_count() as u32;
    if chains == 0 || chains > total {
        return Err(invalid(
            "planted",
            format!("need 1 <= chains <= {total} for {target}, got {chains}"),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let starts = sample_prefix(&mut rng, host.nodes(), chains as usize);

    let mut owner: Vec<Option<u32>> = vec![None; host.id_bound() as usize];
    let mut members: Vec<Vec<NodeId>> = Vec::with_capacity(chains as usize);
    let mut frontier: Vec<Vec<NodeId>> = Vec::with_capacity(chains as usize);
    for (ci, &s) in starts.iter().enumerate() {
        owner[s as usize] = Some(ci as u32);
        members.push(vec![s]);
        frontier.push(host.neighbors(s).to_vec());
    }

    // Frontier entries may be stale (claimed by another chain since being
    // queued); they are discarded on pop. A chain with an empty frontier has
    // no unclaimed neighbor left and never grows again.
    loop {
        let mut pick = None;
        for ci in 0..members.len() {
            if frontier[ci].is_empty() {
                continue;
            }
            match pick {
                None => pick = Some(ci),
                Some(best) if members[ci].len() < members[best].len() => pick = Some(ci),
                Some(_) => {}
            }
        }
        let Some(ci) = pick else { break };
        while let Some(v) = pop_random(&mut rng, &mut frontier[ci]) {
            if owner[v as usize].is_some() {
                continue;
            }
            owner[v as usize] = Some(ci as u32);
            members[ci].push(v);
            let fresh = host.neighbors(v).iter().copied().filter(|&w| owner[w as usize].is_none());
            frontier[ci].extend(fresh);
            break;
        }
    }

    let mut quotient_edges = BTreeSet::new();
    for &(u, v) in host.edges() {
        let (Some(a), Some(b)) = (owner[u as usize], owner[v as usize]) else { continue };
        if a != b {
            quotient_edges.insert((a.min(b), a.max(b)));
        }
    }
    let graph = Graph::new(chains, quotient_edges).expect("quotient labels are in range");
    let witness =
        Embedding::from_chains(members.into_iter().enumerate().map(|(ci, ch)| (ci as u32, ch)));
    Ok(PlantedInstance { graph, witness })
}

#[derive(Debug, Clone)]
pub struct NativeSample {
    pub graph: Graph,
    /// Topology node behind each sample node; index `i` backs sample node `i`.
    pub original_ids: Vec<NodeId>,
}

/// Sample a connected `n`-node induced subgraph of the topology by random
/// breadth-first growth, relabeling nodes to `0..n` by ascending original id.
pub fn gen_native_subgraph(
    target: &TopologyDescriptor,
    n: u32,
    seed: u64,
) -> Result<NativeSample, GenError> {
    let host = target.build()?;
    let total = host.node_count() as u32;
    if n == 0 || n > total {
        return Err(invalid(
            "native_subgraph",
            format!("need 1 <= n <= {total} for {target}, got {n}"),
        ));
    }
    const ATTEMPTS: u32 = 50;
    let mut rng = rng_from_seed(seed);
    for _ in 0..ATTEMPTS {
        let start = host.nodes()[rng.random_range(0..host.node_count())];
        let mut picked = BTreeSet::from([start]);
        let mut frontier = host.neighbors(start).to_vec();
        while (picked.len() as u32) < n {
            let mut grown = false;
            while let Some(v) = pop_random(&mut rng, &mut frontier) {
                if !picked.insert(v) {
                    continue;
                }
                frontier.extend(host.neighbors(v).iter().copied().filter(|w| !picked.contains(w)));
                grown = true;
                break;
            }
            if !grown {
                break;
            }
        }
        if picked.len() as u32 != n {
            continue;
        }
        let original_ids: Vec<NodeId> = picked.iter().copied().collect();
        let index = |v: NodeId| original_ids.binary_search(&v).unwrap() as NodeId;
        let edges = host
            .edges()
            .iter()
            .filter(|(u, v)| picked.contains(u) && picked.contains(v))
            .map(|&(u, v)| (index(u), index(v)));
        let graph = Graph::new(n, edges).expect("relabeled ids are dense");
        return Ok(NativeSample { graph, original_ids });
    }
    Err(GenError::SamplingFailure { family: "native_subgraph", attempts: ATTEMPTS })
}

fn pop_random<T: Copy>(rng: &mut impl Rng, pool: &mut Vec<T>) -> Option<T> {
    if pool.is_empty() {
        return None;
    }
    let idx = rng.random_range(0..pool.len());
    Some(pool.swap_remove(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate;

    fn chimera(m: u32, n: u32, t: u32) -> TopologyDescriptor {
        TopologyDescriptor::Chimera { m, n, t }
    }

    #[test]
    fn planted_witness_is_a_valid_embedding() {
        let desc = chimera(4, 4, 4);
        let host = desc.build().unwrap();
        let inst = gen_planted(&desc, 8, 42).unwrap();
        assert_eq!(inst.graph.node_count(), 8);
        assert!(inst.graph.is_connected());
        let report = validate(&inst.graph, &host, &inst.witness);
        assert!(report.valid(), "{:?}", report.violations);
        // every topology node belongs to exactly one chain
        let used: usize = inst.witness.iter().map(|(_, ch)| ch.len()).sum();
        assert_eq!(used, host.node_count());
    }

    #[test]
    fn planted_chain_sizes_stay_balanced() {
        let inst = gen_planted(&chimera(4, 4, 4), 16, 3).unwrap();
        let sizes: Vec<usize> = inst.witness.iter().map(|(_, ch)| ch.len()).collect();
        let mean = 128 / 16;
        assert!(*sizes.iter().max().unwrap() <= 2 * mean, "sizes {sizes:?}");
        assert!(*sizes.iter().min().unwrap() >= mean / 4, "sizes {sizes:?}");
    }

    #[test]
    fn planted_with_singleton_chains_reproduces_the_topology() {
        let desc = chimera(2, 2, 4);
        let host = desc.build().unwrap();
        let inst = gen_planted(&desc, host.node_count() as u32, 7).unwrap();
        assert_eq!(inst.graph.edge_count(), host.edge_count());
        assert!(inst.witness.iter().all(|(_, ch)| ch.len() == 1));
        assert!(validate(&inst.graph, &host, &inst.witness).valid());
    }

    #[test]
    fn planted_is_seed_deterministic() {
        let desc = chimera(3, 3, 4);
        let a = gen_planted(&desc, 12, 5).unwrap();
        let b = gen_planted(&desc, 12, 5).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.witness, b.witness);
        let c = gen_planted(&desc, 12, 6).unwrap();
        assert_ne!(a.witness, c.witness);
    }

    #[test]
    fn planted_rejects_bad_chain_counts() {
        assert!(gen_planted(&chimera(1, 1, 4), 0, 0).is_err());
        assert!(gen_planted(&chimera(1, 1, 4), 9, 0).is_err());
        assert!(gen_planted(&chimera(1, 1, 4), 8, 0).is_ok());
    }

    #[test]
    fn native_subgraph_is_induced_and_connected() {
        let desc = chimera(2, 2, 4);
        let host = desc.build().unwrap();
        let sample = gen_native_subgraph(&desc, 12, 9).unwrap();
        assert_eq!(sample.graph.node_count(), 12);
        assert_eq!(sample.original_ids.len(), 12);
        assert!(sample.graph.is_connected());
        assert!(sample.original_ids.windows(2).all(|w| w[0] < w[1]));
        for i in 0..12u32 {
            for j in i + 1..12 {
                let expect = host.has_edge(sample.original_ids[i as usize], sample.original_ids[j as usize]);
                assert_eq!(sample.graph.has_edge(i, j), expect, "pair ({i},{j})");
            }
        }
        // sampling the full topology returns it unchanged
        let full = gen_native_subgraph(&desc, host.node_count() as u32, 1).unwrap();
        assert_eq!(full.graph, host);
        assert_eq!(full.original_ids, host.nodes());
    }

    #[test]
    fn native_subgraph_embeds_by_identity_chains() {
        let desc = chimera(3, 3, 4);
        let host = desc.build().unwrap();
        let sample = gen_native_subgraph(&desc, 30, 11).unwrap();
        let identity = Embedding::from_chains(
            sample.original_ids.iter().enumerate().map(|(i, &q)| (i as u32, vec![q])),
        );
        assert!(validate(&sample.graph, &host, &identity).valid());
    }

    #[test]
    fn native_subgraph_is_seed_deterministic() {
        let desc = chimera(3, 3, 4);
        let a = gen_native_subgraph(&desc, 20, 4).unwrap();
        let b = gen_native_subgraph(&desc, 20, 4).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.original_ids, b.original_ids);
        let c = gen_native_subgraph(&desc, 20, 5).unwrap();
        assert_ne!(a.original_ids, c.original_ids);
    }

    #[test]
    fn native_subgraph_rejects_bad_sizes() {
        assert!(gen_native_subgraph(&chimera(1, 1, 4), 0, 0).is_err());
        assert!(gen_native_subgraph(&chimera(1, 1, 4), 9, 0).is_err());
    }
}
