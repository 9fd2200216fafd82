//! Path-heuristic embedder: chains grow out of weighted shortest paths.
//!
//! Source nodes are visited in seeded random order. Each node picks a root
//! qubit minimizing the summed path cost to every already-embedded neighbor
//! chain and takes the union of those paths as its chain. Qubit cost grows
//! exponentially with how many chains already use it, so shared qubits are
//! tolerated at first and then priced out: rip-up-and-reroute sweeps re-place
//! every chain until no qubit is shared or the sweep budget runs out.
//!
//! The `sweeps` tuning key bounds the improvement rounds (default 10). The
//! deadline is checked between single-node placements.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::Rng;

use crate::embedding::{validate, Embedding};
use crate::graph::{Graph, NodeId};
use crate::rng::{rng_from_seed, shuffle};

use super::{AlgorithmResult, Counters, Deadline, EmbedParams, Status, Target};

pub const VERSION: &str = "pathfinder/0.1.0";

/// Qubit cost is `WEIGHT_BASE ^ min(users, WEIGHT_CAP)`; the cap keeps path
/// sums far from `u64` overflow even on hosts with thousands of qubits.
const WEIGHT_BASE: u64 = 10;
const WEIGHT_CAP: u32 = 15;

const UNREACHED: u64 = u64::MAX;

pub fn embed_pathfinder(source: &Graph, target: &Target, params: &EmbedParams) -> AlgorithmResult {
    let n = source.node_count();
    let mut counters = Counters::new();
    counters.set("requested_nodes", n as u64);
    if n == 0 || n > target.graph.node_count() {
        return AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION);
    }

    let sweeps = params.tuning_or("sweeps", 10.0).max(0.0) as u32;
    let deadline = Deadline::from_seconds(params.deadline_s);
    let mut rng = rng_from_seed(params.seed);
    let mut state = State::new(source, target.graph);
    let mut placements: u64 = 0;

    let mut order: Vec<usize> = (0..n).collect();
    for round in 0..=sweeps {
        shuffle(&mut rng, &mut order);
        for &v in &order {
            if deadline.expired() {
                counters.set("placements", placements);
                counters.set("sweeps_used", round as u64);
                return AlgorithmResult::unsuccessful(Status::Timeout, counters, VERSION);
            }
            state.rip(v);
            state.place(v, &mut rng);
            placements += 1;
        }
        if state.overlap_free() {
            let embedding = state.to_embedding();
            if validate(source, target.graph, &embedding).valid() {
                counters.set("placements", placements);
                counters.set("sweeps_used", round as u64);
                return AlgorithmResult::success(embedding, counters, VERSION);
            }
        }
    }
    counters.set("placements", placements);
    counters.set("sweeps_used", sweeps as u64 + 1);
    counters.set("shared_qubits", state.shared_qubits());
    AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION)
}

struct State<'a> {
    source: &'a Graph,
    host: &'a Graph,
    /// Chain per source node, indexed by position in `source.nodes()`.
    chains: Vec<BTreeSet<NodeId>>,
    /// How many chains currently contain each qubit, indexed by qubit id.
    usage: Vec<u32>,
}

impl<'a> State<'a> {
    fn new(source: &'a Graph, host: &'a Graph) -> Self {
        State {
            source,
            host,
            chains: vec![BTreeSet::new(); source.node_count()],
            usage: vec![0; host.id_bound() as usize],
        }
    }

    fn weight(&self, q: NodeId) -> u64 {
        WEIGHT_BASE.pow(self.usage[q as usize].min(WEIGHT_CAP))
    }

    fn rip(&mut self, v: usize) {
        for &q in &self.chains[v] {
            self.usage[q as usize] -= 1;
        }
        self.chains[v].clear();
    }

    fn place(&mut self, v: usize, rng: &mut impl Rng) {
        let vid = self.source.nodes()[v];
        let neighbor_chains: Vec<usize> = self
            .source
            .neighbors(vid)
            .iter()
            .map(|&u| self.source.nodes().binary_search(&u).unwrap())
            .filter(|&u| !self.chains[u].is_empty())
            .collect();

        let chain = if neighbor_chains.is_empty() {
            // free placement: a uniformly random least-loaded qubit
            let lightest = self.host.nodes().iter().map(|&q| self.usage[q as usize]).min().unwrap();
            let pool: Vec<NodeId> = self
                .host
                .nodes()
                .iter()
                .copied()
                .filter(|&q| self.usage[q as usize] == lightest)
                .collect();
            BTreeSet::from([pool[rng.random_range(0..pool.len())]])
        } else {
            let runs: Vec<DijkstraRun> =
                neighbor_chains.iter().map(|&u| self.shortest_paths(&self.chains[u])).collect();
            let Some(root) = self.pick_root(&runs) else {
                // host has no qubits reachable from any neighbor chain; park
                // on a least-loaded qubit and let validation fail the sweep
                let lightest =
                    self.host.nodes().iter().map(|&q| self.usage[q as usize]).min().unwrap();
                let q = self.host.nodes().iter().copied().find(|&q| self.usage[q as usize] == lightest);
                self.commit(v, BTreeSet::from([q.unwrap()]));
                return;
            };
            let mut chain = BTreeSet::from([root]);
            for run in &runs {
                if run.dist[root as usize] == UNREACHED {
                    continue;
                }
                let mut cur = root;
                while run.dist[cur as usize] != 0 {
                    chain.insert(cur);
                    cur = run.parent[cur as usize].expect("reached qubits have parents");
                }
            }
            chain
        };
        self.commit(v, chain);
    }

    fn commit(&mut self, v: usize, chain: BTreeSet<NodeId>) {
        for &q in &chain {
            self.usage[q as usize] += 1;
        }
        self.chains[v] = chain;
    }

    /// Multi-source Dijkstra out of a chain. Chain qubits cost nothing;
    /// stepping onto qubit `r` costs `weight(r)`. Ties in the heap resolve
    /// by qubit id, keeping the search deterministic.
    fn shortest_paths(&self, seed_chain: &BTreeSet<NodeId>) -> DijkstraRun {
        let bound = self.host.id_bound() as usize;
        let mut dist = vec![UNREACHED; bound];
        let mut parent: Vec<Option<NodeId>> = vec![None; bound];
        let mut heap = BinaryHeap::new();
        for &s in seed_chain {
            dist[s as usize] = 0;
            heap.push(Reverse((0u64, s)));
        }
        while let Some(Reverse((d, q))) = heap.pop() {
            if d > dist[q as usize] {
                continue;
            }
            for &r in self.host.neighbors(q) {
                let next = d.saturating_add(self.weight(r));
                if next < dist[r as usize] {
                    dist[r as usize] = next;
                    parent[r as usize] = Some(q);
                    heap.push(Reverse((next, r)));
                }
            }
        }
        DijkstraRun { dist, parent }
    }

    /// Root qubit for a new chain: reached by as many neighbor chains as
    /// possible, then minimal cost, then lowest id. The cost charges the
    /// root's own weight exactly once plus the interior cost of each path;
    /// without that single charge a qubit inside a neighbor chain would score
    /// zero and degree-1 nodes would always pile onto their neighbor.
    fn pick_root(&self, runs: &[DijkstraRun]) -> Option<NodeId> {
        self.host
            .nodes()
            .iter()
            .copied()
            .map(|q| {
                let w = self.weight(q);
                let mut reached = 0u32;
                let mut total: u128 = w as u128;
                for run in runs {
                    let d = run.dist[q as usize];
                    if d != UNREACHED {
                        reached += 1;
                        // d already includes w for non-seed qubits
                        total += d.saturating_sub(w) as u128;
                    }
                }
                (Reverse(reached), total, q)
            })
            .filter(|&(Reverse(reached), _, _)| reached > 0)
            .min()
            .map(|(_, _, q)| q)
    }

    fn overlap_free(&self) -> bool {
        self.usage.iter().all(|&u| u <= 1)
    }

    fn shared_qubits(&self) -> u64 {
        self.usage.iter().filter(|&&u| u > 1).count() as u64
    }

    fn to_embedding(&self) -> Embedding {
        Embedding::from_chains(
            self.source
                .nodes()
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, self.chains[i].iter().copied().collect())),
        )
    }
}

struct DijkstraRun {
    dist: Vec<u64>,
    parent: Vec<Option<NodeId>>,
}
