//! Swap-shift annealing embedder.
//!
//! The search starts from a feasible embedding: the target's clique template
//! when the source fits it, otherwise one path-heuristic attempt on half the
//! remaining deadline. Annealing then explores two moves, both of which keep
//! the state feasible and the total qubit count constant:
//!
//! * SWAP exchanges the chains of two source nodes (legal when every edge of
//!   both nodes stays covered);
//! * SHIFT hands one qubit from a chain to an adjacent chain (legal when the
//!   donor stays connected, non-empty, and all its edges stay covered).
//!
//! Chains may be trees; connectivity is re-checked on the induced subgraph.
//! Acceptance is Metropolis on the cost `sum of |chain|^2`, with geometric
//! cooling from an initial temperature equal to the mean per-chain cost.
//! The iteration budget is `budget_coeff * |V_target|`, scaled by the ratio
//! of the target's mean degree to the 16x16x4 Chimera reference (5.875), so
//! denser topologies get proportionally more proposals. A terminal pass then
//! greedily deletes every qubit whose removal keeps its chain connected and
//! covering, which can only shrink chains.
//!
//! The final qubit count therefore never exceeds the initial state's. When
//! the deadline expires after a feasible state exists, that state is still
//! returned as success; `Timeout` arises only when no feasible state was
//! ever reached. Tuning keys: `alpha` (cooling factor, default 0.98),
//! `budget_coeff` (default 100), `shift_weight` (shift-proposal probability,
//! default 0.5); out-of-range values are clamped.

use std::collections::BTreeSet;

use rand::Rng;

use crate::embedding::{validate, Embedding};
use crate::graph::{Graph, NodeId};
use crate::rng::{rng_from_seed, subseed};

use super::{pathfinder, AlgorithmResult, Counters, Deadline, EmbedParams, Status, Target};

pub const VERSION: &str = "pssa/0.1.0";

/// Annealing checks the wall clock every this many iterations; the deadline
/// can be overshot by at most one stride.
pub const DEADLINE_STRIDE: u64 = 256;

/// Mean degree of the 16x16x4 Chimera reference (2 * 6016 / 2048), the
/// baseline for per-topology budget scaling.
const REFERENCE_MEAN_DEGREE: f64 = 5.875;

/// Cooling happens this many times over a full budget.
const COOLING_STAGES: u64 = 200;

pub fn embed_pssa(source: &Graph, target: &Target, params: &EmbedParams) -> AlgorithmResult {
    let n = source.node_count();
    let mut counters = Counters::new();
    counters.set("requested_nodes", n as u64);
    if n == 0 || n > target.graph.node_count() {
        return AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION);
    }

    let alpha = params.tuning_or("alpha", 0.98).clamp(0.01, 0.9999);
    let budget_coeff = params.tuning_or("budget_coeff", 100.0).max(0.0);
    let shift_weight = params.tuning_or("shift_weight", 0.5).clamp(0.0, 1.0);
    let deadline = Deadline::from_seconds(params.deadline_s);
    let mut rng = rng_from_seed(params.seed);

    let init = match initial_state(source, target, params, &deadline, &mut counters) {
        Ok(chains) => chains,
        Err(status) => return AlgorithmResult::unsuccessful(status, counters, VERSION),
    };
    let mut state = AnnealState::new(source, target.graph, init);
    counters.set("init_qubits", state.qubit_total());

    let mean_degree = target.graph.mean_degree();
    let budget = if n < 2 {
        0
    } else {
        (budget_coeff * target.graph.node_count() as f64 * mean_degree / REFERENCE_MEAN_DEGREE)
            .round() as u64
    };
    let cooling_stride = (budget / COOLING_STAGES).max(1);
    let mut temperature = state.cost() as f64 / n as f64;
    let mut best = state.chains.clone();
    let mut best_cost = state.cost();

    let mut iterations = 0u64;
    let mut accepted = 0u64;
    let mut rejected_illegal = 0u64;
    let mut swaps = 0u64;
    let mut shifts = 0u64;
    let mut cooled = 0u64;
    for iter in 0..budget {
        if iter % DEADLINE_STRIDE == 0 && deadline.expired() {
            counters.set("deadline_hit", 1);
            break;
        }
        if iter > 0 && iter % cooling_stride == 0 {
            temperature *= alpha;
            cooled += 1;
        }
        iterations += 1;
        if rng.random::<f64>() < shift_weight {
            shifts += 1;
            if state.try_shift(&mut rng, temperature) {
                accepted += 1;
                if state.cost() < best_cost {
                    best_cost = state.cost();
                    best = state.chains.clone();
                }
            } else {
                rejected_illegal += 1;
            }
        } else {
            swaps += 1;
            if state.try_swap(&mut rng) {
                accepted += 1;
            } else {
                rejected_illegal += 1;
            }
        }
    }
    counters.set("iterations", iterations);
    counters.set("accepted_moves", accepted);
    counters.set("rejected_moves", rejected_illegal);
    counters.set("swap_proposals", swaps);
    counters.set("shift_proposals", shifts);
    counters.set("cooling_steps", cooled);

    // the annealed state is one of the observed states, so `best` already
    // covers it; terminal search shrinks the best state further
    let mut state = AnnealState::new(source, target.graph, best);
    let removed = state.terminal_search(&deadline);
    counters.set("terminal_removed", removed);
    counters.set("final_qubits", state.qubit_total());

    let embedding = state.to_embedding();
    if validate(source, target.graph, &embedding).valid() {
        AlgorithmResult::success(embedding, counters, VERSION)
    } else {
        // a feasibility-breaking move would be a bug; never report it green
        counters.set("internal_invalid", 1);
        AlgorithmResult::unsuccessful(Status::Failure, counters, VERSION)
    }
}

/// Feasible starting chains, indexed by source node position: the surviving
/// clique template when it is big enough, otherwise one path-heuristic run
/// on half the remaining deadline.
fn initial_state(
    source: &Graph,
    target: &Target,
    params: &EmbedParams,
    deadline: &Deadline,
    counters: &mut Counters,
) -> Result<Vec<BTreeSet<NodeId>>, Status> {
    let n = source.node_count();
    if let Some(descriptor) = target.descriptor {
        if let Ok(template) = descriptor.clique_template() {
            let surviving: Vec<Vec<NodeId>> = template
                .into_iter()
                .filter(|chain| chain.iter().all(|&q| target.graph.has_node(q)))
                .collect();
            if surviving.len() >= n {
                counters.set("init_from_template", 1);
                return Ok(surviving
                    .into_iter()
                    .take(n)
                    .map(|chain| chain.into_iter().collect())
                    .collect());
            }
        }
    }
    let fallback_params = EmbedParams {
        seed: subseed(params.seed, &["pssa", "fallback"]),
        deadline_s: (deadline.remaining_s() * 0.5).max(f64::MIN_POSITIVE),
        tuning: params.tuning.clone(),
    };
    let fallback = pathfinder::embed_pathfinder(source, target, &fallback_params);
    counters.set("init_from_fallback", 1);
    match fallback.status {
        Status::Success => {
            let chains = source
                .nodes()
                .iter()
                .map(|&v| fallback.embedding.chain(v).expect("valid embedding").iter().copied().collect())
                .collect();
            Ok(chains)
        }
        Status::Timeout => Err(Status::Timeout),
        _ => Err(Status::Failure),
    }
}

struct AnnealState<'a> {
    host: &'a Graph,
    /// Source adjacency as positions into `chains`.
    src_adj: Vec<Vec<u32>>,
    source_ids: &'a [NodeId],
    chains: Vec<BTreeSet<NodeId>>,
    /// Which source position occupies each qubit id, if any.
    owner: Vec<Option<u32>>,
    /// Current `sum of |chain|^2`.
    cost: u64,
}

impl<'a> AnnealState<'a> {
    fn new(source: &'a Graph, host: &'a Graph, chains: Vec<BTreeSet<NodeId>>) -> Self {
        let ids = source.nodes();
        let src_adj = ids
            .iter()
            .map(|&v| {
                source
                    .neighbors(v)
                    .iter()
                    .map(|&u| ids.binary_search(&u).unwrap() as u32)
                    .collect()
            })
            .collect();
        let mut owner = vec![None; host.id_bound() as usize];
        let mut cost = 0u64;
        for (i, chain) in chains.iter().enumerate() {
            for &q in chain {
                owner[q as usize] = Some(i as u32);
            }
            cost += (chain.len() * chain.len()) as u64;
        }
        AnnealState { host, src_adj, source_ids: ids, chains, owner, cost }
    }

    fn cost(&self) -> u64 {
        self.cost
    }

    fn qubit_total(&self) -> u64 {
        self.chains.iter().map(|c| c.len() as u64).sum()
    }

    /// Does `set` have a hardware edge into the chain of source position `w`?
    fn touches(&self, set: &BTreeSet<NodeId>, w: u32) -> bool {
        set.iter().any(|&q| {
            self.host.neighbors(q).iter().any(|&r| self.owner[r as usize] == Some(w))
        })
    }

    /// Is `set` minus `skip` connected in the host? Singleton and empty
    /// remainders count as connected.
    fn connected_without(&self, set: &BTreeSet<NodeId>, skip: NodeId) -> bool {
        let mut remaining: BTreeSet<NodeId> = set.iter().copied().filter(|&q| q != skip).collect();
        let Some(&start) = remaining.iter().next() else { return true };
        let mut frontier = vec![start];
        remaining.remove(&start);
        while let Some(q) = frontier.pop() {
            for &r in self.host.neighbors(q) {
                if remaining.remove(&r) {
                    frontier.push(r);
                }
            }
        }
        remaining.is_empty()
    }

    /// SWAP: exchange the chains of two random source nodes. Chain lengths
    /// are untouched (cost delta zero), so acceptance is purely a legality
    /// question: every edge of both nodes must stay covered afterwards.
    fn try_swap(&mut self, rng: &mut impl Rng) -> bool {
        let n = self.chains.len();
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let (u, v) = (u as u32, v as u32);
        // after the swap u owns what v owned and vice versa
        let legal = self
            .src_adj[u as usize]
            .iter()
            .filter(|&&w| w != v)
            .all(|&w| self.touches(&self.chains[v as usize], w))
            && self
                .src_adj[v as usize]
                .iter()
                .filter(|&&w| w != u)
                .all(|&w| self.touches(&self.chains[u as usize], w));
        if !legal {
            return false;
        }
        self.chains.swap(u as usize, v as usize);
        for &q in &self.chains[u as usize] {
            self.owner[q as usize] = Some(u);
        }
        for &q in &self.chains[v as usize] {
            self.owner[q as usize] = Some(v);
        }
        true
    }

    /// SHIFT: move one qubit from a random donor chain to an adjacent chain.
    /// Metropolis-gated on the cost delta, then checked for legality.
    fn try_shift(&mut self, rng: &mut impl Rng, temperature: f64) -> bool {
        let d = rng.random_range(0..self.chains.len()) as u32;
        let donor = &self.chains[d as usize];
        if donor.len() < 2 {
            return false;
        }
        let q = *donor.iter().nth(rng.random_range(0..donor.len())).unwrap();
        // distinct neighboring chains of q, in qubit-id order
        let mut recipients: Vec<u32> = Vec::new();
        for &r in self.host.neighbors(q) {
            if let Some(c) = self.owner[r as usize] {
                if c != d && !recipients.contains(&c) {
                    recipients.push(c);
                }
            }
        }
        if recipients.is_empty() {
            return false;
        }
        let c = recipients[rng.random_range(0..recipients.len())];

        let delta = 2.0
            * (self.chains[c as usize].len() as f64 - self.chains[d as usize].len() as f64 + 1.0);
        if delta > 0.0 && rng.random::<f64>() >= (-delta / temperature.max(f64::MIN_POSITIVE)).exp()
        {
            return false;
        }

        if !self.connected_without(&self.chains[d as usize], q) {
            return false;
        }
        // evaluate donor coverage with q provisionally owned by the recipient
        self.owner[q as usize] = Some(c);
        let donor_minus: BTreeSet<NodeId> =
            self.chains[d as usize].iter().copied().filter(|&x| x != q).collect();
        let covered = self.src_adj[d as usize].iter().all(|&w| self.touches(&donor_minus, w));
        if !covered {
            self.owner[q as usize] = Some(d);
            return false;
        }
        let (dl, cl) = (self.chains[d as usize].len() as u64, self.chains[c as usize].len() as u64);
        self.cost = self.cost - dl * dl - cl * cl + (dl - 1) * (dl - 1) + (cl + 1) * (cl + 1);
        self.chains[d as usize].remove(&q);
        self.chains[c as usize].insert(q);
        true
    }

    /// Greedily delete every qubit whose removal keeps its chain connected,
    /// non-empty, and covering; repeats until a full pass removes nothing.
    fn terminal_search(&mut self, deadline: &Deadline) -> u64 {
        let mut removed = 0u64;
        loop {
            let mut progress = false;
            for v in 0..self.chains.len() as u32 {
                if deadline.expired() {
                    return removed;
                }
                let snapshot: Vec<NodeId> = self.chains[v as usize].iter().copied().collect();
                for q in snapshot {
                    if self.chains[v as usize].len() < 2 {
                        break;
                    }
                    if !self.connected_without(&self.chains[v as usize], q) {
                        continue;
                    }
                    self.owner[q as usize] = None;
                    let rest: BTreeSet<NodeId> =
                        self.chains[v as usize].iter().copied().filter(|&x| x != q).collect();
                    if self.src_adj[v as usize].iter().all(|&w| self.touches(&rest, w)) {
                        let len = self.chains[v as usize].len() as u64;
                        self.cost = self.cost - len * len + (len - 1) * (len - 1);
                        self.chains[v as usize].remove(&q);
                        removed += 1;
                        progress = true;
                    } else {
                        self.owner[q as usize] = Some(v);
                    }
                }
            }
            if !progress {
                return removed;
            }
        }
    }

    fn to_embedding(&self) -> Embedding {
        Embedding::from_chains(
            self.source_ids
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, self.chains[i].iter().copied().collect())),
        )
    }
}
