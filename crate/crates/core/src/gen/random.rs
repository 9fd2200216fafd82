//! Seeded random graph families. Every function takes an explicit seed and
//! draws from a ChaCha8 stream, so a (family, params, seed) triple names one
//! concrete graph forever.

use rand::Rng;

use super::{invalid, GenError};
use crate::graph::Graph;
use crate::rng::{rng_from_seed, shuffle};

pub fn erdos_renyi(n: u32, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("erdos_renyi", format!("need p in [0, 1], got {p}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, edges).unwrap())
}

/// Ring lattice with `k` neighbors per node, each clockwise edge rewired with
/// probability `beta` to a uniformly random non-duplicate endpoint.
pub fn watts_strogatz(n: u32, k: u32, beta: f64, seed: u64) -> Result<Graph, GenError> {
    if k % 2 != 0 {
        return Err(invalid("watts_strogatz", format!("need even k, got {k}")));
    }
    if k >= n {
        return Err(invalid("watts_strogatz", format!("need k < n, got k={k}, n={n}")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(invalid("watts_strogatz", format!("need beta in [0, 1], got {beta}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut adj: Vec<std::collections::BTreeSet<u32>> =
        vec![std::collections::BTreeSet::new(); n as usize];
    let connect = |adj: &mut Vec<std::collections::BTreeSet<u32>>, a: u32, b: u32| {
        adj[a as usize].insert(b);
        adj[b as usize].insert(a);
    };
    for d in 1..=k / 2 {
        for i in 0..n {
            connect(&mut adj, i, (i + d) % n);
        }
    }
    // Rewiring scans lattice edges in construction order. A node already
    // joined to everyone keeps its edge: there is nowhere to move it.
    for d in 1..=k / 2 {
        for i in 0..n {
            if rng.random::<f64>() >= beta {
                continue;
            }
            if adj[i as usize].len() as u32 == n - 1 {
                continue;
            }
            let old = (i + d) % n;
            let new = loop {
                let cand = rng.random_range(0..n);
                if cand != i && !adj[i as usize].contains(&cand) {
                    break cand;
                }
            };
            adj[i as usize].remove(&old);
            adj[old as usize].remove(&i);
            connect(&mut adj, i, new);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i as u32).map(move |&j| (i as u32, j)));
    Ok(Graph::new(n, edges).unwrap())
}

/// Preferential attachment: start from a clique on `m` nodes, then attach
/// each new node to `m` distinct targets drawn proportionally to degree.
pub fn barabasi_albert(n: u32, m: u32, seed: u64) -> Result<Graph, GenError> {
    if m == 0 || m > n {
        return Err(invalid("barabasi_albert", format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(u32, u32)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    // Attachment pool: one entry per endpoint of every edge so far. Seed
    // nodes get one extra entry each, which keeps the pool non-empty when
    // m = 1 and never changes which targets the first arrival can reach.
    let mut repeated: Vec<u32> = Vec::new();
    for i in 0..m {
        repeated.extend(std::iter::repeat(i).take(m as usize));
    }
    for v in m..n {
        let mut targets = std::collections::BTreeSet::new();
        while (targets.len() as u32) < m {
            targets.insert(repeated[rng.random_range(0..repeated.len())]);
        }
        for &t in &targets {
            edges.push((t, v));
            repeated.push(t);
        }
        repeated.extend(std::iter::repeat(v).take(m as usize));
    }
    Ok(Graph::new(n, edges).unwrap())
}

/// Random `d`-regular graph by stub matching with repair: pair shuffled
/// stubs greedily, re-shuffle the stubs whose pairs would have been loops or
/// duplicates, and restart from scratch only when no legal pair remains.
pub fn d_regular(n: u32, d: u32, seed: u64) -> Result<Graph, GenError> {
    if (n as u64 * d as u64) % 2 != 0 {
        return Err(invalid("d_regular", format!("n * d must be even, got n={n}, d={d}")));
    }
    if d >= n {
        return Err(invalid("d_regular", format!("need d < n, got n={n}, d={d}")));
    }
    const ATTEMPTS: u32 = 100;
    let mut rng = rng_from_seed(seed);
    'attempt: for _ in 0..ATTEMPTS {
        let mut edges = std::collections::HashSet::new();
        let mut stubs: Vec<u32> =
            (0..n).flat_map(|i| std::iter::repeat(i).take(d as usize)).collect();
        while !stubs.is_empty() {
            shuffle(&mut rng, &mut stubs);
            let mut leftover = Vec::new();
            for pair in stubs.chunks_exact(2) {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if a == b || !edges.insert((a, b)) {
                    leftover.extend_from_slice(pair);
                }
            }
            if leftover.len() == stubs.len() && !has_legal_pair(&leftover, &edges) {
                continue 'attempt;
            }
            stubs = leftover;
        }
        return Ok(Graph::new(n, edges).unwrap());
    }
    Err(GenError::SamplingFailure { family: "d_regular", attempts: ATTEMPTS })
}

fn has_legal_pair(stubs: &[u32], edges: &std::collections::HashSet<(u32, u32)>) -> bool {
    stubs.iter().enumerate().any(|(i, &a)| {
        stubs[i + 1..]
            .iter()
            .any(|&b| a != b && !edges.contains(&(a.min(b), a.max(b))))
    })
}

/// Blockwise independent edges: nodes in blocks of the given sizes, an edge
/// between blocks `a` and `b` appearing with probability `p[a][b]`.
pub fn stochastic_block(sizes: &[u32], p: &[Vec<f64>], seed: u64) -> Result<Graph, GenError> {
    let b = sizes.len();
    if b == 0 || sizes.iter().any(|&s| s == 0) {
        return Err(invalid("stochastic_block", "need at least one block, all sizes >= 1"));
    }
    if p.len() != b || p.iter().any(|row| row.len() != b) {
        return Err(invalid("stochastic_block", format!("probability matrix must be {b} x {b}")));
    }
    for (i, row) in p.iter().enumerate() {
        for (j, &q) in row.iter().enumerate() {
            if !(0.0..=1.0).contains(&q) {
                return Err(invalid("stochastic_block", format!("p[{i}][{j}] = {q} outside [0, 1]")));
            }
            if (q - p[j][i]).abs() > 1e-12 {
                return Err(invalid("stochastic_block", format!("p[{i}][{j}] != p[{j}][{i}]")));
            }
        }
    }
    let n: u32 = sizes.iter().sum();
    let mut block = Vec::with_capacity(n as usize);
    for (idx, &s) in sizes.iter().enumerate() {
        block.extend(std::iter::repeat(idx).take(s as usize));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p[block[i as usize]][block[j as usize]] {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, edges).unwrap())
}
