//! Hardware graph families: Chimera, Pegasus, and Zephyr.
//!
//! All three are built from their coordinate systems and exposed as plain
//! [`Graph`]s with dense node ids (the lexicographic rank of the coordinate
//! among the qubits that exist). Pegasus drops the boundary qubits that have
//! no orthogonal couplers, which is what deployed chips expose; `pegasus(16)`
//! comes out at exactly 5,640 nodes and 40,484 edges.
//!
//! Each family also carries a native clique template: a list of pairwise
//! coupled, vertex-disjoint, internally connected chains. The template sizes
//! are this crate's own constructions (`t*min(m,n)` for Chimera, `12*(m-2)`
//! for Pegasus with `m >= 3`, `2*t*m` for Zephyr) and may sit below the
//! largest clique the hardware admits; they are what the clique-based
//! embedder and the annealing initializer use.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};

/// Row offsets of vertical Pegasus qubits, indexed by `k`.
const PEGASUS_OFF_V: [u32; 12] = [2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6];
/// Column offsets of horizontal Pegasus qubits, indexed by `k`.
const PEGASUS_OFF_H: [u32; 12] = [6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("invalid topology parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TopologyDescriptor {
    Chimera { m: u32, n: u32, t: u32 },
    Pegasus { m: u32 },
    Zephyr { m: u32, t: u32 },
}

/// Accepts either the compact string form (`chimera(16,16,4)`) or a map with
/// a `kind` field. Unknown or missing map keys are hard errors so that typos
/// in experiment configs cannot be silently ignored.
impl<'de> Deserialize<'de> for TopologyDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;

        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = TopologyDescriptor;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a topology string like `pegasus(16)` or a map with a `kind` field")
            }

            fn visit_str<E: Error>(self, s: &str) -> Result<Self::Value, E> {
                s.parse().map_err(E::custom)
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut map: A,
            ) -> Result<Self::Value, A::Error> {
                const KEYS: &[&str] = &["kind", "m", "n", "t"];
                let mut kind: Option<String> = None;
                let mut dims: std::collections::BTreeMap<String, u32> = Default::default();
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "kind" => {
                            if kind.replace(map.next_value()?).is_some() {
                                return Err(A::Error::duplicate_field("kind"));
                            }
                        }
                        "m" | "n" | "t" => {
                            let value = map.next_value()?;
                            if dims.insert(key.clone(), value).is_some() {
                                return Err(A::Error::custom(format!("duplicate field `{key}`")));
                            }
                        }
                        other => return Err(A::Error::unknown_field(other, KEYS)),
                    }
                }
                let kind = kind.ok_or_else(|| A::Error::missing_field("kind"))?;
                let mut take = |name: &'static str| {
                    dims.remove(name).ok_or_else(|| A::Error::missing_field(name))
                };
                let desc = match kind.as_str() {
                    "chimera" => {
                        TopologyDescriptor::Chimera { m: take("m")?, n: take("n")?, t: take("t")? }
                    }
                    "pegasus" => TopologyDescriptor::Pegasus { m: take("m")? },
                    "zephyr" => TopologyDescriptor::Zephyr { m: take("m")?, t: take("t")? },
                    other => {
                        return Err(A::Error::unknown_variant(
                            other,
                            &["chimera", "pegasus", "zephyr"],
                        ))
                    }
                };
                if let Some(extra) = dims.keys().next() {
                    return Err(A::Error::custom(format!("field `{extra}` not used by {kind}")));
                }
                Ok(desc)
            }
        }
        d.deserialize_any(V)
    }
}

impl TopologyDescriptor {
    pub fn validate(&self) -> Result<(), TopologyError> {
        match *self {
            TopologyDescriptor::Chimera { m, n, t } if m >= 1 && n >= 1 && t >= 1 => Ok(()),
            TopologyDescriptor::Chimera { m, n, t } => Err(TopologyError::InvalidParams(
                format!("chimera needs m, n, t >= 1, got ({m}, {n}, {t})"),
            )),
            TopologyDescriptor::Pegasus { m } if m >= 2 => Ok(()),
            TopologyDescriptor::Pegasus { m } => Err(TopologyError::InvalidParams(format!(
                "pegasus needs m >= 2, got {m}"
            ))),
            TopologyDescriptor::Zephyr { m, t } if m >= 1 && t >= 1 => Ok(()),
            TopologyDescriptor::Zephyr { m, t } => Err(TopologyError::InvalidParams(format!(
                "zephyr needs m, t >= 1, got ({m}, {t})"
            ))),
        }
    }

    pub fn build(&self) -> Result<Graph, TopologyError> {
        self.validate()?;
        Ok(match *self {
            TopologyDescriptor::Chimera { m, n, t } => chimera_graph(m, n, t),
            TopologyDescriptor::Pegasus { m } => pegasus_graph(m),
            TopologyDescriptor::Zephyr { m, t } => zephyr_graph(m, t),
        })
    }

    /// Size of this family's native clique template.
    pub fn max_native_clique(&self) -> u32 {
        match *self {
            TopologyDescriptor::Chimera { m, n, t } => t * m.min(n),
            TopologyDescriptor::Pegasus { m } => {
                if m == 2 {
                    4
                } else {
                    12 * (m - 2)
                }
            }
            TopologyDescriptor::Zephyr { m, t } => 2 * t * m,
        }
    }

    /// Chains of the native clique template, in variable order. Every pair of
    /// chains is joined by at least one coupler, chains are vertex-disjoint,
    /// and each chain induces a connected subgraph of the pristine hardware
    /// graph.
    pub fn clique_template(&self) -> Result<Vec<Vec<NodeId>>, TopologyError> {
        self.validate()?;
        Ok(match *self {
            TopologyDescriptor::Chimera { m, n, t } => chimera_clique(m, n, t),
            TopologyDescriptor::Pegasus { m } => pegasus_clique(m),
            TopologyDescriptor::Zephyr { m, t } => zephyr_clique(m, t),
        })
    }
}

impl fmt::Display for TopologyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TopologyDescriptor::Chimera { m, n, t } => write!(f, "chimera({m},{n},{t})"),
            TopologyDescriptor::Pegasus { m } => write!(f, "pegasus({m})"),
            TopologyDescriptor::Zephyr { m, t } => write!(f, "zephyr({m},{t})"),
        }
    }
}

impl FromStr for TopologyDescriptor {
    type Err = TopologyError;

    /// Parses the [`Display`](fmt::Display) form, e.g. `chimera(16,16,4)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TopologyError::InvalidParams(format!("cannot parse topology `{s}`"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let desc = match (name.trim(), nums.as_slice()) {
            ("chimera", &[m, n, t]) => TopologyDescriptor::Chimera { m, n, t },
            ("pegasus", &[m]) => TopologyDescriptor::Pegasus { m },
            ("zephyr", &[m, t]) => TopologyDescriptor::Zephyr { m, t },
            _ => return Err(bad()),
        };
        desc.validate()?;
        Ok(desc)
    }
}

// ---------------------------------------------------------------------------
// Chimera

/// Id of qubit (row, col, side, shore index) in an m x n Chimera grid.
fn chimera_id(n: u32, t: u32, r: u32, c: u32, side: u32, k: u32) -> NodeId {
    ((r * n + c) * 2 + side) * t + k
}

fn chimera_graph(m: u32, n: u32, t: u32) -> Graph {
    let mut edges = Vec::new();
    for r in 0..m {
        for c in 0..n {
            for k0 in 0..t {
                for k1 in 0..t {
                    edges.push((chimera_id(n, t, r, c, 0, k0), chimera_id(n, t, r, c, 1, k1)));
                }
            }
            for k in 0..t {
                if r + 1 < m {
                    edges.push((chimera_id(n, t, r, c, 0, k), chimera_id(n, t, r + 1, c, 0, k)));
                }
                if c + 1 < n {
                    edges.push((chimera_id(n, t, r, c, 1, k), chimera_id(n, t, r, c + 1, 1, k)));
                }
            }
        }
    }
    Graph::new(2 * t * m * n, edges).expect("chimera edges are in range by construction")
}

/// Triad clique template on the top-left `s x s` subgrid, `s = min(m, n)`.
/// Variable `j*t + k` takes the shore-`k` column path down to the diagonal
/// cell plus the shore-`k` row path out to the right; all chains have length
/// `s + 1`.
fn chimera_clique(m: u32, n: u32, t: u32) -> Vec<Vec<NodeId>> {
    let s = m.min(n);
    let mut chains = Vec::with_capacity((t * s) as usize);
    for j in 0..s {
        for k in 0..t {
            let mut chain = Vec::with_capacity(s as usize + 1);
            for r in 0..=j {
                chain.push(chimera_id(n, t, r, j, 0, k));
            }
            for c in j..s {
                chain.push(chimera_id(n, t, j, c, 1, k));
            }
            chains.push(chain);
        }
    }
    chains
}

// ---------------------------------------------------------------------------
// Pegasus
//
// Qubit (u, w, k, z): u is the orientation, w the perpendicular tile offset,
// k in 0..12 the offset within the tile, z in 0..m-1 the parallel tile
// offset. A vertical qubit (u = 0) is a 12-row segment at column 12w + k
// spanning rows [12z + OFF_V[k], +11]; horizontal qubits transpose that with
// OFF_H. Couplers: consecutive segments on a line (external), the (2j, 2j+1)
// pair on a tile (odd), and every crossing of perpendicular segments
// (internal). Boundary qubits whose segments cross nothing are dropped.

fn pegasus_kept(m: u32, w: u32, k: u32) -> bool {
    !(w == 0 && k < 2) && !(w == m - 1 && k > 9)
}

fn pegasus_coords(m: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut coords = Vec::new();
    for u in 0..2 {
        for w in 0..m {
            for k in 0..12 {
                if pegasus_kept(m, w, k) {
                    for z in 0..m - 1 {
                        coords.push((u, w, k, z));
                    }
                }
            }
        }
    }
    coords
}

fn pegasus_graph(m: u32) -> Graph {
    let coords = pegasus_coords(m);
    let index: HashMap<(u32, u32, u32, u32), NodeId> = coords
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as NodeId))
        .collect();
    let id = |c: (u32, u32, u32, u32)| index.get(&c).copied();

    let mut edges = Vec::new();
    for &(u, w, k, z) in &coords {
        let a = id((u, w, k, z)).unwrap();
        if z + 1 < m - 1 {
            edges.push((a, id((u, w, k, z + 1)).unwrap()));
        }
        if k % 2 == 0 {
            if let Some(b) = id((u, w, k + 1, z)) {
                edges.push((a, b));
            }
        }
        if u == 0 {
            // crossings with horizontal segments through this one's rows
            let col = 12 * w + k;
            let row_lo = 12 * z + PEGASUS_OFF_V[k as usize];
            for row in row_lo..row_lo + 12 {
                let (w2, k2) = (row / 12, row % 12);
                if w2 >= m {
                    continue;
                }
                let off = PEGASUS_OFF_H[k2 as usize];
                if col < off {
                    continue;
                }
                let z2 = (col - off) / 12;
                if z2 < m - 1 {
                    if let Some(b) = id((1, w2, k2, z2)) {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    Graph::new(coords.len() as u32, edges).expect("pegasus edges are in range by construction")
}

/// Crossed-path clique template. Variable `i` pairs column `10 + i` with row
/// `10 + i` inside a `12*(m-2)`-wide window; the vertical and horizontal
/// path chains meet at their own crossing and cross every other variable's
/// perpendicular path. `m = 2` has no such window and falls back to a fixed
/// four-chain template on the offset-6 lines.
fn pegasus_clique(m: u32) -> Vec<Vec<NodeId>> {
    let coords = pegasus_coords(m);
    let index: HashMap<(u32, u32, u32, u32), NodeId> = coords
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as NodeId))
        .collect();
    let id = |c: (u32, u32, u32, u32)| index[&c];

    if m == 2 {
        return (0..4)
            .map(|i| {
                let col = 8 + i;
                let row = 12 + i;
                vec![id((0, col / 12, col % 12, 0)), id((1, row / 12, row % 12, 0))]
            })
            .collect();
    }

    let t_win = m - 2;
    let window_end = 12 * t_win + 9;
    let mut chains = Vec::with_capacity(12 * t_win as usize);
    for i in 0..12 * t_win {
        let col = 10 + i;
        let row = 10 + i;
        let (wv, kv) = (col / 12, col % 12);
        let (wh, kh) = (row / 12, row % 12);
        let mut chain = Vec::new();
        let mut zv = 0;
        loop {
            chain.push(id((0, wv, kv, zv)));
            if 12 * zv + PEGASUS_OFF_V[kv as usize] + 11 >= window_end {
                break;
            }
            zv += 1;
        }
        let mut zh = 0;
        loop {
            chain.push(id((1, wh, kh, zh)));
            if 12 * zh + PEGASUS_OFF_H[kh as usize] + 11 >= window_end {
                break;
            }
            zh += 1;
        }
        chains.push(chain);
    }
    chains
}

// ---------------------------------------------------------------------------
// Zephyr
//
// Qubit (u, w, k, j, z): a length-2t half-open segment at line t*w + k,
// spanning [2tz + tj, 2tz + tj + 2t) in the perpendicular direction.
// Segments on a line overlap halfway (odd couplers) and abut end to end
// (external couplers); internal couplers sit at every perpendicular
// crossing. All coordinates exist; nothing is trimmed.

fn zephyr_id(m: u32, t: u32, u: u32, w: u32, k: u32, j: u32, z: u32) -> NodeId {
    ((((u * (2 * m + 1) + w) * t + k) * 2 + j) * m) + z
}

fn zephyr_graph(m: u32, t: u32) -> Graph {
    let id = |u, w, k, j, z| zephyr_id(m, t, u, w, k, j, z);
    let mut edges = Vec::new();
    for u in 0..2 {
        for w in 0..2 * m + 1 {
            for k in 0..t {
                for j in 0..2 {
                    for z in 0..m {
                        let a = id(u, w, k, j, z);
                        if z + 1 < m {
                            edges.push((a, id(u, w, k, j, z + 1)));
                        }
                        if j == 0 {
                            edges.push((a, id(u, w, k, 1, z)));
                            if z > 0 {
                                edges.push((a, id(u, w, k, 1, z - 1)));
                            }
                        }
                    }
                }
            }
        }
    }
    let lines = t * (2 * m + 1);
    for w in 0..2 * m + 1 {
        for k in 0..t {
            let col = t * w + k;
            for j in 0..2 {
                for z in 0..m {
                    let a = id(0, w, k, j, z);
                    let row_lo = 2 * t * z + t * j;
                    for row in row_lo..(row_lo + 2 * t).min(lines) {
                        let (w2, k2) = (row / t, row % t);
                        // spans have stride t and length 2t, so `col` lies in
                        // the spans indexed s = col/t - 1 and s = col/t
                        let q = col / t;
                        for s in q.saturating_sub(1)..=q.min(2 * m - 1) {
                            let (z2, j2) = (s / 2, s % 2);
                            let lo = 2 * t * z2 + t * j2;
                            if lo <= col && col < lo + 2 * t {
                                edges.push((a, id(1, w2, k2, j2, z2)));
                            }
                        }
                    }
                }
            }
        }
    }
    Graph::new(4 * t * m * (2 * m + 1), edges).expect("zephyr edges are in range by construction")
}

/// Crossed-path clique template over the `j = 0` segments: variable `i`
/// takes the full vertical line `i` plus the full horizontal line `i`,
/// giving `2*t*m` chains of `2m` qubits each.
fn zephyr_clique(m: u32, t: u32) -> Vec<Vec<NodeId>> {
    (0..2 * t * m)
        .map(|i| {
            let (w, k) = (i / t, i % t);
            let mut chain: Vec<NodeId> =
                (0..m).map(|z| zephyr_id(m, t, 0, w, k, 0, z)).collect();
            chain.extend((0..m).map(|z| zephyr_id(m, t, 1, w, k, 0, z)));
            chain
        })
        .collect()
}
