//! Seed-free graph families: classical structured graphs, open-boundary
//! lattices, and the small topological shapes. Node ids follow row-major or
//! definition order so the same parameters always produce the same graph.

use super::{invalid, GenError};
use crate::graph::Graph;

pub fn complete(n: u32) -> Result<Graph, GenError> {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Ok(Graph::new(n, edges).unwrap())
}

pub fn complete_bipartite(a: u32, b: u32) -> Result<Graph, GenError> {
    let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)));
    Ok(Graph::new(a + b, edges).unwrap())
}

/// Complete multipartite graph on `r` near-equal parts; the `n % r` larger
/// parts come first.
pub fn turan(n: u32, r: u32) -> Result<Graph, GenError> {
    if r == 0 || r > n {
        return Err(invalid("turan", format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let (q, rem) = (n / r, n % r);
    let mut part = Vec::with_capacity(n as usize);
    for i in 0..r {
        let size = if i < rem { q + 1 } else { q };
        part.extend(std::iter::repeat(i).take(size as usize));
    }
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| part[i as usize] != part[j as usize]);
    Ok(Graph::new(n, edges).unwrap())
}

/// Ring where node `i` joins `i +- s` for each offset `s`. Offsets are taken
/// modulo `n` and must not be congruent to zero.
pub fn circulant(n: u32, offsets: &[u32]) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(invalid("circulant", "need n >= 1"));
    }
    for &s in offsets {
        if s % n == 0 {
            return Err(invalid("circulant", format!("offset {s} is 0 mod n={n}")));
        }
    }
    let edges = offsets
        .iter()
        .flat_map(|&s| (0..n).map(move |i| (i, (i + s) % n)));
    Ok(Graph::new(n, edges).unwrap())
}

pub fn hypercube(d: u32) -> Result<Graph, GenError> {
    if d > 24 {
        return Err(invalid("hypercube", format!("dimension {d} too large")));
    }
    let n = 1u32 << d;
    let edges = (0..n).flat_map(move |i| (0..d).filter_map(move |b| {
        let j = i ^ (1 << b);
        (j > i).then_some((i, j))
    }));
    Ok(Graph::new(n, edges).unwrap())
}

fn lattice_params(family: &'static str, w: u32, h: u32) -> Result<(), GenError> {
    if w == 0 || h == 0 {
        return Err(invalid(family, format!("need w, h >= 1, got ({w}, {h})")));
    }
    Ok(())
}

/// `w x h` square lattice, open boundaries; `2wh - w - h` edges.
pub fn grid(w: u32, h: u32) -> Result<Graph, GenError> {
    lattice_params("grid", w, h)?;
    let id = move |x: u32, y: u32| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Ok(Graph::new(w * h, edges).unwrap())
}

/// Square lattice plus one diagonal per cell; interior degree 6.
pub fn triangular(w: u32, h: u32) -> Result<Graph, GenError> {
    lattice_params("triangular", w, h)?;
    let id = move |x: u32, y: u32| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if x + 1 < w && y + 1 < h {
                edges.push((id(x, y), id(x + 1, y + 1)));
            }
        }
    }
    Ok(Graph::new(w * h, edges).unwrap())
}

/// Brick-wall drawing of the hexagonal lattice: full rows of horizontal
/// edges, vertical rungs where `x + y` is even; interior degree 3.
pub fn honeycomb(w: u32, h: u32) -> Result<Graph, GenError> {
    lattice_params("honeycomb", w, h)?;
    let id = move |x: u32, y: u32| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h && (x + y) % 2 == 0 {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Ok(Graph::new(w * h, edges).unwrap())
}

/// Kagome lattice of corner-sharing triangles, three sites per cell. Cell
/// `(i, j)` holds an up-triangle `a-b-c`; down-triangles arise between
/// `b(i,j)`, `a(i+1,j)` and `c(i+1,j-1)`, with open boundaries.
pub fn kagome(w: u32, h: u32) -> Result<Graph, GenError> {
    lattice_params("kagome", w, h)?;
    let id = move |i: u32, j: u32, s: u32| (j * w + i) * 3 + s;
    let mut edges = Vec::new();
    for j in 0..h {
        for i in 0..w {
            let (a, b, c) = (id(i, j, 0), id(i, j, 1), id(i, j, 2));
            edges.extend([(a, b), (a, c), (b, c)]);
            if i + 1 < w {
                edges.push((b, id(i + 1, j, 0)));
            }
            if j + 1 < h {
                edges.push((c, id(i, j + 1, 0)));
            }
            if i + 1 < w && j > 0 {
                edges.push((b, id(i + 1, j - 1, 2)));
            }
        }
    }
    Ok(Graph::new(3 * w * h, edges).unwrap())
}

/// Square lattice with king moves: orthogonal plus both diagonals.
pub fn king(w: u32, h: u32) -> Result<Graph, GenError> {
    lattice_params("king", w, h)?;
    let id = move |x: u32, y: u32| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
                if x + 1 < w {
                    edges.push((id(x, y), id(x + 1, y + 1)));
                }
                if x > 0 {
                    edges.push((id(x, y), id(x - 1, y + 1)));
                }
            }
        }
    }
    Ok(Graph::new(w * h, edges).unwrap())
}

pub fn path(n: u32) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(invalid("path", "need n >= 1"));
    }
    Ok(Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap())
}

pub fn cycle(n: u32) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(invalid("cycle", format!("need n >= 3, got {n}")));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

/// Hub node 0 joined to `n - 1` leaves.
pub fn star(n: u32) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(invalid("star", "need n >= 1"));
    }
    Ok(Graph::new(n, (1..n).map(|i| (0, i))).unwrap())
}

/// Hub node 0 joined to a cycle on the remaining `n - 1` nodes.
pub fn wheel(n: u32) -> Result<Graph, GenError> {
    if n < 4 {
        return Err(invalid("wheel", format!("need n >= 4, got {n}")));
    }
    let rim = n - 1;
    let edges = (1..n)
        .map(|i| (0, i))
        .chain((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    Ok(Graph::new(n, edges).unwrap())
}

/// Complete `r`-ary tree of the given height; node `i > 0` hangs off
/// `(i - 1) / r`.
pub fn balanced_tree(r: u32, h: u32) -> Result<Graph, GenError> {
    if r == 0 {
        return Err(invalid("balanced_tree", "need branching factor r >= 1"));
    }
    let mut n: u64 = 1;
    let mut layer: u64 = 1;
    for _ in 0..h {
        layer *= r as u64;
        n += layer;
        if n > 1 << 24 {
            return Err(invalid("balanced_tree", format!("tree r={r}, h={h} too large")));
        }
    }
    let n = n as u32;
    Ok(Graph::new(n, (1..n).map(|i| ((i - 1) / r, i))).unwrap())
}
