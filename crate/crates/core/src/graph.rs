//! Simple undirected graphs with explicit node sets.
//!
//! A [`Graph`] owns a sorted node list and a sorted list of canonical edges
//! (`u < v`). Generated graphs use a dense id space `0..n`, but the type also
//! carries sparse id spaces so that a hardware graph with failed nodes keeps
//! its original labels. Adjacency is materialized once at construction; the
//! structure is immutable afterwards.

use std::fmt::Write as _;

use thiserror::Error;

pub type NodeId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node id {id} out of range (node count {bound})")]
    NodeOutOfRange { id: NodeId, bound: u32 },
    #[error("edge endpoint {id} is not a node of the graph")]
    UnknownEndpoint { id: NodeId },
    #[error("self loop at node {id}")]
    SelfLoop { id: NodeId },
    #[error("duplicate node id {id}")]
    DuplicateNode { id: NodeId },
}

#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    adj: Vec<Vec<NodeId>>,
    present: Vec<bool>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}
impl Eq for Graph {}

impl Graph {
    /// Graph on the dense node set `0..node_count`. Edges are canonicalized
    /// and deduplicated; self loops and out-of-range endpoints are rejected.
    pub fn new(
        node_count: u32,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let nodes: Vec<NodeId> = (0..node_count).collect();
        Self::build(nodes, edges, |id| {
            if id < node_count {
                Ok(())
            } else {
                Err(GraphError::NodeOutOfRange { id, bound: node_count })
            }
        })
    }

    /// Graph on an explicit, possibly sparse node set. Node ids are kept as
    /// given; `nodes` must not contain duplicates.
    pub fn with_nodes(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut nodes: Vec<NodeId> = nodes.into_iter().collect();
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateNode { id: w[0] });
        }
        let bound = nodes.last().map_or(0, |&m| m + 1);
        let mut present = vec![false; bound as usize];
        for &v in &nodes {
            present[v as usize] = true;
        }
        Self::build(nodes, edges, move |id| {
            if (id as usize) < present.len() && present[id as usize] {
                Ok(())
            } else {
                Err(GraphError::UnknownEndpoint { id })
            }
        })
    }

    fn build(
        nodes: Vec<NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        check: impl Fn(NodeId) -> Result<(), GraphError>,
    ) -> Result<Self, GraphError> {
        let bound = nodes.last().map_or(0, |&m| m + 1) as usize;
        let mut canon: Vec<(NodeId, NodeId)> = Vec::new();
        for (a, b) in edges {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(GraphError::SelfLoop { id: a });
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        canon.dedup();

        let mut present = vec![false; bound];
        for &v in &nodes {
            present[v as usize] = true;
        }
        let mut adj = vec![Vec::new(); bound];
        for &(u, v) in &canon {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { nodes, edges: canon, adj, present })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted slice of node ids.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Sorted slice of canonical `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// One past the largest node id; arrays indexed by id use this length.
    pub fn id_bound(&self) -> u32 {
        self.adj.len() as u32
    }

    pub fn has_node(&self, v: NodeId) -> bool {
        (v as usize) < self.present.len() && self.present[v as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Neighbors of `v` in ascending order; empty for unknown ids.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        self.adj.get(v as usize).map_or(&[], |list| list.as_slice())
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.nodes.iter().map(|&v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn mean_degree(&self) -> f64 {
        if self.nodes.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count() as f64 / self.node_count() as f64
        }
    }

    /// Breadth-first reachability over present nodes. The empty graph counts
    /// as connected.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.nodes.first() else { return true };
        let mut seen = vec![false; self.adj.len()];
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start as usize] = true;
        let mut reached = 1usize;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.node_count()
    }

    /// Plain-text export: a `p <nodes> <edges>` header followed by one
    /// `u v` line per edge in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.node_count(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the [`to_edge_list`](Self::to_edge_list) format. Node ids must
    /// lie in `0..n` from the header; blank lines and `#` comments are
    /// tolerated.
    pub fn from_edge_list(text: &str) -> Result<Self, EdgeListError> {
        let mut header: Option<(u32, u64)> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            if header.is_none() {
                if fields.next() != Some("p") {
                    return Err(EdgeListError::MissingHeader { line: lineno + 1 });
                }
                let n = parse_field(fields.next(), lineno + 1)?;
                let m = parse_field(fields.next(), lineno + 1)?;
                if fields.next().is_some() {
                    return Err(EdgeListError::Malformed { line: lineno + 1 });
                }
                header = Some((n as u32, m));
            } else {
                let u = parse_field(fields.next(), lineno + 1)?;
                let v = parse_field(fields.next(), lineno + 1)?;
                if fields.next().is_some() {
                    return Err(EdgeListError::Malformed { line: lineno + 1 });
                }
                edges.push((u as u32, v as u32));
            }
        }
        let Some((n, m)) = header else {
            return Err(EdgeListError::MissingHeader { line: 0 });
        };
        if edges.len() as u64 != m {
            return Err(EdgeListError::EdgeCountMismatch { declared: m, found: edges.len() });
        }
        Graph::new(n, edges).map_err(EdgeListError::Graph)
    }
}

fn parse_field(field: Option<&str>, line: usize) -> Result<u64, EdgeListError> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or(EdgeListError::Malformed { line })
}

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("missing `p <nodes> <edges>` header (line {line})")]
    MissingHeader { line: usize },
    #[error("malformed line {line}")]
    Malformed { line: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: u64, found: usize },
    #[error(transparent)]
    Graph(GraphError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_construction_canonicalizes() {
        let g = Graph::new(4, [(1, 0), (2, 3), (0, 1)]).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange { id: 2, bound: 2 })
        );
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::SelfLoop { id: 1 }));
    }

    #[test]
    fn sparse_node_sets_keep_ids() {
        let g = Graph::with_nodes([5, 3, 9], [(3, 9)]).unwrap();
        assert_eq!(g.nodes(), &[3, 5, 9]);
        assert_eq!(g.id_bound(), 10);
        assert!(g.has_node(5));
        assert!(!g.has_node(4));
        assert_eq!(Graph::with_nodes([1, 1], []), Err(GraphError::DuplicateNode { id: 1 }));
        assert_eq!(
            Graph::with_nodes([1, 2], [(1, 4)]),
            Err(GraphError::UnknownEndpoint { id: 4 })
        );
    }

    #[test]
    fn connectivity() {
        assert!(Graph::new(0, []).unwrap().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
        assert!(Graph::new(3, [(0, 1), (1, 2)]).unwrap().is_connected());
        assert!(!Graph::new(3, [(0, 1)]).unwrap().is_connected());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = g.to_edge_list();
        assert!(text.starts_with("p 4 4\n"));
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_rejects_garbage() {
        assert!(matches!(
            Graph::from_edge_list("1 2\n"),
            Err(EdgeListError::MissingHeader { .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("p 3 2\n0 1\n"),
            Err(EdgeListError::EdgeCountMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(
            Graph::from_edge_list("p 3 1\n0 healthy\n"),
            Err(EdgeListError::Malformed { line: 2 })
        ));
    }

    #[test]
    fn equality_ignores_adjacency_representation() {
        let a = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let b = Graph::new(3, [(1, 2), (1, 0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degree_statistics() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.max_degree(), 3);
        assert!((g.mean_degree() - 1.5).abs() < 1e-12);
        assert_eq!(Graph::new(0, []).unwrap().mean_degree(), 0.0);
    }
}
