//! Immutable simple undirected graphs on dense vertex labels `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex label, dense in `0..n` of the owning graph.
pub type Vertex = usize;

/// Hard ceiling on graph order. Nothing in this crate is meant for larger inputs.
pub const MAX_ORDER: usize = 1000;

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn touches(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((u, v): (Vertex, Vertex)) -> Self {
        Edge::new(u, v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub connected: bool,
    pub cubic: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Builds a graph from vertex pairs. Repeated pairs are collapsed silently;
    /// use [`Graph::from_edge_list_reporting`] to see which ones were.
    pub fn from_edge_list<I, P>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Edge>,
    {
        Self::from_edge_list_reporting(n, pairs).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edge_list`], also returning every pair that repeated an
    /// earlier one.
    pub fn from_edge_list_reporting<I, P>(n: usize, pairs: I) -> Result<(Self, Vec<Edge>)>
    where
        I: IntoIterator<Item = P>,
        P: Into<Edge>,
    {
        if n > MAX_ORDER {
            return Err(Error::TooLarge { n, max: MAX_ORDER });
        }
        let mut set = BTreeSet::new();
        let mut duplicates = Vec::new();
        for p in pairs {
            let e: Edge = p.into();
            if e.hi() >= n {
                return Err(Error::VertexOutOfRange { vertex: e.hi(), n });
            }
            if e.lo() == e.hi() {
                return Err(Error::Loop(e.lo()));
            }
            if !set.insert(e) {
                duplicates.push(e);
            }
        }
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.lo()].push(e.hi());
            adj[e.hi()].push(e.lo());
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok((
            Graph {
                adj,
                edges: set.into_iter().collect(),
            },
            duplicates,
        ))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edge_list(n, pairs).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle on n >= 3 vertices")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edge_list(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn petersen() -> Self {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edge_list(10, pairs).expect("petersen graph is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo(), e.hi())
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|a| a.len() == d)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reachable_from(0).iter().all(|&r| r)
    }

    pub(crate) fn reachable_from(&self, start: Vertex) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn validate(&self) -> Validation {
        Validation {
            connected: self.is_connected(),
            cubic: self.is_regular(3),
        }
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.n() == 0 || !self.is_connected() {
            Err(Error::Disconnected)
        } else {
            Ok(())
        }
    }

    /// Neighbourhood bitmasks, available for graphs on at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                .collect(),
        )
    }

    /// The image of this graph under `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let pairs = self.edges.iter().map(|e| (perm[e.lo()], perm[e.hi()]));
        Graph::from_edge_list(self.n(), pairs).expect("relabelling preserves simplicity")
    }

    /// A new graph with the extra edges added. Used by closure computations;
    /// the receiver is never modified.
    pub fn with_added_edges<I: IntoIterator<Item = Edge>>(&self, extra: I) -> Result<Graph> {
        Graph::from_edge_list(self.n(), self.edges.iter().copied().chain(extra))
    }

    /// Disjoint union, with `other`'s labels shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let pairs = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|e| Edge::new(e.lo() + shift, e.hi() + shift)));
        Graph::from_edge_list(shift + other.n(), pairs).expect("union of simple graphs")
    }

    /// Parses the plain edge-list format: a header line `n m`, then `m` lines `u v`.
    /// Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::EdgeListFormat("missing header".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut pairs = Vec::with_capacity(m);
        for line in lines {
            pairs.push(parse_pair(line)?);
        }
        if pairs.len() != m {
            return Err(Error::EdgeListFormat(format!(
                "header announces {m} edges, found {}",
                pairs.len()
            )));
        }
        Graph::from_edge_list(n, pairs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
        }
        out
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::EdgeListFormat(format!("bad line {line:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn loop_is_rejected() {
        assert_eq!(Graph::from_edge_list(2, [(0, 0)]), Err(Error::Loop(0)));
    }

    #[test]
    fn endpoint_out_of_range() {
        assert!(matches!(
            Graph::from_edge_list(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn duplicates_collapse_with_report() {
        let (g, dups) =
            Graph::from_edge_list_reporting(4, [(0, 1), (1, 0), (2, 3), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(dups, vec![Edge::new(0, 1), Edge::new(0, 1)]);
    }

    #[test]
    fn validation_reports() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.validate(), Validation { connected: true, cubic: true });
        assert_eq!(
            Graph::cycle(5).validate(),
            Validation { connected: true, cubic: false }
        );
        assert_eq!(
            k4.disjoint_union(&k4).validate(),
            Validation { connected: false, cubic: true }
        );
    }

    #[test]
    fn handshake_and_symmetry() {
        let g = Graph::petersen();
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = Graph::petersen();
        let text = g.to_edge_list();
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
    }
}
