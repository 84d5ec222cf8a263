//! Spanning trees of a host graph, their leaf statistics, fundamental cycles
//! and leaf-reducing exchanges.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::graph6::write_graph6;

/// Default cap on enumerated trees.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct SpanningTree<'g> {
    host: &'g Graph,
    edges: BTreeSet<Edge>,
    degree: Vec<usize>,
}

impl std::fmt::Debug for SpanningTree<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpanningTree")
            .field("n", &self.host.n())
            .field("edges", &self.edges)
            .finish()
    }
}

/// Degree census of a tree: leaves, degree-2 and degree-3 vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafStats {
    /// Number of leaves.
    pub k: usize,
    /// Number of vertices of tree degree 2.
    pub n1: usize,
    /// Number of vertices of tree degree 3.
    pub p: usize,
    /// Vertices of tree degree 4 or more (always 0 in a cubic host).
    pub higher: usize,
    pub leaf_set: Vec<Vertex>,
    pub max_degree: usize,
}

impl<'g> SpanningTree<'g> {
    /// Validates that `edges` is a spanning tree of `host`.
    pub fn from_edges<I, P>(host: &'g Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Edge>,
    {
        let n = host.n();
        let mut set = BTreeSet::new();
        let mut degree = vec![0; n];
        let mut dsu = Dsu::new(n);
        for p in edges {
            let e: Edge = p.into();
            if !host.contains_edge(e) {
                return Err(Error::NotHostEdge(e));
            }
            if !set.insert(e) {
                return Err(Error::InvalidTree(format!("edge {e} repeated")));
            }
            if !dsu.union(e.lo(), e.hi()) {
                return Err(Error::InvalidTree(format!("edge {e} closes a cycle")));
            }
            degree[e.lo()] += 1;
            degree[e.hi()] += 1;
        }
        if n == 0 || set.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                set.len(),
                n
            )));
        }
        Ok(SpanningTree {
            host,
            edges: set,
            degree,
        })
    }

    pub(crate) fn from_edges_unchecked(host: &'g Graph, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut degree = vec![0; host.n()];
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            degree[e.lo()] += 1;
            degree[e.hi()] += 1;
        }
        debug_assert_eq!(edges.len() + 1, host.n());
        SpanningTree {
            host,
            edges,
            degree,
        }
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.degree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(v, _)| v)
    }

    pub fn leaf_count(&self) -> usize {
        self.degree.iter().filter(|&&d| d == 1).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Host edges not used by the tree, in lexicographic order.
    pub fn non_tree_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.host
            .edges()
            .iter()
            .copied()
            .filter(move |e| !self.edges.contains(e))
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in &self.edges {
            adj[e.lo()].push(e.hi());
            adj[e.hi()].push(e.lo());
        }
        adj
    }

    pub fn leaf_stats(&self) -> LeafStats {
        let mut stats = LeafStats {
            k: 0,
            n1: 0,
            p: 0,
            higher: 0,
            leaf_set: Vec::new(),
            max_degree: self.max_degree(),
        };
        for (v, &d) in self.degree.iter().enumerate() {
            match d {
                0 => {}
                1 => {
                    stats.k += 1;
                    stats.leaf_set.push(v);
                }
                2 => stats.n1 += 1,
                3 => stats.p += 1,
                _ => stats.higher += 1,
            }
        }
        if self.n() >= 2 && stats.max_degree <= 3 {
            assert_eq!(stats.k, stats.p + 2, "leaf identity broken for a tree of max degree 3");
        }
        stats
    }

    /// Vertices of the tree path from `from` to `to`, inclusive.
    pub fn tree_path(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// The cycle closed by adding the non-tree host edge `e`: the tree path from
    /// one endpoint of `e` to the other.
    pub fn fundamental_cycle(&self, e: Edge) -> Result<Vec<Vertex>> {
        if !self.host.contains_edge(e) {
            return Err(Error::NotHostEdge(e));
        }
        if self.contains(e) {
            return Err(Error::AlreadyInTree(e));
        }
        Ok(self.tree_path(e.lo(), e.hi()))
    }

    /// Adds `add` and drops `remove`, which must lie on the fundamental cycle of `add`.
    pub fn edge_swap(&self, add: Edge, remove: Edge) -> Result<SpanningTree<'g>> {
        let cycle = self.fundamental_cycle(add)?;
        if !path_contains(&cycle, remove) {
            return Err(Error::NotOnCycle {
                added: add,
                removed: remove,
            });
        }
        let mut next = self.clone();
        next.swap_unchecked(add, remove);
        Ok(next)
    }

    pub(crate) fn swap_unchecked(&mut self, add: Edge, remove: Edge) {
        let removed = self.edges.remove(&remove);
        debug_assert!(removed);
        let inserted = self.edges.insert(add);
        debug_assert!(inserted);
        self.degree[remove.lo()] -= 1;
        self.degree[remove.hi()] -= 1;
        self.degree[add.lo()] += 1;
        self.degree[add.hi()] += 1;
    }

    /// Leaf count after swapping, computed from the four touched degrees only.
    pub fn leaf_count_after_swap(&self, add: Edge, remove: Edge) -> usize {
        let mut touched: [(Vertex, isize); 4] = [
            (add.lo(), 1),
            (add.hi(), 1),
            (remove.lo(), -1),
            (remove.hi(), -1),
        ];
        touched.sort_unstable_by_key(|t| t.0);
        let mut count = self.leaf_count() as isize;
        let mut i = 0;
        while i < 4 {
            let v = touched[i].0;
            let mut delta = 0;
            while i < 4 && touched[i].0 == v {
                delta += touched[i].1;
                i += 1;
            }
            let before = self.degree[v] as isize;
            let after = before + delta;
            count += isize::from(after == 1) - isize::from(before == 1);
        }
        count as usize
    }

    /// Pairs of leaves that are adjacent in the host, lexicographically.
    pub fn adjacent_leaf_pairs(&self) -> Vec<Edge> {
        let leaves: Vec<Vertex> = self.leaves().collect();
        let mut pairs = Vec::new();
        for (i, &u) in leaves.iter().enumerate() {
            for &v in &leaves[i + 1..] {
                if self.host.has_edge(u, v) {
                    pairs.push(Edge::new(u, v));
                }
            }
        }
        pairs
    }

    pub fn leaves_independent(&self) -> bool {
        self.adjacent_leaf_pairs().is_empty()
    }

    /// When two leaves `u`, `v` are adjacent in the host, adding `uv` and cutting
    /// the cycle at the best tree edge yields a tree with at least one leaf fewer.
    /// Uses the first such pair in lexicographic order; `Ok(None)` when the leaves
    /// are independent.
    pub fn adjacent_leaf_move(&self) -> Result<Option<SpanningTree<'g>>> {
        let k = self.leaf_count();
        if k < 3 {
            return Err(Error::Precondition(format!(
                "adjacent-leaf move needs at least 3 leaves, tree has {k}"
            )));
        }
        let Some(&add) = self.adjacent_leaf_pairs().first() else {
            return Ok(None);
        };
        let cycle = self.fundamental_cycle(add)?;
        let best = cycle_edges(&cycle)
            .filter(|&e| e != add)
            .min_by_key(|&e| (self.leaf_count_after_swap(add, e), e))
            .expect("cycle of a non-tree edge has tree edges");
        let mut next = self.clone();
        next.swap_unchecked(add, best);
        debug_assert!(next.leaf_count() < k);
        Ok(Some(next))
    }

    /// Witness text: host graph6 line, then one sorted `u v` line per tree edge.
    pub fn to_witness_text(&self) -> String {
        let mut out = write_graph6(self.host).expect("host order within graph6 range");
        out.push('\n');
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", e.lo(), e.hi());
        }
        out
    }

    /// Reads the edge lines of a witness against an already-parsed host.
    pub fn parse_edge_lines<'a>(host: &'g Graph, lines: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut edges = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push(Edge::new(u, v)),
                _ => return Err(Error::EdgeListFormat(format!("bad tree edge line {line:?}"))),
            }
        }
        Self::from_edges(host, edges)
    }
}

fn cycle_edges(cycle: &[Vertex]) -> impl Iterator<Item = Edge> + '_ {
    cycle
        .windows(2)
        .map(|w| Edge::new(w[0], w[1]))
        .chain(std::iter::once(Edge::new(cycle[0], cycle[cycle.len() - 1])))
}

fn path_contains(path: &[Vertex], e: Edge) -> bool {
    path.windows(2).any(|w| Edge::new(w[0], w[1]) == e)
}

/// Tree edges on the fundamental cycle of `add`, sorted.
pub(crate) fn removable_edges(tree: &SpanningTree<'_>, add: Edge) -> Vec<Edge> {
    let cycle = tree.tree_path(add.lo(), add.hi());
    let mut edges: Vec<Edge> = cycle.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    edges.sort_unstable();
    edges
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub count: u64,
    pub truncated: bool,
}

/// Visits every spanning tree of `g` exactly once, stopping after `cap` trees.
/// Edges are decided in order; an edge may be taken only if it closes no cycle
/// and skipped only if it is not a bridge of the still-available edges, so every
/// branch ends in a tree.
pub fn for_each_spanning_tree<'g, F>(g: &'g Graph, cap: u64, mut visit: F) -> Result<EnumerationSummary>
where
    F: FnMut(&SpanningTree<'g>) -> ControlFlow<()>,
{
    g.require_connected()?;
    let mut state = Enumerator {
        g,
        chosen: Vec::with_capacity(g.n()),
        excluded: vec![false; g.edge_count()],
        count: 0,
        cap,
        truncated: false,
    };
    if g.n() == 1 {
        state.count = 1;
        let t = SpanningTree::from_edges_unchecked(g, []);
        let _ = visit(&t);
        return Ok(EnumerationSummary {
            count: 1,
            truncated: false,
        });
    }
    let _ = state.recurse(0, &mut visit);
    Ok(EnumerationSummary {
        count: state.count,
        truncated: state.truncated,
    })
}

/// Collects up to `cap` spanning trees; the flag reports truncation.
pub fn enumerate_spanning_trees(g: &Graph, cap: u64) -> Result<(Vec<SpanningTree<'_>>, bool)> {
    let mut trees = Vec::new();
    let summary = for_each_spanning_tree(g, cap, |t| {
        trees.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok((trees, summary.truncated))
}

struct Enumerator<'g> {
    g: &'g Graph,
    chosen: Vec<Edge>,
    excluded: Vec<bool>,
    count: u64,
    cap: u64,
    truncated: bool,
}

impl<'g> Enumerator<'g> {
    fn recurse<F>(&mut self, i: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&SpanningTree<'g>) -> ControlFlow<()>,
    {
        if self.chosen.len() + 1 == self.g.n() {
            if self.count == self.cap {
                self.truncated = true;
                return ControlFlow::Break(());
            }
            self.count += 1;
            let t = SpanningTree::from_edges_unchecked(self.g, self.chosen.iter().copied());
            return visit(&t);
        }
        let e = self.g.edges()[i];
        if !self.closes_cycle(e) {
            self.chosen.push(e);
            let flow = self.recurse(i + 1, visit);
            self.chosen.pop();
            flow?;
        }
        self.excluded[i] = true;
        if self.available_connected(i) {
            let flow = self.recurse(i + 1, visit);
            self.excluded[i] = false;
            flow?;
        } else {
            self.excluded[i] = false;
        }
        ControlFlow::Continue(())
    }

    fn closes_cycle(&self, e: Edge) -> bool {
        let mut dsu = Dsu::new(self.g.n());
        for f in &self.chosen {
            dsu.union(f.lo(), f.hi());
        }
        dsu.find(e.lo()) == dsu.find(e.hi())
    }

    /// Whether chosen edges plus undecided edges (index > `i`) still connect the graph.
    fn available_connected(&self, i: usize) -> bool {
        let mut dsu = Dsu::new(self.g.n());
        let mut parts = self.g.n();
        for f in self.chosen.iter().chain(&self.g.edges()[i + 1..]) {
            if dsu.union(f.lo(), f.hi()) {
                parts -= 1;
            }
        }
        parts == 1
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
