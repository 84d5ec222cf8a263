//! Bridges, 2-edge-connected components and vertex connectivity.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Edge, Graph, Vertex};

/// Largest order for which [`BlockCutStructure::vertex_connectivity`] is computed.
pub const CONNECTIVITY_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCutStructure {
    /// Bridges in lexicographic order.
    pub bridges: Vec<Edge>,
    /// 2-edge-connected components as sorted vertex sets, ordered by smallest member.
    pub components: Vec<Vec<Vertex>>,
    /// Components incident to exactly one bridge.
    pub pendant_block_count: usize,
    pub articulation_points: Vec<Vertex>,
    /// Exact vertex connectivity; `None` above [`CONNECTIVITY_MAX_ORDER`].
    pub vertex_connectivity: Option<usize>,
}

pub fn block_cut_decomposition(g: &Graph) -> Result<BlockCutStructure> {
    g.require_connected()?;
    let low = LowLink::compute(g.adjacency());
    let bridges: Vec<Edge> = {
        let mut b: Vec<Edge> = low.bridges.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        b.sort_unstable();
        b
    };
    let comp = two_edge_components(g.adjacency(), &bridges);
    let count = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut components = vec![Vec::new(); count];
    for (v, &c) in comp.iter().enumerate() {
        components[c].push(v);
    }
    let mut bridge_degree = vec![0usize; count];
    for e in &bridges {
        bridge_degree[comp[e.lo()]] += 1;
        bridge_degree[comp[e.hi()]] += 1;
    }
    let pendant_block_count = bridge_degree.iter().filter(|&&d| d == 1).count();
    let vertex_connectivity = (g.n() <= CONNECTIVITY_MAX_ORDER).then(|| vertex_connectivity(g));
    Ok(BlockCutStructure {
        bridges,
        components,
        pendant_block_count,
        articulation_points: low.articulation_points,
        vertex_connectivity,
    })
}

/// Number of 2-edge-connected components hanging off the rest of the graph by a
/// single bridge. Works on any adjacency list; `0` for bridgeless or disconnected
/// pieces without bridges.
pub fn pendant_block_count(adj: &[Vec<Vertex>]) -> usize {
    let low = LowLink::compute(adj);
    if low.bridges.is_empty() {
        return 0;
    }
    let mut bridges: Vec<Edge> = low.bridges.iter().map(|&(u, v)| Edge::new(u, v)).collect();
    bridges.sort_unstable();
    let comp = two_edge_components(adj, &bridges);
    let count = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut bridge_degree = vec![0usize; count];
    for e in &bridges {
        bridge_degree[comp[e.lo()]] += 1;
        bridge_degree[comp[e.hi()]] += 1;
    }
    bridge_degree.iter().filter(|&&d| d == 1).count()
}

/// Smallest number of vertices whose removal disconnects `g` (or `n - 1` for a
/// complete graph). Brute force over candidate cut sets of size below the minimum
/// degree, which bounds the answer.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let delta = g.min_degree();
    if delta == n - 1 {
        return n - 1;
    }
    let mut removed = vec![false; n];
    for size in 1..delta {
        if exists_cut(g, size, 0, &mut removed) {
            return size;
        }
    }
    delta
}

fn exists_cut(g: &Graph, left: usize, from: Vertex, removed: &mut [bool]) -> bool {
    if left == 0 {
        return !connected_without(g, removed);
    }
    for v in from..g.n() {
        removed[v] = true;
        let found = exists_cut(g, left - 1, v + 1, removed);
        removed[v] = false;
        if found {
            return true;
        }
    }
    false
}

fn connected_without(g: &Graph, removed: &[bool]) -> bool {
    let Some(start) = (0..g.n()).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

struct LowLink {
    bridges: Vec<(Vertex, Vertex)>,
    articulation_points: Vec<Vertex>,
}

impl LowLink {
    fn compute(adj: &[Vec<Vertex>]) -> Self {
        let n = adj.len();
        const UNSEEN: usize = usize::MAX;
        let mut order = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut bridges = Vec::new();
        let mut clock = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
        for root in 0..n {
            if order[root] != UNSEEN {
                continue;
            }
            order[root] = clock;
            low[root] = clock;
            clock += 1;
            let mut root_children = 0;
            stack.push((root, UNSEEN, 0));
            while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
                if let Some(&w) = adj[v].get(*next) {
                    *next += 1;
                    if w == parent {
                        continue;
                    }
                    if order[w] == UNSEEN {
                        order[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(order[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > order[parent] {
                            bridges.push((parent, v));
                        }
                        if parent != root && low[v] >= order[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        LowLink {
            bridges,
            articulation_points: (0..n).filter(|&v| is_cut[v]).collect(),
        }
    }
}

/// Component index per vertex after deleting the bridges; components are numbered
/// in order of their smallest vertex.
fn two_edge_components(adj: &[Vec<Vertex>], bridges: &[Edge]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX && bridges.binary_search(&Edge::new(v, w)).is_err() {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Reference bridge finder: an edge is a bridge iff deleting it disconnects the graph.
#[cfg(test)]
pub(crate) fn bridges_by_deletion(g: &Graph) -> Vec<Edge> {
    g.edges()
        .iter()
        .copied()
        .filter(|&e| {
            let rest = g.edges().iter().copied().filter(|&f| f != e);
            !Graph::from_edge_list(g.n(), rest).unwrap().is_connected()
        })
        .collect()
}
