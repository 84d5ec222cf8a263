//! Upper bounds on the minimum leaf count: traversal trees improved by
//! leaf-reducing exchanges.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::tree::{removable_edges, SpanningTree};

/// Orders at or below this get a restart from every vertex.
pub const ALL_ROOTS_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialStrategy {
    Dfs,
    Bfs,
    /// Depth-first with a seeded random neighbour order.
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchPolicy {
    pub initial: InitialStrategy,
    pub restarts: usize,
    pub accept_first_improvement: bool,
    pub max_passes: usize,
    pub seed: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            initial: InitialStrategy::Dfs,
            restarts: 16,
            accept_first_improvement: true,
            max_passes: 100_000,
            seed: 0,
        }
    }
}

impl SearchPolicy {
    fn check(&self) -> Result<()> {
        if self.restarts == 0 || self.max_passes == 0 {
            return Err(Error::Precondition(
                "search policy needs restarts >= 1 and max_passes >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Traversal tree from `root`, visiting neighbours in increasing label order.
pub fn build_initial_tree(g: &Graph, root: Vertex, strategy: InitialStrategy) -> Result<SpanningTree<'_>> {
    let mut rng = ChaCha8Rng::seed_from_u64(root as u64);
    build_tree_with_rng(g, root, strategy, &mut rng)
}

fn build_tree_with_rng<'g>(
    g: &'g Graph,
    root: Vertex,
    strategy: InitialStrategy,
    rng: &mut ChaCha8Rng,
) -> Result<SpanningTree<'g>> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    g.require_connected()?;
    let n = g.n();
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    seen[root] = true;
    match strategy {
        InitialStrategy::Bfs => {
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        edges.push(Edge::new(v, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        InitialStrategy::Dfs | InitialStrategy::Randomized => {
            let order = |v: Vertex, rng: &mut ChaCha8Rng| {
                let mut nbrs = g.neighbors(v).to_vec();
                if strategy == InitialStrategy::Randomized {
                    nbrs.shuffle(rng);
                }
                nbrs
            };
            // (vertex, neighbour order, next index)
            let mut stack = vec![(root, order(root, rng), 0usize)];
            while let Some((v, nbrs, next)) = stack.last_mut() {
                if let Some(&w) = nbrs.get(*next) {
                    *next += 1;
                    if !seen[w] {
                        seen[w] = true;
                        edges.push(Edge::new(*v, w));
                        let nb = order(w, rng);
                        stack.push((w, nb, 0));
                    }
                } else {
                    stack.pop();
                }
            }
        }
    }
    Ok(SpanningTree::from_edges_unchecked(g, edges))
}

/// Local search to a local optimum under the adjacent-leaf move and all
/// strictly improving fundamental-cycle exchanges. Never increases the leaf count.
pub fn reduce_leaves<'g>(t: &SpanningTree<'g>, policy: &SearchPolicy) -> SpanningTree<'g> {
    let mut tree = t.clone();
    for _ in 0..policy.max_passes {
        let k = tree.leaf_count();
        if k <= 2 {
            break;
        }
        if let Ok(Some(next)) = tree.adjacent_leaf_move() {
            tree = next;
            continue;
        }
        match improving_swap(&tree, policy.accept_first_improvement) {
            Some((add, remove)) => tree.swap_unchecked(add, remove),
            None => break,
        }
    }
    tree
}

/// First (or best) exchange that lowers the leaf count, scanning added edges
/// and then removed edges in lexicographic order.
fn improving_swap(tree: &SpanningTree<'_>, first: bool) -> Option<(Edge, Edge)> {
    let current = tree.leaf_count();
    let mut best: Option<(usize, Edge, Edge)> = None;
    let candidates: Vec<Edge> = tree.non_tree_edges().collect();
    for add in candidates {
        for remove in removable_edges(tree, add) {
            let after = tree.leaf_count_after_swap(add, remove);
            if after < current {
                if first {
                    return Some((add, remove));
                }
                if best.is_none_or(|(b, _, _)| after < b) {
                    best = Some((after, add, remove));
                }
            }
        }
    }
    best.map(|(_, a, r)| (a, r))
}

/// Best tree over the restart schedule: every vertex as root for small graphs,
/// otherwise `policy.restarts` seeded random roots.
pub fn heuristic_min_leaf<'g>(g: &'g Graph, policy: &SearchPolicy) -> Result<SpanningTree<'g>> {
    policy.check()?;
    g.require_connected()?;
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let roots: Vec<Vertex> = if g.n() <= ALL_ROOTS_MAX_ORDER {
        (0..g.n()).collect()
    } else {
        let mut all: Vec<Vertex> = (0..g.n()).collect();
        all.shuffle(&mut rng);
        all.truncate(policy.restarts);
        all
    };
    let mut best: Option<SpanningTree<'g>> = None;
    for root in roots {
        let start = build_tree_with_rng(g, root, policy.initial, &mut rng)?;
        let tree = reduce_leaves(&start, policy);
        if best.as_ref().is_none_or(|b| tree.leaf_count() < b.leaf_count()) {
            let done = tree.leaf_count() <= 2;
            best = Some(tree);
            if done {
                break;
            }
        }
    }
    Ok(best.expect("at least one root"))
}
