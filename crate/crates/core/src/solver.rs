//! Exact minimum-leaf spanning trees.
//!
//! [`min_leaf_spanning_tree`] deepens on the leaf budget `k` between a
//! structural lower bound and a local-search upper bound. Each question
//! "is there a spanning tree with at most `k` leaves?" goes to a subset dynamic
//! program when `k = 2` and the graph is small, and to a branch-and-bound tree
//! search otherwise. Every exact answer carries a witness and either a matching
//! lower bound or an exhausted search one below it.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bounds::leaf_block_lower_bound;
use crate::budget::{Budget, Exhausted, Meter};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::heuristic::{heuristic_min_leaf, SearchPolicy};
use crate::tree::SpanningTree;

/// Largest order handled by the Hamiltonian-path subset DP.
pub const DP_MAX_ORDER: usize = 24;
/// Largest order handled by the bitmask branch and bound.
pub const SEARCH_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Exact,
    /// The node budget ran out; the value is the best upper bound found.
    HeuristicOnly,
    /// The time budget ran out; the value is the best upper bound found.
    Timeout,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Exact => "exact",
            SolveStatus::HeuristicOnly => "heuristic_only",
            SolveStatus::Timeout => "timeout",
        })
    }
}

/// Why an exact value is optimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The witness meets the pendant-block lower bound.
    LowerBoundMet,
    /// Exhaustive search showed no spanning tree has `infeasible_k` or fewer leaves.
    SearchExhausted { infeasible_k: usize },
    /// Not certified.
    None,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome<'g> {
    pub min_leaves: usize,
    pub witness: SpanningTree<'g>,
    pub lower_bound_used: usize,
    pub status: SolveStatus,
    pub certificate: Certificate,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SolveOutcome<'_> {
    /// Trailer line of a witness file.
    pub fn status_line(&self) -> String {
        format!(
            "minLeaves={} status={} lb={}",
            self.min_leaves, self.status, self.lower_bound_used
        )
    }

    /// Host graph6 line, tree edges, then the status trailer.
    pub fn to_witness_file(&self) -> String {
        let mut out = self.witness.to_witness_text();
        out.push_str(&self.status_line());
        out.push('\n');
        out
    }
}

/// Parsed witness file. Re-verification rebuilds the tree against the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub host: Graph,
    pub edges: Vec<Edge>,
    pub min_leaves: usize,
    pub status: String,
    pub lower_bound: usize,
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() < 2 {
            return Err(Error::EdgeListFormat("witness needs a host line and a trailer".into()));
        }
        let trailer = lines.pop().expect("checked length");
        let host = crate::graph6::parse_graph6_str(lines[0])?;
        let mut min_leaves = None;
        let mut status = None;
        let mut lower_bound = None;
        for field in trailer.split_whitespace() {
            match field.split_once('=') {
                Some(("minLeaves", v)) => min_leaves = v.parse().ok(),
                Some(("status", v)) => status = Some(v.to_string()),
                Some(("lb", v)) => lower_bound = v.parse().ok(),
                _ => {}
            }
        }
        let (Some(min_leaves), Some(status), Some(lower_bound)) = (min_leaves, status, lower_bound) else {
            return Err(Error::EdgeListFormat(format!("bad trailer {trailer:?}")));
        };
        let tree = SpanningTree::parse_edge_lines(&host, lines[1..].iter().copied())?;
        let edges = tree.edges().collect();
        Ok(WitnessFile {
            host,
            edges,
            min_leaves,
            status,
            lower_bound,
        })
    }

    /// Rebuilds the tree and checks that its leaf count is the claimed value.
    pub fn reverify(&self) -> Result<SpanningTree<'_>> {
        let tree = SpanningTree::from_edges(&self.host, self.edges.iter().copied())?;
        if tree.leaf_count() != self.min_leaves {
            return Err(Error::InvalidTree(format!(
                "witness has {} leaves, trailer claims {}",
                tree.leaf_count(),
                self.min_leaves
            )));
        }
        Ok(tree)
    }
}

/// Outcome of a single feasibility question.
#[derive(Debug, Clone)]
pub enum Feasibility<'g> {
    Found(SpanningTree<'g>),
    Infeasible,
    OutOfBudget(Exhausted),
}

#[derive(Debug, Clone)]
pub struct FeasibilityRun<'g> {
    pub result: Feasibility<'g>,
    pub nodes: u64,
}

/// Hamiltonian path by dynamic programming over vertex subsets: `ends[S]`
/// holds the vertices at which a path covering exactly `S` can end.
pub fn hamiltonian_path_dp(g: &Graph, budget: Budget) -> Result<Option<Vec<Vertex>>> {
    match hamiltonian_path_dp_run(g, budget)? {
        (Ok(path), _) => Ok(path),
        (Err(_), _) => Err(Error::BudgetExceeded),
    }
}

/// Path search result (or the exhausted budget) and the node count.
type DpRun = (std::result::Result<Option<Vec<Vertex>>, Exhausted>, u64);

fn hamiltonian_path_dp_run(g: &Graph, budget: Budget) -> Result<DpRun> {
    let n = g.n();
    if n > DP_MAX_ORDER {
        return Err(Error::TooLarge { n, max: DP_MAX_ORDER });
    }
    g.require_connected()?;
    if n == 1 {
        return Ok((Ok(Some(vec![0])), 1));
    }
    let adj: Vec<u32> = g
        .adjacency()
        .iter()
        .map(|l| l.iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full = (1usize << n) - 1;
    let mut ends = vec![0u32; full + 1];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut meter = Meter::new(budget);
    for set in 1..=full {
        if let Err(e) = meter.tick() {
            return Ok((Err(e), meter.nodes));
        }
        let mut reach = ends[set];
        if reach == 0 {
            continue;
        }
        while reach != 0 {
            let v = reach.trailing_zeros() as usize;
            reach &= reach - 1;
            let mut out = adj[v] & !(set as u32);
            while out != 0 {
                let w = out.trailing_zeros() as usize;
                out &= out - 1;
                ends[set | (1 << w)] |= 1 << w;
            }
        }
    }
    if ends[full] == 0 {
        return Ok((Ok(None), meter.nodes));
    }
    let mut path = Vec::with_capacity(n);
    let mut set = full;
    let mut v = ends[full].trailing_zeros() as usize;
    loop {
        path.push(v);
        let rest = set & !(1 << v);
        if rest == 0 {
            break;
        }
        let prev = ends[rest] & adj[v];
        debug_assert!(prev != 0);
        v = prev.trailing_zeros() as usize;
        set = rest;
    }
    path.reverse();
    Ok((Ok(Some(path)), meter.nodes))
}

fn path_tree<'g>(g: &'g Graph, path: &[Vertex]) -> SpanningTree<'g> {
    SpanningTree::from_edges_unchecked(g, path.windows(2).map(|w| Edge::new(w[0], w[1])))
}

/// Spanning tree with at most `k` leaves, `None` when none exists. `k = 2` on
/// graphs within [`DP_MAX_ORDER`] is answered by the subset DP.
pub fn has_tree_at_most_k_leaves<'g>(g: &'g Graph, k: usize, budget: Budget) -> Result<Option<SpanningTree<'g>>> {
    match feasibility(g, k, budget)?.result {
        Feasibility::Found(t) => Ok(Some(t)),
        Feasibility::Infeasible => Ok(None),
        Feasibility::OutOfBudget(_) => Err(Error::BudgetExceeded),
    }
}

/// Feasibility with search statistics; dispatches like [`has_tree_at_most_k_leaves`].
pub fn feasibility<'g>(g: &'g Graph, k: usize, budget: Budget) -> Result<FeasibilityRun<'g>> {
    if k < 2 {
        return Err(Error::Precondition(format!("leaf budget k={k} must be at least 2")));
    }
    g.require_connected()?;
    if k == 2 && g.n() <= DP_MAX_ORDER {
        let (res, nodes) = hamiltonian_path_dp_run(g, budget)?;
        let result = match res {
            Ok(Some(path)) => Feasibility::Found(path_tree(g, &path)),
            Ok(None) => Feasibility::Infeasible,
            Err(e) => Feasibility::OutOfBudget(e),
        };
        return Ok(FeasibilityRun { result, nodes });
    }
    branch_and_bound(g, k, budget)
}

/// The tree search alone, without the DP shortcut.
pub fn branch_and_bound<'g>(g: &'g Graph, k: usize, budget: Budget) -> Result<FeasibilityRun<'g>> {
    if k < 2 {
        return Err(Error::Precondition(format!("leaf budget k={k} must be at least 2")));
    }
    let n = g.n();
    if n > SEARCH_MAX_ORDER {
        return Err(Error::TooLarge { n, max: SEARCH_MAX_ORDER });
    }
    g.require_connected()?;
    if n <= 2 {
        let edges = g.edges().to_vec();
        let t = SpanningTree::from_edges_unchecked(g, edges);
        return Ok(FeasibilityRun {
            result: Feasibility::Found(t),
            nodes: 1,
        });
    }
    let mut search = TreeSearch::new(g, k, budget);
    let result = match search.run() {
        Ok(true) => Feasibility::Found(SpanningTree::from_edges_unchecked(g, search.edges.iter().copied())),
        Ok(false) => Feasibility::Infeasible,
        Err(e) => Feasibility::OutOfBudget(e),
    };
    Ok(FeasibilityRun {
        result,
        nodes: search.meter.nodes,
    })
}

/// Partial tree grown from vertex 0. Each step picks a frontier edge and
/// branches on taking it or forbidding it, so every spanning tree is reachable
/// along exactly one branch.
struct TreeSearch {
    n: usize,
    k: usize,
    all: u64,
    in_tree: u64,
    /// Host neighbours still usable (not forbidden).
    avail: Vec<u64>,
    tdeg: Vec<u32>,
    /// Sum over tree vertices of `max(0, deg - 2)`.
    excess: usize,
    edges: Vec<Edge>,
    meter: Meter,
}

impl TreeSearch {
    fn new(g: &Graph, k: usize, budget: Budget) -> Self {
        let n = g.n();
        let avail = g.adjacency_masks().expect("order checked by caller");
        TreeSearch {
            n,
            k,
            all: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            in_tree: 1,
            avail,
            tdeg: vec![0; n],
            excess: 0,
            edges: Vec::with_capacity(n),
            meter: Meter::new(budget),
        }
    }

    fn run(&mut self) -> std::result::Result<bool, Exhausted> {
        self.search()
    }

    fn search(&mut self) -> std::result::Result<bool, Exhausted> {
        self.meter.tick()?;
        if self.in_tree == self.all {
            let leaves = self.tdeg.iter().filter(|&&d| d == 1).count();
            return Ok(leaves <= self.k);
        }
        if !self.promising() {
            return Ok(false);
        }
        let (u, w) = self.pick_frontier_edge();

        // Take (u, w).
        let grows_excess = self.tdeg[u] >= 2;
        if !grows_excess || 2 + self.excess < self.k {
            self.in_tree |= 1 << w;
            self.tdeg[u] += 1;
            self.tdeg[w] += 1;
            if grows_excess {
                self.excess += 1;
            }
            self.edges.push(Edge::new(u, w));
            if self.search()? {
                return Ok(true);
            }
            self.edges.pop();
            if grows_excess {
                self.excess -= 1;
            }
            self.tdeg[u] -= 1;
            self.tdeg[w] -= 1;
            self.in_tree &= !(1 << w);
        }

        // Forbid (u, w).
        self.avail[u] &= !(1 << w);
        self.avail[w] &= !(1 << u);
        let found = self.search()?;
        if !found {
            self.avail[u] |= 1 << w;
            self.avail[w] |= 1 << u;
        }
        Ok(found)
    }

    /// Outside vertex with the fewest usable host edges (ties: smallest label),
    /// joined to its tree neighbour of lowest tree degree.
    fn pick_frontier_edge(&self) -> (Vertex, Vertex) {
        let outside = self.all & !self.in_tree;
        let mut frontier = 0u64;
        for u in bits(self.in_tree) {
            frontier |= self.avail[u] & outside;
        }
        let w = bits(frontier)
            .min_by_key(|&w| (self.avail[w].count_ones(), w))
            .expect("connectivity check guarantees a frontier");
        let u = bits(self.avail[w] & self.in_tree)
            .min_by_key(|&u| (self.tdeg[u], u))
            .expect("frontier vertex has a tree neighbour");
        (u, w)
    }

    fn promising(&self) -> bool {
        if 2 + self.excess > self.k {
            return false;
        }
        // Every vertex must still be reachable through usable edges.
        let mut reach = self.in_tree;
        let mut wave = self.in_tree;
        while wave != 0 {
            let mut next = 0u64;
            for v in bits(wave) {
                next |= self.avail[v];
            }
            next &= !reach;
            reach |= next;
            wave = next;
        }
        if reach != self.all {
            return false;
        }
        // Vertices that can never exceed degree 1.
        let outside = self.all & !self.in_tree;
        let mut certain = 0;
        for v in 0..self.n {
            let cap = if self.in_tree >> v & 1 == 1 {
                self.tdeg[v] + (self.avail[v] & outside).count_ones()
            } else {
                self.avail[v].count_ones()
            };
            if cap <= 1 {
                certain += 1;
            }
        }
        if certain > self.k {
            return false;
        }
        pendant_blocks_of_masks(&self.avail) <= self.k
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Pendant 2-edge-connected components of a connected bitmask graph.
fn pendant_blocks_of_masks(adj: &[u64]) -> usize {
    let adj: Vec<Vec<Vertex>> = adj.iter().map(|&m| bits(m).collect()).collect();
    crate::blocks::pendant_block_count(&adj)
}

/// Minimum leaf count with a witness, by deepening on `k` from the pendant-block
/// lower bound up to the local-search value.
pub fn min_leaf_spanning_tree(g: &Graph, budget: Budget) -> Result<SolveOutcome<'_>> {
    let meter = Meter::new(budget);
    g.require_connected()?;
    let lower = leaf_block_lower_bound(g)?;
    let upper_tree = heuristic_min_leaf(g, &SearchPolicy::default())?;
    let upper = upper_tree.leaf_count();
    let mut nodes = 0;
    let finish = |min_leaves, witness, status, certificate, nodes, meter: &Meter| SolveOutcome {
        min_leaves,
        witness,
        lower_bound_used: lower,
        status,
        certificate,
        nodes_explored: nodes,
        elapsed: meter.elapsed(),
    };
    if g.n() == 1 || upper <= lower {
        return Ok(finish(upper, upper_tree, SolveStatus::Exact, Certificate::LowerBoundMet, 0, &meter));
    }
    if g.n() > SEARCH_MAX_ORDER {
        return Ok(finish(upper, upper_tree, SolveStatus::HeuristicOnly, Certificate::None, 0, &meter));
    }
    for k in lower..upper {
        let remaining = remaining_budget(budget, &meter, nodes);
        let run = feasibility(g, k, remaining)?;
        nodes += run.nodes;
        match run.result {
            Feasibility::Found(t) => {
                let certificate = if k == lower {
                    Certificate::LowerBoundMet
                } else {
                    Certificate::SearchExhausted { infeasible_k: k - 1 }
                };
                return Ok(finish(k, t, SolveStatus::Exact, certificate, nodes, &meter));
            }
            Feasibility::Infeasible => {}
            Feasibility::OutOfBudget(why) => {
                let status = match why {
                    Exhausted::Nodes => SolveStatus::HeuristicOnly,
                    Exhausted::Time => SolveStatus::Timeout,
                };
                return Ok(finish(upper, upper_tree, status, Certificate::None, nodes, &meter));
            }
        }
    }
    Ok(finish(
        upper,
        upper_tree,
        SolveStatus::Exact,
        Certificate::SearchExhausted { infeasible_k: upper - 1 },
        nodes,
        &meter,
    ))
}

fn remaining_budget(budget: Budget, meter: &Meter, used: u64) -> Budget {
    Budget {
        max_nodes: budget.max_nodes.map(|m| m.saturating_sub(used)),
        time_limit: budget.time_limit.map(|t| t.saturating_sub(meter.elapsed())),
    }
}
