//! Closed-form leaf bounds and classical sufficient conditions for spanning
//! trees with few leaves.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::blocks::{block_cut_decomposition, vertex_connectivity, CONNECTIVITY_MAX_ORDER};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::graph6::write_graph6;

/// Smallest order covered by the cubic leaf bound.
pub const THEOREM_MIN_ORDER: usize = 8;

/// Largest order accepted by the exhaustive independent-set searches.
pub const EXHAUSTIVE_MAX_ORDER: usize = 64;

/// Upper bound on the minimum leaf count of a connected cubic graph of order
/// `n`: `floor((2n + 4) / 9)`. Only defined for `n >= 8`.
pub fn theorem_bound(n: usize) -> Option<usize> {
    (n >= THEOREM_MIN_ORDER).then(|| (2 * n + 4) / 9)
}

/// Conjectured bound `floor((n + 2) / 6)`.
pub fn conjecture_bound(n: usize) -> usize {
    (n + 2) / 6
}

/// A spanning tree on two or more vertices has at least two leaves, so any
/// bound below 2 is violated by every graph of that order.
pub fn bound_is_vacuously_violated(bound: usize) -> bool {
    bound < 2
}

/// `max(2, pendant blocks)`: each block reachable through a single bridge
/// contains a leaf of every spanning tree. Zero for the one-vertex graph.
pub fn leaf_block_lower_bound(g: &Graph) -> Result<usize> {
    let s = block_cut_decomposition(g)?;
    Ok(if g.n() < 2 {
        0
    } else {
        s.pendant_block_count.max(2)
    })
}

/// Minimum degree sum over independent vertex sets of a given size; infinite
/// when no such set exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DegreeSum {
    Finite(usize),
    Infinite,
}

impl DegreeSum {
    /// Whether the degree-sum condition `self >= threshold` holds; infinity
    /// satisfies every threshold.
    pub fn at_least(self, threshold: isize) -> bool {
        match self {
            DegreeSum::Finite(s) => s as isize >= threshold,
            DegreeSum::Infinite => true,
        }
    }
}

impl fmt::Display for DegreeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSum::Finite(s) => write!(f, "{s}"),
            DegreeSum::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for DegreeSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DegreeSum::Finite(v) => s.serialize_u64(*v as u64),
            DegreeSum::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for DegreeSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(DegreeSum::Finite(v as usize)),
            Raw::Str(s) if s == "inf" => Ok(DegreeSum::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad degree sum {s:?}"))),
        }
    }
}

fn masks_for_exhaustive(g: &Graph) -> Result<Vec<u64>> {
    g.adjacency_masks().ok_or(Error::TooLarge {
        n: g.n(),
        max: EXHAUSTIVE_MAX_ORDER,
    })
}

/// `sigma_k`: minimum degree sum of an independent `k`-set, by exhaustive search.
pub fn sigma_k(g: &Graph, k: usize, budget: Budget) -> Result<DegreeSum> {
    if k == 0 {
        return Err(Error::Precondition("sigma_k needs k >= 1".into()));
    }
    let adj = masks_for_exhaustive(g)?;
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut sorted = degrees.clone();
    sorted.sort_unstable();
    let mut meter = Meter::new(budget);
    let mut best = usize::MAX;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    sigma_search(&adj, &degrees, &sorted, k, all, 0, &mut best, &mut meter)
        .map_err(|_| Error::BudgetExceeded)?;
    Ok(if best == usize::MAX {
        DegreeSum::Infinite
    } else {
        DegreeSum::Finite(best)
    })
}

#[allow(clippy::too_many_arguments)]
fn sigma_search(
    adj: &[u64],
    degrees: &[usize],
    sorted: &[usize],
    left: usize,
    candidates: u64,
    sum: usize,
    best: &mut usize,
    meter: &mut Meter,
) -> std::result::Result<(), crate::budget::Exhausted> {
    meter.tick()?;
    if left == 0 {
        *best = (*best).min(sum);
        return Ok(());
    }
    if (candidates.count_ones() as usize) < left {
        return Ok(());
    }
    // The `left` smallest degrees in the whole graph bound any completion.
    let optimistic: usize = sorted[..left].iter().sum();
    if sum + optimistic >= *best {
        return Ok(());
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        sigma_search(adj, degrees, sorted, left - 1, rest & !adj[v], sum + degrees[v], best, meter)?;
    }
    Ok(())
}

/// Size of a largest independent set, by branch and bound on bitmasks.
pub fn independence_number(g: &Graph, budget: Budget) -> Result<usize> {
    let adj = masks_for_exhaustive(g)?;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut meter = Meter::new(budget);
    let mut best = 0;
    mis_search(&adj, all, 0, &mut best, &mut meter).map_err(|_| Error::BudgetExceeded)?;
    Ok(best)
}

fn mis_search(
    adj: &[u64],
    candidates: u64,
    size: usize,
    best: &mut usize,
    meter: &mut Meter,
) -> std::result::Result<(), crate::budget::Exhausted> {
    meter.tick()?;
    if candidates == 0 {
        *best = (*best).max(size);
        return Ok(());
    }
    if size + candidates.count_ones() as usize <= *best {
        return Ok(());
    }
    // A vertex of degree <= 1 among the candidates is always safe to take.
    let mut rest = candidates;
    let mut pivot = None;
    let mut pivot_deg = u32::MAX;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & candidates).count_ones();
        if d <= 1 {
            return mis_search(adj, candidates & !adj[v] & !(1 << v), size + 1, best, meter);
        }
        if pivot.is_none() || d > pivot_deg {
            pivot = Some(v);
            pivot_deg = d;
        }
    }
    let v = pivot.expect("non-empty candidate set");
    mis_search(adj, candidates & !adj[v] & !(1 << v), size + 1, best, meter)?;
    mis_search(adj, candidates & !(1 << v), size, best, meter)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub graph_id: String,
    pub sigma2: DegreeSum,
    pub alpha: usize,
    pub connectivity: usize,
    /// Degree-sum condition for a Hamiltonian path: `sigma2 >= n - 1`.
    pub ore_traceable: bool,
    /// Smallest `k >= 2` with `sigma2 >= n - k + 1`, clamped to `[2, max(2, n - 1)]`.
    pub bt_k_ended: usize,
    /// Smallest `k >= 2` with `alpha <= connectivity + k - 1`; absent when the
    /// graph is too large for exact connectivity.
    pub win_k_ended: Option<usize>,
}

/// Evaluates the degree-sum and independence-number sufficient conditions.
pub fn sufficient_k_ended(g: &Graph, budget: Budget) -> Result<ConditionReport> {
    g.require_connected()?;
    let n = g.n();
    let sigma2 = sigma_k(g, 2, budget)?;
    let alpha = independence_number(g, budget)?;
    let connectivity = vertex_connectivity(g);
    let ore_traceable = sigma2.at_least(n as isize - 1);
    let upper = (n.saturating_sub(1)).max(2);
    let bt_k_ended = match sigma2 {
        DegreeSum::Infinite => 2,
        DegreeSum::Finite(s) => (n + 1).saturating_sub(s).clamp(2, upper),
    };
    let win_k_ended = (n <= CONNECTIVITY_MAX_ORDER)
        .then(|| (alpha + 1).saturating_sub(connectivity).max(2));
    Ok(ConditionReport {
        graph_id: write_graph6(g)?,
        sigma2,
        alpha,
        connectivity,
        ore_traceable,
        bt_k_ended,
        win_k_ended,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    /// Threshold `n - 1`.
    HamPath,
    /// Threshold `n`.
    HamCycle,
}

impl ClosureMode {
    pub fn threshold(self, n: usize) -> usize {
        match self {
            ClosureMode::HamPath => n.saturating_sub(1),
            ClosureMode::HamCycle => n,
        }
    }
}

/// Repeatedly joins non-adjacent pairs whose current degree sum reaches the
/// mode's threshold, until no pair qualifies.
pub fn bondy_chvatal_closure(g: &Graph, mode: ClosureMode) -> Graph {
    closure_with_order(g, mode, |pairs| pairs)
}

/// Closure with a caller-chosen scan order over candidate pairs in each round.
/// The fixpoint does not depend on it.
pub fn closure_with_order<F>(g: &Graph, mode: ClosureMode, mut order: F) -> Graph
where
    F: FnMut(Vec<Edge>) -> Vec<Edge>,
{
    let n = g.n();
    let threshold = mode.threshold(n);
    let mut adj = vec![vec![false; n]; n];
    let mut degree = vec![0usize; n];
    for e in g.edges() {
        adj[e.lo()][e.hi()] = true;
        adj[e.hi()][e.lo()] = true;
        degree[e.lo()] += 1;
        degree[e.hi()] += 1;
    }
    let mut added = Vec::new();
    loop {
        let pairs: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)))
            .filter(|e| !adj[e.lo()][e.hi()])
            .collect();
        let mut changed = false;
        for e in order(pairs) {
            let (u, v) = e.endpoints();
            if !adj[u][v] && degree[u] + degree[v] >= threshold {
                adj[u][v] = true;
                adj[v][u] = true;
                degree[u] += 1;
                degree[v] += 1;
                added.push(e);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    g.with_added_edges(added).expect("closure adds only simple edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_bound_values() {
        assert_eq!(theorem_bound(7), None);
        assert_eq!(theorem_bound(8), Some(2));
        assert_eq!(theorem_bound(16), Some(4));
        assert_eq!(theorem_bound(70), Some(16));
    }

    #[test]
    fn conjecture_bound_values() {
        assert_eq!(conjecture_bound(16), 3);
        assert_eq!(conjecture_bound(34), 6);
        assert_eq!(conjecture_bound(8), 1);
        assert!(bound_is_vacuously_violated(conjecture_bound(8)));
        assert!(!bound_is_vacuously_violated(conjecture_bound(10)));
    }

    #[test]
    fn k4_lower_bound() {
        assert_eq!(leaf_block_lower_bound(&Graph::complete(4)).unwrap(), 2);
    }

    #[test]
    fn sigma_values() {
        let pet = Graph::petersen();
        assert_eq!(sigma_k(&pet, 1, Budget::UNLIMITED).unwrap(), DegreeSum::Finite(3));
        assert_eq!(sigma_k(&pet, 2, Budget::UNLIMITED).unwrap(), DegreeSum::Finite(6));
        assert_eq!(sigma_k(&pet, 5, Budget::UNLIMITED).unwrap(), DegreeSum::Infinite);
        assert_eq!(
            sigma_k(&Graph::complete(4), 2, Budget::UNLIMITED).unwrap(),
            DegreeSum::Infinite
        );
        let star = Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(sigma_k(&star, 3, Budget::UNLIMITED).unwrap(), DegreeSum::Finite(3));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(independence_number(&Graph::complete(4), Budget::UNLIMITED).unwrap(), 1);
        assert_eq!(independence_number(&Graph::cycle(5), Budget::UNLIMITED).unwrap(), 2);
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(
            independence_number(&Graph::petersen(), Budget::nodes(2)),
            Err(Error::BudgetExceeded)
        );
    }

    #[test]
    fn conditions_on_k4() {
        let r = sufficient_k_ended(&Graph::complete(4), Budget::UNLIMITED).unwrap();
        assert_eq!(r.sigma2, DegreeSum::Infinite);
        assert!(r.ore_traceable);
        assert_eq!(r.bt_k_ended, 2);
        assert_eq!(r.graph_id, "C~");
    }

    #[test]
    fn degree_sum_json() {
        let r = sufficient_k_ended(&Graph::complete(4), Budget::UNLIMITED).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"sigma2\":\"inf\""));
        let back: ConditionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn closures() {
        let c4 = Graph::cycle(4);
        assert_eq!(bondy_chvatal_closure(&c4, ClosureMode::HamPath), Graph::complete(4));
        assert_eq!(bondy_chvatal_closure(&c4, ClosureMode::HamCycle), Graph::complete(4));
        let pet = Graph::petersen();
        assert_eq!(bondy_chvatal_closure(&pet, ClosureMode::HamPath), pet);
        assert_eq!(bondy_chvatal_closure(&pet, ClosureMode::HamCycle), pet);
    }
}
