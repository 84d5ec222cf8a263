//! Batch verification of leaf-count bounds over enumerated universes, and audits
//! of optimal trees against the counting inequalities used to derive the bound.
//!
//! Every graph of a universe is solved independently on a bounded worker pool.
//! Results are collected in universe order (canonical-label order), so reports
//! are identical across runs and worker counts. Timing fields are zeroed unless
//! explicitly requested.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_is_vacuously_violated, conjecture_bound, theorem_bound, THEOREM_MIN_ORDER};
use crate::budget::Budget;
use crate::canon::{canonical_label, CanonicalLabel};
use crate::enumerate::{enumerate_connected_cubic, CanonicalGraph};
use crate::error::{Error, Result};
use crate::family::{build_gm, order_formula};
use crate::graph::{Edge, Graph};
use crate::graph6::{parse_graph6_str, write_graph6};
use crate::solver::{feasibility, min_leaf_spanning_tree, Certificate, Feasibility, SolveOutcome, SolveStatus};
use crate::tree::SpanningTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// ⌊(2n+4)/9⌋ for cubic graphs of order at least 8.
    Theorem,
    /// ⌊(n+2)/6⌋ at each graph's own order.
    Conjecture,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Theorem => "theorem",
            BoundKind::Conjecture => "conjecture",
        })
    }
}

/// Per-graph time limit used when none is configured.
pub fn default_time_limit(n: usize) -> Duration {
    if n <= 14 {
        Duration::from_secs(10)
    } else {
        Duration::from_secs(60)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    /// Per-graph limit; `None` uses [`default_time_limit`].
    pub time_limit: Option<Duration>,
    /// Record wall-clock fields. Off by default so reports are reproducible.
    pub timings: bool,
}

impl VerifyConfig {
    fn budget(&self, n: usize) -> Budget {
        Budget::time(self.time_limit.unwrap_or_else(|| default_time_limit(n)))
    }
}

/// One JSON-lines report row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub graph6: String,
    pub min_leaves: usize,
    pub status: SolveStatus,
    pub lb: usize,
    pub theorem_bound: Option<usize>,
    pub conjecture_bound: usize,
    pub nodes: u64,
    pub millis: u64,
}

/// A solved graph with its witness tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedGraph {
    pub row: ReportRow,
    pub certificate: Certificate,
    pub witness: Vec<Edge>,
}

/// Evidence that a graph exceeds a bound. Standalone: the graph6 string and the
/// witness are enough to re-check it with [`Violation::reverify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub min_leaves: usize,
    pub status: SolveStatus,
    pub bound_kind: BoundKind,
    pub bound: usize,
    pub witness: Vec<[usize; 2]>,
}

impl Violation {
    /// Rebuilds the witness, checks its leaf count and that no spanning tree has
    /// fewer leaves, then re-evaluates the bound.
    pub fn reverify(&self, budget: Budget) -> Result<bool> {
        let g = parse_graph6_str(&self.graph6)?;
        let tree = SpanningTree::from_edges(&g, self.witness.iter().map(|&[u, v]| (u, v)))?;
        if tree.leaf_count() != self.min_leaves {
            return Ok(false);
        }
        if self.min_leaves > 2 {
            match feasibility(&g, self.min_leaves - 1, budget)?.result {
                Feasibility::Infeasible => {}
                Feasibility::Found(_) => return Ok(false),
                Feasibility::OutOfBudget(_) => return Err(Error::BudgetExceeded),
            }
        }
        let bound = match self.bound_kind {
            BoundKind::Theorem => theorem_bound(g.n()),
            BoundKind::Conjecture => Some(conjecture_bound(g.n())),
        };
        Ok(bound == Some(self.bound) && self.min_leaves > self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub bound_kind: BoundKind,
    pub universe_size: usize,
    pub solved: usize,
    /// Graphs whose solve ended without an exact value.
    pub incomplete: Vec<String>,
    pub max_min_leaves: Option<usize>,
    pub theorem_bound: Option<usize>,
    pub conjecture_bound: usize,
    pub violations: Vec<Violation>,
    /// Graphs whose exact value equals the bound.
    pub tight: Vec<String>,
    pub notes: Vec<String>,
    /// Set when the order lies outside the bound's hypothesis and nothing was solved.
    pub skipped: Option<String>,
    pub elapsed_millis: u64,
    #[serde(skip)]
    pub rows: Vec<ReportRow>,
}

impl BoundReport {
    pub fn is_complete(&self) -> bool {
        self.incomplete.is_empty() && self.solved == self.universe_size
    }

    /// Report rows followed by a summary line, as JSON lines.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("rows serialize"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    fn skipped(n: usize, bound_kind: BoundKind, reason: String) -> Self {
        BoundReport {
            n,
            bound_kind,
            universe_size: 0,
            solved: 0,
            incomplete: Vec::new(),
            max_min_leaves: None,
            theorem_bound: theorem_bound(n),
            conjecture_bound: conjecture_bound(n),
            violations: Vec::new(),
            tight: Vec::new(),
            notes: Vec::new(),
            skipped: Some(reason),
            elapsed_millis: 0,
            rows: Vec::new(),
        }
    }
}

/// Solves every graph of `universe` on a pool of `cfg.jobs` workers. Output
/// order equals input order.
pub fn solve_universe(universe: &[CanonicalGraph], cfg: &VerifyConfig) -> Result<Vec<SolvedGraph>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;
    pool.install(|| universe.par_iter().map(|c| solve_one(&c.graph, &c.label, cfg)).collect())
}

fn solve_one(g: &Graph, label: &CanonicalLabel, cfg: &VerifyConfig) -> Result<SolvedGraph> {
    let n = g.n();
    let outcome = min_leaf_spanning_tree(g, cfg.budget(n))?;
    Ok(SolvedGraph {
        row: ReportRow {
            n,
            graph6: label.to_string(),
            min_leaves: outcome.min_leaves,
            status: outcome.status,
            lb: outcome.lower_bound_used,
            theorem_bound: theorem_bound(n),
            conjecture_bound: conjecture_bound(n),
            nodes: outcome.nodes_explored,
            millis: if cfg.timings { outcome.elapsed.as_millis() as u64 } else { 0 },
        },
        certificate: outcome.certificate,
        witness: outcome.witness.edges().collect(),
    })
}

/// Checks ⌊(2n+4)/9⌋ over all connected cubic graphs of each order.
pub fn verify_theorem_bound(ns: &[usize], cfg: &VerifyConfig) -> Result<Vec<BoundReport>> {
    ns.iter().map(|&n| verify_order(BoundKind::Theorem, n, cfg)).collect()
}

/// Compares per-order maxima with ⌊(n+2)/6⌋ over all connected cubic graphs.
pub fn probe_conjecture(ns: &[usize], cfg: &VerifyConfig) -> Result<Vec<BoundReport>> {
    ns.iter().map(|&n| verify_order(BoundKind::Conjecture, n, cfg)).collect()
}

fn verify_order(kind: BoundKind, n: usize, cfg: &VerifyConfig) -> Result<BoundReport> {
    if kind == BoundKind::Theorem && n < THEOREM_MIN_ORDER {
        return Ok(BoundReport::skipped(
            n,
            kind,
            format!("outside hypothesis: the bound is stated for n >= {THEOREM_MIN_ORDER}"),
        ));
    }
    let universe = enumerate_connected_cubic(n)?;
    if universe.odd_order {
        return Ok(BoundReport::skipped(n, kind, "no cubic graph has odd order".into()));
    }
    verify_universe(kind, n, &universe.graphs, cfg)
}

/// Verifies a bound over an explicit universe (internal or external stream).
pub fn verify_universe(kind: BoundKind, n: usize, universe: &[CanonicalGraph], cfg: &VerifyConfig) -> Result<BoundReport> {
    let started = Instant::now();
    let solved = solve_universe(universe, cfg)?;
    let bound = match kind {
        BoundKind::Theorem => theorem_bound(n),
        BoundKind::Conjecture => Some(conjecture_bound(n)),
    };
    let mut report = BoundReport {
        n,
        bound_kind: kind,
        universe_size: universe.len(),
        solved: 0,
        incomplete: Vec::new(),
        max_min_leaves: None,
        theorem_bound: theorem_bound(n),
        conjecture_bound: conjecture_bound(n),
        violations: Vec::new(),
        tight: Vec::new(),
        notes: Vec::new(),
        skipped: None,
        elapsed_millis: 0,
        rows: Vec::with_capacity(solved.len()),
    };
    for s in solved {
        if s.row.status == SolveStatus::Exact {
            report.solved += 1;
            report.max_min_leaves = report.max_min_leaves.max(Some(s.row.min_leaves));
            if let Some(b) = bound {
                if s.row.min_leaves > b {
                    report.violations.push(Violation {
                        graph6: s.row.graph6.clone(),
                        min_leaves: s.row.min_leaves,
                        status: s.row.status,
                        bound_kind: kind,
                        bound: b,
                        witness: s.witness.iter().map(|e| [e.lo(), e.hi()]).collect(),
                    });
                } else if s.row.min_leaves == b {
                    report.tight.push(s.row.graph6.clone());
                }
            }
        } else {
            report.incomplete.push(s.row.graph6.clone());
        }
        report.rows.push(s.row);
    }
    if let Some(b) = bound {
        if bound_is_vacuously_violated(b) && !universe.is_empty() {
            report.notes.push(format!(
                "bound {b} is below 2, the least leaf count of any spanning tree on two or more vertices, \
                 so every graph of order {n} violates it; the threshold order must exceed {n}"
            ));
        }
    }
    if kind == BoundKind::Conjecture {
        report.notes.extend(family_notes(n, &report.rows)?);
        if report.solved > 0 {
            let non_traceable = report.rows.iter().filter(|r| r.status == SolveStatus::Exact && r.min_leaves > 2).count();
            report.notes.push(format!(
                "{non_traceable} of {} exactly solved graphs of order {n} have no Hamiltonian path",
                report.solved
            ));
        }
    }
    if cfg.timings {
        report.elapsed_millis = started.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// Annotates members of the extremal family that appear in the rows.
fn family_notes(n: usize, rows: &[ReportRow]) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    for m in 1..=3u32 {
        if order_formula(m) != n {
            continue;
        }
        let level = build_gm(m)?;
        let label = canonical_label(&level.graph)?;
        let Some(row) = rows.iter().find(|r| r.graph6 == label.as_str()) else {
            continue;
        };
        let bound = conjecture_bound(n);
        let relation = if row.status != SolveStatus::Exact {
            format!("has {} leaves by {}", row.min_leaves, row.status)
        } else if row.min_leaves == bound {
            format!("attains the bound with equality: min_leaves {} = (n+2)/6 = {bound}", row.min_leaves)
        } else {
            format!("has min_leaves {} against bound {bound}", row.min_leaves)
        };
        notes.push(format!("family member G_{m} ({}) {relation}", row.graph6));
    }
    Ok(notes)
}

/// Counting quantities of one optimal tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub graph_id: String,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub n1: usize,
    pub leaves_independent: bool,
    /// n1 ≥ ⌈5k/2⌉.
    pub inequality_holds: bool,
    /// n ≥ 9k/2 − 2.
    pub chain_holds: bool,
    pub witness: Vec<[usize; 2]>,
}

impl AuditRecord {
    /// Evaluates the counts on any spanning tree with maximum degree at most 3.
    pub fn from_tree(tree: &SpanningTree<'_>) -> Result<Self> {
        let stats = tree.leaf_stats();
        if stats.max_degree > 3 {
            return Err(Error::Precondition("tree has a vertex of degree above 3".into()));
        }
        let n = tree.n();
        let k = stats.k;
        Ok(AuditRecord {
            graph_id: write_graph6(tree.host())?,
            n,
            k,
            p: stats.p,
            n1: stats.n1,
            leaves_independent: tree.leaves_independent(),
            inequality_holds: 2 * stats.n1 >= 5 * k,
            chain_holds: 2 * n + 4 >= 9 * k,
            witness: tree.edges().map(|e| [e.lo(), e.hi()]).collect(),
        })
    }

    /// True when any audited property fails.
    pub fn flagged(&self) -> bool {
        !(self.leaves_independent && self.inequality_holds && self.chain_holds && self.k == self.p + 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditResult {
    Audited(AuditRecord),
    Skipped { graph_id: String, reason: String },
}

/// Audits the witness of an exact outcome with at least three leaves.
pub fn audit_optimal_tree(g: &Graph, outcome: &SolveOutcome<'_>) -> Result<AuditResult> {
    let graph_id = write_graph6(g)?;
    if outcome.status != SolveStatus::Exact {
        return Ok(AuditResult::Skipped {
            graph_id,
            reason: format!("exact outcome required, got {}", outcome.status),
        });
    }
    if outcome.min_leaves < 3 {
        return Ok(AuditResult::Skipped {
            graph_id,
            reason: "k >= 3 required".into(),
        });
    }
    if !g.is_regular(3) {
        return Ok(AuditResult::Skipped {
            graph_id,
            reason: "cubic host required".into(),
        });
    }
    AuditRecord::from_tree(&outcome.witness).map(AuditResult::Audited)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub universe_size: usize,
    pub results: Vec<AuditResult>,
    /// Graphs without an exact value.
    pub incomplete: Vec<String>,
}

impl AuditReport {
    pub fn audited(&self) -> impl Iterator<Item = &AuditRecord> {
        self.results.iter().filter_map(|r| match r {
            AuditResult::Audited(a) => Some(a),
            AuditResult::Skipped { .. } => None,
        })
    }

    pub fn flagged(&self) -> impl Iterator<Item = &AuditRecord> {
        self.audited().filter(|a| a.flagged())
    }

    pub fn skipped_count(&self) -> usize {
        self.results.len() - self.audited().count()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "summary": {
                "n": self.n,
                "universe_size": self.universe_size,
                "audited": self.audited().count(),
                "skipped": self.skipped_count(),
                "flagged": self.flagged().count(),
                "incomplete": self.incomplete,
            }
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Solves and audits every connected cubic graph of order `n`.
pub fn audit_universe(n: usize, cfg: &VerifyConfig) -> Result<AuditReport> {
    let universe = enumerate_connected_cubic(n)?;
    audit_graphs(n, universe.graphs.iter().map(|c| c.graph.clone()).collect(), cfg)
}

/// Solves and audits the given graphs, in order.
pub fn audit_graphs(n: usize, graphs: Vec<Graph>, cfg: &VerifyConfig) -> Result<AuditReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;
    let results: Vec<(AuditResult, bool)> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let outcome = min_leaf_spanning_tree(g, cfg.budget(g.n()))?;
                let exact = outcome.status == SolveStatus::Exact;
                Ok((audit_optimal_tree(g, &outcome)?, exact))
            })
            .collect::<Result<_>>()
    })?;
    let incomplete = results
        .iter()
        .filter(|(_, exact)| !exact)
        .map(|(r, _)| match r {
            AuditResult::Skipped { graph_id, .. } => graph_id.clone(),
            AuditResult::Audited(a) => a.graph_id.clone(),
        })
        .collect();
    Ok(AuditReport {
        n,
        universe_size: graphs.len(),
        results: results.into_iter().map(|(r, _)| r).collect(),
        incomplete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_g1;

    fn cfg() -> VerifyConfig {
        VerifyConfig {
            jobs: 2,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn order_four_is_outside_the_hypothesis() {
        let r = verify_theorem_bound(&[4], &cfg()).unwrap();
        assert!(r[0].skipped.as_deref().unwrap().contains("outside hypothesis"));
        assert_eq!(r[0].universe_size, 0);
    }

    #[test]
    fn order_eight_has_no_theorem_violation() {
        let r = &verify_theorem_bound(&[8], &cfg()).unwrap()[0];
        assert_eq!(r.universe_size, 5);
        assert_eq!(r.solved, 5);
        assert_eq!(r.theorem_bound, Some(2));
        assert!(r.violations.is_empty());
        assert_eq!(r.max_min_leaves, Some(2));
        assert!(r.is_complete());
    }

    #[test]
    fn conjecture_at_eight_is_vacuous() {
        let r = &probe_conjecture(&[8], &cfg()).unwrap()[0];
        assert_eq!(r.conjecture_bound, 1);
        assert_eq!(r.violations.len(), 5);
        assert!(r.notes.iter().any(|s| s.contains("threshold order must exceed 8")));
        for v in &r.violations {
            assert!(v.reverify(Budget::UNLIMITED).unwrap());
        }
    }

    #[test]
    fn g1_audit_matches_hand_count() {
        let g = build_g1().graph;
        let outcome = min_leaf_spanning_tree(&g, Budget::UNLIMITED).unwrap();
        let AuditResult::Audited(a) = audit_optimal_tree(&g, &outcome).unwrap() else {
            panic!("G_1 must be audited");
        };
        assert_eq!((a.k, a.p, a.n1), (3, 1, 12));
        assert!(a.leaves_independent && a.inequality_holds && a.chain_holds);
        assert!(!a.flagged());
    }

    #[test]
    fn traceable_graph_is_skipped() {
        let g = Graph::complete(4);
        let outcome = min_leaf_spanning_tree(&g, Budget::UNLIMITED).unwrap();
        let r = audit_optimal_tree(&g, &outcome).unwrap();
        assert!(matches!(r, AuditResult::Skipped { ref reason, .. } if reason == "k >= 3 required"));
    }

    #[test]
    fn synthetic_shortfall_is_flagged() {
        // A spider with three legs of length one: k = 3, n1 = 0.
        let g = Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = SpanningTree::from_edges(&g, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let a = AuditRecord::from_tree(&t).unwrap();
        assert!(!a.inequality_holds);
        assert!(a.flagged());
    }

    #[test]
    fn rows_serialize_with_the_documented_keys() {
        let r = &verify_theorem_bound(&[8], &cfg()).unwrap()[0];
        let first = r.to_jsonl().lines().next().unwrap().to_string();
        let v: serde_json::Value = serde_json::from_str(&first).unwrap();
        for key in ["n", "graph6", "min_leaves", "status", "lb", "theorem_bound", "conjecture_bound", "nodes", "millis"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["millis"], 0);
    }
}
