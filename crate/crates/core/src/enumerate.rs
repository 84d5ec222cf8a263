//! Exhaustive generation of connected cubic (and subcubic) graphs up to isomorphism.
//!
//! Two independent generators are provided. [`enumerate_connected_cubic`] is an
//! orderly generator: vertices are added one at a time and a prefix survives only
//! if its adjacency string (upper triangle, column by column) is the largest over
//! all relabellings. Such a labelling is a breadth-first order, which gives cheap
//! necessary conditions before the full test. [`enumerate_by_backtracking`]
//! fills vertex degrees in breadth-first discovery order and removes duplicates
//! with [`canonical_label`]; it is slower and serves as a cross-check.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_graph, CanonicalLabel};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::graph6::parse_graph6;

/// Largest order accepted by the generators.
pub const ENUM_MAX_ORDER: usize = 20;
/// Largest order accepted by the backtracking cross-check.
pub const BACKTRACK_MAX_ORDER: usize = 12;
/// Prefix depth at which the orderly search is split into parallel jobs.
const SPLIT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeRule {
    /// Every vertex has degree exactly 3.
    Cubic,
    /// Every vertex has degree at most 3.
    Subcubic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGraph {
    pub label: CanonicalLabel,
    /// The graph relabelled into canonical form; its graph6 string is `label`.
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub n: usize,
    pub rule: DegreeRule,
    /// One representative per isomorphism class, sorted by label.
    pub graphs: Vec<CanonicalGraph>,
    /// Set when no cubic graph of this order exists because `n` is odd.
    pub odd_order: bool,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn labels(&self) -> Vec<&CanonicalLabel> {
        self.graphs.iter().map(|c| &c.label).collect()
    }

    /// One graph6 line per class.
    pub fn to_graph6_lines(&self) -> String {
        self.graphs.iter().map(|c| format!("{}\n", c.label)).collect()
    }

    fn empty(n: usize, rule: DegreeRule, odd_order: bool) -> Self {
        Enumeration {
            n,
            rule,
            graphs: Vec::new(),
            odd_order,
        }
    }

    fn from_graphs(n: usize, rule: DegreeRule, graphs: impl IntoIterator<Item = Graph>) -> Result<(Self, usize)> {
        let mut map = BTreeMap::new();
        let mut duplicates = 0;
        for g in graphs {
            let (label, graph) = canonical_graph(&g)?;
            if map.insert(label, graph).is_some() {
                duplicates += 1;
            }
        }
        let graphs = map
            .into_iter()
            .map(|(label, graph)| CanonicalGraph { label, graph })
            .collect();
        Ok((
            Enumeration {
                n,
                rule,
                graphs,
                odd_order: false,
            },
            duplicates,
        ))
    }
}

/// All connected cubic graphs on `n` vertices, one per isomorphism class.
pub fn enumerate_connected_cubic(n: usize) -> Result<Enumeration> {
    orderly(n, DegreeRule::Cubic)
}

/// All connected graphs on `n` vertices with maximum degree at most 3.
pub fn enumerate_connected_subcubic(n: usize) -> Result<Enumeration> {
    orderly(n, DegreeRule::Subcubic)
}

fn check_order(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::TooLarge { n, max });
    }
    Ok(())
}

fn orderly(n: usize, rule: DegreeRule) -> Result<Enumeration> {
    check_order(n, ENUM_MAX_ORDER)?;
    if rule == DegreeRule::Cubic && (n % 2 == 1 || n < 4) {
        return Ok(Enumeration::empty(n, rule, n % 2 == 1));
    }
    if n == 0 {
        return Ok(Enumeration::empty(0, rule, false));
    }
    let root = Prefix {
        n,
        rule,
        adj: vec![0; n],
        deg: vec![0; n],
        k: 1,
    };
    let mut seeds = Vec::new();
    root.clone().extend(SPLIT_DEPTH.min(n), &mut |p| seeds.push(p.clone()));
    let found: Vec<Vec<Graph>> = seeds
        .into_par_iter()
        .map(|seed| {
            let mut out = Vec::new();
            seed.extend(n, &mut |p| out.push(p.to_graph()));
            out
        })
        .collect();
    let (enumeration, duplicates) = Enumeration::from_graphs(n, rule, found.into_iter().flatten())?;
    debug_assert_eq!(duplicates, 0, "orderly generation produced an isomorphic pair");
    Ok(enumeration)
}

#[derive(Debug, Clone)]
struct Prefix {
    n: usize,
    rule: DegreeRule,
    adj: Vec<u64>,
    deg: Vec<u8>,
    /// Number of placed vertices.
    k: usize,
}

impl Prefix {
    fn to_graph(&self) -> Graph {
        let pairs = (0..self.k).flat_map(|v| {
            let m = self.adj[v];
            (0..v).filter(move |&u| m >> u & 1 == 1).map(move |u| (u, v))
        });
        Graph::from_edge_list(self.k, pairs).expect("prefix edges are simple")
    }

    fn complete(&self) -> bool {
        match self.rule {
            DegreeRule::Cubic => self.deg[..self.k].iter().all(|&d| d == 3),
            DegreeRule::Subcubic => true,
        }
    }

    /// Visits every canonical extension with `target` placed vertices.
    fn extend(mut self, target: usize, visit: &mut dyn FnMut(&Prefix)) {
        self.grow(target, visit);
    }

    fn grow(&mut self, target: usize, visit: &mut dyn FnMut(&Prefix)) {
        let k = self.k;
        if k == target {
            if k < self.n || self.complete() {
                visit(self);
            }
            return;
        }
        let prev_parent = if k >= 2 { self.adj[k - 1].trailing_zeros() as usize } else { 0 };
        let prev_col = if k >= 2 { self.adj[k - 1] & low_mask(k - 1) } else { 0 };
        let candidates: Vec<Vertex> = (prev_parent..k).filter(|&i| self.deg[i] < 3).collect();
        let mut chosen = Vec::with_capacity(3);
        self.choose(&candidates, 0, &mut chosen, prev_col, target, visit);
    }

    fn choose(
        &mut self,
        candidates: &[Vertex],
        from: usize,
        chosen: &mut Vec<Vertex>,
        prev_col: u64,
        target: usize,
        visit: &mut dyn FnMut(&Prefix),
    ) {
        if !chosen.is_empty() {
            self.try_column(chosen, prev_col, target, visit);
        }
        if chosen.len() == 3 {
            return;
        }
        for i in from..candidates.len() {
            chosen.push(candidates[i]);
            self.choose(candidates, i + 1, chosen, prev_col, target, visit);
            chosen.pop();
        }
    }

    fn try_column(&mut self, column: &[Vertex], prev_col: u64, target: usize, visit: &mut dyn FnMut(&Prefix)) {
        let k = self.k;
        let parent = column[0];
        if self.rule == DegreeRule::Cubic && self.deg[..parent].iter().any(|&d| d < 3) {
            return;
        }
        let col: u64 = column.iter().fold(0, |m, &i| m | 1 << i);
        // Swapping k-1 and k must not give a larger string.
        if k >= 2 && column_greater(col & low_mask(k - 1), prev_col) {
            return;
        }
        if !self.feasible_after(column) {
            return;
        }
        for &i in column {
            self.adj[i] |= 1 << k;
            self.deg[i] += 1;
        }
        self.adj[k] = col;
        self.deg[k] = column.len() as u8;
        self.k += 1;
        if is_canonical(&self.adj, self.k) {
            self.grow(target, visit);
        }
        self.k -= 1;
        self.adj[k] = 0;
        self.deg[k] = 0;
        for &i in column {
            self.adj[i] &= !(1 << k);
            self.deg[i] -= 1;
        }
    }

    fn feasible_after(&self, column: &[Vertex]) -> bool {
        if self.rule == DegreeRule::Subcubic {
            return true;
        }
        let k = self.k;
        let remaining = self.n - k - 1;
        let mut deficit = 3 - column.len();
        for i in 0..k {
            let d = self.deg[i] as usize + usize::from(column.contains(&i));
            let need = 3 - d;
            if need > remaining {
                return false;
            }
            deficit += need;
        }
        if remaining == 0 {
            deficit == 0
        } else {
            deficit >= 1 && deficit <= 3 * remaining
        }
    }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Compares two columns read from row 0 downward.
fn column_greater(a: u64, b: u64) -> bool {
    let x = a ^ b;
    x != 0 && a >> x.trailing_zeros() & 1 == 1
}

/// True when no relabelling of the first `k` vertices has a larger adjacency
/// string. Builds candidate labellings position by position and abandons a
/// branch as soon as its column falls below the current one.
fn is_canonical(adj: &[u64], k: usize) -> bool {
    let mut mapped = vec![0u64; k];
    !larger_exists(adj, k, 0, 0, &mut mapped)
}

fn larger_exists(adj: &[u64], k: usize, pos: usize, used: u64, mapped: &mut [u64]) -> bool {
    if pos == k {
        return false;
    }
    let target = adj[pos] & low_mask(pos);
    let mut ties = Vec::new();
    for (x, &col) in mapped.iter().enumerate() {
        if used >> x & 1 == 1 {
            continue;
        }
        if column_greater(col, target) {
            return true;
        }
        if col == target {
            ties.push(x);
        }
    }
    for x in ties {
        let nb = adj[x] & low_mask(k);
        let mut m = nb;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            mapped[w] |= 1 << pos;
            m &= m - 1;
        }
        let found = larger_exists(adj, k, pos + 1, used | 1 << x, mapped);
        let mut m = nb;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            mapped[w] &= !(1 << pos);
            m &= m - 1;
        }
        if found {
            return true;
        }
    }
    false
}

/// Independent generator: degrees are filled vertex by vertex in breadth-first
/// discovery order, and isomorphic duplicates are removed by canonical label.
pub fn enumerate_by_backtracking(n: usize, rule: DegreeRule) -> Result<Enumeration> {
    check_order(n, BACKTRACK_MAX_ORDER)?;
    if rule == DegreeRule::Cubic && (n % 2 == 1 || n < 4) {
        return Ok(Enumeration::empty(n, rule, n % 2 == 1));
    }
    if n == 0 {
        return Ok(Enumeration::empty(0, rule, false));
    }
    let mut state = Fill {
        n,
        rule,
        adj: vec![Vec::new(); n],
        next: 1,
        out: Vec::new(),
    };
    state.vertex(0);
    Enumeration::from_graphs(n, rule, state.out).map(|(e, _)| e)
}

struct Fill {
    n: usize,
    rule: DegreeRule,
    adj: Vec<Vec<Vertex>>,
    /// Vertices `0..next` have been discovered.
    next: usize,
    out: Vec<Graph>,
}

impl Fill {
    fn vertex(&mut self, v: Vertex) {
        if v == self.n {
            let pairs = (0..self.n).flat_map(|u| self.adj[u].iter().filter(move |&&w| u < w).map(move |&w| (u, w)));
            self.out.push(Graph::from_edge_list(self.n, pairs).expect("simple by construction"));
            return;
        }
        if v >= self.next {
            return;
        }
        let d = self.adj[v].len();
        let finals: Vec<usize> = match self.rule {
            DegreeRule::Cubic => vec![3],
            DegreeRule::Subcubic => (d.max(usize::from(self.n > 1))..=3).collect(),
        };
        let candidates: Vec<Vertex> = (v + 1..self.next)
            .filter(|&w| self.adj[w].len() < 3 && !self.adj[v].contains(&w))
            .collect();
        for f in finals {
            if f < d {
                continue;
            }
            let mut picked = Vec::new();
            self.pick(v, f - d, &candidates, 0, &mut picked);
        }
    }

    fn pick(&mut self, v: Vertex, need: usize, candidates: &[Vertex], from: usize, picked: &mut Vec<Vertex>) {
        // Remaining slots go to fresh vertices.
        let fresh = need - picked.len();
        if self.next + fresh <= self.n {
            let start = self.next;
            let targets: Vec<Vertex> = picked.iter().copied().chain(start..start + fresh).collect();
            for &w in &targets {
                self.adj[v].push(w);
                self.adj[w].push(v);
            }
            self.next += fresh;
            self.vertex(v + 1);
            self.next -= fresh;
            for &w in &targets {
                self.adj[v].pop();
                self.adj[w].pop();
            }
        }
        if picked.len() == need {
            return;
        }
        for i in from..candidates.len() {
            picked.push(candidates[i]);
            self.pick(v, need, candidates, i + 1, picked);
            picked.pop();
        }
    }
}

/// Result of reading an externally produced graph6 stream as the universe.
#[derive(Debug, Clone)]
pub struct ExternalUniverse {
    pub enumeration: Enumeration,
    /// Records that were not connected cubic graphs of the requested order.
    pub rejected: usize,
    /// Records isomorphic to an earlier one.
    pub duplicates: usize,
}

/// Reads graph6 records (one per line) and keeps the connected cubic graphs of
/// order `n`, deduplicated and sorted by canonical label. Malformed records are
/// errors.
pub fn universe_from_graph6(text: &str, n: usize) -> Result<ExternalUniverse> {
    let mut kept = Vec::new();
    let mut rejected = 0;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line.as_bytes())?;
        if g.n() == n && g.is_regular(3) && g.is_connected() {
            kept.push(g);
        } else {
            rejected += 1;
        }
    }
    let (enumeration, duplicates) = Enumeration::from_graphs(n, DegreeRule::Cubic, kept)?;
    Ok(ExternalUniverse {
        enumeration,
        rejected,
        duplicates,
    })
}

/// Uniform-pairing sampler for connected cubic graphs; retries until the
/// pairing is simple and connected. `None` for odd `n`, `n < 4`, or after
/// `attempts` failures.
pub fn random_connected_cubic<R: Rng>(n: usize, rng: &mut R, attempts: usize) -> Option<Graph> {
    if n % 2 == 1 || n < 4 {
        return None;
    }
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| [v, v, v]).collect();
    for _ in 0..attempts {
        points.shuffle(rng);
        let mut pairs: Vec<(Vertex, Vertex)> = points.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        if pairs.iter().any(|&(a, b)| a == b) {
            continue;
        }
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Graph::from_edge_list(n, pairs).expect("checked simple");
        if g.is_connected() {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_cubic_counts() {
        let counts: Vec<usize> = [4, 6, 8, 10].iter().map(|&n| enumerate_connected_cubic(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn odd_order_is_flagged_empty() {
        let e = enumerate_connected_cubic(7).unwrap();
        assert!(e.is_empty());
        assert!(e.odd_order);
        assert!(!enumerate_connected_cubic(8).unwrap().odd_order);
    }

    #[test]
    fn output_is_sorted_cubic_and_connected() {
        let e = enumerate_connected_cubic(10).unwrap();
        assert!(e.graphs.windows(2).all(|w| w[0].label < w[1].label));
        for c in &e.graphs {
            assert!(c.graph.is_regular(3) && c.graph.is_connected());
        }
    }

    #[test]
    fn backtracking_agrees_up_to_ten() {
        for n in [4, 6, 8, 10] {
            let a = enumerate_connected_cubic(n).unwrap();
            let b = enumerate_by_backtracking(n, DegreeRule::Cubic).unwrap();
            assert_eq!(a.labels(), b.labels(), "n = {n}");
        }
    }

    #[test]
    fn subcubic_generators_agree() {
        for n in 1..=7 {
            let a = enumerate_connected_subcubic(n).unwrap();
            let b = enumerate_by_backtracking(n, DegreeRule::Subcubic).unwrap();
            assert_eq!(a.labels(), b.labels(), "n = {n}");
        }
    }

    #[test]
    fn subcubic_small_counts() {
        // K1; K2; P3 and K3; six graphs on four vertices (K4 minus nothing has
        // degree 3, so K4 counts).
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_connected_subcubic(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6]);
    }

    #[test]
    fn external_universe_dedupes_and_filters() {
        let k4 = "C~";
        let relabelled_prism = crate::graph6::write_graph6(
            &Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
                .unwrap()
                .relabel(&[3, 0, 4, 1, 5, 2]),
        )
        .unwrap();
        let k33 = crate::graph6::write_graph6(
            &Graph::from_edge_list(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap(),
        )
        .unwrap();
        let prism = crate::graph6::write_graph6(
            &Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap(),
        )
        .unwrap();
        let text = format!("{k4}\n{prism}\n\n{relabelled_prism}\n{k33}\n");
        let u = universe_from_graph6(&text, 6).unwrap();
        assert_eq!(u.rejected, 1);
        assert_eq!(u.duplicates, 1);
        assert_eq!(u.enumeration.labels(), enumerate_connected_cubic(6).unwrap().labels());
        assert!(universe_from_graph6("C~\n~~~\n", 4).is_err());
    }

    #[test]
    fn sampler_yields_members_of_the_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let all = enumerate_connected_cubic(8).unwrap();
        for _ in 0..20 {
            let g = random_connected_cubic(8, &mut rng, 1000).unwrap();
            let (label, _) = canonical_graph(&g).unwrap();
            assert!(all.graphs.iter().any(|c| c.label == label));
        }
        assert!(random_connected_cubic(9, &mut rng, 10).is_none());
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(enumerate_connected_cubic(22), Err(Error::TooLarge { .. })));
        assert!(matches!(enumerate_by_backtracking(14, DegreeRule::Cubic), Err(Error::TooLarge { .. })));
    }
}
