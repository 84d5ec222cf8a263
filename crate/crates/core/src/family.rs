//! The branch-doubling family of cubic graphs whose minimum leaf count equals
//! `(n + 2) / 6`.
//!
//! Level 1 is a centre joined by bridges to three copies of a 5-vertex
//! *branch*: an attachment vertex `a` adjacent to `b` and `e`, and two more
//! vertices `c`, `d` adjacent to each other and to both `b` and `e`. Each
//! expansion deletes `c`, `d` of every branch and hangs a fresh branch off
//! each of `b` and `e`, so `a` becomes a junction and the branch count doubles.

use serde::{Deserialize, Serialize};

use crate::blocks::block_cut_decomposition;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex, MAX_ORDER};
use crate::graph6::write_graph6;

/// Highest level whose order stays within [`MAX_ORDER`].
pub const MAX_LEVEL: u32 = 6;

/// Level-1 edges, centre 0 and branches on 1..=5, 6..=10, 11..=15.
pub const G1_EDGES: [(Vertex, Vertex); 24] = [
    (0, 1),
    (0, 6),
    (0, 11),
    (1, 2),
    (1, 5),
    (2, 3),
    (2, 4),
    (3, 5),
    (3, 4),
    (4, 5),
    (6, 7),
    (6, 9),
    (7, 8),
    (7, 10),
    (8, 10),
    (8, 9),
    (9, 10),
    (11, 12),
    (11, 15),
    (12, 13),
    (15, 13),
    (15, 14),
    (14, 12),
    (14, 13),
];

/// Branch edge pattern on roles 1..=5 (`a`=1, `b`=2, `c`=3, `d`=4, `e`=5).
pub const BRANCH_PATTERN: [(usize, usize); 7] = [(1, 2), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)];

/// A branch by role: attachment, its two inner neighbours (smaller first), and
/// the remaining pair (smaller first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub attach: Vertex,
    pub b: Vertex,
    pub e: Vertex,
    pub c: Vertex,
    pub d: Vertex,
}

impl Branch {
    pub fn vertices(&self) -> [Vertex; 5] {
        [self.attach, self.b, self.c, self.d, self.e]
    }

    fn role_edges(&self) -> [Edge; 7] {
        let r = [0, self.attach, self.b, self.c, self.d, self.e];
        BRANCH_PATTERN.map(|(x, y)| Edge::new(r[x], r[y]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLevel {
    pub m: u32,
    pub graph: Graph,
    /// Centre and every former attachment vertex.
    pub junctions: Vec<Vertex>,
    pub branches: Vec<Branch>,
}

/// JSON sidecar emitted next to the graph6 line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilySidecar {
    pub m: u32,
    pub order: usize,
    pub branch_count: usize,
    pub bridges: Vec<[Vertex; 2]>,
}

/// `18 * 2^(m-1) - 2`, the closed form of `16 + sum_{i=2..m} 3 * 6 * 2^(i-2)`.
pub fn order_formula(m: u32) -> usize {
    18 * (1usize << (m - 1)) - 2
}

/// `3 * 2^(m-1)`.
pub fn branch_count_formula(m: u32) -> usize {
    3 * (1usize << (m - 1))
}

impl FamilyLevel {
    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Edges joining each branch to its junction.
    pub fn attachment_bridges(&self) -> Vec<Edge> {
        self.branches
            .iter()
            .map(|br| {
                let outer = self
                    .graph
                    .neighbors(br.attach)
                    .iter()
                    .copied()
                    .find(|&w| w != br.b && w != br.e)
                    .expect("attachment vertex has an outside neighbour");
                Edge::new(br.attach, outer)
            })
            .collect()
    }

    pub fn sidecar(&self) -> Result<FamilySidecar> {
        let s = block_cut_decomposition(&self.graph)?;
        Ok(FamilySidecar {
            m: self.m,
            order: self.order(),
            branch_count: self.branch_count(),
            bridges: s.bridges.iter().map(|e| [e.lo(), e.hi()]).collect(),
        })
    }

    pub fn graph6(&self) -> Result<String> {
        write_graph6(&self.graph)
    }

    /// Structural checks: closed forms, cubic and connected, every branch
    /// matches the pattern and hangs off exactly one bridge.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedLevel(msg));
        if self.m == 0 {
            return bad("level must be at least 1".into());
        }
        if self.order() != order_formula(self.m) {
            return bad(format!("order {} != {}", self.order(), order_formula(self.m)));
        }
        if self.branch_count() != branch_count_formula(self.m) {
            return bad(format!(
                "branch count {} != {}",
                self.branch_count(),
                branch_count_formula(self.m)
            ));
        }
        let v = self.graph.validate();
        if !v.connected || !v.cubic {
            return bad(format!("graph is not connected cubic: {v:?}"));
        }
        let mut owner = vec![usize::MAX; self.order()];
        for (i, br) in self.branches.iter().enumerate() {
            for x in br.vertices() {
                if owner[x] != usize::MAX {
                    return bad(format!("vertex {x} lies in two branches"));
                }
                owner[x] = i;
            }
            for e in br.role_edges() {
                if !self.graph.contains_edge(e) {
                    return bad(format!("branch {i} misses pattern edge {e}"));
                }
            }
            // Pattern edges plus one outside edge at the attachment vertex
            // account for all 15 endpoint slots of the five vertices.
            let inside: usize = br
                .vertices()
                .iter()
                .map(|&x| {
                    self.graph
                        .neighbors(x)
                        .iter()
                        .filter(|w| br.vertices().contains(w))
                        .count()
                })
                .sum();
            if inside != 14 {
                return bad(format!("branch {i} has extra inner edges"));
            }
        }
        let s = block_cut_decomposition(&self.graph)?;
        let attach = self.attachment_bridges();
        for e in &attach {
            if s.bridges.binary_search(e).is_err() {
                return bad(format!("attachment edge {e} is not a bridge"));
            }
        }
        if s.pendant_block_count != self.branch_count() {
            return bad(format!(
                "{} pendant blocks for {} branches",
                s.pendant_block_count,
                self.branch_count()
            ));
        }
        Ok(())
    }
}

fn branch_from(g: &Graph, attach: Vertex, members: [Vertex; 5]) -> Branch {
    let mut inner: Vec<Vertex> = g
        .neighbors(attach)
        .iter()
        .copied()
        .filter(|w| members.contains(w))
        .collect();
    inner.sort_unstable();
    let mut rest: Vec<Vertex> = members
        .iter()
        .copied()
        .filter(|&x| x != attach && !inner.contains(&x))
        .collect();
    rest.sort_unstable();
    Branch {
        attach,
        b: inner[0],
        e: inner[1],
        c: rest[0],
        d: rest[1],
    }
}

pub fn build_g1() -> FamilyLevel {
    let graph = Graph::from_edge_list(16, G1_EDGES).expect("level-1 edge list is simple");
    let branches = [1, 6, 11]
        .map(|a| branch_from(&graph, a, [a, a + 1, a + 2, a + 3, a + 4]))
        .to_vec();
    let level = FamilyLevel {
        m: 1,
        graph,
        junctions: vec![0],
        branches,
    };
    level.check().expect("level 1 is well formed");
    level
}

/// Replaces every branch by two smaller ones. Labels of junctions and of
/// surviving branch vertices are kept; the deleted `c`, `d` labels are reused
/// for the first two new vertices and the other six are appended.
pub fn expand_once(level: &FamilyLevel) -> Result<FamilyLevel> {
    level.check()?;
    let next_order = level.order() + 6 * level.branch_count();
    if next_order > MAX_ORDER {
        return Err(Error::LevelTooLarge {
            m: level.m + 1,
            max: MAX_LEVEL,
        });
    }
    let mut drop = Vec::new();
    for br in &level.branches {
        drop.extend([br.c, br.d]);
    }
    let mut edges: Vec<Edge> = level
        .graph
        .edges()
        .iter()
        .copied()
        .filter(|e| !drop.contains(&e.lo()) && !drop.contains(&e.hi()))
        .collect();
    let mut next_label = level.order();
    let mut branches = Vec::with_capacity(2 * level.branch_count());
    let mut junctions = level.junctions.clone();
    for br in &level.branches {
        let mut fresh = [br.c, br.d, 0, 0, 0, 0, 0, 0];
        for slot in fresh.iter_mut().skip(2) {
            *slot = next_label;
            next_label += 1;
        }
        let v = |i: usize| fresh[i - 1];
        let (b, e) = (br.b, br.e);
        edges.extend(
            [
                (b, v(1)),
                (b, v(4)),
                (v(1), v(2)),
                (v(1), v(3)),
                (v(2), v(4)),
                (v(2), v(3)),
                (v(3), v(4)),
                (e, v(5)),
                (e, v(7)),
                (v(5), v(6)),
                (v(5), v(8)),
                (v(6), v(8)),
                (v(6), v(7)),
                (v(7), v(8)),
            ]
            .map(|(x, y)| Edge::new(x, y)),
        );
        junctions.push(br.attach);
        branches.push((b, [b, v(1), v(2), v(3), v(4)]));
        branches.push((e, [e, v(5), v(6), v(7), v(8)]));
    }
    let graph = Graph::from_edge_list(next_order, edges)?;
    let branches = branches
        .into_iter()
        .map(|(a, members)| branch_from(&graph, a, members))
        .collect();
    junctions.sort_unstable();
    let next = FamilyLevel {
        m: level.m + 1,
        graph,
        junctions,
        branches,
    };
    next.check()?;
    Ok(next)
}

pub fn build_gm(m: u32) -> Result<FamilyLevel> {
    if m == 0 {
        return Err(Error::MalformedLevel("level must be at least 1".into()));
    }
    if m > MAX_LEVEL {
        return Err(Error::LevelTooLarge { m, max: MAX_LEVEL });
    }
    let mut level = build_g1();
    for _ in 1..m {
        level = expand_once(&level)?;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g1_shape() {
        let g1 = build_g1();
        assert_eq!((g1.order(), g1.branch_count()), (16, 3));
        assert_eq!(g1.graph.edge_count(), 24);
        let s = block_cut_decomposition(&g1.graph).unwrap();
        assert_eq!(s.bridges, vec![Edge::new(0, 1), Edge::new(0, 6), Edge::new(0, 11)]);
        assert_eq!(s.pendant_block_count, 3);
    }

    #[test]
    fn g1_source_duplicate_edge_collapses() {
        let mut with_dup = G1_EDGES.to_vec();
        with_dup.push((14, 13));
        let (g, dups) = Graph::from_edge_list_reporting(16, with_dup).unwrap();
        assert_eq!(g, build_g1().graph);
        assert_eq!(dups, vec![Edge::new(13, 14)]);
    }

    #[test]
    fn branch_roles_of_g1() {
        let g1 = build_g1();
        assert_eq!(g1.branches[0], Branch { attach: 1, b: 2, e: 5, c: 3, d: 4 });
        assert_eq!(g1.branches[1], Branch { attach: 6, b: 7, e: 9, c: 8, d: 10 });
        assert_eq!(g1.branches[2], Branch { attach: 11, b: 12, e: 15, c: 13, d: 14 });
    }

    #[test]
    fn orders_and_counts() {
        let expected = [(16, 3), (34, 6), (70, 12), (142, 24), (286, 48), (574, 96)];
        for (m, &(order, k)) in (1..=6).zip(&expected) {
            let level = build_gm(m).unwrap();
            assert_eq!((level.order(), level.branch_count()), (order, k), "m={m}");
            assert_eq!((order + 2) % 6, 0);
            assert_eq!((order + 2) / 6, k);
        }
    }

    #[test]
    fn table_sum_matches_closed_form() {
        for m in 1..=6u32 {
            let sum: usize = 16 + (2..=m).map(|i| (1usize << (i - 2)) * 3 * 6).sum::<usize>();
            assert_eq!(sum, order_formula(m));
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(build_gm(0), Err(Error::MalformedLevel(_))));
        assert_eq!(build_gm(7), Err(Error::LevelTooLarge { m: 7, max: 6 }));
        let g6 = build_gm(6).unwrap();
        assert!(expand_once(&g6).is_err());
    }

    #[test]
    fn junction_labels_are_stable() {
        let g2 = build_gm(2).unwrap();
        assert_eq!(g2.junctions, vec![0, 1, 6, 11]);
        let g1 = build_g1();
        for e in g1.graph.edges() {
            let kept = [0, 1, 2, 5, 6, 7, 9, 11, 12, 15];
            if kept.contains(&e.lo()) && kept.contains(&e.hi()) {
                assert!(g2.graph.contains_edge(*e), "{e}");
            }
        }
    }

    #[test]
    fn malformed_level_is_rejected() {
        let mut g1 = build_g1();
        g1.branches.pop();
        assert!(matches!(expand_once(&g1), Err(Error::MalformedLevel(_))));
    }
}
