mod common;

use common::{brute_force_alpha, brute_force_traceable, kirchhoff_count, permutations};
use minleaf::bounds::{independence_number, sufficient_k_ended};
use minleaf::enumerate::{enumerate_by_backtracking, enumerate_connected_cubic, random_connected_cubic, DegreeRule};
use minleaf::family::{build_gm, BRANCH_PATTERN};
use minleaf::graph::Graph;
use minleaf::solver::{branch_and_bound, hamiltonian_path_dp, Feasibility};
use minleaf::tree::{for_each_spanning_tree, DEFAULT_ENUMERATION_CAP};
use minleaf::Budget;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::ControlFlow;

#[test]
fn kirchhoff_matches_tree_enumeration() {
    let mut graphs = vec![Graph::complete(4), Graph::complete(5), Graph::cycle(7), Graph::petersen()];
    for n in [4, 6, 8] {
        graphs.extend(enumerate_connected_cubic(n).unwrap().graphs.into_iter().map(|c| c.graph));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    graphs.push(random_connected_cubic(10, &mut rng, 1000).unwrap());
    for g in &graphs {
        let summary = for_each_spanning_tree(g, DEFAULT_ENUMERATION_CAP, |_| ControlFlow::Continue(())).unwrap();
        assert!(!summary.truncated);
        assert_eq!(summary.count as i128, kirchhoff_count(g), "{}", g.to_edge_list());
    }
}

#[test]
fn known_tree_counts() {
    // Cayley: n^(n-2); Petersen: 2000.
    assert_eq!(kirchhoff_count(&Graph::complete(6)), 1296);
    assert_eq!(kirchhoff_count(&Graph::petersen()), 2000);
}

#[test]
fn generators_agree_through_twelve() {
    for n in [4, 6, 8, 10, 12] {
        let a = enumerate_connected_cubic(n).unwrap();
        let b = enumerate_by_backtracking(n, DegreeRule::Cubic).unwrap();
        assert_eq!(a.labels(), b.labels(), "n = {n}");
    }
}

#[test]
fn search_with_two_leaves_agrees_with_path_dp() {
    let mut corpus: Vec<Graph> = Vec::new();
    for n in [8, 10, 12] {
        corpus.extend(enumerate_connected_cubic(n).unwrap().graphs.into_iter().map(|c| c.graph));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [14, 16, 18, 20] {
        for _ in 0..5 {
            corpus.push(random_connected_cubic(n, &mut rng, 1000).unwrap());
        }
    }
    corpus.push(build_gm(1).unwrap().graph);
    for g in &corpus {
        let dp = hamiltonian_path_dp(g, Budget::UNLIMITED).unwrap().is_some();
        let bb = match branch_and_bound(g, 2, Budget::UNLIMITED).unwrap().result {
            Feasibility::Found(t) => {
                assert!(t.leaf_count() <= 2);
                true
            }
            Feasibility::Infeasible => false,
            Feasibility::OutOfBudget(_) => panic!("unbounded search ran out"),
        };
        assert_eq!(dp, bb, "{}", g.to_edge_list());
    }
}

#[test]
fn path_dp_matches_permutation_search() {
    let mut graphs: Vec<Graph> = enumerate_connected_cubic(8).unwrap().graphs.into_iter().map(|c| c.graph).collect();
    graphs.push(Graph::from_edge_list(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)]).unwrap());
    graphs.push(Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3)]).unwrap());
    for g in &graphs {
        assert_eq!(hamiltonian_path_dp(g, Budget::UNLIMITED).unwrap().is_some(), brute_force_traceable(g));
    }
}

#[test]
fn petersen_independence_and_win_condition() {
    let g = Graph::petersen();
    assert_eq!(brute_force_alpha(&g), 4);
    assert_eq!(independence_number(&g, Budget::UNLIMITED).unwrap(), 4);
    let r = sufficient_k_ended(&g, Budget::UNLIMITED).unwrap();
    assert_eq!(r.connectivity, 3);
    assert_eq!(r.win_k_ended, Some(2));
}

#[test]
fn independence_number_matches_brute_force_on_small_cubic_graphs() {
    for n in [4, 6, 8, 10] {
        for c in enumerate_connected_cubic(n).unwrap().graphs {
            assert_eq!(independence_number(&c.graph, Budget::UNLIMITED).unwrap(), brute_force_alpha(&c.graph));
        }
    }
}

#[test]
fn every_branch_is_the_pattern_up_to_relabelling() {
    let pattern: Vec<(usize, usize)> = BRANCH_PATTERN.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    let perms = permutations(5);
    for m in 1..=4 {
        let level = build_gm(m).unwrap();
        for br in &level.branches {
            let vs = br.vertices();
            let induced: Vec<(usize, usize)> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .filter(|&(i, j)| level.graph.has_edge(vs[i], vs[j]))
                .collect();
            assert_eq!(induced.len(), 7);
            let iso = perms.iter().any(|p| {
                pattern.iter().all(|&(a, b)| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    induced.contains(&(x, y))
                })
            });
            assert!(iso, "m = {m}, branch {br:?}");
        }
    }
}
