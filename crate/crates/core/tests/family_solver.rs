use std::time::Instant;

use minleaf::bounds::leaf_block_lower_bound;
use minleaf::family::{build_g1, build_gm};
use minleaf::heuristic::{build_initial_tree, reduce_leaves, InitialStrategy, SearchPolicy};
use minleaf::solver::{
    branch_and_bound, has_tree_at_most_k_leaves, hamiltonian_path_dp, min_leaf_spanning_tree, Certificate,
    Feasibility,
};
use minleaf::{Budget, SolveStatus};

#[test]
fn g1_needs_three_leaves() {
    let g1 = build_g1();
    let g = &g1.graph;
    assert_eq!(hamiltonian_path_dp(g, Budget::UNLIMITED).unwrap(), None);
    assert!(matches!(
        branch_and_bound(g, 2, Budget::UNLIMITED).unwrap().result,
        Feasibility::Infeasible
    ));
    let t = has_tree_at_most_k_leaves(g, 3, Budget::UNLIMITED).unwrap().unwrap();
    assert!(t.leaf_count() <= 3);

    let out = min_leaf_spanning_tree(g, Budget::UNLIMITED).unwrap();
    assert_eq!(out.min_leaves, 3);
    assert_eq!(out.status, SolveStatus::Exact);
    assert_eq!(out.lower_bound_used, 3);
    assert_eq!(out.certificate, Certificate::LowerBoundMet);
    let s = out.witness.leaf_stats();
    assert_eq!((s.k, s.p, s.n1), (3, 1, 12));
    assert!(out.witness.leaves_independent());
}

#[test]
fn g1_dfs_from_three_reduces_to_optimum() {
    let g1 = build_g1();
    let start = build_initial_tree(&g1.graph, 3, InitialStrategy::Dfs).unwrap();
    let t = reduce_leaves(&start, &SearchPolicy::default());
    assert_eq!(t.leaf_count(), 3);
    assert_eq!(leaf_block_lower_bound(&g1.graph).unwrap(), 3);
}

#[test]
fn g2_is_certified_by_lower_bound() {
    let g2 = build_gm(2).unwrap();
    let started = Instant::now();
    let out = min_leaf_spanning_tree(&g2.graph, Budget::UNLIMITED).unwrap();
    assert_eq!(out.min_leaves, 6);
    assert_eq!(out.status, SolveStatus::Exact);
    assert_eq!(out.lower_bound_used, 6);
    assert!(started.elapsed().as_secs() < 30);
}

#[test]
fn g3_heuristic_meets_lower_bound() {
    let g3 = build_gm(3).unwrap();
    assert_eq!(leaf_block_lower_bound(&g3.graph).unwrap(), 12);
    let out = min_leaf_spanning_tree(&g3.graph, Budget::UNLIMITED).unwrap();
    assert_eq!(out.min_leaves, 12);
    assert_eq!(out.status, SolveStatus::Exact);
}
