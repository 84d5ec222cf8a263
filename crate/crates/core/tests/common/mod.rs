#![allow(dead_code)]

use minleaf::graph::{Edge, Graph, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

/// Number of spanning trees by the matrix-tree theorem: determinant of the
/// Laplacian with row and column 0 deleted, by fraction-free elimination.
pub fn kirchhoff_count(g: &Graph) -> i128 {
    let n = g.n();
    if n <= 1 {
        return 1;
    }
    let m = n - 1;
    let mut a = vec![vec![0i128; m]; m];
    for v in 1..n {
        a[v - 1][v - 1] = g.degree(v) as i128;
        for &w in g.neighbors(v) {
            if w > 0 {
                a[v - 1][w - 1] -= 1;
            }
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

/// Grows a random tree on `n` vertices with maximum degree at most 3 by
/// attaching each new vertex to a uniformly chosen vertex of degree below 3.
pub fn random_subcubic_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let open: Vec<Vertex> = (0..v).filter(|&u| degree[u] < 3).collect();
        let &u = open.choose(rng).expect("a tree on v vertices has a vertex of degree < 3");
        degree[u] += 1;
        degree[v] += 1;
        edges.push((u, v));
    }
    edges
}

/// Random spanning tree by Kruskal over a shuffled edge order.
pub fn random_spanning_tree_edges<R: Rng>(g: &Graph, rng: &mut R) -> Vec<Edge> {
    let mut order = g.edges().to_vec();
    order.shuffle(rng);
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut out = Vec::new();
    for e in order {
        let (a, b) = (find(&mut parent, e.lo()), find(&mut parent, e.hi()));
        if a != b {
            parent[a] = b;
            out.push(e);
        }
    }
    out
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest independent set size by trying every vertex subset.
pub fn brute_force_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| g.edges().iter().all(|e| s >> e.lo() & 1 == 0 || s >> e.hi() & 1 == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Whether a Hamiltonian path exists, by trying every vertex order.
pub fn brute_force_traceable(g: &Graph) -> bool {
    permutations(g.n())
        .iter()
        .any(|p| p.windows(2).all(|w| g.has_edge(w[0], w[1])))
}
