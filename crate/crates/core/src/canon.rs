//! Canonical labelling by colour refinement and individualisation.
//!
//! The label is the smallest graph6 string over all discrete colourings
//! reached by the search tree. Both the refinement and the choice of target
//! cell are invariant under relabelling, so isomorphic graphs explore
//! isomorphic trees and produce the same label.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::graph6::write_graph6;

/// Order limit for canonical labelling.
pub const CANON_MAX_ORDER: usize = 64;
const LEAF_BUDGET: u64 = 5_000_000;

/// Canonical form of a graph, compared bytewise. Equal exactly for isomorphic
/// graphs of the same order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalLabel(String);

impl CanonicalLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_label(g: &Graph) -> Result<CanonicalLabel> {
    canonical_form(g).map(|(label, _)| label)
}

/// Canonical label together with the relabelling (`perm[v]` = new label of `v`)
/// that produces it.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalLabel, Vec<Vertex>)> {
    let n = g.n();
    if n > CANON_MAX_ORDER {
        return Err(Error::TooLarge { n, max: CANON_MAX_ORDER });
    }
    if n == 0 {
        return Ok((CanonicalLabel(write_graph6(g)?), Vec::new()));
    }
    let mut search = Search {
        g,
        best: None,
        leaves: 0,
    };
    search.descend(vec![0; n])?;
    let (bytes, perm) = search.best.expect("search reaches at least one leaf");
    Ok((CanonicalLabel(String::from_utf8(bytes).expect("graph6 is ASCII")), perm))
}

/// The graph relabelled into canonical form.
pub fn canonical_graph(g: &Graph) -> Result<(CanonicalLabel, Graph)> {
    let (label, perm) = canonical_form(g)?;
    Ok((label, g.relabel(&perm)))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_label(a)? == canonical_label(b)?)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u8>, Vec<Vertex>)>,
    leaves: u64,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) -> Result<()> {
        let colors = refine(self.g, colors);
        let n = self.g.n();
        let classes = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        if classes == n {
            self.leaves += 1;
            if self.leaves > LEAF_BUDGET {
                return Err(Error::BudgetExceeded);
            }
            let perm: Vec<Vertex> = colors.iter().map(|&c| c as usize).collect();
            let bytes = write_graph6(&self.g.relabel(&perm))?.into_bytes();
            if self.best.as_ref().is_none_or(|(b, _)| bytes < *b) {
                self.best = Some((bytes, perm));
            }
            return Ok(());
        }
        // First colour class with more than one member.
        let mut size = vec![0usize; classes];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..classes).find(|&c| size[c] > 1).expect("not discrete") as u32;
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(u != v))
                .collect();
            self.descend(split)?;
        }
        Ok(())
    }
}

/// Iterated colour refinement to the coarsest equitable refinement. Colours are
/// re-ranked by (old colour, sorted neighbour colours) each round.
pub(crate) fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.n();
    colors = rerank(colors.iter().map(|&c| (c, Vec::new())).collect());
    let mut count = colors.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rerank(sigs);
        let next_count = next.iter().copied().max().map_or(0, |m| m + 1);
        colors = next;
        if next_count == count {
            return colors;
        }
        count = next_count;
    }
}

fn rerank(sigs: Vec<(u32, Vec<u32>)>) -> Vec<u32> {
    let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("signature present") as u32)
        .collect()
}
