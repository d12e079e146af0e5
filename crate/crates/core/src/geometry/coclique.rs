//! Exact maximum coclique by branch and bound with a colouring bound.

use serde::Serialize;

use super::graph::OppositionGraph;
use crate::budget::Budget;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocliqueResult {
    pub size: usize,
    pub witness: Vec<usize>,
    /// False when the node budget ran out before optimality was shown.
    pub proven_optimal: bool,
    pub nodes: u64,
}

type Bits = Vec<u64>;

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .position(|&w| w != 0)
        .map(|w| w * 64 + bits[w].trailing_zeros() as usize)
}

struct Search<'a> {
    /// Non-adjacency (coclique compatibility) rows.
    compat: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    target: usize,
    aborted: bool,
}

impl Search<'_> {
    /// Greedy colouring of the compatibility graph on `cand`: vertices in
    /// order of colour with their colour numbers (a clique bound there is a
    /// coclique bound here).
    fn colour(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut out = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_bit(&q) {
                out.push((v, colour));
                uncoloured[v / 64] &= !(1 << (v % 64));
                // vertices of one colour class are pairwise incompatible
                for (w, row) in q.iter_mut().zip(&self.compat[v]) {
                    *w &= !row;
                }
                q[v / 64] &= !(1 << (v % 64));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: Bits) {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return;
        }
        let order = self.colour(&cand);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() || self.done() {
                return;
            }
            self.current.push(v);
            let next: Bits = cand
                .iter()
                .zip(&self.compat[v])
                .map(|(a, b)| a & b)
                .collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }

    fn done(&self) -> bool {
        self.aborted || self.best.len() >= self.target
    }
}

/// Largest set of pairwise non-opposite vertices. A valid upper bound in
/// `upper_hint` (such as the floor of the ratio bound) stops the search as
/// soon as it is attained.
pub fn max_coclique(
    graph: &OppositionGraph,
    upper_hint: Option<usize>,
    budget: &Budget,
) -> Result<CocliqueResult> {
    let v = graph.vertex_count();
    Budget::check(
        "coclique search vertices",
        v as u64,
        budget.coclique_vertices,
    )?;
    let words = v.div_ceil(64);
    let compat: Vec<Bits> = (0..v)
        .map(|i| {
            let mut row: Bits = graph.adjacency.row(i).iter().map(|w| !w).collect();
            if let Some(last) = row.last_mut() {
                if !v.is_multiple_of(64) {
                    *last &= (1u64 << (v % 64)) - 1;
                }
            }
            row[i / 64] &= !(1 << (i % 64));
            row
        })
        .collect();
    let mut all: Bits = vec![u64::MAX; words];
    if let Some(last) = all.last_mut() {
        if !v.is_multiple_of(64) {
            *last = (1u64 << (v % 64)) - 1;
        }
    }
    let mut search = Search {
        compat: &compat,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        node_limit: budget.coclique_nodes,
        target: upper_hint.unwrap_or(usize::MAX).min(v),
        aborted: false,
    };
    if v > 0 {
        search.expand(all);
    }
    let mut witness = search.best.clone();
    witness.sort_unstable();
    Ok(CocliqueResult {
        size: witness.len(),
        witness,
        proven_optimal: !search.aborted,
        nodes: search.nodes,
    })
}
