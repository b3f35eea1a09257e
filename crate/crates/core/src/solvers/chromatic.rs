//! Exact chromatic number: iterative deepening over a DSATUR-ordered
//! backtracking decision procedure, with the clique number as lower bound.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::solvers::clique::max_clique;

/// A proper vertex colouring with its colour count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperColouring {
    pub colour: BTreeMap<usize, usize>,
    pub count: usize,
}

impl ProperColouring {
    pub fn is_proper(&self, g: &SimpleGraph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.colour.get(&u) != self.colour.get(&v))
    }
}

struct Decide<'a> {
    g: &'a SimpleGraph,
    k: usize,
    colour: Vec<Option<usize>>,
}

impl Decide<'_> {
    /// DSATUR choice: uncoloured vertex with most distinct neighbour
    /// colours, ties by degree then index.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.g.n() {
            if self.colour[v].is_some() {
                continue;
            }
            let mut seen = 0u64;
            for &w in self.g.neighbours(v) {
                if let Some(c) = self.colour[w] {
                    seen |= 1 << (c % 64);
                }
            }
            let sat = seen.count_ones() as usize;
            let key = (sat, self.g.degree(v), usize::MAX - v);
            if best.is_none_or(|(s, d, i)| key > (s, d, i)) {
                best = Some(key);
            }
        }
        best.map(|(_, _, inv)| usize::MAX - inv)
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        let mut forbidden = vec![false; self.k];
        for &w in self.g.neighbours(v) {
            if let Some(c) = self.colour[w] {
                forbidden[c] = true;
            }
        }
        // Symmetry breaking: allow at most one brand-new colour.
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if forbidden[c] {
                continue;
            }
            self.colour[v] = Some(c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.colour[v] = None;
        }
        false
    }
}

fn colourable(g: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    let mut d = Decide { g, k, colour: vec![None; g.n()] };
    if d.solve(0) {
        Some(d.colour.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// Exact chromatic number with a witness. Errors when `g` exceeds
/// `vertex_limit`.
pub fn chromatic_number(g: &SimpleGraph, vertex_limit: usize) -> Result<(usize, ProperColouring)> {
    if g.n() > vertex_limit {
        return Err(Error::LimitExceeded(format!(
            "chromatic number on {} vertices exceeds limit {vertex_limit}",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok((0, ProperColouring { colour: BTreeMap::new(), count: 0 }));
    }
    let (lower, _) = max_clique(g);
    for k in lower.max(1).. {
        if let Some(assignment) = colourable(g, k) {
            let count = assignment.iter().copied().max().unwrap_or(0) + 1;
            let colouring = ProperColouring {
                colour: assignment.into_iter().enumerate().collect(),
                count,
            };
            debug_assert!(colouring.is_proper(g));
            return Ok((count, colouring));
        }
    }
    unreachable!("every graph is n-colourable")
}
