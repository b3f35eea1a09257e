//! Exact maximum clique by branch and bound with a greedy-colouring bound.
//! The returned witness is the lexicographically least maximum clique,
//! obtained by a second self-reduction pass over the optimal size.

use crate::graph::SimpleGraph;
use crate::solvers::bitset::{adjacency_rows, BitSet};

struct Search<'a> {
    adj: &'a [BitSet],
    best: usize,
}

impl Search<'_> {
    /// Greedy colouring upper bound on the candidate set; candidates are
    /// returned grouped so that branching tries high-colour vertices first.
    fn colour_order(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut order = Vec::with_capacity(cand.len());
        let mut uncoloured = cand.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                class.remove(v);
                uncoloured.remove(v);
                order.push((v, colour));
                class.difference_with(&self.adj[v]);
            }
        }
        order
    }

    fn expand(&mut self, current: usize, cand: &BitSet) {
        if cand.is_empty() {
            if current > self.best {
                self.best = current;
            }
            return;
        }
        let order = self.colour_order(cand);
        let mut cand = cand.clone();
        for &(v, colour) in order.iter().rev() {
            if current + colour <= self.best {
                return;
            }
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            self.expand(current + 1, &next);
            cand.remove(v);
        }
    }
}

fn max_clique_size(adj: &[BitSet], cand: &BitSet, floor: usize) -> usize {
    let mut s = Search { adj, best: floor };
    s.expand(0, cand);
    s.best
}

/// Maximum clique size and the lexicographically least witness of that size.
pub fn max_clique(g: &SimpleGraph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    let adj = adjacency_rows(g);
    let all = BitSet::full(n);
    let size = max_clique_size(&adj, &all, 0);

    // Lexicographic reconstruction: keep a vertex iff a maximum clique
    // through the chosen prefix still exists.
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    let mut cand = all;
    while chosen.len() < size {
        let need = size - chosen.len() - 1;
        let v = cand
            .iter()
            .find(|&v| {
                if need == 0 {
                    return true;
                }
                let mut rest = cand.clone();
                rest.intersect_with(&adj[v]);
                rest.len() >= need && max_clique_size(&adj, &rest, need - 1) >= need
            })
            .expect("a maximum clique extends the prefix");
        chosen.push(v);
        cand.intersect_with(&adj[v]);
        let mut trimmed = BitSet::new(cand.capacity());
        for w in cand.iter() {
            if w > v {
                trimmed.insert(w);
            }
        }
        cand = trimmed;
    }
    (size, chosen)
}

/// Maximum clique size restricted to a candidate set; used by the minor
/// search fast path.
pub fn max_clique_size_within(g: &SimpleGraph, cand: &[usize]) -> usize {
    let adj = adjacency_rows(g);
    let mut set = BitSet::new(g.n());
    for &v in cand {
        set.insert(v);
    }
    max_clique_size(&adj, &set, 0)
}
