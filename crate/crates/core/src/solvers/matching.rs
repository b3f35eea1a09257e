//! Exact maximum matching by branch and bound, the lexicographically least
//! maximum matching as witness, and verification against the Tutte-Berge
//! deficiency formula by exhaustive enumeration of vertex subsets.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SimpleGraph};

struct MatchSearch<'a> {
    g: &'a SimpleGraph,
    best: usize,
}

impl MatchSearch<'_> {
    fn recurse(&mut self, alive: &mut Vec<bool>, current: usize) {
        // Pick the least-index vertex with a live neighbour.
        let mut pick = None;
        let mut live_touched = 0usize;
        for v in 0..self.g.n() {
            if !alive[v] {
                continue;
            }
            if self.g.neighbours(v).iter().any(|&w| alive[w]) {
                live_touched += 1;
                if pick.is_none() {
                    pick = Some(v);
                }
            }
        }
        let Some(v) = pick else {
            self.best = self.best.max(current);
            return;
        };
        if current + live_touched / 2 <= self.best {
            return;
        }
        // Branch: match v with each live neighbour, then leave v unmatched.
        alive[v] = false;
        for i in 0..self.g.neighbours(v).len() {
            let w = self.g.neighbours(v)[i];
            if !alive[w] {
                continue;
            }
            alive[w] = false;
            self.recurse(alive, current + 1);
            alive[w] = true;
        }
        self.recurse(alive, current);
        alive[v] = true;
    }
}

fn matching_size(g: &SimpleGraph, excluded: &[bool]) -> usize {
    let mut s = MatchSearch { g, best: 0 };
    let mut alive: Vec<bool> = excluded.iter().map(|&e| !e).collect();
    s.recurse(&mut alive, 0);
    s.best
}

/// Maximum matching of a simple graph with the lexicographically least
/// witness (edges sorted, compared as a sequence).
pub fn maximum_matching(g: &SimpleGraph) -> (usize, Vec<(usize, usize)>) {
    let mu = matching_size(g, &vec![false; g.n()]);
    let mut witness = Vec::with_capacity(mu);
    let mut excluded = vec![false; g.n()];
    let mut remaining = mu;
    while remaining > 0 {
        let e = g
            .edges()
            .into_iter()
            .find(|&(u, v)| {
                if excluded[u] || excluded[v] {
                    return false;
                }
                let mut ex = excluded.clone();
                ex[u] = true;
                ex[v] = true;
                matching_size(g, &ex) == remaining - 1
            })
            .expect("maximum matching extends the prefix");
        excluded[e.0] = true;
        excluded[e.1] = true;
        witness.push(e);
        remaining -= 1;
    }
    (mu, witness)
}

/// Matching number of a multigraph: parallel copies never coexist in a
/// matching, so this is the matching number of the underlying simple graph.
pub fn matching_number(g: &Multigraph) -> (usize, Vec<(usize, usize)>) {
    maximum_matching(&g.underlying_simple())
}

/// Number of odd-order components of `g` with the vertices of `removed`
/// deleted.
fn odd_components(g: &SimpleGraph, removed: u32) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut odd = 0;
    for s in 0..n {
        if seen[s] || removed & (1 << s) != 0 {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut size = 0usize;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbours(v) {
                if !seen[w] && removed & (1 << w) == 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if size % 2 == 1 {
            odd += 1;
        }
    }
    odd
}

/// Evaluates `min over U of (|U| - o(G-U) + |V|) / 2` by enumerating every
/// vertex subset, asserts it equals the matching number, and returns the
/// first minimising `U` in subset-mask order.
pub fn tutte_berge_verify(g: &Multigraph) -> Result<(usize, Vec<usize>)> {
    let h = g.underlying_simple();
    let n = h.n();
    if n > 16 {
        return Err(Error::LimitExceeded(format!(
            "Tutte-Berge enumeration on {n} vertices exceeds limit 16"
        )));
    }
    let (mu, _) = maximum_matching(&h);
    let mut best: Option<(usize, u32)> = None;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        // |U| + |V| - o(G-U) is always even: o(G-U) == |V| - |U| (mod 2).
        let value = size + n - odd_components(&h, mask);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, mask));
        }
    }
    let (value, mask) = best.expect("at least the empty subset");
    let deficiency = value / 2;
    if deficiency != mu {
        return Err(Error::Internal(format!(
            "Tutte-Berge value {deficiency} disagrees with matching number {mu}"
        )));
    }
    let u: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
    Ok((mu, u))
}
