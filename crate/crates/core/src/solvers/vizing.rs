//! Constructive proper edge colouring with at most `maxdeg + 1` colours by
//! the fan-rotation / alternating-path method.

use std::collections::BTreeMap;

use crate::graph::SimpleGraph;

/// A proper edge colouring; colours are `0..`, `count` is the number of
/// distinct colours used.
#[derive(Debug, Clone)]
pub struct EdgeColouring {
    pub colour: BTreeMap<(usize, usize), usize>,
    pub count: usize,
}

impl EdgeColouring {
    pub fn is_proper(&self, g: &SimpleGraph) -> bool {
        for v in 0..g.n() {
            let mut seen = Vec::new();
            for &w in g.neighbours(v) {
                if let Some(&c) = self.colour.get(&key(v, w)) {
                    if seen.contains(&c) {
                        return false;
                    }
                    seen.push(c);
                } else {
                    return false;
                }
            }
        }
        true
    }

    /// The colour classes as matchings, indexed by colour.
    pub fn matchings(&self) -> Vec<Vec<(usize, usize)>> {
        let palette = self.colour.values().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); palette];
        for (&e, &c) in &self.colour {
            out[c].push(e);
        }
        out.retain(|m| !m.is_empty());
        out
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

struct State<'a> {
    g: &'a SimpleGraph,
    palette: usize,
    colour: BTreeMap<(usize, usize), usize>,
    // at[v][c] = neighbour across the edge of colour c at v, if any.
    at: Vec<Vec<Option<usize>>>,
}

impl State<'_> {
    fn free_colour(&self, v: usize) -> usize {
        (0..self.palette)
            .find(|&c| self.at[v][c].is_none())
            .expect("palette has maxdeg + 1 colours")
    }

    fn is_free(&self, v: usize, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        self.colour.insert(key(u, v), c);
        self.at[u][c] = Some(v);
        self.at[v][c] = Some(u);
    }

    fn unset(&mut self, u: usize, v: usize) -> usize {
        let c = self.colour.remove(&key(u, v)).expect("edge was coloured");
        self.at[u][c] = None;
        self.at[v][c] = None;
        c
    }

    /// Flips colours c/d along the maximal alternating path starting at `v`
    /// whose first edge is coloured `c`. The path is collected before any
    /// recolouring so the walk cannot follow its own edits.
    fn invert_path(&mut self, v: usize, c: usize, d: usize) {
        let mut path = Vec::new();
        let mut here = v;
        let mut want = c;
        while let Some(next) = self.at[here][want] {
            path.push((here, next, want));
            here = next;
            want = if want == c { d } else { c };
        }
        for &(u, w, _) in &path {
            self.unset(u, w);
        }
        for &(u, w, col) in &path {
            let flipped = if col == c { d } else { c };
            self.set(u, w, flipped);
        }
    }

    fn colour_edge(&mut self, x: usize, y: usize) {
        // Fast path: a colour free at both endpoints.
        for c in 0..self.palette {
            if self.is_free(x, c) && self.is_free(y, c) {
                self.set(x, y, c);
                return;
            }
        }

        // Build a maximal fan of x starting at y.
        let mut fan = vec![y];
        let mut fan_member = vec![false; self.g.n()];
        fan_member[y] = true;
        loop {
            let tail = *fan.last().unwrap();
            let d = self.free_colour(tail);
            match self.at[x][d] {
                Some(z) if !fan_member[z] => {
                    fan.push(z);
                    fan_member[z] = true;
                }
                _ => break,
            }
        }

        let c = self.free_colour(x);
        let d = self.free_colour(*fan.last().unwrap());
        if !self.is_free(x, d) {
            // Flip the cd-path from x; afterwards d is free at x.
            self.invert_path(x, d, c);
        }
        // First fan vertex where d is now free and whose fan prefix is
        // still valid under the current colours.
        let stop = (0..fan.len())
            .find(|&i| {
                self.is_free(fan[i], d)
                    && (0..i).all(|j| {
                        let cj = self.colour[&key(x, fan[j + 1])];
                        self.is_free(fan[j], cj)
                    })
            })
            .expect("path inversion leaves a rotatable fan prefix");
        for i in 0..stop {
            let w = fan[i];
            let next = fan[i + 1];
            let cw = self.unset(x, next);
            self.set(x, w, cw);
        }
        let w = fan[stop];
        debug_assert!(self.is_free(x, d) && self.is_free(w, d));
        self.set(x, w, d);
    }
}

/// Proper edge colouring with at most `max_degree(g) + 1` colours.
pub fn vizing_edge_colouring(g: &SimpleGraph) -> EdgeColouring {
    let palette = g.max_degree() + 1;
    let mut st = State {
        g,
        palette,
        colour: BTreeMap::new(),
        at: vec![vec![None; palette]; g.n()],
    };
    for (u, v) in g.edges() {
        st.colour_edge(u, v);
    }
    let count = {
        let mut used: Vec<usize> = st.colour.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    };
    let out = EdgeColouring { colour: st.colour, count };
    debug_assert!(out.is_proper(g));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, 5 + (i + 2) % 5));
        }
        SimpleGraph::from_edges(10, &edges)
    }

    #[test]
    fn odd_cycle_needs_three() {
        let c = vizing_edge_colouring(&cycle(5));
        assert!(c.is_proper(&cycle(5)));
        assert_eq!(c.count, 3);
    }

    #[test]
    fn even_cycle_needs_two() {
        let c = vizing_edge_colouring(&cycle(4));
        assert!(c.is_proper(&cycle(4)));
        assert_eq!(c.count, 2);
    }

    #[test]
    fn petersen_is_class_two() {
        let g = petersen();
        let c = vizing_edge_colouring(&g);
        assert!(c.is_proper(&g));
        // The edge chromatic number of the Petersen graph is 4, so any proper
        // colouring uses at least 4; the bound guarantees at most 4.
        assert_eq!(c.count, 4);
    }

    #[test]
    fn random_graphs_stay_within_bound() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.random_range(2..=12);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let c = vizing_edge_colouring(&g);
            assert!(c.is_proper(&g), "n = {n}");
            assert!(c.count <= g.max_degree() + 1);
            // Each class is a matching.
            for class in c.matchings() {
                let mut seen = Vec::new();
                for (u, v) in class {
                    assert!(!seen.contains(&u) && !seen.contains(&v));
                    seen.push(u);
                    seen.push(v);
                }
            }
        }
    }
}
