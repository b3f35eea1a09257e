//! Exact fractional chromatic number: one LP variable per maximal stable
//! set, solved by the exact simplex. Maximal stable sets are the maximal
//! cliques of the complement, enumerated by Bron-Kerbosch with pivoting.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rational::{rat, Rational};
use crate::solvers::bitset::{adjacency_rows, BitSet};
use crate::solvers::lp::{solve_covering, CoveringLp};

/// A fractional colouring: positive weights on stable sets of the target
/// graph covering every vertex to at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalColouring {
    pub parts: BTreeMap<Vec<usize>, Rational>,
    pub total: Rational,
}

impl FractionalColouring {
    /// Exact validity check: stability of every part, coverage of every
    /// vertex, and the recorded total.
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        let mut coverage = vec![Rational::zero(); g.n()];
        let mut total = Rational::zero();
        for (set, w) in &self.parts {
            if w <= &Rational::zero() {
                return Err(Error::Internal("nonpositive weight in colouring".into()));
            }
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if g.has_edge(u, v) {
                        return Err(Error::Internal(format!(
                            "part contains adjacent vertices {u}, {v}"
                        )));
                    }
                }
                coverage[u] += w;
            }
            total += w;
        }
        if total != self.total {
            return Err(Error::Internal("total weight mismatch".into()));
        }
        for (v, c) in coverage.iter().enumerate() {
            if c < &rat(1) {
                return Err(Error::Internal(format!("vertex {v} covered only {c}")));
            }
        }
        Ok(())
    }
}

/// All maximal stable sets, sorted lexicographically.
pub fn maximal_stable_sets(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let co = g.complement();
    let adj = adjacency_rows(&co);
    let n = g.n();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(&adj, &mut r, BitSet::full(n), BitSet::new(n), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[BitSet],
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        let mut set = r.clone();
        set.sort_unstable();
        out.push(set);
        return;
    }
    // Pivot on the candidate dominating the most of P.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| {
            let mut t = p.clone();
            t.intersect_with(&adj[u]);
            (t.len(), usize::MAX - u)
        })
        .unwrap();
    let mut branch = p.clone();
    branch.difference_with(&adj[pivot]);
    for v in branch.iter() {
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        r.push(v);
        bron_kerbosch(adj, r, p2, x2, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Exact fractional chromatic number with an optimal fractional colouring.
pub fn fractional_chromatic(
    g: &SimpleGraph,
    vertex_limit: usize,
) -> Result<(Rational, FractionalColouring)> {
    if g.n() > vertex_limit {
        return Err(Error::LimitExceeded(format!(
            "fractional chromatic number on {} vertices exceeds limit {vertex_limit}",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok((
            Rational::zero(),
            FractionalColouring { parts: BTreeMap::new(), total: Rational::zero() },
        ));
    }
    let sets = maximal_stable_sets(g);
    let mut rows = vec![vec![Rational::zero(); sets.len()]; g.n()];
    for (j, set) in sets.iter().enumerate() {
        for &v in set {
            rows[v][j] = rat(1);
        }
    }
    let lp = CoveringLp {
        rows,
        rhs: vec![rat(1); g.n()],
        objective: vec![rat(1); sets.len()],
    };
    let sol = solve_covering(&lp)?;
    let mut parts = BTreeMap::new();
    for (j, w) in sol.x.iter().enumerate() {
        if !w.is_zero() {
            parts.insert(sets[j].clone(), w.clone());
        }
    }
    let colouring = FractionalColouring { parts, total: sol.value.clone() };
    colouring.validate(g)?;
    Ok((sol.value, colouring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn c5_has_five_maximal_stable_sets() {
        let sets = maximal_stable_sets(&cycle(5));
        assert_eq!(sets.len(), 5);
        for s in &sets {
            assert_eq!(s.len(), 2);
        }
    }

    #[test]
    fn c5_value_is_five_halves() {
        let (v, w) = fractional_chromatic(&cycle(5), 30).unwrap();
        assert_eq!(v, ratio(5, 2));
        w.validate(&cycle(5)).unwrap();
    }

    #[test]
    fn complete_graphs_get_n() {
        for n in 1..6 {
            let (v, _) = fractional_chromatic(&complete(n), 30).unwrap();
            assert_eq!(v, rat(n as i64));
        }
    }

    #[test]
    fn bipartite_c4_gets_two() {
        let (v, _) = fractional_chromatic(&cycle(4), 30).unwrap();
        assert_eq!(v, rat(2));
    }

    #[test]
    fn petersen_is_five_halves() {
        // Kneser graph K(5,2): fractional chromatic number n/alpha = 10/4.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, 5 + (i + 2) % 5));
        }
        let g = SimpleGraph::from_edges(10, &edges);
        let (v, w) = fractional_chromatic(&g, 30).unwrap();
        assert_eq!(v, ratio(5, 2));
        w.validate(&g).unwrap();
    }

    #[test]
    fn grotzsch_graph_is_twentynine_tenths() {
        // Mycielskian of the 5-cycle: chi_f(M(G)) = chi_f(G) + 1/chi_f(G),
        // here 5/2 + 2/5 = 29/10. A hard exact-LP anchor on 11 vertices.
        let mut g = SimpleGraph::new(11);
        for i in 0..5 {
            let j = (i + 1) % 5;
            g.add_edge(i, j);
            g.add_edge(i + 5, j);
            g.add_edge(i, j + 5);
            g.add_edge(i + 5, 10);
        }
        let (v, w) = fractional_chromatic(&g, 30).unwrap();
        assert_eq!(v, ratio(29, 10));
        w.validate(&g).unwrap();
    }

    #[test]
    fn limit_is_enforced() {
        assert!(fractional_chromatic(&cycle(31), 30).is_err());
    }

    #[test]
    fn sandwich_below_chromatic_on_random_graphs() {
        use crate::solvers::chromatic::chromatic_number;
        use crate::solvers::clique::max_clique;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..15 {
            let n = rng.random_range(2..=8);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let (omega, _) = max_clique(&g);
            let (chi_f, _) = fractional_chromatic(&g, 30).unwrap();
            let (chi, _) = chromatic_number(&g, 64).unwrap();
            assert!(rat(omega as i64) <= chi_f);
            assert!(chi_f <= rat(chi as i64));
        }
    }
}
