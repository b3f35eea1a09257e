//! Largest set of vertex-disjoint edges that are pairwise joined by an edge.
//! This is a maximum clique in the compatibility graph whose vertices are
//! the distinct simple edges, so the exact clique solver does the search.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SimpleGraph};
use crate::solvers::clique::max_clique;
use crate::solvers::Limits;

/// Maximum number of vertex-disjoint edges of `g`, every two of which are
/// joined by an edge of `g`, with a witness. Always at most the matching
/// number.
pub fn pairwise_joined_matching_number(
    g: &Multigraph,
    limits: &Limits,
) -> Result<(usize, Vec<(usize, usize)>)> {
    let h = g.underlying_simple();
    let edges = h.edges();
    if edges.len() > limits.joined_matching_edges {
        return Err(Error::LimitExceeded(format!(
            "joined matching search on {} edges exceeds limit {}",
            edges.len(),
            limits.joined_matching_edges
        )));
    }
    if edges.is_empty() {
        return Ok((0, Vec::new()));
    }
    let joined = |a: (usize, usize), b: (usize, usize)| {
        let (u, v) = a;
        let (x, y) = b;
        g.multiplicity(u, x) > 0
            || g.multiplicity(u, y) > 0
            || g.multiplicity(v, x) > 0
            || g.multiplicity(v, y) > 0
    };
    let disjoint = |a: (usize, usize), b: (usize, usize)| {
        a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
    };
    let mut compat = SimpleGraph::new(edges.len());
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if disjoint(edges[i], edges[j]) && joined(edges[i], edges[j]) {
                compat.add_edge(i, j);
            }
        }
    }
    let (size, verts) = max_clique(&compat);
    Ok((size, verts.into_iter().map(|i| edges[i]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::matching::matching_number;

    fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, 1).unwrap();
        }
        g
    }

    fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v, 1).unwrap();
            }
        }
        g
    }

    #[test]
    fn c5_gives_two() {
        let (size, wit) = pairwise_joined_matching_number(&cycle(5), &Limits::default()).unwrap();
        assert_eq!(size, 2);
        assert_eq!(wit.len(), 2);
    }

    #[test]
    fn k7_gives_three() {
        let (size, _) = pairwise_joined_matching_number(&complete(7), &Limits::default()).unwrap();
        assert_eq!(size, 3);
    }

    #[test]
    fn two_disconnected_edges_give_one() {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(2, 3, 1).unwrap();
        let (size, _) = pairwise_joined_matching_number(&g, &Limits::default()).unwrap();
        assert_eq!(size, 1);
    }

    #[test]
    fn never_exceeds_matching_number() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.random_range(2..=9);
            let mut g = Multigraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(u, v, rng.random_range(1..=2)).unwrap();
                    }
                }
            }
            if g.total_multiplicity() == 0 {
                continue;
            }
            let (joined, _) = pairwise_joined_matching_number(&g, &Limits::default()).unwrap();
            let (mu, _) = matching_number(&g);
            assert!(joined <= mu);
        }
    }
}
