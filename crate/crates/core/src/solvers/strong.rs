//! The strong parameters of a multigraph, computed exactly through the
//! square of its line graph.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeInstance, Multigraph};
use crate::line_graph::{line_graph_square, StrongColouring};
use crate::rational::Rational;
use crate::solvers::chromatic::chromatic_number;
use crate::solvers::clique::max_clique;
use crate::solvers::fractional::fractional_chromatic;
use crate::solvers::Limits;

/// Strong clique number: the clique number of `L(G)^2`, with the witness
/// mapped back to edge instances.
pub fn strong_clique_number(g: &Multigraph) -> Result<(usize, Vec<EdgeInstance>)> {
    let lg2 = line_graph_square(g)?;
    let (size, verts) = max_clique(&lg2.graph);
    Ok((size, verts.into_iter().map(|i| lg2.instances[i]).collect()))
}

/// Strong chromatic index: the chromatic number of `L(G)^2`, with the
/// witness partition into induced matchings.
pub fn strong_chromatic_index(
    g: &Multigraph,
    limits: &Limits,
) -> Result<(usize, StrongColouring)> {
    let total = g.total_multiplicity();
    if total > limits.strong_index_instances {
        return Err(Error::LimitExceeded(format!(
            "strong chromatic index on {total} instances exceeds limit {}",
            limits.strong_index_instances
        )));
    }
    let lg2 = line_graph_square(g)?;
    let (count, vertex_colouring) = chromatic_number(&lg2.graph, limits.chromatic_vertices)?;
    let mut colour = BTreeMap::new();
    for (i, e) in lg2.instances.iter().enumerate() {
        colour.insert(*e, vertex_colouring.colour[&i]);
    }
    let out = StrongColouring { colour, count };
    out.validate(g, &g.edge_instances(), None)?;
    Ok((count, out))
}

/// Fractional strong chromatic index: the fractional chromatic number of
/// `L(G)^2`.
pub fn fractional_strong_chromatic_index(g: &Multigraph, limits: &Limits) -> Result<Rational> {
    let lg2 = line_graph_square(g)?;
    let (value, _) = fractional_chromatic(&lg2.graph, limits.fractional_vertices)?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, 1).unwrap();
        }
        g
    }

    fn star(leaves: usize) -> Multigraph {
        let mut g = Multigraph::new(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(0, i, 1).unwrap();
        }
        g
    }

    #[test]
    fn c5_strong_parameters_are_five() {
        let limits = Limits::default();
        assert_eq!(strong_clique_number(&cycle(5)).unwrap().0, 5);
        assert_eq!(strong_chromatic_index(&cycle(5), &limits).unwrap().0, 5);
        assert_eq!(
            fractional_strong_chromatic_index(&cycle(5), &limits).unwrap(),
            rat(5)
        );
    }

    #[test]
    fn star_strong_clique_is_leaf_count() {
        for n in 1..6 {
            assert_eq!(strong_clique_number(&star(n)).unwrap().0, n);
        }
    }

    #[test]
    fn parallel_edges_count_per_copy() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, 2).unwrap();
        let limits = Limits::default();
        assert_eq!(strong_chromatic_index(&g, &limits).unwrap().0, 2);
        g = Multigraph::new(2);
        g.add_edge(0, 1, 4).unwrap();
        assert_eq!(
            fractional_strong_chromatic_index(&g, &limits).unwrap(),
            rat(4)
        );
    }

    #[test]
    fn c7_fractional_regression_value() {
        // L(C7)^2 is the square of a 7-cycle, vertex-transitive with
        // independence number 2, so the exact LP value is 7/2.
        let limits = Limits::default();
        assert_eq!(
            fractional_strong_chromatic_index(&cycle(7), &limits).unwrap(),
            ratio(7, 2)
        );
    }

    #[test]
    fn c7_strong_index_is_four() {
        // Induced matchings of C7 have at most two edges and seven edges
        // need covering, so four classes are necessary; {0-1, 3-4},
        // {1-2, 4-5}, {2-3, 5-6}, {6-0} suffice.
        let limits = Limits::default();
        assert_eq!(strong_chromatic_index(&cycle(7), &limits).unwrap().0, 4);
    }

    #[test]
    fn sandwich_on_small_instances() {
        let limits = Limits::default();
        for g in [cycle(5), cycle(6), cycle(7), star(4)] {
            let (omega, _) = strong_clique_number(&g).unwrap();
            let chif = fractional_strong_chromatic_index(&g, &limits).unwrap();
            let (chi, _) = strong_chromatic_index(&g, &limits).unwrap();
            assert!(rat(omega as i64) <= chif);
            assert!(chif <= rat(chi as i64));
        }
    }

    #[test]
    fn instance_limit_enforced() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, 41).unwrap();
        assert!(strong_chromatic_index(&g, &Limits::default()).is_err());
    }
}
