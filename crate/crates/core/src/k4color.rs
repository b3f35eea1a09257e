//! Constructive strong edge-colouring of K4-minor-free multigraphs: an edge
//! subset `A` is coloured with at most `3 * delta_A` colours, where
//! `delta_A` is the largest number of `A`-instances at a vertex.
//!
//! The recursion follows the degree structure: a vertex `v` with at least
//! two distinct neighbours but at most two of them with two or more
//! neighbours of their own either has a pendant-bundle neighbour (whose
//! instances are coloured greedily after recursing without it) or is split
//! into two pendant copies with its neighbours bridged.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{pair, EdgeInstance, Multigraph};
use crate::line_graph::StrongColouring;
use crate::minors::{has_clique_minor, MinorConfig};

/// A colouring request: a multigraph, a subset of its edge instances and
/// the derived palette bound.
#[derive(Debug, Clone)]
pub struct ColouringTask {
    pub graph: Multigraph,
    pub subset: Vec<EdgeInstance>,
    pub delta_a: usize,
}

impl ColouringTask {
    pub fn new(graph: Multigraph, subset: Vec<EdgeInstance>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &subset {
            if !graph.contains_instance(e) {
                return Err(Error::UnknownInstance(e.to_string()));
            }
            seen.insert(*e);
        }
        let subset: Vec<EdgeInstance> = seen.into_iter().collect();
        let delta_a = subset_max_degree(&graph, &subset.iter().copied().collect());
        Ok(ColouringTask { graph, subset, delta_a })
    }

    /// Task covering every edge instance.
    pub fn all_edges(graph: Multigraph) -> Self {
        let subset = graph.edge_instances();
        let delta_a = graph.max_degree();
        ColouringTask { graph, subset, delta_a }
    }
}

fn subset_max_degree(g: &Multigraph, a: &BTreeSet<EdgeInstance>) -> usize {
    (0..g.n())
        .map(|v| a.iter().filter(|e| e.pair.0 == v || e.pair.1 == v).count())
        .max()
        .unwrap_or(0)
}

/// Vertices with at least two distinct neighbours (multiplicity ignored).
pub fn v_geq2(g: &Multigraph) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.neighbours(v).len() >= 2).collect()
}

/// Splits a vertex whose distinct neighbours are exactly `{u1, u2}` into
/// two pendant copies: `v1 = n` keeps the `u1` bundle, `v2 = n + 1` the
/// `u2` bundle, and a simple edge `u1-u2` is added if absent. `v` is left
/// isolated.
pub fn split_vertex(g: &Multigraph, v: usize, u1: usize, u2: usize) -> Result<Multigraph> {
    if g.neighbours(v) != vec![u1.min(u2), u1.max(u2)] || u1 == u2 {
        return Err(Error::Precondition(format!(
            "vertex {v} does not have exactly the neighbours {u1}, {u2}"
        )));
    }
    let n = g.n();
    let (v1, v2) = (n, n + 1);
    let mut out = Multigraph::new(n + 2);
    for ((a, b), m) in g.simple_edges() {
        if a == v || b == v {
            continue;
        }
        out.add_edge(a, b, m)?;
    }
    out.add_edge(u1, v1, g.multiplicity(v, u1))?;
    out.add_edge(u2, v2, g.multiplicity(v, u2))?;
    if g.multiplicity(u1, u2) == 0 {
        out.add_edge(u1, u2, 1)?;
    }
    Ok(out)
}

/// Number of vertices with at least one edge.
fn non_isolated(g: &Multigraph) -> usize {
    (0..g.n()).filter(|&v| !g.neighbours(v).is_empty()).count()
}

struct Recursion {
    palette: usize,
}

impl Recursion {
    fn colour(
        &self,
        g: &Multigraph,
        a: &BTreeSet<EdgeInstance>,
    ) -> Result<BTreeMap<EdgeInstance, usize>> {
        let v2set = v_geq2(g);
        if v2set.is_empty() {
            // Disjoint multiedge bundles: per-bundle copies get distinct
            // colours, different bundles may share them.
            let mut out = BTreeMap::new();
            let mut per_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for e in a {
                let next = per_pair.entry(e.pair).or_insert(0);
                out.insert(*e, *next);
                *next += 1;
            }
            return Ok(out);
        }

        // A vertex of V>=2 with at most two neighbours in V>=2; least index.
        let is_v2 = |x: usize| v2set.binary_search(&x).is_ok();
        let v = *v2set
            .iter()
            .find(|&&v| g.neighbours(v).iter().filter(|&&u| is_v2(u)).count() <= 2)
            .ok_or_else(|| {
                Error::Internal("no low-degree vertex; host is not K4-minor-free".into())
            })?;

        let pendant = g.neighbours(v).into_iter().find(|&w| !is_v2(w));
        if let Some(w) = pendant {
            // Recurse without the pendant bundle, then extend greedily.
            let bundle = pair(v, w);
            let a_w: Vec<EdgeInstance> =
                a.iter().copied().filter(|e| e.pair == bundle).collect();
            let mut g2 = Multigraph::new(g.n());
            for ((x, y), m) in g.simple_edges() {
                if (x, y) != bundle {
                    g2.add_edge(x, y, m)?;
                }
            }
            let a2: BTreeSet<EdgeInstance> =
                a.iter().copied().filter(|e| e.pair != bundle).collect();
            debug_assert!(
                (v_geq2(&g2).len(), non_isolated(&g2)) < (v2set.len(), non_isolated(g)),
                "recursion measure must shrink"
            );
            let mut colouring = self.colour(&g2, &a2)?;

            let delta_a = subset_max_degree(g, a);
            for e in a_w {
                let mut forbidden = vec![false; self.palette];
                let mut conflicts = 0;
                for (f, &c) in &colouring {
                    if square_adjacent(g, &e, f) {
                        conflicts += 1;
                        forbidden[c] = true;
                    }
                }
                assert!(
                    conflicts < 3 * delta_a,
                    "greedy extension must see at most 3*delta_A - 1 conflicts"
                );
                let c = (0..self.palette)
                    .find(|&c| !forbidden[c])
                    .ok_or_else(|| Error::Internal("palette exhausted".into()))?;
                colouring.insert(e, c);
            }
            return Ok(colouring);
        }

        // All neighbours of v are in V>=2; there are exactly two. Split v
        // and pull the colouring back.
        let nb = g.neighbours(v);
        if nb.len() != 2 {
            return Err(Error::Internal(
                "vertex with all neighbours in V>=2 must have exactly two".into(),
            ));
        }
        let (u1, u2) = (nb[0], nb[1]);
        let g2 = split_vertex(g, v, u1, u2)?;
        let (v1, v2) = (g.n(), g.n() + 1);
        let rename = |e: &EdgeInstance| {
            if e.pair == pair(v, u1) {
                EdgeInstance::new(u1, v1, e.copy)
            } else if e.pair == pair(v, u2) {
                EdgeInstance::new(u2, v2, e.copy)
            } else {
                *e
            }
        };
        let a2: BTreeSet<EdgeInstance> = a.iter().map(rename).collect();
        debug_assert!(v_geq2(&g2).len() < v2set.len(), "V>=2 must shrink on split");
        let colouring2 = self.colour(&g2, &a2)?;
        let mut out = BTreeMap::new();
        for e in a {
            let c = colouring2
                .get(&rename(e))
                .ok_or_else(|| Error::Internal("renamed instance missed".into()))?;
            out.insert(*e, *c);
        }
        Ok(out)
    }
}

/// Adjacency of two edge instances in the square of the line graph.
fn square_adjacent(g: &Multigraph, e: &EdgeInstance, f: &EdgeInstance) -> bool {
    if e == f {
        return false;
    }
    let (u, v) = e.pair;
    let (x, y) = f.pair;
    u == x || u == y || v == x || v == y
        || g.multiplicity(u, x) > 0
        || g.multiplicity(u, y) > 0
        || g.multiplicity(v, x) > 0
        || g.multiplicity(v, y) > 0
}

/// Colours the task's subset with at most `3 * delta_A` colours. The host
/// must be K4-minor-free; the output is validated against the square of
/// the line graph before being returned.
pub fn strong_colour_k4(task: &ColouringTask, cfg: &MinorConfig) -> Result<StrongColouring> {
    let h = task.graph.underlying_simple();
    let minor = has_clique_minor(&h, 4, cfg)?;
    if minor.found {
        return Err(Error::Precondition("not K4-minor-free".into()));
    }
    if task.subset.is_empty() {
        return Ok(StrongColouring { colour: BTreeMap::new(), count: 0 });
    }
    let palette = 3 * task.delta_a;
    let rec = Recursion { palette };
    let a: BTreeSet<EdgeInstance> = task.subset.iter().copied().collect();
    let colour = rec.colour(&task.graph, &a)?;
    let count = {
        let mut used: Vec<usize> = colour.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    };
    let out = StrongColouring { colour, count };
    out.validate(&task.graph, &task.subset, Some(palette))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiedge(m: usize) -> Multigraph {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, m).unwrap();
        g
    }

    /// Triangle a, b, c with a pendant bundle of multiplicity 3 at each
    /// corner; every edge pair is incident or joined.
    fn triangle_with_pendants() -> Multigraph {
        let mut g = Multigraph::new(6);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(0, 2, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(0, 3, 3).unwrap();
        g.add_edge(1, 4, 3).unwrap();
        g.add_edge(2, 5, 3).unwrap();
        g
    }

    #[test]
    fn v_geq2_examples() {
        let mut path3 = Multigraph::new(3);
        path3.add_edge(0, 1, 1).unwrap();
        path3.add_edge(1, 2, 1).unwrap();
        assert_eq!(v_geq2(&path3), vec![1]);

        assert_eq!(v_geq2(&multiedge(2)), Vec::<usize>::new());

        let mut tri = Multigraph::new(3);
        tri.add_edge(0, 1, 1).unwrap();
        tri.add_edge(1, 2, 1).unwrap();
        tri.add_edge(0, 2, 1).unwrap();
        assert_eq!(v_geq2(&tri), vec![0, 1, 2]);
    }

    #[test]
    fn split_vertex_path() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        let s = split_vertex(&g, 1, 0, 2).unwrap();
        assert_eq!(s.multiplicity(0, 3), 1);
        assert_eq!(s.multiplicity(2, 4), 1);
        assert_eq!(s.multiplicity(0, 2), 1, "bridge edge added");
        assert!(s.neighbours(1).is_empty());
    }

    #[test]
    fn split_vertex_preserves_bundles_and_existing_bridge() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, 3).unwrap();
        g.add_edge(1, 2, 3).unwrap();
        g.add_edge(0, 2, 2).unwrap();
        let s = split_vertex(&g, 1, 0, 2).unwrap();
        assert_eq!(s.multiplicity(0, 3), 3);
        assert_eq!(s.multiplicity(2, 4), 3);
        assert_eq!(s.multiplicity(0, 2), 2, "existing bridge not duplicated");

        let mut path4 = Multigraph::new(4);
        path4.add_edge(0, 1, 1).unwrap();
        path4.add_edge(1, 2, 1).unwrap();
        path4.add_edge(2, 3, 1).unwrap();
        assert!(split_vertex(&path4, 1, 0, 3).is_err(), "wrong neighbour set");
    }

    #[test]
    fn single_multiedge_uses_exactly_m_colours() {
        for m in 1..=5 {
            let g = multiedge(m);
            let task = ColouringTask::all_edges(g);
            let c = strong_colour_k4(&task, &MinorConfig::default()).unwrap();
            assert_eq!(c.count, m);
        }
    }

    #[test]
    fn triangle_with_pendants_fits_budget() {
        let g = triangle_with_pendants();
        let task = ColouringTask::all_edges(g.clone());
        assert_eq!(task.delta_a, 5);
        let c = strong_colour_k4(&task, &MinorConfig::default()).unwrap();
        assert!(c.count <= 15);
        // Every pair of edges here is incident or joined, so 12 distinct
        // colours are necessary.
        assert!(c.count >= 12);
    }

    #[test]
    fn subset_colouring_stays_within_subset_budget() {
        let g = triangle_with_pendants();
        // A: the three pendant bundles only.
        let a: Vec<EdgeInstance> = g
            .edge_instances()
            .into_iter()
            .filter(|e| e.pair.1 >= 3)
            .collect();
        let task = ColouringTask::new(g, a).unwrap();
        assert_eq!(task.delta_a, 3);
        let c = strong_colour_k4(&task, &MinorConfig::default()).unwrap();
        assert!(c.count <= 9);
    }

    #[test]
    fn split_vertex_preserves_k4_minor_freedom() {
        use crate::minors::{has_clique_minor, MinorConfig};
        use rand::{Rng, SeedableRng};
        let cfg = MinorConfig::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        let mut performed = 0;
        for _ in 0..20 {
            let n = rng.random_range(3..=7);
            let mut g = Multigraph::new(n);
            for i in 0..n {
                g.add_edge(i, (i + 1) % n, rng.random_range(1..=2)).unwrap();
            }
            // Cycles with multiplicities are K4-minor-free; split any
            // degree-two vertex and re-check.
            let v = rng.random_range(0..n);
            let nb = g.neighbours(v);
            if nb.len() != 2 {
                continue;
            }
            let split = split_vertex(&g, v, nb[0], nb[1]).unwrap();
            let h = split.underlying_simple();
            assert!(!has_clique_minor(&h, 4, &cfg).unwrap().found);
            performed += 1;
        }
        assert!(performed > 10);
    }

    #[test]
    fn k4_host_is_rejected() {
        let mut g = Multigraph::new(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                g.add_edge(u, v, 1).unwrap();
            }
        }
        let task = ColouringTask::all_edges(g);
        assert!(matches!(
            strong_colour_k4(&task, &MinorConfig::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn foreign_instances_are_rejected() {
        let g = multiedge(2);
        let bad = vec![EdgeInstance::new(0, 1, 5)];
        assert!(ColouringTask::new(g, bad).is_err());
    }

    #[test]
    fn series_parallel_style_instances_validate() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..15 {
            // Random cycle with chords avoided: a cycle with parallel
            // multiplicities is K4-minor-free.
            let n = rng.random_range(3..=8);
            let mut g = Multigraph::new(n);
            for i in 0..n {
                g.add_edge(i, (i + 1) % n, rng.random_range(1..=3)).unwrap();
            }
            let task = ColouringTask::all_edges(g);
            let c = strong_colour_k4(&task, &MinorConfig::default()).unwrap();
            assert!(c.count <= 3 * task.delta_a);
        }
    }
}
