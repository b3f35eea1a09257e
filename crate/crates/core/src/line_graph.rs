//! The square of the line graph, and the strong-clique predicates defined
//! through it. Two edge instances are adjacent in `L(G)^2` when they are at
//! edge-distance at most two in `G`: they share an endpoint, are parallel
//! copies of the same pair, or some endpoint of one is adjacent in `G` to an
//! endpoint of the other.

use crate::error::{Error, Result};
use crate::graph::{EdgeInstance, Multigraph, SimpleGraph};

/// `L(G)^2` together with the instance labelling of its vertices. Vertex `i`
/// of `graph` is `instances[i]`; instances are in `(pair, copy)` order.
#[derive(Debug, Clone)]
pub struct LineGraphSquare {
    pub graph: SimpleGraph,
    pub instances: Vec<EdgeInstance>,
}

impl LineGraphSquare {
    pub fn index_of(&self, e: &EdgeInstance) -> Option<usize> {
        self.instances.binary_search(e).ok()
    }

    /// Induced subgraph of `L(G)^2` on a set of instances (sorted, deduped).
    pub fn induced(&self, subset: &[EdgeInstance]) -> Result<LineGraphSquare> {
        let mut idx = Vec::with_capacity(subset.len());
        for e in subset {
            let i = self
                .index_of(e)
                .ok_or_else(|| Error::UnknownInstance(e.to_string()))?;
            idx.push(i);
        }
        idx.sort_unstable();
        idx.dedup();
        let (graph, map) = self.graph.induced(&idx);
        let instances = map.iter().map(|&i| self.instances[i]).collect();
        Ok(LineGraphSquare { graph, instances })
    }
}

fn endpoints_touch(a: (usize, usize), b: (usize, usize)) -> bool {
    let (u, v) = a;
    let (x, y) = b;
    u == x || u == y || v == x || v == y
}

fn endpoints_joined(g: &Multigraph, a: (usize, usize), b: (usize, usize)) -> bool {
    let (u, v) = a;
    let (x, y) = b;
    g.multiplicity(u, x) > 0
        || g.multiplicity(u, y) > 0
        || g.multiplicity(v, x) > 0
        || g.multiplicity(v, y) > 0
}

/// Builds `L(G)^2` over the edge instances of `g`.
///
/// Errors with [`Error::NoEdges`] when `g` has no edges.
pub fn line_graph_square(g: &Multigraph) -> Result<LineGraphSquare> {
    let instances = g.edge_instances();
    if instances.is_empty() {
        return Err(Error::NoEdges);
    }
    let mut graph = SimpleGraph::new(instances.len());
    for i in 0..instances.len() {
        for j in (i + 1)..instances.len() {
            let (a, b) = (instances[i].pair, instances[j].pair);
            // Parallel copies (a == b) share both endpoints.
            if endpoints_touch(a, b) || endpoints_joined(g, a, b) {
                graph.add_edge(i, j);
            }
        }
    }
    Ok(LineGraphSquare { graph, instances })
}

/// Verdict of the edge-diameter-2 test. `trivial` flags graphs with fewer
/// than two edge instances, where the property holds vacuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiameterVerdict {
    pub at_most_two: bool,
    pub trivial: bool,
}

/// True iff every two edges of `g` are incident or joined by an edge,
/// i.e. `L(G)^2` is complete.
pub fn edge_diameter_at_most_two(g: &Multigraph) -> DiameterVerdict {
    if g.total_multiplicity() < 2 {
        return DiameterVerdict { at_most_two: true, trivial: true };
    }
    let lg2 = line_graph_square(g).expect("at least two instances");
    DiameterVerdict { at_most_two: lg2.graph.is_complete(), trivial: false }
}

/// A strong edge-colouring restricted to a set of instances: a map from
/// edge instances to colours that is proper on `L(G)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongColouring {
    pub colour: std::collections::BTreeMap<EdgeInstance, usize>,
    pub count: usize,
}

impl StrongColouring {
    /// Independent validity check: every instance of `a` is coloured, any
    /// two instances of `a` adjacent in `L(g)^2` receive distinct colours,
    /// `count` matches, and the palette respects `max_colours` when given.
    pub fn validate(
        &self,
        g: &Multigraph,
        a: &[EdgeInstance],
        max_colours: Option<usize>,
    ) -> Result<()> {
        let lg2 = line_graph_square(g)?;
        let mut idx = Vec::with_capacity(a.len());
        for e in a {
            let i = lg2
                .index_of(e)
                .ok_or_else(|| Error::UnknownInstance(e.to_string()))?;
            if !self.colour.contains_key(e) {
                return Err(Error::Internal(format!("instance {e} left uncoloured")));
            }
            idx.push((i, *e));
        }
        for (p, (i, e)) in idx.iter().enumerate() {
            for (j, f) in &idx[p + 1..] {
                if i != j && lg2.graph.has_edge(*i, *j) && self.colour[e] == self.colour[f] {
                    return Err(Error::Internal(format!(
                        "instances {e} and {f} are adjacent in the square but share colour {}",
                        self.colour[e]
                    )));
                }
            }
        }
        let mut used: Vec<usize> = a.iter().map(|e| self.colour[e]).collect();
        used.sort_unstable();
        used.dedup();
        if used.len() != self.count {
            return Err(Error::Internal(format!(
                "colour count {} disagrees with {} distinct colours used",
                self.count,
                used.len()
            )));
        }
        if let Some(max) = max_colours {
            if self.count > max {
                return Err(Error::Internal(format!(
                    "{} colours used, only {max} allowed",
                    self.count
                )));
            }
        }
        Ok(())
    }
}

/// True iff `s` is a clique of `L(G)^2`, i.e. a strong clique of `g`.
pub fn is_strong_clique(g: &Multigraph, s: &[EdgeInstance]) -> Result<bool> {
    for e in s {
        if !g.contains_instance(e) {
            return Err(Error::UnknownInstance(e.to_string()));
        }
    }
    let lg2 = line_graph_square(g)?;
    let idx: Vec<usize> = s.iter().map(|e| lg2.index_of(e).unwrap()).collect();
    for i in 0..idx.len() {
        for j in (i + 1)..idx.len() {
            if idx[i] != idx[j] && !lg2.graph.has_edge(idx[i], idx[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
