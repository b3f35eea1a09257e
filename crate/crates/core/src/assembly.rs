//! Assembling a fractional strong colouring of a multigraph from fractional
//! colourings of the reduced parts of its multiplicity decomposition, plus
//! numerical probes of the reduced fractional bound.
//!
//! Each decomposition part reduces to a multigraph whose distinguished edge
//! multiset is a vertex-disjoint union of odd cycles and double edges; a
//! fractional colouring of each reduced square, rescaled by half the part's
//! maximum weighted degree, sums to a fractional colouring of the original
//! square. Everything is certified in exact rational arithmetic.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::decompose::{decompose, multiplicity_weighting, Decomposition, EdgeWeighting};
use crate::error::{Error, Result};
use crate::graph::{EdgeInstance, Multigraph};
use crate::line_graph::line_graph_square;
use crate::minors::{has_clique_minor, MinorConfig};
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::solvers::{fractional_chromatic, Limits};

/// A fractional colouring whose colour classes are sets of edge instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceColouring {
    pub parts: BTreeMap<Vec<EdgeInstance>, Rational>,
    pub total: Rational,
}

impl InstanceColouring {
    /// Exact coverage of one instance.
    pub fn coverage(&self, e: &EdgeInstance) -> Rational {
        self.parts
            .iter()
            .filter(|(set, _)| set.contains(e))
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    /// Exact coverage of a pair, summed over its copies.
    pub fn pair_coverage(&self, u: usize, v: usize) -> Rational {
        self.parts
            .iter()
            .map(|(set, w)| {
                let copies = set
                    .iter()
                    .filter(|e| e.pair == crate::graph::pair(u, v))
                    .count();
                w * rat(copies as i64)
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Validates stability in the square of `g`'s line graph and coverage
    /// of at least 1 on every instance of `required`.
    pub fn validate(&self, g: &Multigraph, required: &[EdgeInstance]) -> Result<()> {
        let lg2 = line_graph_square(g)?;
        let mut total = Rational::zero();
        for (set, w) in &self.parts {
            if w <= &Rational::zero() {
                return Err(Error::Internal("nonpositive class weight".into()));
            }
            total += w;
            let idx: Vec<usize> = set
                .iter()
                .map(|e| {
                    lg2.index_of(e)
                        .ok_or_else(|| Error::UnknownInstance(e.to_string()))
                })
                .collect::<Result<_>>()?;
            for (p, &i) in idx.iter().enumerate() {
                for &j in &idx[p + 1..] {
                    if lg2.graph.has_edge(i, j) {
                        return Err(Error::Internal(format!(
                            "class {set:?} is not an induced matching"
                        )));
                    }
                }
            }
        }
        if total != self.total {
            return Err(Error::Internal("total weight mismatch".into()));
        }
        for e in required {
            if self.coverage(e) < rat(1) {
                return Err(Error::Internal(format!("instance {e} covered below 1")));
            }
        }
        Ok(())
    }
}

/// The reduced multigraph of one decomposition part, with the distinguished
/// instance multiset.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Multigraph,
    pub subset: Vec<EdgeInstance>,
    pub half_delta: Rational,
}

/// Builds the reduced instance of a part: each host edge gets multiplicity
/// `max(2 w(e) / delta, 1)`, and the subset holds exactly `2 w(e) / delta`
/// copies, which is 1 on cycle edges and 2 on isolated edges.
pub fn reduced_instance(g: &Multigraph, part: &EdgeWeighting) -> Result<ReducedInstance> {
    let host = g.underlying_simple();
    if part.host() != &host {
        return Err(Error::Precondition(
            "part host differs from the underlying simple graph".into(),
        ));
    }
    if !part.support_is_cycles_and_edges() || !part.satisfies_weight_pattern() {
        return Err(Error::Precondition("part violates the weight pattern".into()));
    }
    let delta = part.max_degree();
    let mut reduced = Multigraph::new(g.n());
    let mut subset = Vec::new();
    for (u, v) in host.edges() {
        let scaled = &(&part.get(u, v) * &rat(2)) / &delta;
        let copies = if scaled.is_zero() {
            0
        } else if scaled == rat(1) {
            1
        } else if scaled == rat(2) {
            2
        } else {
            return Err(Error::Precondition(format!(
                "edge {u}-{v} scales to {scaled}, not 0, 1 or 2"
            )));
        };
        reduced.add_edge(u, v, copies.max(1))?;
        for copy in 0..copies {
            subset.push(EdgeInstance::new(u, v, copy));
        }
    }
    subset.sort_unstable();
    Ok(ReducedInstance { graph: reduced, subset, half_delta: &delta / &rat(2) })
}

/// One part's fractional colouring paired with its rescaling factor.
#[derive(Debug, Clone)]
pub struct PartColouring {
    pub half_delta: Rational,
    pub colouring: InstanceColouring,
    /// The pair-level coverage each host edge must reach: the number of
    /// copies of the edge in the reduced subset.
    pub required: BTreeMap<(usize, usize), usize>,
}

/// Assembles a fractional colouring of `L(g)^2` from part colourings of the
/// reduced squares. Each part colouring must have total at most `2 lambda`
/// and cover each subset pair to its copy count; the assembled colouring
/// covers every instance of `g` and has total at most `lambda * maxdeg(g)`.
pub fn assemble(
    g: &Multigraph,
    parts: &[PartColouring],
    lambda: &Rational,
) -> Result<InstanceColouring> {
    let two_lambda = lambda * &rat(2);
    // Pair-level accumulation.
    let mut pair_classes: BTreeMap<Vec<(usize, usize)>, Rational> = BTreeMap::new();
    let mut total = Rational::zero();
    for (i, part) in parts.iter().enumerate() {
        if part.colouring.total > two_lambda {
            return Err(Error::Precondition(format!(
                "part {i} has total {} above 2 lambda = {}",
                part.colouring.total, two_lambda
            )));
        }
        for (&(u, v), &copies) in &part.required {
            let cov = part.colouring.pair_coverage(u, v);
            if cov < rat(copies as i64) {
                return Err(Error::Precondition(format!(
                    "part {i} covers {u}-{v} only {cov}, needs {copies}"
                )));
            }
        }
        for (set, w) in &part.colouring.parts {
            let mut pairs: Vec<(usize, usize)> = set.iter().map(|e| e.pair).collect();
            pairs.sort_unstable();
            pairs.dedup();
            if pairs.len() != set.len() {
                return Err(Error::Precondition(format!(
                    "part {i} class holds two copies of one pair"
                )));
            }
            let scaled = &part.half_delta * w;
            total += &scaled;
            *pair_classes.entry(pairs).or_insert_with(Rational::zero) += scaled;
        }
    }

    // Certify pair coverage against the multiplicities of g.
    for ((u, v), m) in g.simple_edges() {
        let cov = pair_classes
            .iter()
            .filter(|(pairs, _)| pairs.binary_search(&(u, v)).is_ok())
            .fold(Rational::zero(), |acc, (_, w)| acc + w);
        if cov < rat(m as i64) {
            return Err(Error::Precondition(format!(
                "assembled coverage of {u}-{v} is {cov}, below multiplicity {m}"
            )));
        }
    }
    let bound = lambda * &rat(g.max_degree() as i64);
    if total > bound {
        return Err(Error::Precondition(format!(
            "assembled total {total} above lambda * maxdeg = {bound}"
        )));
    }

    // Lift pair-level classes to instance-level classes: each pair's
    // coverage interval is sliced into unit segments, one per copy.
    let mut offsets: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut instance_classes: BTreeMap<Vec<EdgeInstance>, Rational> = BTreeMap::new();
    for (pairs, weight) in &pair_classes {
        // Relative breakpoints where some pair crosses a copy boundary.
        let mut cuts: Vec<Rational> = vec![Rational::zero(), weight.clone()];
        for &(u, v) in pairs {
            let start = offsets.get(&(u, v)).cloned().unwrap_or_else(Rational::zero);
            let mut boundary = start.floor() + rat(1);
            while boundary < &start + weight {
                cuts.push(&boundary - &start);
                boundary += rat(1);
            }
        }
        cuts.sort();
        cuts.dedup();
        for pair_of_cuts in cuts.windows(2) {
            let (lo, hi) = (&pair_of_cuts[0], &pair_of_cuts[1]);
            let slice = hi - lo;
            if slice.is_zero() {
                continue;
            }
            let mut instances = Vec::new();
            for &(u, v) in pairs {
                let start = offsets.get(&(u, v)).cloned().unwrap_or_else(Rational::zero);
                let copy_index = (&start + lo).floor().to_integer();
                let copy: usize = copy_index.try_into().expect("nonnegative offsets");
                if copy < g.multiplicity(u, v) {
                    instances.push(EdgeInstance::new(u, v, copy));
                }
            }
            if instances.is_empty() {
                continue;
            }
            instances.sort_unstable();
            *instance_classes
                .entry(instances)
                .or_insert_with(Rational::zero) += slice;
        }
        for &(u, v) in pairs {
            let slot = offsets.entry((u, v)).or_insert_with(Rational::zero);
            *slot += weight;
        }
    }

    // The instance lift can only drop weight on classes that lost all
    // their instances to overcoverage; recompute the exact total.
    let lifted_total = instance_classes
        .values()
        .fold(Rational::zero(), |acc, w| acc + w);
    let out = InstanceColouring { parts: instance_classes, total: lifted_total };
    out.validate(g, &g.edge_instances())?;
    Ok(out)
}

/// Fractional colouring of one reduced square by the exact LP.
pub fn part_colouring_by_lp(reduced: &ReducedInstance, limits: &Limits) -> Result<PartColouring> {
    let lg2 = line_graph_square(&reduced.graph)?;
    let induced = lg2.induced(&reduced.subset)?;
    let (_, colouring) = fractional_chromatic(&induced.graph, limits.fractional_vertices)?;
    let mut parts = BTreeMap::new();
    for (set, w) in &colouring.parts {
        let instances: Vec<EdgeInstance> = set.iter().map(|&i| induced.instances[i]).collect();
        parts.insert(instances, w.clone());
    }
    let mut required = BTreeMap::new();
    for e in &reduced.subset {
        *required.entry(e.pair).or_insert(0) += 1;
    }
    Ok(PartColouring {
        half_delta: reduced.half_delta.clone(),
        colouring: InstanceColouring { parts, total: colouring.total },
        required,
    })
}

/// The full pipeline: decompose the multiplicity weighting, colour each
/// reduced part by the exact LP, and assemble.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub decomposition: Decomposition,
    pub parts: Vec<PartColouring>,
    pub lambda: Rational,
    pub assembled: InstanceColouring,
}

pub fn assemble_via_lp(
    g: &Multigraph,
    lambda: Option<Rational>,
    limits: &Limits,
) -> Result<Pipeline> {
    let w = multiplicity_weighting(g);
    let decomposition = decompose(&w)?;
    let mut parts = Vec::new();
    for part in &decomposition.parts {
        let reduced = reduced_instance(g, part)?;
        parts.push(part_colouring_by_lp(&reduced, limits)?);
    }
    // Default lambda: the smallest value every part colouring fits under.
    let lambda = lambda.unwrap_or_else(|| {
        parts
            .iter()
            .map(|p| &p.colouring.total / &rat(2))
            .max()
            .unwrap_or_else(Rational::zero)
    });
    let assembled = assemble(g, &parts, &lambda)?;
    Ok(Pipeline { decomposition, parts, lambda, assembled })
}

/// Outcome of one probe of the reduced fractional bound.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub value: Rational,
    pub bound: Rational,
    pub within: bool,
}

/// Checks that `a` is a vertex-disjoint union of odd cycles and double
/// edges inside `g`.
pub fn validate_reduced_subset(g: &Multigraph, a: &[EdgeInstance]) -> Result<()> {
    let mut copies: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for e in a {
        if !g.contains_instance(e) {
            return Err(Error::UnknownInstance(e.to_string()));
        }
        if !seen.insert(*e) {
            return Err(Error::Precondition(format!("duplicate instance {e}")));
        }
        *copies.entry(e.pair).or_insert(0) += 1;
    }
    let mut support = crate::graph::SimpleGraph::new(g.n());
    for &(u, v) in copies.keys() {
        support.add_edge(u, v);
    }
    for comp in support.components() {
        if comp.len() < 2 {
            continue;
        }
        let comp_pairs: Vec<(usize, usize)> = copies
            .keys()
            .copied()
            .filter(|&(u, _)| comp.contains(&u))
            .collect();
        if comp.len() == 2 && comp_pairs.len() == 1 {
            if copies[&comp_pairs[0]] != 2 {
                return Err(Error::Precondition(format!(
                    "isolated pair {:?} must be a double edge",
                    comp_pairs[0]
                )));
            }
            continue;
        }
        let all_single = comp_pairs.iter().all(|p| copies[p] == 1);
        let degrees_two = comp.iter().all(|&v| support.degree(v) == 2);
        if !(all_single && degrees_two && comp.len() % 2 == 1 && comp_pairs.len() == comp.len()) {
            return Err(Error::Precondition(format!(
                "component {comp:?} is neither an odd cycle nor a double edge"
            )));
        }
    }
    Ok(())
}

/// Computes the exact fractional chromatic number of the square restricted
/// to `a` and reports the margin against `3 (k - 2)`; never asserts it.
pub fn reduced_bound_probe(
    g: &Multigraph,
    a: &[EdgeInstance],
    k: usize,
    limits: &Limits,
    minor_cfg: &MinorConfig,
) -> Result<ProbeReport> {
    validate_reduced_subset(g, a)?;
    let h = g.underlying_simple();
    let minor = has_clique_minor(&h, k, minor_cfg)?;
    if minor.found {
        return Err(Error::Precondition(format!("host has a K{k} minor")));
    }
    let lg2 = line_graph_square(g)?;
    let induced = lg2.induced(a)?;
    let (value, _) = fractional_chromatic(&induced.graph, limits.fractional_vertices)?;
    let bound = rat(3 * (k as i64 - 2));
    let within = value <= bound;
    Ok(ProbeReport { value, bound, within })
}

/// Finite blow-up diagnostic: the fractional strong chromatic index of the
/// graph with every `a`-instance replaced by `d` parallel copies, divided
/// by `d`, for each requested `d`.
pub fn finite_blowup_probe(
    g: &Multigraph,
    a: &[EdgeInstance],
    ds: &[usize],
    limits: &Limits,
) -> Result<Vec<(usize, Rational)>> {
    let mut copies: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in a {
        if !g.contains_instance(e) {
            return Err(Error::UnknownInstance(e.to_string()));
        }
        *copies.entry(e.pair).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    for &d in ds {
        if d == 0 {
            return Err(Error::Precondition("blow-up factor must be positive".into()));
        }
        let mut blown = Multigraph::new(g.n());
        for ((u, v), m) in g.simple_edges() {
            let extra = copies.get(&(u, v)).copied().unwrap_or(0);
            blown.add_edge(u, v, m - extra + d * extra)?;
        }
        let value = crate::solvers::fractional_strong_chromatic_index(&blown, limits)?;
        out.push((d, &value / &rat(d as i64)));
    }
    Ok(out)
}

// --- JSON wire format for part colourings -------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceJson {
    pub u: usize,
    pub v: usize,
    pub copy: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub instances: Vec<InstanceJson>,
    pub weight: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PartColouringJson {
    pub half_delta: String,
    pub required: Vec<(usize, usize, usize)>,
    pub classes: Vec<ClassJson>,
}

impl PartColouring {
    pub fn to_json(&self) -> PartColouringJson {
        PartColouringJson {
            half_delta: format_rational(&self.half_delta),
            required: self
                .required
                .iter()
                .map(|(&(u, v), &c)| (u, v, c))
                .collect(),
            classes: self
                .colouring
                .parts
                .iter()
                .map(|(set, w)| ClassJson {
                    instances: set
                        .iter()
                        .map(|e| InstanceJson { u: e.pair.0, v: e.pair.1, copy: e.copy })
                        .collect(),
                    weight: format_rational(w),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PartColouringJson) -> Result<PartColouring> {
        let mut parts = BTreeMap::new();
        let mut total = Rational::zero();
        for class in &json.classes {
            let mut set: Vec<EdgeInstance> = class
                .instances
                .iter()
                .map(|i| EdgeInstance::new(i.u, i.v, i.copy))
                .collect();
            set.sort_unstable();
            let w = parse_rational(&class.weight)?;
            total += &w;
            parts.insert(set, w);
        }
        Ok(PartColouring {
            half_delta: parse_rational(&json.half_delta)?,
            colouring: InstanceColouring { parts, total },
            required: json
                .required
                .iter()
                .map(|&(u, v, c)| ((u.min(v), u.max(v)), c))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, 1).unwrap();
        }
        g
    }

    fn double_edge() -> Multigraph {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, 2).unwrap();
        g
    }

    #[test]
    fn reduced_instance_of_isolated_edge_part_is_double_edge() {
        let g = double_edge();
        let w = multiplicity_weighting(&g);
        let d = decompose(&w).unwrap();
        assert_eq!(d.part_count, 1);
        let r = reduced_instance(&g, &d.parts[0]).unwrap();
        assert_eq!(r.graph.multiplicity(0, 1), 2);
        assert_eq!(r.subset.len(), 2);
        assert_eq!(r.half_delta, rat(1));
    }

    #[test]
    fn reduced_instance_of_odd_cycle_part_is_the_cycle() {
        let g = cycle(5);
        let w = multiplicity_weighting(&g);
        let d = decompose(&w).unwrap();
        assert_eq!(d.part_count, 1);
        let r = reduced_instance(&g, &d.parts[0]).unwrap();
        assert_eq!(r.graph.total_multiplicity(), 5);
        assert_eq!(r.subset.len(), 5);
        assert_eq!(r.half_delta, rat(1));
    }

    #[test]
    fn reduced_instance_of_mixed_part() {
        // Triangle 0-1-2 plus a disjoint edge 3-4.
        let mut g = Multigraph::new(5);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(0, 2, 1).unwrap();
        g.add_edge(3, 4, 2).unwrap();
        let w = multiplicity_weighting(&g);
        let d = decompose(&w).unwrap();
        assert_eq!(d.part_count, 1, "already a pattern: cycle at 1, edge at 2");
        let r = reduced_instance(&g, &d.parts[0]).unwrap();
        validate_reduced_subset(&r.graph, &r.subset).unwrap();
        assert_eq!(r.subset.len(), 5, "three cycle copies plus a double edge");
    }

    #[test]
    fn assemble_double_edge_at_lambda_one() {
        let g = double_edge();
        let pipeline = assemble_via_lp(&g, Some(rat(1)), &Limits::default()).unwrap();
        assert_eq!(pipeline.assembled.total, rat(2));
        assert_eq!(pipeline.lambda, rat(1));
    }

    #[test]
    fn assemble_c5_reaches_the_fractional_optimum() {
        let g = cycle(5);
        let pipeline = assemble_via_lp(&g, Some(ratio(5, 2)), &Limits::default()).unwrap();
        // lambda * maxdeg = 5, and the fractional strong chromatic index of
        // the 5-cycle is exactly 5.
        assert_eq!(pipeline.assembled.total, rat(5));
        pipeline
            .assembled
            .validate(&g, &g.edge_instances())
            .unwrap();
    }

    #[test]
    fn assemble_rejects_oversized_parts() {
        let g = cycle(5);
        let err = assemble_via_lp(&g, Some(rat(2)), &Limits::default());
        assert!(matches!(err, Err(Error::Precondition(_))), "2 lambda = 4 < 5");
    }

    #[test]
    fn probe_on_c5() {
        let g = cycle(5);
        let a = g.edge_instances();
        let report =
            reduced_bound_probe(&g, &a, 4, &Limits::default(), &MinorConfig::default()).unwrap();
        assert_eq!(report.value, rat(5));
        assert_eq!(report.bound, rat(6));
        assert!(report.within);
    }

    #[test]
    fn probe_on_double_edge() {
        let g = double_edge();
        let a = g.edge_instances();
        let report =
            reduced_bound_probe(&g, &a, 4, &Limits::default(), &MinorConfig::default()).unwrap();
        assert_eq!(report.value, rat(2));
        assert!(report.within);
    }

    #[test]
    fn probe_rejects_malformed_subsets() {
        let g = cycle(4);
        let a = g.edge_instances();
        assert!(
            validate_reduced_subset(&g, &a).is_err(),
            "an even cycle is not a legal subset"
        );
    }

    #[test]
    fn finite_blowup_trend_on_c5() {
        let g = cycle(5);
        let a = g.edge_instances();
        let probe = finite_blowup_probe(&g, &a, &[2, 4], &Limits::default()).unwrap();
        // Blowing up C5 by d gives a complete square on 5d instances.
        assert_eq!(probe[0], (2, rat(5)));
        assert_eq!(probe[1], (4, rat(5)));
    }

    #[test]
    fn pipeline_validates_on_random_multigraphs() {
        use rand::{Rng, SeedableRng};
        let limits = Limits::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let mut ran = 0;
        for _ in 0..25 {
            let n = rng.random_range(2..=6);
            let mut g = Multigraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(u, v, rng.random_range(1..=3)).unwrap();
                    }
                }
            }
            if g.total_multiplicity() == 0 {
                continue;
            }
            let pipeline = assemble_via_lp(&g, None, &limits).unwrap();
            let bound = &pipeline.lambda * &rat(g.max_degree() as i64);
            assert!(pipeline.assembled.total <= bound);
            // Assembly validated internally; re-check instance coverage.
            for e in g.edge_instances() {
                assert!(pipeline.assembled.coverage(&e) >= rat(1));
            }
            ran += 1;
        }
        assert!(ran >= 15, "only {ran} non-empty samples");
    }

    #[test]
    fn part_colouring_json_roundtrip() {
        let g = cycle(5);
        let w = multiplicity_weighting(&g);
        let d = decompose(&w).unwrap();
        let r = reduced_instance(&g, &d.parts[0]).unwrap();
        let pc = part_colouring_by_lp(&r, &Limits::default()).unwrap();
        let json = serde_json::to_string(&pc.to_json()).unwrap();
        let back = PartColouring::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.colouring, pc.colouring);
        assert_eq!(back.half_delta, pc.half_delta);
    }
}
