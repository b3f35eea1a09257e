//! Generators for the extremal multigraph families, each with a labelled
//! vertex set and its claimed statistics so the claim harness can compare
//! them against the exact solvers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeInstance, Multigraph};
use crate::rational::{rat, ratio, Rational};

/// The triangle-core family: three hub vertices `a, b, c` with heavy
/// pendant bundles, `k - 4` Shannon triangles cross-joined to the hubs,
/// and simple cliques on the triangle layers.
#[derive(Debug, Clone)]
pub struct Gkd {
    pub k: usize,
    pub delta: usize,
    pub graph: Multigraph,
    /// Every instance outside the three layer cliques.
    pub q: Vec<EdgeInstance>,
    pub claimed_q_size: usize,
}

/// Closed form for the size of the distinguished strong clique of the
/// triangle-core family: `(3/2)(k-2)d - (3/2)(k^2 - 7k + 14)`.
pub fn gkd_claimed_q(k: usize, delta: usize) -> usize {
    let (k, d) = (k as i64, delta as i64);
    let twice = 3 * ((k - 2) * d - (k * k - 7 * k + 14));
    assert!(twice >= 0 && twice % 2 == 0, "claimed size must be a nonnegative integer");
    (twice / 2) as usize
}

pub fn gkd(k: usize, delta: usize) -> Result<Gkd> {
    if k < 4 {
        return Err(Error::Precondition("k must be at least 4".into()));
    }
    if !(delta + k + 1).is_multiple_of(2) {
        return Err(Error::Precondition(format!("delta + k + 1 must be even, got k={k} delta={delta}")));
    }
    if delta + 2 < k || delta + 6 < 2 * k {
        return Err(Error::Precondition(format!(
            "delta too small for k={k}: need delta >= max(k-2, 2k-6)"
        )));
    }
    let shannon = (delta - (k - 3)) / 2;
    let bundle = delta - 2 * (k - 3);
    let layers = k - 4;

    let n = 6 + 3 * layers;
    let mut g = Multigraph::with_name(n, &format!("G({k},{delta})"));
    let hubs = ["a", "b", "c"];
    for (i, h) in hubs.iter().enumerate() {
        g.set_label(h, 2 * i);
        g.set_label(&format!("{h}'"), 2 * i + 1);
    }
    let (a, b, c) = (0, 2, 4);
    let ai = |i: usize| 6 + 3 * (i - 1);
    let bi = |i: usize| 7 + 3 * (i - 1);
    let ci = |i: usize| 8 + 3 * (i - 1);
    for i in 1..=layers {
        g.set_label(&format!("a{i}"), ai(i));
        g.set_label(&format!("b{i}"), bi(i));
        g.set_label(&format!("c{i}"), ci(i));
    }

    // Hub triangle and pendant bundles.
    g.add_edge(a, b, 1)?;
    g.add_edge(a, c, 1)?;
    g.add_edge(b, c, 1)?;
    if bundle > 0 {
        g.add_edge(a, 1, bundle)?;
        g.add_edge(b, 3, bundle)?;
        g.add_edge(c, 5, bundle)?;
    }
    // Shannon triangles and their cross edges to the opposite hubs.
    for i in 1..=layers {
        g.add_edge(ai(i), bi(i), shannon)?;
        g.add_edge(bi(i), ci(i), shannon)?;
        g.add_edge(ai(i), ci(i), shannon)?;
        g.add_edge(ai(i), b, 1)?;
        g.add_edge(ai(i), c, 1)?;
        g.add_edge(bi(i), a, 1)?;
        g.add_edge(bi(i), c, 1)?;
        g.add_edge(ci(i), a, 1)?;
        g.add_edge(ci(i), b, 1)?;
    }
    // Simple cliques on each layer set A, B, C.
    for i in 1..=layers {
        for j in (i + 1)..=layers {
            g.add_edge(ai(i), ai(j), 1)?;
            g.add_edge(bi(i), bi(j), 1)?;
            g.add_edge(ci(i), ci(j), 1)?;
        }
    }

    // Q: everything except the edges inside the layer cliques (two layer
    // vertices with the same residue are both a_i, both b_i or both c_i).
    let same_layer =
        |u: usize, v: usize| u >= 6 && v >= 6 && (u - 6) % 3 == (v - 6) % 3;
    let q: Vec<EdgeInstance> = g
        .edge_instances()
        .into_iter()
        .filter(|e| !same_layer(e.pair.0, e.pair.1))
        .collect();
    Ok(Gkd { k, delta, graph: g, q, claimed_q_size: gkd_claimed_q(k, delta) })
}

/// The edge-diameter-two family: a near-clique `A` with pendant bundles,
/// and a near-Shannon triangle on `a1, c, d` whose outer vertices split
/// the simple edges into `A`.
#[derive(Debug, Clone)]
pub struct Skd {
    pub k: usize,
    pub delta: usize,
    pub graph: Multigraph,
    /// The published closed form for the edge count.
    pub claimed_closed_form: i64,
    /// The edge count obtained directly from the definition.
    pub definitional_count: usize,
}

/// Closed form `ceil((k - 1/2) d - C(k-1, 2) - k + 1/2)`.
pub fn skd_closed_form(k: usize, delta: usize) -> i64 {
    let (k, d) = (k as i64, delta as i64);
    let choose2 = (k - 1) * (k - 2) / 2;
    let value: Rational =
        &(&ratio(2 * k - 1, 2) * &rat(d)) - &rat(choose2) - &rat(k) + ratio(1, 2);
    crate::rational::ceil_to_int(&value)
        .try_into()
        .expect("desk-scale value")
}

pub fn skd(k: usize, delta: usize) -> Result<Skd> {
    if k < 5 {
        return Err(Error::Precondition("k must be at least 5".into()));
    }
    if delta + 1 < k {
        return Err(Error::Precondition(format!(
            "delta too small for k={k}: bundles need delta >= k-1"
        )));
    }
    let n = (k - 1) + (k - 2) + 2;
    let mut g = Multigraph::with_name(n, &format!("S({k},{delta})"));
    let a = |i: usize| i - 1; // a_1 .. a_{k-1}
    let b = |i: usize| (k - 1) + (i - 2); // b_2 .. b_{k-1}
    let c = 2 * k - 3;
    let d = 2 * k - 2;
    for i in 1..k {
        g.set_label(&format!("a{i}"), a(i));
    }
    for i in 2..k {
        g.set_label(&format!("b{i}"), b(i));
    }
    g.set_label("c", c);
    g.set_label("d", d);

    // Clique on A minus the edge a1-a2.
    for i in 1..k {
        for j in (i + 1)..k {
            if (i, j) != (1, 2) {
                g.add_edge(a(i), a(j), 1)?;
            }
        }
    }
    // Pendant bundles.
    let bundle = delta - (k - 1);
    if bundle > 0 {
        for i in 2..k {
            g.add_edge(a(i), b(i), bundle)?;
        }
    }
    // Near-Shannon triangle on a1, c, d.
    let m = delta - (k - 3);
    g.add_edge(a(1), c, m.div_ceil(2))?;
    g.add_edge(a(1), d, m / 2)?;
    g.add_edge(c, d, (delta - 3).div_ceil(2))?;
    // Simple edges from c and d into A \ {a1}.
    let half = (k - 1) / 2;
    for i in 2..=(1 + half) {
        g.add_edge(c, a(i), 1)?;
    }
    g.add_edge(d, a(2), 1)?;
    for i in (2 + half)..k {
        g.add_edge(d, a(i), 1)?;
    }

    let definitional_count = g.total_multiplicity();
    Ok(Skd {
        k,
        delta,
        graph: g,
        claimed_closed_form: skd_closed_form(k, delta),
        definitional_count,
    })
}

/// Five stable sets of size `t` in a cycle, consecutive classes completely
/// joined. Maximum degree `2t`, `5 t^2` edges.
pub fn blown_c5(t: usize) -> Result<Multigraph> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    let mut g = Multigraph::with_name(5 * t, &format!("C5[{t}]"));
    for class in 0..5 {
        for i in 0..t {
            for j in 0..t {
                let u = class * t + i;
                let v = ((class + 1) % 5) * t + j;
                g.add_edge(u.min(v), u.max(v), 1)?;
            }
        }
    }
    Ok(g)
}

/// Complete bipartite graph with parts of size `k - 2` and `delta`, plus
/// `delta - k + 2` pendant edges at one vertex of the large part.
pub fn bipartite_pendant(k: usize, delta: usize) -> Result<Multigraph> {
    if k < 4 || delta + 2 < k {
        return Err(Error::Precondition(format!(
            "need k >= 4 and delta >= k - 2, got k={k} delta={delta}"
        )));
    }
    let small = k - 2;
    let pendants = delta + 2 - k;
    let n = small + delta + pendants;
    let mut g = Multigraph::with_name(n, &format!("K({},{delta})+pendants", k - 2));
    let y0 = small;
    g.set_label("y0", y0);
    for x in 0..small {
        for y in 0..delta {
            g.add_edge(x, small + y, 1)?;
        }
    }
    for p in 0..pendants {
        g.add_edge(y0, small + delta + p, 1)?;
    }
    Ok(g)
}

/// Claimed strong clique number of [`bipartite_pendant`].
pub fn bipartite_pendant_claimed(k: usize, delta: usize) -> usize {
    (k - 1) * (delta - 1) + 1
}

/// Complete graph on `k` vertices with `delta - k + 1` pendant edges at
/// every vertex; the whole edge set is a strong clique.
pub fn clique_pendant(k: usize, delta: usize) -> Result<Multigraph> {
    if k < 2 || delta <= k {
        return Err(Error::Precondition(format!(
            "need k >= 2 and delta > k, got k={k} delta={delta}"
        )));
    }
    let per_vertex = delta - k + 1;
    let n = k + k * per_vertex;
    let mut g = Multigraph::with_name(n, &format!("K{k}+pendants({delta})"));
    for u in 0..k {
        for v in (u + 1)..k {
            g.add_edge(u, v, 1)?;
        }
    }
    for v in 0..k {
        for p in 0..per_vertex {
            g.add_edge(v, k + v * per_vertex + p, 1)?;
        }
    }
    Ok(g)
}

/// Claimed strong clique number of [`clique_pendant`].
pub fn clique_pendant_claimed(k: usize, delta: usize) -> usize {
    k * (delta - k + 1) + k * (k - 1) / 2
}

/// Triangle with all three bundles of multiplicity `m`.
pub fn shannon_triangle(m: usize) -> Result<Multigraph> {
    if m == 0 {
        return Err(Error::Precondition("multiplicity must be at least 1".into()));
    }
    let mut g = Multigraph::with_name(3, &format!("Shannon({m})"));
    g.add_edge(0, 1, m)?;
    g.add_edge(1, 2, m)?;
    g.add_edge(0, 2, m)?;
    Ok(g)
}

/// Two-terminal series-parallel skeleton as an edge list.
struct SpPiece {
    n: usize,
    s: usize,
    t: usize,
    edges: Vec<(usize, usize)>,
}

fn sp_piece(rng: &mut ChaCha8Rng, leaves: usize) -> SpPiece {
    if leaves == 1 {
        return SpPiece { n: 2, s: 0, t: 1, edges: vec![(0, 1)] };
    }
    let left = rng.random_range(1..leaves);
    let series = rng.random_bool(0.5);
    let a = sp_piece(rng, left);
    let b = sp_piece(rng, leaves - left);
    if series {
        // Identify a.t with b.s.
        let offset = a.n;
        let map = |v: usize| {
            if v == b.s {
                a.t
            } else if v < b.s {
                offset + v
            } else {
                offset + v - 1
            }
        };
        let mut edges = a.edges.clone();
        edges.extend(b.edges.iter().map(|&(u, v)| (map(u), map(v))));
        SpPiece { n: a.n + b.n - 1, s: a.s, t: map(b.t), edges }
    } else {
        // Identify the two sources and the two sinks.
        let mut fresh = a.n;
        let mut assigned = vec![usize::MAX; b.n];
        assigned[b.s] = a.s;
        assigned[b.t] = a.t;
        let mut map = |v: usize, assigned: &mut Vec<usize>| {
            if assigned[v] == usize::MAX {
                assigned[v] = fresh;
                fresh += 1;
            }
            assigned[v]
        };
        let mut edges = a.edges.clone();
        for &(u, v) in &b.edges {
            let mu = map(u, &mut assigned);
            let mv = map(v, &mut assigned);
            edges.push((mu, mv));
        }
        SpPiece { n: fresh, s: a.s, t: a.t, edges }
    }
}

/// Seed-deterministic random series-parallel multigraph: a two-terminal
/// skeleton of series/parallel compositions, multiplicities clamped to
/// `max_multiplicity`, and the leftover instance budget spread over random
/// pairs. Always K4-minor-free; at most `edge_budget` instances.
pub fn random_series_parallel(
    edge_budget: usize,
    max_multiplicity: usize,
    seed: u64,
) -> Result<Multigraph> {
    if edge_budget == 0 || max_multiplicity == 0 {
        return Err(Error::Precondition("budget and multiplicity must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leaves = rng.random_range(1..=edge_budget);
    let piece = sp_piece(&mut rng, leaves);

    let mut mult: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    for &(u, v) in &piece.edges {
        let key = (u.min(v), u.max(v));
        let slot = mult.entry(key).or_insert(0);
        *slot = (*slot + 1).min(max_multiplicity);
    }
    let mut total: usize = mult.values().sum();
    let pairs: Vec<(usize, usize)> = mult.keys().copied().collect();
    let mut spare = edge_budget.saturating_sub(total);
    while spare > 0 {
        let &(u, v) = &pairs[rng.random_range(0..pairs.len())];
        let slot = mult.get_mut(&(u, v)).unwrap();
        if *slot < max_multiplicity {
            *slot += 1;
            total += 1;
        }
        spare -= 1;
    }
    debug_assert!(total <= edge_budget);

    let mut g = Multigraph::with_name(
        piece.n,
        &format!("SP(seed={seed},budget={edge_budget},maxmult={max_multiplicity})"),
    );
    g.set_label("s", piece.s);
    g.set_label("t", piece.t);
    for ((u, v), m) in mult {
        g.add_edge(u, v, m)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_graph::{edge_diameter_at_most_two, is_strong_clique};
    use crate::minors::{hadwiger_number, MinorConfig};

    #[test]
    fn gkd_smallest_k4_point_is_triangle_with_pendants() {
        let out = gkd(4, 5).unwrap();
        assert_eq!(out.graph.n(), 6);
        assert_eq!(out.graph.max_degree(), 5);
        assert_eq!(out.claimed_q_size, 12);
        assert_eq!(out.q.len(), 12);
        assert_eq!(out.graph.total_multiplicity(), 12, "Q is everything here");
        let a = out.graph.vertex("a").unwrap();
        let a_prime = out.graph.vertex("a'").unwrap();
        assert_eq!(out.graph.multiplicity(a, a_prime), 3);
        assert!(is_strong_clique(&out.graph, &out.q).unwrap());
    }

    #[test]
    fn gkd_five_six_matches_both_counts() {
        let out = gkd(5, 6).unwrap();
        assert_eq!(out.graph.n(), 9);
        assert_eq!(out.graph.total_multiplicity(), 21);
        assert_eq!(out.q.len(), 21, "layer cliques are empty at k = 5");
        assert_eq!(out.claimed_q_size, 21);
        assert_eq!(out.graph.max_degree(), 6);
    }

    #[test]
    fn gkd_claimed_sizes_match_formula() {
        assert_eq!(gkd_claimed_q(4, 5), 12);
        assert_eq!(gkd_claimed_q(4, 7), 18);
        assert_eq!(gkd_claimed_q(5, 6), 21);
        assert_eq!(gkd_claimed_q(5, 8), 30);
        assert_eq!(gkd_claimed_q(6, 7), 30);
    }

    #[test]
    fn gkd_degree_audit() {
        for (k, d) in [(4, 5), (4, 7), (5, 6), (5, 8), (6, 7)] {
            let out = gkd(k, d).unwrap();
            assert_eq!(out.graph.max_degree(), d, "G({k},{d})");
            // Every hub and layer vertex reaches exactly delta.
            for label in ["a", "b", "c"] {
                let v = out.graph.vertex(label).unwrap();
                assert_eq!(out.graph.degree(v), d, "hub {label} of G({k},{d})");
            }
        }
    }

    #[test]
    fn gkd_rejects_bad_parameters() {
        assert!(gkd(3, 4).is_err());
        assert!(gkd(4, 4).is_err(), "parity");
        assert!(gkd(6, 5).is_err(), "bundle multiplicity would be negative");
    }

    #[test]
    fn skd_five_six_counts_and_degrees() {
        let out = skd(5, 6).unwrap();
        assert_eq!(out.graph.n(), 9);
        assert_eq!(out.definitional_count, 21);
        assert_eq!(out.claimed_closed_form, 17);
        assert_eq!(out.graph.max_degree(), 6);
        // Every vertex outside B attains the maximum degree.
        for i in 1..5 {
            let v = out.graph.vertex(&format!("a{i}")).unwrap();
            assert_eq!(out.graph.degree(v), 6, "a{i}");
        }
        assert_eq!(out.graph.degree(out.graph.vertex("c").unwrap()), 6);
        assert_eq!(out.graph.degree(out.graph.vertex("d").unwrap()), 6);
        // a1-a2 is the missing clique edge.
        assert_eq!(out.graph.multiplicity(0, 1), 0);
    }

    #[test]
    fn skd_square_is_complete() {
        let out = skd(5, 6).unwrap();
        assert!(edge_diameter_at_most_two(&out.graph).at_most_two);
    }

    #[test]
    fn skd_rejects_bad_parameters() {
        assert!(skd(4, 6).is_err());
        assert!(skd(5, 3).is_err(), "bundles would be negative");
    }

    #[test]
    fn blown_c5_counts() {
        let one = blown_c5(1).unwrap();
        assert_eq!(one.total_multiplicity(), 5);
        assert_eq!(one.max_degree(), 2);
        assert!(edge_diameter_at_most_two(&one).at_most_two);

        let two = blown_c5(2).unwrap();
        assert_eq!(two.total_multiplicity(), 20);
        assert_eq!(two.max_degree(), 4);

        let three = blown_c5(3).unwrap();
        assert_eq!(three.total_multiplicity(), 45);
        assert_eq!(three.max_degree(), 6);
        assert!(edge_diameter_at_most_two(&three).at_most_two);
    }

    #[test]
    fn bipartite_pendant_counts() {
        let g = bipartite_pendant(5, 5).unwrap();
        assert_eq!(g.total_multiplicity(), 17);
        assert_eq!(bipartite_pendant_claimed(5, 5), 17);
        assert_eq!(g.max_degree(), 5);
        assert!(edge_diameter_at_most_two(&g).at_most_two);

        assert_eq!(bipartite_pendant_claimed(4, 4), 10);
        assert_eq!(bipartite_pendant(4, 4).unwrap().total_multiplicity(), 10);

        // Boundary of the range: a single pendant edge.
        let g = bipartite_pendant(4, 3).unwrap();
        assert_eq!(g.total_multiplicity(), 7);
        assert_eq!(bipartite_pendant_claimed(4, 3), 7);
    }

    #[test]
    fn clique_pendant_counts() {
        for (k, d, want) in [(3, 4, 9), (2, 3, 5), (4, 5, 14)] {
            let g = clique_pendant(k, d).unwrap();
            assert_eq!(g.total_multiplicity(), want);
            assert_eq!(clique_pendant_claimed(k, d), want);
            assert_eq!(g.max_degree(), d);
            assert!(edge_diameter_at_most_two(&g).at_most_two);
        }
    }

    #[test]
    fn shannon_triangle_counts() {
        assert_eq!(shannon_triangle(1).unwrap().total_multiplicity(), 3);
        let two = shannon_triangle(2).unwrap();
        assert_eq!(two.total_multiplicity(), 6);
        assert!(edge_diameter_at_most_two(&two).at_most_two);
        assert_eq!(shannon_triangle(3).unwrap().max_degree(), 6);
    }

    #[test]
    fn random_sp_budget_one_is_single_edge() {
        let g = random_series_parallel(1, 5, 7).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.total_multiplicity(), 1);
    }

    #[test]
    fn random_sp_is_deterministic() {
        let a = random_series_parallel(10, 3, 42).unwrap();
        let b = random_series_parallel(10, 3, 42).unwrap();
        assert_eq!(a, b);
        let c = random_series_parallel(10, 3, 43).unwrap();
        assert_ne!(a, c, "different seeds diverge");
    }

    #[test]
    fn random_sp_is_k4_minor_free() {
        let cfg = MinorConfig::default();
        for seed in 0..25 {
            let g = random_series_parallel(1 + (seed as usize % 20), 4, seed).unwrap();
            assert!(g.total_multiplicity() <= 1 + (seed as usize % 20));
            let h = g.underlying_simple();
            assert!(hadwiger_number(&h, &cfg).unwrap() <= 3, "seed {seed}");
        }
    }
}
