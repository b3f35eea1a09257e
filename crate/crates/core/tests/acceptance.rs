//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with
//! `cargo test -p strongchrom --test acceptance -- --nocapture`.

use std::panic::AssertUnwindSafe;
use std::time::{Duration, Instant};

use strongchrom::assembly::{assemble_via_lp, reduced_bound_probe, reduced_instance};
use strongchrom::constructions::{
    bipartite_pendant, blown_c5, gkd, gkd_claimed_q, skd,
};
use strongchrom::decompose::{decompose, multiplicity_weighting, EdgeWeighting};
use strongchrom::graph::{Multigraph, SimpleGraph};
use strongchrom::k4color::{strong_colour_k4, ColouringTask};
use strongchrom::line_graph::is_strong_clique;
use strongchrom::minors::{has_clique_minor, MinorConfig};
use strongchrom::rational::{rat, ratio};
use strongchrom::solvers::{
    chromatic_number, fractional_chromatic, maximum_matching, strong_chromatic_index,
    strong_clique_number, Limits,
};
use strongchrom::verify::{
    check_construction_formulas, check_corollary65, check_edgepacking_bound, check_main_bound,
    random_simple_suite, random_sp_suite, CheckContext, Verdict,
};

fn criterion(number: usize, name: &str, budget: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => {
            if let Some(limit) = budget {
                if elapsed > limit {
                    eprintln!(
                        "criterion {number} ({name}): FAIL — exceeded time budget {limit:?} with {elapsed:?}"
                    );
                    panic!("criterion {number} exceeded its time budget");
                }
            }
            eprintln!("criterion {number} ({name}): PASS in {elapsed:?}");
        }
        Err(cause) => {
            eprintln!("criterion {number} ({name}): FAIL after {elapsed:?}");
            std::panic::resume_unwind(cause);
        }
    }
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

fn complete(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v);
        }
    }
    g
}

fn cycle(n: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, 1).unwrap();
    }
    g
}

#[test]
fn acceptance_1_construction_formulas() {
    criterion(1, "construction formulas", Some(Duration::from_secs(10)), || {
        let points = [(4, 5), (4, 7), (5, 6), (5, 8), (6, 7)];
        let expected = [12usize, 18, 21, 30, 30];
        for (&(k, d), &want) in points.iter().zip(&expected) {
            let fam = gkd(k, d).unwrap();
            assert_eq!(gkd_claimed_q(k, d), want, "closed form at G({k},{d})");
            assert_eq!(fam.q.len(), want, "direct count at G({k},{d})");
            assert_eq!(fam.claimed_q_size, want);
            assert!(
                is_strong_clique(&fam.graph, &fam.q).unwrap(),
                "Q of G({k},{d}) is a strong clique"
            );
            assert_eq!(fam.graph.max_degree(), d);
        }
    });
}

#[test]
fn acceptance_2_minor_freeness() {
    criterion(2, "minor-freeness with pendant preprocessing", None, || {
        let cfg = MinorConfig::default();
        let budget = Duration::from_secs(300);
        for (k, d) in [(4usize, 5usize), (4, 7), (5, 6), (5, 8), (6, 7)] {
            let fam = gkd(k, d).unwrap();
            let start = Instant::now();
            let out = has_clique_minor(&fam.graph.underlying_simple(), k, &cfg).unwrap();
            assert!(start.elapsed() < budget, "G({k},{d}) within five minutes");
            assert!(!out.found, "G({k},{d}) must be K{k}-minor-free");
            assert!(
                out.pendant_contractions > 0,
                "pendant preprocessing fires on G({k},{d})"
            );
        }
        for (k, d) in [(5usize, 6usize), (5, 7), (6, 7)] {
            let fam = skd(k, d).unwrap();
            let start = Instant::now();
            let out = has_clique_minor(&fam.graph.underlying_simple(), k, &cfg).unwrap();
            assert!(start.elapsed() < budget, "S({k},{d}) within five minutes");
            assert!(!out.found, "S({k},{d}) must be K{k}-minor-free");
            assert!(
                out.pendant_contractions > 0,
                "pendant preprocessing fires on S({k},{d})"
            );
        }
    });
}

#[test]
fn acceptance_3_k4_colouring_suite() {
    criterion(3, "constructive colouring on 200 series-parallel instances", Some(Duration::from_secs(120)), || {
        let limits = Limits::default();
        let cfg = MinorConfig::default();
        let suite = random_sp_suite(200, 20250808);
        assert_eq!(suite.len(), 200);
        for g in &suite {
            assert!(g.total_multiplicity() <= 30);
            let task = ColouringTask::all_edges(g.clone());
            let colouring = strong_colour_k4(&task, &cfg).unwrap();
            assert!(
                colouring.count <= 3 * task.delta_a,
                "{:?} exceeded 3 * delta_A",
                g.name()
            );
            if g.total_multiplicity() <= 15 {
                let (chi2, _) = strong_chromatic_index(g, &limits).unwrap();
                assert!(chi2 <= 3 * g.max_degree(), "exact index within 3 * maxdeg");
            }
        }
    });
}

#[test]
fn acceptance_4_decomposition_suite() {
    criterion(4, "weight decomposition on 200 random weightings", Some(Duration::from_secs(60)), || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(477);
        for round in 0..200 {
            let n = rng.random_range(3..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let host = SimpleGraph::from_edges(n, &edges);
            let mut w = EdgeWeighting::new(host);
            for &(u, v) in &edges {
                let num = rng.random_range(0..=16i64);
                let den = rng.random_range(1..=8i64);
                w.set(u, v, ratio(num, den)).unwrap();
            }
            let d = decompose(&w).unwrap();
            // decompose() certifies internally; re-certify explicitly so a
            // regression in the internal check cannot hide.
            d.validate(&w).unwrap_or_else(|e| panic!("round {round}: {e}"));
        }
    });
}

#[test]
fn acceptance_5_solver_anchors() {
    criterion(5, "exact solver anchors", None, || {
        let limits = Limits::default();
        let (chif, _) = fractional_chromatic(&cycle(5).underlying_simple(), 30).unwrap();
        assert_eq!(chif, ratio(5, 2), "fractional chromatic number of the 5-cycle");

        let (chi, _) = chromatic_number(&petersen(), 64).unwrap();
        assert_eq!(chi, 3, "chromatic number of the Petersen graph");

        let (omega2, _) = strong_clique_number(&cycle(5)).unwrap();
        assert_eq!(omega2, 5, "strong clique number of the 5-cycle");

        let g45 = gkd(4, 5).unwrap();
        let (chi2, _) = strong_chromatic_index(&g45.graph, &limits).unwrap();
        assert_eq!(chi2, 12, "strong chromatic index of G(4,5)");

        let bp = bipartite_pendant(5, 5).unwrap();
        let (omega2, _) = strong_clique_number(&bp).unwrap();
        assert_eq!(omega2, 17, "strong clique number of the bipartite family at (5,5)");
        assert_eq!(omega2, (5 - 1) * (5 - 1) + 1);
    });
}

#[test]
fn acceptance_6_sharpness_equalities() {
    criterion(6, "sharpness equalities", None, || {
        // Matching edge-count bound is tight on odd cliques.
        for (n, want) in [(5usize, 10usize), (7, 21), (9, 36)] {
            let h = complete(n);
            let (mu, _) = maximum_matching(&h);
            let delta = h.max_degree();
            let bound = mu * delta + (mu / delta.div_ceil(2)) * (delta / 2);
            assert_eq!(h.edge_count(), want);
            assert_eq!(bound, want, "equality at K{n}");
        }
        // Edge-diameter-2 count bound is tight on the 5-cycle and K7.
        let c5 = blown_c5(1).unwrap();
        let (mu, _) = strongchrom::solvers::matching_number(&c5);
        assert_eq!(mu, 2);
        assert_eq!(
            rat(c5.total_multiplicity() as i64),
            &(&rat(3) - &ratio(1, 2)) * &rat(c5.max_degree() as i64),
            "5 = (3 - 1/2) * 2"
        );
        let k7 = complete(7).to_multigraph();
        let (mu, _) = strongchrom::solvers::matching_number(&k7);
        assert_eq!(mu, 3);
        assert_eq!(
            rat(k7.total_multiplicity() as i64),
            &(&rat(4) - &ratio(1, 2)) * &rat(6),
            "21 = (4 - 1/2) * 6"
        );
    });
}

#[test]
fn acceptance_7_bound_sweeps() {
    criterion(7, "bound sweeps over the random suites", None, || {
        let ctx = CheckContext::default();
        let mut checked = 0usize;
        for g in random_sp_suite(200, 20250808) {
            let r = check_main_bound(&g, 4, &ctx);
            assert_ne!(r.verdict, Verdict::Fail, "{}: {} <= {}", r.instance, r.lhs, r.rhs);
            let r = check_edgepacking_bound(&g, &ctx);
            assert_ne!(r.verdict, Verdict::Fail, "{}: {} <= {}", r.instance, r.lhs, r.rhs);
            checked += 2;
        }
        for h in random_simple_suite(200, 20250809) {
            if h.edge_count() == 0 {
                continue;
            }
            let g = h.to_multigraph();
            let eta = strongchrom::minors::hadwiger_number(&h, &ctx.minor).unwrap();
            let r = check_main_bound(&g, eta + 1, &ctx);
            assert_ne!(r.verdict, Verdict::Fail, "{}: {} <= {}", r.instance, r.lhs, r.rhs);
            let r = check_edgepacking_bound(&g, &ctx);
            assert_ne!(r.verdict, Verdict::Fail, "{}: {} <= {}", r.instance, r.lhs, r.rhs);
            let r = check_corollary65(&h, &ctx);
            assert_ne!(r.verdict, Verdict::Fail, "{}: {} <= {}", r.instance, r.lhs, r.rhs);
            checked += 3;
        }
        assert!(checked >= 990, "swept {checked} checks");
    });
}

#[test]
fn acceptance_8_fractional_pipeline() {
    criterion(8, "fractional assembly and probes", None, || {
        let limits = Limits::default();
        // 5-cycle at lambda = 5/2: the assembled colouring reaches exactly
        // lambda * maxdeg = 5.
        let c5 = cycle(5);
        let pipeline = assemble_via_lp(&c5, Some(ratio(5, 2)), &limits).unwrap();
        assert!(pipeline.assembled.total <= &ratio(5, 2) * &rat(2));
        pipeline.assembled.validate(&c5, &c5.edge_instances()).unwrap();

        // G(5,6) with solver-optimal part colourings.
        let g56 = gkd(5, 6).unwrap().graph;
        let pipeline = assemble_via_lp(&g56, None, &limits).unwrap();
        let bound = &pipeline.lambda * &rat(g56.max_degree() as i64);
        assert!(pipeline.assembled.total <= bound);
        pipeline.assembled.validate(&g56, &g56.edge_instances()).unwrap();
        eprintln!(
            "  assembled G(5,6): lambda = {}, total = {}",
            strongchrom::rational::format_rational(&pipeline.lambda),
            strongchrom::rational::format_rational(&pipeline.assembled.total),
        );

        // Probes are logged, never asserted.
        let w = multiplicity_weighting(&c5);
        let d = decompose(&w).unwrap();
        let reduced = reduced_instance(&c5, &d.parts[0]).unwrap();
        let probe = reduced_bound_probe(
            &reduced.graph,
            &reduced.subset,
            4,
            &limits,
            &MinorConfig::default(),
        )
        .unwrap();
        eprintln!(
            "  probe C5 (k=4): value = {}, bound = {}, within = {}",
            strongchrom::rational::format_rational(&probe.value),
            strongchrom::rational::format_rational(&probe.bound),
            probe.within,
        );
    });
}

#[test]
fn acceptance_9_findings_reproduction() {
    criterion(9, "documented discrepancies surface as findings", None, || {
        let reports = check_construction_formulas(&CheckContext::default());
        let skd_finding = reports
            .iter()
            .find(|r| r.instance == "S(5,6) edge count")
            .expect("S(5,6) edge-count record");
        assert_eq!(skd_finding.verdict, Verdict::Finding);
        assert_eq!(skd_finding.lhs, rat(21));
        assert_eq!(skd_finding.rhs, rat(17));

        let blowup_finding = reports
            .iter()
            .find(|r| r.instance == "C5[1] minor claim (k=3)")
            .expect("blown 5-cycle minor record");
        assert_eq!(blowup_finding.verdict, Verdict::Finding);

        // Findings are not failures: no Fail verdicts in the whole set.
        assert!(reports.iter().all(|r| r.verdict != Verdict::Fail));
    });
}
