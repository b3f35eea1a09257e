//! Command-line interface: construct the extremal families, run the exact
//! solvers, colour K4-minor-free hosts, decompose weightings, assemble
//! fractional colourings, and run the claim suites.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use strongchrom::assembly::{
    assemble, assemble_via_lp, finite_blowup_probe, PartColouring, PartColouringJson,
};
use strongchrom::constructions::{
    bipartite_pendant, blown_c5, clique_pendant, gkd, random_series_parallel, shannon_triangle,
    skd,
};
use strongchrom::decompose::{decompose, EdgeWeighting};
use strongchrom::error::Error;
use strongchrom::graph::{EdgeInstance, Multigraph, SimpleGraph};
use strongchrom::k4color::{strong_colour_k4, ColouringTask};
use strongchrom::line_graph::edge_diameter_at_most_two;
use strongchrom::minors::{hadwiger_number, MinorConfig};
use strongchrom::rational::{format_rational, parse_rational};
use strongchrom::solvers::{
    fractional_strong_chromatic_index, matching_number, pairwise_joined_matching_number,
    strong_chromatic_index, strong_clique_number, tutte_berge_verify, Limits,
};
use strongchrom::verify::{claim_registry, run_suite, suite_passes, SuiteConfig, SuiteKind, Verdict};

#[derive(Parser)]
#[command(name = "strongchrom", about = "Strong edge-colouring toolkit for minor-free multigraphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gkd,
    Skd,
    Blowc5,
    BipartitePendant,
    CliquePendant,
    Shannon,
    RandomSp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Smoke,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member and write it in the multigraph text format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        /// Blow-up factor for the five-cycle family.
        #[arg(long)]
        t: Option<usize>,
        /// Multiplicity for the Shannon triangle.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Edge-instance budget for the random series-parallel generator.
        #[arg(long)]
        budget: Option<usize>,
        /// Multiplicity cap for the random series-parallel generator.
        #[arg(long)]
        max_mult: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact strong parameters of a multigraph file, as JSON.
    Solve {
        file: PathBuf,
        /// Also compute the fractional strong chromatic index (LP).
        #[arg(long)]
        fractional: bool,
        /// Also compute the Hadwiger number of the underlying graph.
        #[arg(long)]
        hadwiger: bool,
    },
    /// Colour an edge subset of a K4-minor-free multigraph with at most
    /// three times its subset degree in colours.
    K4color {
        file: PathBuf,
        /// Subset file: lines `a <u> <v> <count>` selecting the first
        /// `count` copies of the pair; all edges when omitted.
        #[arg(long)]
        subset: Option<PathBuf>,
    },
    /// Decompose an edge weighting (lines `w <u> <v> <num>/<den>`) into
    /// pattern parts, as JSON.
    Decompose { file: PathBuf },
    /// Assemble a fractional strong colouring of a multigraph from its
    /// decomposition parts, as JSON.
    Fractional {
        file: PathBuf,
        /// Total-weight budget per unit of maximum degree; defaults to the
        /// least feasible value for the solved parts, or `3(k-2)/2` when
        /// `--k` is given.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Part colourings supplied as JSON instead of solving the LPs.
        #[arg(long)]
        parts: Option<PathBuf>,
        /// Comma-separated blow-up factors for the finite blow-up probe.
        #[arg(long)]
        blowup: Option<String>,
    },
    /// Run the claim suites; exit code 0 iff no theorem-status check fails.
    Verify {
        #[arg(long)]
        claim: Option<String>,
        #[arg(long, value_enum, default_value = "smoke")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the full report list as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// List the known claim identifiers and exit.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Construct { family, k, delta, t, m, seed, budget, max_mult, out } => {
            let graph = construct(family, k, delta, t, m, seed, budget, max_mult)?;
            let text = graph.to_text();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { file, fractional, hadwiger } => {
            let g = read_multigraph(&file)?;
            let limits = Limits::default();
            let (omega2, omega2_witness) = strong_clique_number(&g)?;
            let (chi2, _) = strong_chromatic_index(&g, &limits)?;
            let (mu, matching) = matching_number(&g);
            let (joined, _) = pairwise_joined_matching_number(&g, &limits)?;
            let diam = edge_diameter_at_most_two(&g);
            let mut out = serde_json::json!({
                "n": g.n(),
                "instances": g.total_multiplicity(),
                "max_degree": g.max_degree(),
                "strong_clique_number": omega2,
                "strong_clique_witness": omega2_witness.iter().map(instance_json).collect::<Vec<_>>(),
                "strong_chromatic_index": chi2,
                "matching_number": mu,
                "matching_witness": matching,
                "joined_matching_number": joined,
                "edge_diameter_at_most_two": diam.at_most_two,
            });
            if g.underlying_simple().n() <= 16 {
                let (mu2, minimiser) = tutte_berge_verify(&g)?;
                out["tutte_berge"] = serde_json::json!({ "value": mu2, "minimiser": minimiser });
            }
            if fractional {
                let chif = fractional_strong_chromatic_index(&g, &limits)?;
                out["fractional_strong_chromatic_index"] = format_rational(&chif).into();
            }
            if hadwiger {
                let eta = hadwiger_number(&g.underlying_simple(), &MinorConfig::default())?;
                out["hadwiger_number"] = eta.into();
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::K4color { file, subset } => {
            let g = read_multigraph(&file)?;
            let task = match subset {
                Some(path) => {
                    let a = read_subset(&path, &g)?;
                    ColouringTask::new(g.clone(), a)?
                }
                None => ColouringTask::all_edges(g.clone()),
            };
            let colouring = strong_colour_k4(&task, &MinorConfig::default())?;
            let assignment: Vec<serde_json::Value> = colouring
                .colour
                .iter()
                .map(|(e, c)| {
                    serde_json::json!({
                        "u": e.pair.0, "v": e.pair.1, "copy": e.copy, "colour": c,
                    })
                })
                .collect();
            let out = serde_json::json!({
                "colours": colouring.count,
                "budget": 3 * task.delta_a,
                "assignment": assignment,
                "valid": true,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { file } => {
            let w = read_weighting(&file)?;
            let d = decompose(&w)?;
            let parts: Vec<serde_json::Value> = d
                .parts
                .iter()
                .zip(&d.provenance)
                .map(|(part, origin)| {
                    let weights: Vec<serde_json::Value> = part
                        .support()
                        .into_iter()
                        .map(|(u, v)| {
                            serde_json::json!({
                                "u": u, "v": v, "w": format_rational(&part.get(u, v)),
                            })
                        })
                        .collect();
                    serde_json::json!({
                        "weights": weights,
                        "max_weighted_degree": format_rational(&part.max_degree()),
                        "provenance": origin,
                    })
                })
                .collect();
            let out = serde_json::json!({
                "parts": parts,
                "part_count": d.part_count,
                "iterations": d.max_depth,
                "max_weighted_degree": format_rational(&w.max_degree()),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fractional { file, lambda, k, parts, blowup } => {
            let g = read_multigraph(&file)?;
            let limits = Limits::default();
            let lambda = match (lambda, k) {
                (Some(s), _) => Some(parse_rational(&s)?),
                (None, Some(k)) => Some(
                    strongchrom::rational::ratio(3 * (k as i64 - 2), 2),
                ),
                (None, None) => None,
            };
            let (assembled, lambda_used, part_jsons) = match parts {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let jsons: Vec<PartColouringJson> =
                        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    let parts: Vec<PartColouring> = jsons
                        .iter()
                        .map(PartColouring::from_json)
                        .collect::<Result<_, _>>()?;
                    let lambda = lambda.ok_or_else(|| {
                        Error::Precondition("--lambda or --k required with --parts".into())
                    })?;
                    let assembled = assemble(&g, &parts, &lambda)?;
                    (assembled, lambda, jsons)
                }
                None => {
                    let pipeline = assemble_via_lp(&g, lambda, &limits)?;
                    let jsons = pipeline.parts.iter().map(PartColouring::to_json).collect();
                    (pipeline.assembled, pipeline.lambda, jsons)
                }
            };
            let classes: Vec<serde_json::Value> = assembled
                .parts
                .iter()
                .map(|(set, w)| {
                    serde_json::json!({
                        "instances": set.iter().map(instance_json).collect::<Vec<_>>(),
                        "weight": format_rational(w),
                    })
                })
                .collect();
            let mut out = serde_json::json!({
                "lambda": format_rational(&lambda_used),
                "total": format_rational(&assembled.total),
                "bound": format_rational(&(&lambda_used * &strongchrom::rational::rat(g.max_degree() as i64))),
                "classes": classes,
                "parts": part_jsons,
            });
            if let Some(factors) = blowup {
                let ds: Vec<usize> = factors
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad blow-up factor `{s}`"))))
                    .collect::<Result<_, _>>()?;
                let probe = finite_blowup_probe(&g, &g.edge_instances(), &ds, &limits)?;
                out["blowup_probe"] = probe
                    .iter()
                    .map(|(d, r)| serde_json::json!({ "d": d, "ratio": format_rational(r) }))
                    .collect::<Vec<_>>()
                    .into();
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { claim, suite, seed, json, list } => {
            if list {
                for (id, statement) in claim_registry() {
                    println!("{id}: {statement}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let cfg = SuiteConfig {
                suite: match suite {
                    Suite::Smoke => SuiteKind::Smoke,
                    Suite::Full => SuiteKind::Full,
                },
                seed,
                claim,
            };
            let reports = run_suite(&cfg);
            let mut counts: BTreeMap<String, (usize, usize, usize, usize, usize)> = BTreeMap::new();
            for r in &reports {
                let slot = counts.entry(r.claim.clone()).or_default();
                match r.verdict {
                    Verdict::Pass => slot.0 += 1,
                    Verdict::Fail => slot.1 += 1,
                    Verdict::Skipped => slot.2 += 1,
                    Verdict::Finding => slot.3 += 1,
                    Verdict::Margin => slot.4 += 1,
                }
            }
            for (claim, (pass, fail, skip, finding, margin)) in &counts {
                println!(
                    "{claim}: {pass} pass, {fail} fail, {skip} skipped, {finding} findings, {margin} margins"
                );
            }
            for r in &reports {
                if r.verdict == Verdict::Fail {
                    println!(
                        "FAIL {} [{}]: {} vs {} ({})",
                        r.claim,
                        r.instance,
                        format_rational(&r.lhs),
                        format_rational(&r.rhs),
                        r.note.as_deref().unwrap_or("bound violated"),
                    );
                }
                if r.verdict == Verdict::Finding {
                    println!(
                        "FINDING {} [{}]: {} vs {}",
                        r.claim,
                        r.instance,
                        format_rational(&r.lhs),
                        format_rational(&r.rhs),
                    );
                }
            }
            if let Some(path) = json {
                let payload: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
                std::fs::write(path, serde_json::to_string_pretty(&payload).expect("serializable"))?;
            }
            let ok = suite_passes(&reports);
            println!(
                "{} reports, {}",
                reports.len(),
                if ok { "no theorem-status failures" } else { "THEOREM-STATUS FAILURES PRESENT" }
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn instance_json(e: &EdgeInstance) -> serde_json::Value {
    serde_json::json!({ "u": e.pair.0, "v": e.pair.1, "copy": e.copy })
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: Family,
    k: Option<usize>,
    delta: Option<usize>,
    t: Option<usize>,
    m: Option<usize>,
    seed: Option<u64>,
    budget: Option<usize>,
    max_mult: Option<usize>,
) -> Result<Multigraph, Error> {
    let need = |name: &str, v: Option<usize>| {
        v.ok_or_else(|| Error::Precondition(format!("--{name} is required for this family")))
    };
    match family {
        Family::Gkd => Ok(gkd(need("k", k)?, need("delta", delta)?)?.graph),
        Family::Skd => Ok(skd(need("k", k)?, need("delta", delta)?)?.graph),
        Family::Blowc5 => blown_c5(need("t", t)?),
        Family::BipartitePendant => bipartite_pendant(need("k", k)?, need("delta", delta)?),
        Family::CliquePendant => clique_pendant(need("k", k)?, need("delta", delta)?),
        Family::Shannon => shannon_triangle(need("m", m)?),
        Family::RandomSp => random_series_parallel(
            need("budget", budget)?,
            need("max-mult", max_mult)?,
            seed.unwrap_or(0),
        ),
    }
}

fn read_multigraph(path: &PathBuf) -> Result<Multigraph, Error> {
    let text = std::fs::read_to_string(path)?;
    Multigraph::parse(&text)
}

/// Weighting file: optional `#` comments, lines `w <u> <v> <num>/<den>`.
/// The host graph has one edge per line (zero weights included as host
/// edges) on vertices `0 ..= max mentioned`.
fn read_weighting(path: &PathBuf) -> Result<EdgeWeighting, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    let mut max_vertex = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("w") => {
                let u: usize = tok
                    .next()
                    .ok_or_else(|| at("missing u"))?
                    .parse()
                    .map_err(|_| at("bad u"))?;
                let v: usize = tok
                    .next()
                    .ok_or_else(|| at("missing v"))?
                    .parse()
                    .map_err(|_| at("bad v"))?;
                let w = parse_rational(tok.next().ok_or_else(|| at("missing weight"))?)?;
                if u == v {
                    return Err(at("loops are not allowed"));
                }
                max_vertex = max_vertex.max(u).max(v);
                entries.push((u, v, w));
            }
            Some(other) => return Err(at(&format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    if entries.is_empty() {
        return Err(Error::Parse("no `w` lines found".into()));
    }
    let edges: Vec<(usize, usize)> = entries
        .iter()
        .map(|&(u, v, _)| (u.min(v), u.max(v)))
        .collect();
    let host = SimpleGraph::from_edges(max_vertex + 1, &edges);
    let mut out = EdgeWeighting::new(host);
    for (u, v, w) in entries {
        out.set(u, v, w)?;
    }
    Ok(out)
}

/// Subset file: optional `#` comments, lines `a <u> <v> <count>` meaning
/// the first `count` parallel copies of the pair.
fn read_subset(path: &PathBuf, g: &Multigraph) -> Result<Vec<EdgeInstance>, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("a") => {
                let mut next = |what: &str| -> Result<usize, Error> {
                    tok.next()
                        .ok_or_else(|| at(&format!("missing {what}")))?
                        .parse()
                        .map_err(|_| at(&format!("bad {what}")))
                };
                let u = next("u")?;
                let v = next("v")?;
                let count = next("count")?;
                if count > g.multiplicity(u, v) {
                    return Err(at(&format!(
                        "count {count} above multiplicity {}",
                        g.multiplicity(u, v)
                    )));
                }
                for copy in 0..count {
                    out.push(EdgeInstance::new(u, v, copy));
                }
            }
            Some(other) => return Err(at(&format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    Ok(out)
}
