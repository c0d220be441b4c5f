use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubic_tsp::barnette::{audit_barnette_bounds, barnette_tour, RotationSystem};
use cubic_tsp::general::{solve_general, ExternalPlugin, TourPlugin};
use cubic_tsp::generate::{generate, GeneratorSpec};
use cubic_tsp::io::{parse_edge_list, parse_rotation, parse_tour, write_edge_list_by_id, write_rotation, write_tour};
use cubic_tsp::matching::{decompose_third, verify_distribution};
use cubic_tsp::oracle::held_karp_opt;
use cubic_tsp::reduce::reduce_fully;
use cubic_tsp::{pipeline, Error, Graph, Tour};
use cubic_tsp_cli::bench::{run_manifest, write_csv, Manifest};

#[derive(Parser)]
#[command(name = "cubic-tsp", version, about = "Short TSP tours on cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tour of a 2-connected cubic graph: reduce, operate on covers, lift.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
        /// Print the contribution audit and fail on violations.
        #[arg(long)]
        audit: bool,
        /// Write the tour here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tour of a connected cubic graph that may have bridges.
    SolveGeneral {
        #[arg(long)]
        graph: PathBuf,
        /// External tour heuristic (edge lists on stdin/stdout).
        #[arg(long)]
        plugin_a: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tour of a Barnette graph from its planar rotation.
    Barnette {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rotation: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove chorded 6-cycles.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
        /// Write the reduced graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convex combination of 3-cut perfect matchings with marginals 1/3.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a tour file against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tour: PathBuf,
    },
    /// Exact optimum by Held-Karp.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Generate an instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        /// Prism half-size: the prism over the cycle of length 2k.
        #[arg(long)]
        k: Option<usize>,
        /// Number of bridges.
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Write the rotation of planar instances here.
        #[arg(long)]
        rot: Option<PathBuf>,
    },
    /// Run a JSON manifest and write one CSV row per instance.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    EvenPrism,
    Cube,
    TruncatedOctahedron,
    Petersen,
    RandomCubic,
    RandomCubicBridged,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit_tour(graph: &Graph, tour: &Tour, out: Option<&PathBuf>) -> Result<()> {
    if let Some(p) = out {
        write(p, &write_tour(graph, tour))?;
    }
    Ok(())
}

fn tour_json(tour: &Tour) -> serde_json::Value {
    json!(tour.edges().map(|(e, k)| [e, k as usize]).collect::<Vec<_>>())
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Exit status of a successful run: 0, or 1 on a bound or audit violation.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Solve { graph, json, audit, out } => {
            let g = read_graph(&graph)?;
            let s = pipeline::solve(&g)?;
            let bound = pipeline::main_bound(g.n());
            let bound_ok = s.tour.len() as i64 <= bound;
            let audit_ok = s.audit.as_ref().is_none_or(|a| a.ok());
            emit_tour(&g, &s.tour, out.as_ref())?;
            if json {
                let records: Vec<_> = s.steps.iter().map(|r| &r.record).collect();
                print_json(&json!({
                    "n": g.n(),
                    "m": g.m(),
                    "tour_length": s.tour.len(),
                    "bound": bound,
                    "bound_ok": bound_ok,
                    "reduced_n": s.reduced.n(),
                    "reductions": records,
                    "growth": s.growth,
                    "method": s.best.method,
                    "covers": s.best.runs.len(),
                    "chosen": s.best.chosen,
                    "audit": if audit { serde_json::to_value(&s.audit)? } else { serde_json::Value::Null },
                    "tour": tour_json(&s.tour),
                }));
            } else {
                println!("n = {}, tour length = {}, bound = {} ({})", g.n(), s.tour.len(), bound, if bound_ok { "ok" } else { "VIOLATED" });
                println!("reductions: {} (reduced n = {}), method: {:?}", s.steps.len(), s.reduced.n(), s.best.method);
                if audit {
                    match &s.audit {
                        Some(a) => {
                            println!("audit: {} checks, {} violations", a.checks, a.violations.len());
                            for v in &a.violations {
                                println!("  {v}");
                            }
                        }
                        None => println!("audit: not applicable (Hamiltonian cycle found directly)"),
                    }
                }
            }
            Ok(u8::from(!bound_ok || (audit && !audit_ok)))
        }
        Cmd::SolveGeneral { graph, plugin_a, json, out } => {
            let g = read_graph(&graph)?;
            let plugin = plugin_a.map(|command| ExternalPlugin { command });
            let s = solve_general(&g, plugin.as_ref().map(|p| p as &dyn TourPlugin))?;
            emit_tour(&g, &s.tour, out.as_ref())?;
            let ok = s.bound_ok() && s.pieces.iter().all(|p| p.bound_ok);
            let bound = cubic_tsp::io::rational_string(&s.length_bound);
            if json {
                print_json(&json!({
                    "n": g.n(),
                    "b": s.decomposition.b(),
                    "n0": s.decomposition.n0(),
                    "tour_length": s.tour.len(),
                    "lower_bound": s.lower_bound,
                    "bound": bound,
                    "bound_ok": ok,
                    "pieces": s.pieces,
                    "tour": tour_json(&s.tour),
                }));
            } else {
                println!(
                    "n = {}, b = {}, n0 = {}, tour length = {}, lower bound = {}, bound = {} ({})",
                    g.n(),
                    s.decomposition.b(),
                    s.decomposition.n0(),
                    s.tour.len(),
                    s.lower_bound,
                    bound,
                    if ok { "ok" } else { "VIOLATED" }
                );
            }
            Ok(u8::from(!ok))
        }
        Cmd::Barnette { graph, rotation, json, audit, out } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&rotation).with_context(|| format!("reading {}", rotation.display()))?;
            let rot = RotationSystem::new(&g, parse_rotation(&text)?)?;
            let res = barnette_tour(&g, &rot)?;
            emit_tour(&g, &res.tour, out.as_ref())?;
            let n = g.n() as i64;
            let cycles = res.runs[res.chosen].final_cycles as i64;
            let bound_ok = 36 * cycles <= 5 * n + 14 && 18 * res.tour.len() as i64 <= 23 * n - 22;
            let report = audit.then(|| {
                let covers: Vec<_> = res.runs.iter().map(|r| r.cover.clone()).collect();
                audit_barnette_bounds(&g, &res.faces, &covers)
            });
            if json {
                print_json(&json!({
                    "n": g.n(),
                    "faces": res.faces.len(),
                    "tour_length": res.tour.len(),
                    "cycles": cycles,
                    "bound_ok": bound_ok,
                    "runs": res.runs,
                    "chosen": res.chosen,
                    "audit": report,
                    "tour": tour_json(&res.tour),
                }));
            } else {
                println!(
                    "n = {}, faces = {}, cycles = {}, tour length = {} ({})",
                    g.n(),
                    res.faces.len(),
                    cycles,
                    res.tour.len(),
                    if bound_ok { "ok" } else { "VIOLATED" }
                );
                if let Some(a) = &report {
                    println!("audit: {} checks, {} violations", a.checks, a.violations.len());
                    for v in &a.violations {
                        println!("  {v}");
                    }
                }
            }
            Ok(u8::from(!bound_ok || report.is_some_and(|a| !a.ok())))
        }
        Cmd::Reduce { graph, emit_trace, out } => {
            let g = read_graph(&graph)?;
            let (h, steps) = reduce_fully(&g)?;
            let records: Vec<_> = steps.iter().map(|s| &s.record).collect();
            if let Some(p) = emit_trace {
                write(&p, &serde_json::to_string_pretty(&records)?)?;
            }
            match out {
                Some(p) => write(&p, &write_edge_list_by_id(&h))?,
                None => print!("{}", write_edge_list_by_id(&h)),
            }
            eprintln!("{} reduction(s): n {} -> {}", steps.len(), g.n(), h.n());
            Ok(0)
        }
        Cmd::Decompose { graph, json } => {
            let g = read_graph(&graph)?;
            let dist = decompose_third(&g)?;
            let report = verify_distribution(&g, &dist);
            if json {
                print_json(&json!({ "atoms": dist, "report": report }));
            } else {
                for atom in &dist.atoms {
                    let edges: Vec<String> = atom.edges.iter().map(usize::to_string).collect();
                    println!("{} {}", cubic_tsp::io::rational_string(&atom.lambda), edges.join(" "));
                }
                eprintln!("{} matchings, verified: {}", dist.len(), report.ok());
            }
            Ok(u8::from(!report.ok()))
        }
        Cmd::Verify { graph, tour } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&tour).with_context(|| format!("reading {}", tour.display()))?;
            let t = parse_tour(&g, &text)?;
            match t.validate(&g) {
                Ok(()) => {
                    println!("valid tour of length {}", t.len());
                    Ok(0)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(1)
                }
            }
        }
        Cmd::Oracle { graph } => {
            let g = read_graph(&graph)?;
            println!("{}", held_karp_opt(&g)?);
            Ok(0)
        }
        Cmd::Gen { kind, n, k, b, seed, out, rot } => {
            let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Error::Generator(format!("--{flag} is required")));
            let spec = match kind {
                Kind::EvenPrism => GeneratorSpec::EvenPrism { k: need(k, "k")? },
                Kind::Cube => GeneratorSpec::Cube,
                Kind::TruncatedOctahedron => GeneratorSpec::TruncatedOctahedron,
                Kind::Petersen => GeneratorSpec::Petersen,
                Kind::RandomCubic => GeneratorSpec::RandomCubic { n: need(n, "n")?, seed },
                Kind::RandomCubicBridged => GeneratorSpec::RandomCubicBridged { n: need(n, "n")?, b: need(b, "b")?, seed },
            };
            let generated = generate(&spec)?;
            write(&out, &write_edge_list_by_id(&generated.graph))?;
            match (rot, &generated.rotation) {
                (Some(p), Some(r)) => write(&p, &write_rotation(r.orders()))?,
                (Some(_), None) => return Err(Error::Generator("instance kind has no rotation".into()).into()),
                _ => {}
            }
            Ok(0)
        }
        Cmd::Bench { manifest, out } => {
            let text = fs::read_to_string(&manifest).with_context(|| format!("reading {}", manifest.display()))?;
            let m: Manifest = serde_json::from_str(&text).with_context(|| format!("parsing {}", manifest.display()))?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let rows = run_manifest(&m, base)?;
            match out {
                Some(p) => write_csv(&rows, fs::File::create(&p).with_context(|| format!("writing {}", p.display()))?)?,
                None => write_csv(&rows, std::io::stdout().lock())?,
            }
            let failed = rows.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                eprintln!("{failed} of {} instance(s) failed a bound or audit", rows.len());
            }
            Ok(u8::from(failed > 0))
        }
    }
}

/// 2 for bad input, 1 for anything else.
fn error_code(err: &anyhow::Error) -> u8 {
    let input = err.chain().any(|cause| {
        if cause.is::<serde_json::Error>() || cause.is::<std::io::Error>() {
            return true;
        }
        matches!(
            cause.downcast_ref::<Error>(),
            Some(
                Error::Parse { .. }
                    | Error::Disconnected
                    | Error::InvalidGraph(_)
                    | Error::SelfLoop { .. }
                    | Error::NotSpherical { .. }
                    | Error::InvalidRotation(_)
                    | Error::NotFaceColorable
                    | Error::Infeasible
                    | Error::TooLarge(_)
                    | Error::Generator(_)
                    | Error::InvalidTour(_)
                    | Error::Io(_)
                    | Error::Json(_)
            )
        )
    });
    if input {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}
