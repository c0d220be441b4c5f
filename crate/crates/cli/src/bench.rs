use std::fs;
use std::path::{Path, PathBuf};

use num::{BigInt, Integer};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use cubic_tsp::barnette::{audit_barnette_bounds, barnette_tour, RotationSystem};
use cubic_tsp::cover::epsilon;
use cubic_tsp::general::solve_general;
use cubic_tsp::generate::{generate, GeneratorSpec};
use cubic_tsp::graph::bridges;
use cubic_tsp::io::{parse_edge_list, parse_rotation, rational_string};
use cubic_tsp::oracle::held_karp_opt;
use cubic_tsp::{pipeline, Error, Graph, Rational, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// Barnette when a rotation is known, general when there are bridges,
    /// the cover pipeline otherwise.
    #[default]
    Auto,
    Barnette,
    Pipeline,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Generated { generator: GeneratorSpec },
    File {
        graph: PathBuf,
        #[serde(default)]
        rotation: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Instance {
    pub id: String,
    #[serde(flatten)]
    pub source: Source,
    #[serde(default)]
    pub solver: Solver,
}

fn default_opt_max_n() -> usize {
    16
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Manifest {
    #[serde(default)]
    pub instances: Vec<Instance>,
    /// Largest n for which the exact optimum is computed.
    #[serde(default = "default_opt_max_n")]
    pub opt_max_n: usize,
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub id: String,
    pub solver: Solver,
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub tour: usize,
    pub lower_bound: usize,
    pub bound: String,
    pub bound_ok: bool,
    pub opt: Option<u32>,
    /// |T| / max(lower bound, 1).
    pub ratio: String,
    pub reductions: usize,
    pub covers: usize,
    pub u1: usize,
    pub u2: usize,
    pub u3: usize,
    pub face_moves: usize,
    pub audit_ok: Option<bool>,
    pub audit_violations: usize,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.bound_ok && self.audit_ok != Some(false)
    }
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x.into())
}

fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

fn within(tour: usize, bound: &Rational) -> bool {
    BigInt::from(tour) <= floor(bound)
}

pub fn load(source: &Source, base: &Path) -> Result<(Graph, Option<RotationSystem>)> {
    match source {
        Source::Generated { generator } => {
            let g = generate(generator)?;
            Ok((g.graph, g.rotation))
        }
        Source::File { graph, rotation } => {
            let g = parse_edge_list(&fs::read_to_string(base.join(graph))?)?;
            let rot = match rotation {
                Some(r) => Some(RotationSystem::new(&g, parse_rotation(&fs::read_to_string(base.join(r))?)?)?),
                None => None,
            };
            Ok((g, rot))
        }
    }
}

pub fn run_instance(id: &str, graph: &Graph, rotation: Option<&RotationSystem>, solver: Solver, opt_max_n: usize) -> Result<RunReport> {
    let (n, m) = (graph.n(), graph.m());
    let solver = match solver {
        Solver::Auto if rotation.is_some() => Solver::Barnette,
        Solver::Auto if graph.is_connected() && !bridges(graph, None).is_empty() => Solver::General,
        Solver::Auto => Solver::Pipeline,
        s => s,
    };
    let mut r = RunReport {
        id: id.to_string(),
        solver,
        n,
        m,
        b: 0,
        tour: 0,
        lower_bound: n,
        bound: String::new(),
        bound_ok: false,
        opt: None,
        ratio: String::new(),
        reductions: 0,
        covers: 0,
        u1: 0,
        u2: 0,
        u3: 0,
        face_moves: 0,
        audit_ok: None,
        audit_violations: 0,
    };
    let bound = match solver {
        Solver::Barnette => {
            let rot = rotation.ok_or_else(|| Error::InvalidRotation("the Barnette solver needs a rotation".into()))?;
            let res = barnette_tour(graph, rot)?;
            let covers: Vec<_> = res.runs.iter().map(|run| run.cover.clone()).collect();
            let audit = audit_barnette_bounds(graph, &res.faces, &covers);
            r.tour = res.tour.len();
            r.covers = res.runs.len();
            r.face_moves = res.runs.iter().map(|run| run.moves.len()).sum();
            r.audit_ok = Some(audit.ok());
            r.audit_violations = audit.violations.len();
            Rational::new((23 * n as i64 - 22).into(), 18.into())
        }
        Solver::Pipeline | Solver::Auto => {
            let s = pipeline::solve(graph)?;
            r.tour = s.tour.len();
            r.reductions = s.steps.len();
            r.covers = s.best.runs.len();
            for run in &s.best.runs {
                r.u1 += run.stats.u1;
                r.u2 += run.stats.u2;
                r.u3 += run.stats.u3;
            }
            if let Some(a) = &s.audit {
                r.audit_ok = Some(a.ok());
                r.audit_violations = a.violations.len();
            }
            (Rational::new(4.into(), 3.into()) - epsilon()) * int(n) - int(2)
        }
        Solver::General => {
            let s = solve_general(graph, None)?;
            r.tour = s.tour.len();
            r.b = s.decomposition.b();
            r.lower_bound = s.lower_bound;
            r.covers = s.pieces.iter().filter(|p| p.used.is_some()).count();
            let bad = s.pieces.iter().filter(|p| !p.bound_ok).count();
            r.audit_ok = Some(bad == 0);
            r.audit_violations = bad;
            s.length_bound
        }
    };
    r.bound = rational_string(&bound);
    r.bound_ok = within(r.tour, &bound);
    r.ratio = rational_string(&(int(r.tour) / int(r.lower_bound.max(1))));
    if n <= opt_max_n {
        r.opt = Some(held_karp_opt(graph)?);
    }
    Ok(r)
}

/// Runs every instance (in parallel) and returns the rows in manifest order.
/// Relative paths are resolved against `base`.
pub fn run_manifest(manifest: &Manifest, base: &Path) -> Result<Vec<RunReport>> {
    manifest
        .instances
        .par_iter()
        .map(|inst| {
            let (g, rot) = load(&inst.source, base)?;
            run_instance(&inst.id, &g, rot.as_ref(), inst.solver, manifest.opt_max_n)
        })
        .collect()
}

pub fn write_csv<W: std::io::Write>(rows: &[RunReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
