use std::collections::BTreeSet;

use num::{BigInt, Zero};
use serde::Serialize;

use super::solve::CoverRun;
use super::{EulerianCover, Origin};
use crate::cycles::simple_cycles;
use crate::graph::{Graph, VertexId};
use crate::Rational;

/// Per-vertex class, first match in priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexClass {
    /// On an isolated chorded 4-cycle of the graph.
    P1,
    /// On a chorded 4-cycle that is not isolated.
    P2,
    /// Some cover puts it on an induced 4-cycle.
    P3,
    /// Some cover puts it on an induced 5-cycle.
    P4,
    /// Some cover puts it on an induced 6-cycle.
    P5,
    P6,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContributionAudit {
    /// z(v) = Σ λ_i z_i(v).
    #[serde(serialize_with = "crate::io::ratio::serialize_vec")]
    pub z: Vec<Rational>,
    pub classes: Vec<VertexClass>,
    #[serde(with = "crate::io::ratio")]
    pub total: Rational,
    #[serde(with = "crate::io::ratio")]
    pub total_bound: Rational,
    pub checks: usize,
    pub violations: Vec<String>,
    /// Vertices matching several of the P3..P5 conditions.
    pub ambiguities: Vec<String>,
}

impl ContributionAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

/// 1/61236 = 1/(729·7·12).
pub fn epsilon() -> Rational {
    q(1, 61236)
}

/// Vertex sets of the chorded 4-cycles (4 vertices spanning 5 edges).
pub fn chorded_four_cycles(graph: &Graph) -> Vec<Vec<VertexId>> {
    let mut sets = BTreeSet::new();
    for c in simple_cycles(graph, 4) {
        let mut inside = vec![false; graph.n()];
        for &v in &c.vertices {
            inside[v] = true;
        }
        if graph.induced_edges(&inside).len() == 5 {
            let mut vs = c.vertices.clone();
            vs.sort_unstable();
            sets.insert(vs);
        }
    }
    sets.into_iter().collect()
}

/// Which of the chorded 4-cycles are isolated: neither boundary edge
/// touches another chorded 4-cycle.
fn isolated_flags(graph: &Graph, diamonds: &[Vec<VertexId>]) -> Vec<bool> {
    let mut owner = vec![usize::MAX; graph.n()];
    for (i, d) in diamonds.iter().enumerate() {
        for &v in d {
            owner[v] = i;
        }
    }
    diamonds
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut inside = vec![false; graph.n()];
            for &v in d {
                inside[v] = true;
            }
            graph.boundary_edges(&inside).into_iter().all(|e| {
                graph.endpoints(e).iter().all(|&w| owner[w] == i || owner[w] == usize::MAX)
            })
        })
        .collect()
}

fn component_vertex_sets(cover: &EulerianCover, graph: &Graph, len: usize) -> Vec<Vec<VertexId>> {
    cover
        .components
        .iter()
        .filter(|c| c.is_induced_cycle(graph, len))
        .map(|c| c.vertices.clone())
        .collect()
}

/// Checks the per-vertex conclusions of the P1..P6 classes, the per-cover
/// bounds (h+2)/h and 13/10, and the global sum bound.
pub fn audit_contributions(graph: &Graph, runs: &[CoverRun]) -> ContributionAudit {
    let n = graph.n();
    let mut violations = Vec::new();
    let mut ambiguities = Vec::new();
    let mut checks = 0usize;

    let per_run: Vec<Vec<Rational>> = runs.iter().map(|r| r.last.contributions(n)).collect();
    let mut z = vec![Rational::zero(); n];
    for (run, zi) in runs.iter().zip(&per_run) {
        for v in 0..n {
            z[v] += &run.lambda * &zi[v];
        }
    }

    for (i, (run, zi)) in runs.iter().zip(&per_run).enumerate() {
        for (name, snap) in [("initial", &run.initial), ("U1", &run.after_u1), ("U2", &run.after_u2)] {
            for c in snap.components.iter().filter(|c| c.is_cycle()) {
                let h = c.h().min(10) as i64;
                let bound = q(h + 2, h);
                for &v in &c.vertices {
                    checks += 1;
                    if zi[v] > bound {
                        violations.push(format!(
                            "cover {i}: vertex {v} on a {}-cycle of the {name} cover has z_i = {} > {bound}",
                            c.h(),
                            zi[v]
                        ));
                    }
                }
            }
        }
        for c in run.last.components.iter().filter(|c| c.origin == Origin::U3) {
            checks += 1;
            if c.contribution() > q(13, 10) {
                violations.push(format!("cover {i}: U3 component at {} has z = {}", c.vertices[0], c.contribution()));
            }
        }
    }

    let diamonds = chorded_four_cycles(graph);
    let isolated = isolated_flags(graph, &diamonds);
    let mut diamond_of = vec![None; n];
    for (i, d) in diamonds.iter().enumerate() {
        for &v in d {
            diamond_of[v] = Some(i);
        }
    }
    let mut induced = [vec![Vec::new(); n], vec![Vec::new(); n], vec![Vec::new(); n]];
    for run in runs {
        for (slot, len) in induced.iter_mut().zip(4..=6) {
            for set in component_vertex_sets(&run.last, graph, len) {
                for &v in &set {
                    if !slot[v].contains(&set) {
                        slot[v].push(set.clone());
                    }
                }
            }
        }
    }

    let four_thirds = q(4, 3);
    let mut classes = Vec::with_capacity(n);
    let mut checked_hexagons: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for v in 0..n {
        let class = match diamond_of[v] {
            Some(d) if isolated[d] => VertexClass::P1,
            Some(_) => VertexClass::P2,
            None => {
                let hits: Vec<usize> = (0..3).filter(|&k| !induced[k][v].is_empty()).collect();
                if hits.len() > 1 {
                    ambiguities.push(format!("vertex {v} lies on induced cycles of lengths {:?} across covers", hits.iter().map(|k| k + 4).collect::<Vec<_>>()));
                }
                match hits.first() {
                    Some(0) => VertexClass::P3,
                    Some(1) => VertexClass::P4,
                    Some(_) => VertexClass::P5,
                    None => VertexClass::P6,
                }
            }
        };
        let bound = match class {
            VertexClass::P1 | VertexClass::P5 => four_thirds.clone(),
            VertexClass::P2 | VertexClass::P6 => q(13, 10),
            VertexClass::P3 | VertexClass::P4 => q(4, 3) - q(1, 60),
        };
        checks += 1;
        if z[v] > bound {
            violations.push(format!("vertex {v} ({class:?}) has z = {} > {bound}", z[v]));
        }
        if class == VertexClass::P5 {
            let hex_bound = Rational::from_integer(6.into()) * (q(4, 3) - q(1, 729));
            for hex in &induced[2][v] {
                if !checked_hexagons.insert(hex.clone()) {
                    continue;
                }
                checks += 1;
                let sum: Rational = hex.iter().map(|&w| z[w].clone()).sum();
                if sum > hex_bound {
                    violations.push(format!("induced 6-cycle {hex:?} has Σz = {sum} > {hex_bound}"));
                }
            }
        }
        classes.push(class);
    }

    let total: Rational = z.iter().cloned().sum();
    let total_bound = (q(4, 3) - epsilon()) * Rational::from_integer(BigInt::from(n));
    checks += 1;
    if !runs.is_empty() && total > total_bound {
        violations.push(format!("Σz = {total} exceeds {total_bound}"));
    }
    ContributionAudit { z, classes, total, total_bound, checks, violations, ambiguities }
}
