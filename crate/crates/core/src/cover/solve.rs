use rayon::prelude::*;
use serde::Serialize;

use super::ops::{apply_u1, apply_u2, apply_u3, HostCycles, OpStats};
use super::{tour_from_cover, EulerianCover};
use crate::cycles::{hamiltonian_cycle, CycleCover};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::matching::{decompose_third, MatchingDistribution};
use crate::tour::Tour;
use crate::Rational;

/// The cycle covers E \ M_i, one per atom of the distribution.
pub fn initial_cycle_covers(graph: &Graph, dist: &MatchingDistribution) -> Result<Vec<CycleCover>> {
    dist.atoms
        .iter()
        .map(|atom| {
            let mut mask = vec![true; graph.m()];
            for &e in &atom.edges {
                mask[e] = false;
            }
            let cover = CycleCover::from_edge_mask(graph, &mask)?;
            for c in &cover.cycles {
                if c.len() == 3 {
                    return Err(Error::Invariant(format!("triangle {:?} in a complement cover", c.vertices)));
                }
                if c.len() == 5 && !c.is_induced(graph) {
                    return Err(Error::Invariant(format!("chorded 5-cycle {:?} in a complement cover", c.vertices)));
                }
            }
            Ok(cover)
        })
        .collect()
}

/// One cover followed through the operations.
#[derive(Clone, Debug)]
pub struct CoverRun {
    pub lambda: Rational,
    pub matching: Vec<EdgeId>,
    pub initial: EulerianCover,
    pub after_u1: EulerianCover,
    pub after_u2: EulerianCover,
    pub last: EulerianCover,
    pub stats: OpStats,
}

impl CoverRun {
    pub fn tour_length(&self) -> usize {
        self.last.tour_length()
    }
}

/// Applies (U1), (U2), (U3) to exhaustion, in that order.
pub fn run_cover(graph: &Graph, hosts: &HostCycles, cover: &CycleCover) -> Result<(EulerianCover, EulerianCover, EulerianCover, EulerianCover, OpStats)> {
    let initial = EulerianCover::from_cycle_cover(cover);
    initial.check_invariants(graph)?;
    let mut stats = OpStats::default();
    let after_u1 = apply_u1(graph, hosts, initial.clone(), &mut stats)?;
    let after_u2 = apply_u2(graph, hosts, after_u1.clone(), &mut stats)?;
    let last = apply_u3(graph, hosts, after_u2.clone(), &mut stats)?;
    Ok((initial, after_u1, after_u2, last, stats))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TourMethod {
    /// Exhaustive Hamiltonian cycle search (fewer than 10 vertices).
    Hamiltonian,
    Covers,
}

#[derive(Clone, Debug)]
pub struct BestTour {
    pub tour: Tour,
    pub method: TourMethod,
    pub distribution: Option<MatchingDistribution>,
    pub runs: Vec<CoverRun>,
    /// Index into `runs` of the cover the tour was built from.
    pub chosen: Option<usize>,
}

/// Best tour of a cubic 2-connected graph over all operated covers.
pub fn best_tour(graph: &Graph) -> Result<BestTour> {
    if !graph.is_cubic() {
        return Err(Error::InvalidGraph("expected a cubic graph".into()));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(ham) = (graph.n() < 10).then(|| hamiltonian_cycle(graph)).flatten() {
        return Ok(BestTour {
            tour: Tour::from_edge_list(graph, &ham),
            method: TourMethod::Hamiltonian,
            distribution: None,
            runs: Vec::new(),
            chosen: None,
        });
    }
    let dist = decompose_third(graph)?;
    let covers = initial_cycle_covers(graph, &dist)?;
    let hosts = HostCycles::new(graph);
    let runs: Vec<CoverRun> = covers
        .par_iter()
        .zip(&dist.atoms)
        .map(|(cover, atom)| {
            let (initial, after_u1, after_u2, last, stats) = run_cover(graph, &hosts, cover)?;
            Ok(CoverRun { lambda: atom.lambda.clone(), matching: atom.edges.clone(), initial, after_u1, after_u2, last, stats })
        })
        .collect::<Result<_>>()?;
    let chosen = (0..runs.len()).min_by_key(|&i| (runs[i].tour_length(), i)).expect("nonempty distribution");
    let tour = tour_from_cover(graph, &runs[chosen].last)?;
    tour.validate(graph)?;
    Ok(BestTour { tour, method: TourMethod::Covers, distribution: Some(dist), runs, chosen: Some(chosen) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use num::BigInt;

    #[test]
    fn petersen_covers_are_two_pentagons() {
        let g = petersen();
        let dist = decompose_third(&g).unwrap();
        for cover in initial_cycle_covers(&g, &dist).unwrap() {
            assert_eq!(cover.len(), 2);
            assert!(cover.cycles.iter().all(|c| c.len() == 5));
        }
    }

    #[test]
    fn cube_covers() {
        let g = cube();
        let dist = decompose_third(&g).unwrap();
        for cover in initial_cycle_covers(&g, &dist).unwrap() {
            let lens: Vec<usize> = cover.cycles.iter().map(|c| c.len()).collect();
            assert!(lens == vec![4, 4] || lens == vec![8], "{lens:?}");
        }
    }

    #[test]
    fn petersen_best_tour_is_optimal() {
        let g = petersen();
        let best = best_tour(&g).unwrap();
        assert_eq!(best.tour.len(), 11);
        assert_eq!(best.method, TourMethod::Covers);
        let run = &best.runs[best.chosen.unwrap()];
        let total: Rational = run.last.contributions(g.n()).into_iter().sum();
        assert_eq!(total, Rational::from_integer(BigInt::from(best.tour.len() + 2)));
    }

    #[test]
    fn small_graphs_are_hamiltonian() {
        for g in [k4(), k33(), prism(), cube()] {
            let best = best_tour(&g).unwrap();
            assert_eq!(best.method, TourMethod::Hamiltonian);
            assert_eq!(best.tour.len(), g.n());
            best.tour.validate(&g).unwrap();
        }
    }
}
