//! Eulerian subgraph covers, the (U1)/(U2)/(U3) merge operations and the
//! contribution accounting that drives tour selection.

mod audit;
mod ops;
mod solve;

use std::collections::BTreeMap;

use num::BigInt;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::cycles::{Cycle, CycleCover};
use crate::error::{Error, Result};
use crate::graph::{contract_parts, spanning_tree, EdgeId, Graph, VertexId};
use crate::tour::Tour;
use crate::Rational;

pub use audit::{audit_contributions, chorded_four_cycles, epsilon, ContributionAudit, VertexClass};
pub use ops::{apply_u1, apply_u2, apply_u3, HostCycles, OpStats};
pub use solve::{best_tour, initial_cycle_covers, run_cover, BestTour, CoverRun, TourMethod};

/// How a component came to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    /// A cycle of the initial cover E \ M.
    Initial,
    U1,
    U2,
    U3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Sorted.
    pub vertices: Vec<VertexId>,
    /// Edge multiplicities (1 or 2).
    pub edges: BTreeMap<EdgeId, u8>,
    pub origin: Origin,
}

impl Component {
    pub fn from_cycle(cycle: &Cycle, origin: Origin) -> Self {
        let mut vertices = cycle.vertices.clone();
        vertices.sort_unstable();
        Component { vertices, edges: cycle.edges.iter().map(|&e| (e, 1)).collect(), origin }
    }

    /// Number of vertices, `h`.
    pub fn h(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges counted with multiplicity, `ℓ`.
    pub fn ell(&self) -> usize {
        self.edges.values().map(|&x| x as usize).sum()
    }

    pub fn is_cycle(&self) -> bool {
        self.edges.values().all(|&x| x == 1) && self.ell() == self.h()
    }

    /// (ℓ + 2) / h
    pub fn contribution(&self) -> Rational {
        Rational::new(BigInt::from(self.ell() + 2), BigInt::from(self.h()))
    }

    /// A cycle component whose vertex set spans no other edge of `graph`.
    pub fn is_induced_cycle(&self, graph: &Graph, len: usize) -> bool {
        if !self.is_cycle() || self.h() != len {
            return false;
        }
        let mut inside = vec![false; graph.n()];
        for &v in &self.vertices {
            inside[v] = true;
        }
        graph.induced_edges(&inside).len() == len
    }
}

/// A partition of V into connected Eulerian multi-subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianCover {
    pub components: Vec<Component>,
}

impl EulerianCover {
    pub fn from_cycle_cover(cover: &CycleCover) -> Self {
        EulerianCover {
            components: cover.cycles.iter().map(|c| Component::from_cycle(c, Origin::Initial)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, c) in self.components.iter().enumerate() {
            for &v in &c.vertices {
                of[v] = i;
            }
        }
        of
    }

    /// z(v) for every vertex.
    pub fn contributions(&self, n: usize) -> Vec<Rational> {
        let mut z = vec![Rational::from_integer(BigInt::from(0)); n];
        for c in &self.components {
            let zc = c.contribution();
            for &v in &c.vertices {
                z[v] = zc.clone();
            }
        }
        z
    }

    /// Length of the tour built by [`tour_from_cover`]: Σℓ + 2(c − 1).
    pub fn tour_length(&self) -> usize {
        self.components.iter().map(Component::ell).sum::<usize>() + 2 * self.len().saturating_sub(1)
    }

    /// Partition of V into connected Eulerian multi-subgraphs with edge
    /// multiplicities 1 or 2.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let n = graph.n();
        let bad = |msg: String| Err(Error::Invariant(msg));
        let mut owner = vec![usize::MAX; n];
        for (i, c) in self.components.iter().enumerate() {
            if c.vertices.is_empty() {
                return bad(format!("component {i} is empty"));
            }
            for &v in &c.vertices {
                if v >= n {
                    return bad(format!("vertex {v} out of range"));
                }
                if owner[v] != usize::MAX {
                    return bad(format!("vertex {v} lies in two components"));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return bad(format!("vertex {v} is not covered"));
        }
        let mut degree = vec![0usize; n];
        let mut uf = UnionFind::new(n);
        for (i, c) in self.components.iter().enumerate() {
            for (&e, &x) in &c.edges {
                if e >= graph.m() || !(1..=2).contains(&x) {
                    return bad(format!("edge {e} with multiplicity {x} in component {i}"));
                }
                let [u, v] = graph.endpoints(e);
                if owner[u] != i || owner[v] != i {
                    return bad(format!("edge {e} leaves component {i}"));
                }
                degree[u] += x as usize;
                degree[v] += x as usize;
                uf.union(u, v);
            }
        }
        for c in self.components.iter().filter(|c| c.h() > 1) {
            if let Some(&v) = c.vertices.iter().find(|&&v| degree[v] == 0 || degree[v] % 2 == 1) {
                return bad(format!("vertex {v} has degree {}", degree[v]));
            }
            let root = uf.find(c.vertices[0]);
            if c.vertices.iter().any(|&v| uf.find(v) != root) {
                return bad(format!("component containing {} is disconnected", c.vertices[0]));
            }
        }
        Ok(())
    }

    /// Structural invariants that must hold after every operation:
    /// partition, even degrees, multiplicity at most two, connectivity,
    /// at least two of three neighbours in the own component, and components
    /// on at most nine vertices are initial cycles.
    pub fn check_invariants(&self, graph: &Graph) -> Result<()> {
        self.validate(graph)?;
        let of = self.component_of(graph.n());
        for v in graph.vertices() {
            let same = graph.neighbors(v).filter(|&w| of[w] == of[v]).count();
            if graph.n() > 2 && same < 2 {
                return Err(Error::Invariant(format!("vertex {v} has {same} neighbours in its component")));
            }
        }
        for c in &self.components {
            if c.h() <= 9 && c.origin != Origin::Initial {
                return Err(Error::Invariant(format!(
                    "component of {} vertices created by {:?}",
                    c.h(),
                    c.origin
                )));
            }
        }
        Ok(())
    }
}

/// Contract every component, double a spanning tree of the quotient and
/// expand again.
pub fn tour_from_cover(graph: &Graph, cover: &EulerianCover) -> Result<Tour> {
    let parts: Vec<Vec<VertexId>> = cover.components.iter().map(|c| c.vertices.clone()).collect();
    let quotient = contract_parts(graph, &parts)?;
    let tree = spanning_tree(&quotient.graph)?;
    let mut mult = vec![0u8; graph.m()];
    for c in &cover.components {
        for (&e, &x) in &c.edges {
            mult[e] += x;
        }
    }
    for qe in tree {
        mult[quotient.origin[qe]] += 2;
    }
    let tour = Tour::from_multiplicities(mult);
    debug_assert_eq!(tour.len(), cover.tour_length());
    Ok(tour)
}
