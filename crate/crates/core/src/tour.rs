use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// A closed spanning walk stored as an edge multiset; every edge is used at
/// most twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    mult: Vec<u8>,
}

impl Tour {
    pub fn from_multiplicities(mult: Vec<u8>) -> Self {
        Tour { mult }
    }

    /// A tour traversing each listed edge once (e.g. a Hamiltonian cycle).
    pub fn from_edge_list(graph: &Graph, edges: &[EdgeId]) -> Self {
        let mut mult = vec![0; graph.m()];
        for &e in edges {
            mult[e] += 1;
        }
        Tour { mult }
    }

    pub fn len(&self) -> usize {
        self.mult.iter().map(|&x| x as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn multiplicity(&self, e: EdgeId) -> u8 {
        self.mult[e]
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.mult
    }

    /// (edge, multiplicity) for every used edge.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, u8)> + '_ {
        self.mult.iter().copied().enumerate().filter(|&(_, x)| x > 0)
    }

    pub fn degree(&self, graph: &Graph, v: VertexId) -> usize {
        graph.incident(v).iter().map(|&e| self.mult[e] as usize).sum()
    }

    /// Spanning, all degrees even, connected support, multiplicity at most two.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        if self.mult.len() != graph.m() {
            return Err(Error::InvalidTour(format!(
                "multiset has {} entries for a graph with {} edges",
                self.mult.len(),
                graph.m()
            )));
        }
        if let Some(e) = self.mult.iter().position(|&x| x > 2) {
            return Err(Error::InvalidTour(format!("edge {e} used {} times", self.mult[e])));
        }
        if graph.n() <= 1 {
            return Ok(());
        }
        let mut uf = UnionFind::new(graph.n());
        for (e, _) in self.edges() {
            let [u, v] = graph.endpoints(e);
            uf.union(u, v);
        }
        for v in graph.vertices() {
            let d = self.degree(graph, v);
            if d == 0 {
                return Err(Error::InvalidTour(format!("vertex {v} is not visited")));
            }
            if d % 2 == 1 {
                return Err(Error::InvalidTour(format!("vertex {v} has odd degree {d}")));
            }
            if !uf.equiv(v, 0) {
                return Err(Error::InvalidTour(format!("vertex {v} is disconnected from vertex 0")));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, graph: &Graph) -> bool {
        self.validate(graph).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn hamiltonian_cycle_is_a_tour() {
        let g = k4();
        // 0-1-2-3-0
        let t = Tour::from_edge_list(&g, &[0, 3, 5, 2]);
        assert_eq!(t.len(), 4);
        t.validate(&g).unwrap();
    }

    #[test]
    fn odd_degree_rejected() {
        let g = k4();
        let t = Tour::from_edge_list(&g, &[0, 3, 5]);
        assert!(matches!(t.validate(&g), Err(Error::InvalidTour(_))));
    }

    #[test]
    fn doubled_star_is_a_tour() {
        let g = k4();
        let t = Tour::from_multiplicities(vec![2, 2, 2, 0, 0, 0]);
        t.validate(&g).unwrap();
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn triple_edge_and_disconnected_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(!Tour::from_multiplicities(vec![3]).is_valid(&g));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!Tour::from_multiplicities(vec![2, 2]).is_valid(&two));
    }
}
