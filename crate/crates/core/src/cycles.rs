//! Simple cycles and cycle covers.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// A simple cycle; `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges of `graph` joining two vertices of the cycle that are not cycle edges.
    pub fn chords(&self, graph: &Graph) -> Vec<EdgeId> {
        let mut on = vec![false; graph.n()];
        for &v in &self.vertices {
            on[v] = true;
        }
        let mut chords: Vec<_> = graph
            .induced_edges(&on)
            .into_iter()
            .filter(|e| !self.edges.contains(e))
            .collect();
        chords.sort_unstable();
        chords
    }

    pub fn is_induced(&self, graph: &Graph) -> bool {
        self.chords(graph).is_empty()
    }
}

/// A partition of the vertices into vertex-disjoint cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    pub cycles: Vec<Cycle>,
}

impl CycleCover {
    /// Decomposes a 2-regular spanning edge set into its cycles. Cycles are
    /// ordered by smallest vertex and each starts there, heading to its
    /// smaller neighbour.
    pub fn from_edge_mask(graph: &Graph, in_cover: &[bool]) -> Result<Self> {
        let n = graph.n();
        for v in graph.vertices() {
            let d = graph.incident(v).iter().filter(|&&e| in_cover[e]).count();
            if d != 2 {
                return Err(Error::NotCycleCover(format!("vertex {v} has degree {d}")));
            }
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let inc: Vec<EdgeId> = graph.incident(start).iter().copied().filter(|&e| in_cover[e]).collect();
            let (a, b) = (graph.other(inc[0], start), graph.other(inc[1], start));
            let first = if (a, inc[0]) <= (b, inc[1]) { inc[0] } else { inc[1] };
            let mut vertices = vec![start];
            let mut edges = vec![first];
            seen[start] = true;
            let mut prev_edge = first;
            let mut cur = graph.other(first, start);
            while cur != start {
                seen[cur] = true;
                vertices.push(cur);
                let next = graph
                    .incident(cur)
                    .iter()
                    .copied()
                    .find(|&e| in_cover[e] && e != prev_edge)
                    .expect("degree two");
                edges.push(next);
                prev_edge = next;
                cur = graph.other(next, cur);
            }
            cycles.push(Cycle { vertices, edges });
        }
        Ok(CycleCover { cycles })
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn edge_mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for c in &self.cycles {
            for &e in &c.edges {
                mask[e] = true;
            }
        }
        mask
    }

    /// Index of the cycle through each vertex.
    pub fn cycle_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, c) in self.cycles.iter().enumerate() {
            for &v in &c.vertices {
                of[v] = i;
            }
        }
        of
    }
}

/// All simple cycles with exactly `len` edges (`len >= 3`), each listed once:
/// starting at its smallest vertex with `vertices[1] < vertices[len - 1]`.
/// Sorted lexicographically by vertex sequence, then edge sequence.
pub fn simple_cycles(graph: &Graph, len: usize) -> Vec<Cycle> {
    assert!(len >= 3, "cycles of length < 3 are not enumerated here");
    let mut out = Vec::new();
    let mut on_path = vec![false; graph.n()];
    for s in graph.vertices() {
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        on_path[s] = true;
        extend(graph, len, &mut vertices, &mut edges, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort();
    out
}

fn extend(
    graph: &Graph,
    len: usize,
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let s = vertices[0];
    let cur = *vertices.last().unwrap();
    if vertices.len() == len {
        if vertices[1] < vertices[len - 1] {
            for e in graph.edges_between(cur, s) {
                let mut es = edges.clone();
                es.push(e);
                out.push(Cycle { vertices: vertices.clone(), edges: es });
            }
        }
        return;
    }
    for &e in graph.incident(cur) {
        let w = graph.other(e, cur);
        if w <= s || on_path[w] {
            continue;
        }
        on_path[w] = true;
        vertices.push(w);
        edges.push(e);
        extend(graph, len, vertices, edges, on_path, out);
        edges.pop();
        vertices.pop();
        on_path[w] = false;
    }
}

/// Edges of some Hamiltonian cycle, by exhaustive search from vertex 0.
/// Exponential; meant for small graphs.
pub fn hamiltonian_cycle(graph: &Graph) -> Option<Vec<EdgeId>> {
    let n = graph.n();
    if n < 2 {
        return None;
    }
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut path = Vec::with_capacity(n);
    ham_extend(graph, 0, 1, &mut visited, &mut path).then_some(path)
}

fn ham_extend(graph: &Graph, cur: VertexId, count: usize, visited: &mut [bool], path: &mut Vec<EdgeId>) -> bool {
    if count == graph.n() {
        // closing edge must differ from the last one (matters for n == 2)
        if let Some(e) = graph.incident(cur).iter().copied().find(|&e| graph.other(e, cur) == 0 && path.last() != Some(&e)) {
            path.push(e);
            return true;
        }
        return false;
    }
    for &e in graph.incident(cur) {
        let w = graph.other(e, cur);
        if visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(e);
        if ham_extend(graph, w, count + 1, visited, path) {
            return true;
        }
        path.pop();
        visited[w] = false;
    }
    false
}
