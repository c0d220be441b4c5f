//! Undirected multigraphs with dense vertex and edge ids.
//!
//! All iteration is by ascending id, so everything built on top of this
//! module is deterministic.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<[VertexId; 2]>,
    adj: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for {n} vertices")));
        }
        let e = self.edges.len();
        if u == v {
            return Err(Error::SelfLoop { edge: e, vertex: u });
        }
        self.edges.push([u, v]);
        self.adj[u].push(e);
        self.adj[v].push(e);
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(move |&e| self.other(e, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.edges.iter().copied().enumerate()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj[u].iter().copied().filter(move |&e| self.other(e, u) == v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges_between(u, v).next().is_some()
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.vertices().any(|v| {
            let mut nb: Vec<_> = self.neighbors(v).collect();
            nb.sort_unstable();
            nb.windows(2).any(|w| w[0] == w[1])
        })
    }

    /// Edges with both endpoints in `inside` (a membership mask).
    pub fn induced_edges(&self, inside: &[bool]) -> Vec<EdgeId> {
        self.edges().filter(|(_, [u, v])| inside[*u] && inside[*v]).map(|(e, _)| e).collect()
    }

    /// Edges with exactly one endpoint in `inside`.
    pub fn boundary_edges(&self, inside: &[bool]) -> Vec<EdgeId> {
        self.edges().filter(|(_, [u, v])| inside[*u] != inside[*v]).map(|(e, _)| e).collect()
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    /// Component label per vertex when the edges flagged in `removed` are deleted.
    /// Labels are dense and ordered by smallest member vertex.
    pub fn component_labels(&self, removed: Option<&[bool]>) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.n());
        for (e, [u, v]) in self.edges() {
            if removed.is_none_or(|r| !r[e]) {
                uf.union(u, v);
            }
        }
        dense_labels(self.n(), |v| uf.find(v))
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_labels(None).0 == 1
    }

    /// Edge-list writer order: edges sorted by (min endpoint, max endpoint).
    pub fn sorted_edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs: Vec<_> = self.edges.iter().map(|&[u, v]| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs
    }
}

pub(crate) fn dense_labels(n: usize, root: impl Fn(usize) -> usize) -> (usize, Vec<usize>) {
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    let labels = (0..n)
        .map(|v| {
            let r = root(v);
            if map[r] == usize::MAX {
                map[r] = next;
                next += 1;
            }
            map[r]
        })
        .collect();
    (next, labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    Cubic,
    Subcubic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    /// (vertex, degree) for every vertex outside the allowed degree set.
    pub degree_violations: Vec<(VertexId, usize)>,
}

/// Checks the degree condition for `mode`. Self-loops cannot be represented
/// by [`Graph`], so only degrees are inspected.
pub fn validate(graph: &Graph, mode: DegreeMode) -> ValidationReport {
    let degree_violations: Vec<_> = graph
        .vertices()
        .map(|v| (v, graph.degree(v)))
        .filter(|&(_, d)| match mode {
            DegreeMode::Cubic => d != 3,
            DegreeMode::Subcubic => !(2..=3).contains(&d),
        })
        .collect();
    ValidationReport { ok: degree_violations.is_empty(), degree_violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeBlocks {
    pub bridges: Vec<EdgeId>,
    /// Connected components of the graph with all bridges removed,
    /// each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<VertexId>>,
    pub articulation: Vec<VertexId>,
}

/// Bridges, 2-edge-connected components and cut vertices of a connected graph.
pub fn bridges_and_blocks(graph: &Graph) -> Result<BridgeBlocks> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let low = lowpoints(graph, None);
    let mut is_bridge = vec![false; graph.m()];
    for &e in &low.bridges {
        is_bridge[e] = true;
    }
    let (count, labels) = graph.component_labels(Some(&is_bridge));
    let mut components = vec![Vec::new(); count];
    for v in graph.vertices() {
        components[labels[v]].push(v);
    }
    Ok(BridgeBlocks { bridges: low.bridges, components, articulation: low.articulation })
}

/// Bridges of the graph with the `removed` edges deleted.
pub fn bridges(graph: &Graph, removed: Option<&[bool]>) -> Vec<EdgeId> {
    lowpoints(graph, removed).bridges
}

struct LowPoints {
    bridges: Vec<EdgeId>,
    articulation: Vec<VertexId>,
}

/// Iterative Tarjan lowpoint DFS. Parent edges are skipped by id, so parallel
/// edges are handled correctly.
fn lowpoints(graph: &Graph, removed: Option<&[bool]>) -> LowPoints {
    let n = graph.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut bridges = Vec::new();
    let mut is_art = vec![false; n];
    let mut timer = 0;
    let live = |e: EdgeId| removed.is_none_or(|r| !r[e]);

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent edge, next incident index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, pe, idx) = *top;
            if idx < graph.degree(v) {
                top.2 += 1;
                let e = graph.incident(v)[idx];
                if Some(e) == pe || !live(e) {
                    continue;
                }
                let w = graph.other(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (pe, stack.last()) {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridges.push(e);
                    }
                    if p != root && low[v] >= disc[p] {
                        is_art[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_art[root] = true;
        }
    }
    bridges.sort_unstable();
    let articulation = (0..n).filter(|&v| is_art[v]).collect();
    LowPoints { bridges, articulation }
}

/// An edge cut δ(U) together with the two sides it separates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeCut {
    pub edges: Vec<EdgeId>,
    /// Side containing vertex 0 first.
    pub sides: (Vec<VertexId>, Vec<VertexId>),
}

impl EdgeCut {
    /// Builds the cut for `edges` if deleting them leaves exactly two
    /// components and every edge joins the two.
    pub fn from_edges(graph: &Graph, edges: &[EdgeId]) -> Option<EdgeCut> {
        let mut removed = vec![false; graph.m()];
        for &e in edges {
            removed[e] = true;
        }
        let (count, labels) = graph.component_labels(Some(&removed));
        if count != 2 {
            return None;
        }
        if edges.iter().any(|&e| {
            let [u, v] = graph.endpoints(e);
            labels[u] == labels[v]
        }) {
            return None;
        }
        let (a, b): (Vec<_>, Vec<_>) = graph.vertices().partition(|&v| labels[v] == 0);
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        Some(EdgeCut { edges, sides: (a, b) })
    }

    pub fn is_trivial(&self) -> bool {
        self.sides.0.len() == 1 || self.sides.1.len() == 1
    }
}

/// All 3-edge cuts δ(U), vertex stars included, sorted by edge triple.
///
/// For every pair of edges the bridges of the remaining graph complete the
/// candidate triples; each candidate is then checked to be an exact δ(U).
pub fn enumerate_three_cuts(graph: &Graph) -> Vec<EdgeCut> {
    let m = graph.m();
    let mut removed = vec![false; m];
    let mut cuts = Vec::new();
    for e1 in 0..m {
        removed[e1] = true;
        for e2 in e1 + 1..m {
            removed[e2] = true;
            for e3 in bridges(graph, Some(&removed)) {
                if e3 > e2 {
                    if let Some(cut) = EdgeCut::from_edges(graph, &[e1, e2, e3]) {
                        cuts.push(cut);
                    }
                }
            }
            removed[e2] = false;
        }
        removed[e1] = false;
    }
    cuts.sort();
    cuts
}

/// Result of contracting every part of a vertex partition.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: Graph,
    /// Original edge id for each quotient edge.
    pub origin: Vec<EdgeId>,
    /// Quotient vertex for each original vertex.
    pub part_of: Vec<VertexId>,
}

/// Contracts each part to a single vertex. Intra-part edges are dropped and
/// parallel quotient edges are kept.
pub fn contract_parts(graph: &Graph, parts: &[Vec<VertexId>]) -> Result<Quotient> {
    let mut part_of = vec![usize::MAX; graph.n()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= graph.n() || part_of[v] != usize::MAX {
                return Err(Error::InvalidGraph(format!("vertex {v} is not in exactly one part")));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidGraph(format!("vertex {v} is not covered by the partition")));
    }
    let mut q = Graph::new(parts.len());
    let mut origin = Vec::new();
    for (e, [u, v]) in graph.edges() {
        let (pu, pv) = (part_of[u], part_of[v]);
        if pu != pv {
            q.add_edge(pu, pv)?;
            origin.push(e);
        }
    }
    Ok(Quotient { graph: q, origin, part_of })
}

/// Kruskal by ascending edge id.
pub fn spanning_tree(graph: &Graph) -> Result<Vec<EdgeId>> {
    let mut uf = UnionFind::new(graph.n());
    let tree: Vec<_> = graph.edges().filter(|&(_, [u, v])| uf.union(u, v)).map(|(e, _)| e).collect();
    if tree.len() + 1 < graph.n() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}
