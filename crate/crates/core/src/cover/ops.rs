use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Component, EulerianCover, Origin};
use crate::cycles::{simple_cycles, Cycle};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Short cycles of the host graph, enumerated once and scanned in
/// lexicographic order by every operation.
#[derive(Clone, Debug)]
pub struct HostCycles {
    pub four: Vec<Cycle>,
    pub five: Vec<Cycle>,
    pub six: Vec<Cycle>,
}

impl HostCycles {
    pub fn new(graph: &Graph) -> Self {
        HostCycles {
            four: simple_cycles(graph, 4),
            five: simple_cycles(graph, 5),
            six: simple_cycles(graph, 6),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpStats {
    pub u1: usize,
    pub u2: usize,
    pub u3: usize,
    /// Shared-edge pattern of each accepted U1/U2 merge, e.g. "U1:1-1-1":
    /// how many edges of the host cycle each merged cycle contained.
    pub patterns: BTreeMap<String, usize>,
}

/// Indices of the components meeting `cycle`, ascending.
fn components_meeting(of: &[usize], cycle: &Cycle) -> Vec<usize> {
    let set: BTreeSet<usize> = cycle.vertices.iter().map(|&v| of[v]).collect();
    set.into_iter().collect()
}

fn replace(cover: &mut EulerianCover, merged: &[usize], new: Component) {
    let mut keep: Vec<Component> = cover
        .components
        .drain(..)
        .enumerate()
        .filter(|(i, _)| !merged.contains(i))
        .map(|(_, c)| c)
        .collect();
    keep.push(new);
    keep.sort_by_key(|c| c.vertices[0]);
    cover.components = keep;
}

/// Symmetric difference of the union of `parts` (all simple cycles) with the
/// host cycle; `Some` only when the result is one simple cycle on the union
/// of their vertices.
fn merge_cycles(graph: &Graph, cover: &EulerianCover, parts: &[usize], host: &Cycle) -> Option<Component> {
    if parts.iter().any(|&i| !cover.components[i].is_cycle()) {
        return None;
    }
    let mut edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut vertices: Vec<VertexId> = Vec::new();
    for &i in parts {
        edges.extend(cover.components[i].edges.keys().copied());
        vertices.extend(cover.components[i].vertices.iter().copied());
    }
    for &e in &host.edges {
        if !edges.remove(&e) {
            edges.insert(e);
        }
    }
    vertices.sort_unstable();
    if edges.len() != vertices.len() {
        return None;
    }
    let mut inside = vec![false; graph.n()];
    for &v in &vertices {
        inside[v] = true;
    }
    let mut degree = vec![0usize; graph.n()];
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); graph.n()];
    for &e in &edges {
        let [u, v] = graph.endpoints(e);
        if !inside[u] || !inside[v] {
            return None;
        }
        degree[u] += 1;
        degree[v] += 1;
        adj[u].push(v);
        adj[v].push(u);
    }
    if vertices.iter().any(|&v| degree[v] != 2) {
        return None;
    }
    if !connected_on(&adj, &vertices) {
        return None;
    }
    Some(Component { vertices, edges: edges.into_iter().map(|e| (e, 1)).collect(), origin: Origin::Initial })
}

fn connected_on(adj: &[Vec<VertexId>], vertices: &[VertexId]) -> bool {
    let mut seen = BTreeSet::from([vertices[0]]);
    let mut stack = vec![vertices[0]];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == vertices.len()
}

fn pattern(cover: &EulerianCover, parts: &[usize], host: &Cycle) -> String {
    let mut shared: Vec<usize> = parts
        .iter()
        .map(|&i| host.edges.iter().filter(|e| cover.components[i].edges.contains_key(e)).count())
        .collect();
    shared.sort_unstable_by(|a, b| b.cmp(a));
    shared.iter().map(usize::to_string).collect::<Vec<_>>().join("-")
}

fn merge_loop(
    graph: &Graph,
    mut cover: EulerianCover,
    hosts: &[Cycle],
    parts_needed: usize,
    origin: Origin,
    stats: &mut OpStats,
) -> Result<EulerianCover> {
    'scan: loop {
        let of = cover.component_of(graph.n());
        for host in hosts {
            let parts = components_meeting(&of, host);
            if parts.len() != parts_needed {
                continue;
            }
            if let Some(mut merged) = merge_cycles(graph, &cover, &parts, host) {
                merged.origin = origin;
                let key = format!("{origin:?}:{}", pattern(&cover, &parts, host));
                *stats.patterns.entry(key).or_default() += 1;
                match origin {
                    Origin::U1 => stats.u1 += 1,
                    _ => stats.u2 += 1,
                }
                replace(&mut cover, &parts, merged);
                cover.check_invariants(graph)?;
                continue 'scan;
            }
        }
        return Ok(cover);
    }
}

/// (U1): merge three cycles meeting a 6-cycle of the graph into the single
/// cycle given by symmetric difference, until no such 6-cycle remains.
pub fn apply_u1(graph: &Graph, hosts: &HostCycles, cover: EulerianCover, stats: &mut OpStats) -> Result<EulerianCover> {
    merge_loop(graph, cover, &hosts.six, 3, Origin::U1, stats)
}

/// (U2): as (U1) with two cycles meeting a 4-cycle of the graph.
pub fn apply_u2(graph: &Graph, hosts: &HostCycles, cover: EulerianCover, stats: &mut OpStats) -> Result<EulerianCover> {
    merge_loop(graph, cover, &hosts.four, 2, Origin::U2, stats)
}

/// Edge-sum of two multigraphs on `vertices`.
fn edge_sum(a: &BTreeMap<EdgeId, u8>, b: &BTreeMap<EdgeId, u8>) -> BTreeMap<EdgeId, u8> {
    let mut out = a.clone();
    for (&e, &x) in b {
        *out.entry(e).or_default() += x;
    }
    out
}

fn multigraph_connected(graph: &Graph, vertices: &[VertexId], edges: &BTreeMap<EdgeId, u8>) -> bool {
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); graph.n()];
    for (&e, &x) in edges {
        if x > 0 {
            let [u, v] = graph.endpoints(e);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    connected_on(&adj, vertices)
}

/// Merging step of two connected Eulerian multigraphs sharing `shared`
/// vertices: add them up, then drop two copies of the smallest edge at a
/// shared vertex that keeps the sum connected.
fn merge_eulerian(
    graph: &Graph,
    vertices: &[VertexId],
    a: &BTreeMap<EdgeId, u8>,
    b: &BTreeMap<EdgeId, u8>,
    shared: &[VertexId],
) -> Result<BTreeMap<EdgeId, u8>> {
    let mut sum = edge_sum(a, b);
    let candidates: Vec<EdgeId> = sum
        .iter()
        .filter(|&(e, &x)| {
            let [u, v] = graph.endpoints(*e);
            x >= 2 && a.contains_key(e) && b.contains_key(e) && (shared.contains(&u) || shared.contains(&v))
        })
        .map(|(&e, _)| e)
        .collect();
    for e in candidates {
        let x = sum[&e];
        if x == 2 {
            sum.remove(&e);
        } else {
            sum.insert(e, x - 2);
        }
        if multigraph_connected(graph, vertices, &sum) {
            return Ok(sum);
        }
        sum.insert(e, x);
    }
    Err(Error::Invariant(format!("no removable parallel pair while merging at {shared:?}")))
}

/// (U3): a 5-cycle of the graph meeting exactly two components, both on at
/// least five vertices, glues them into one component with at most one
/// extra edge.
pub fn apply_u3(graph: &Graph, hosts: &HostCycles, mut cover: EulerianCover, stats: &mut OpStats) -> Result<EulerianCover> {
    'scan: loop {
        let of = cover.component_of(graph.n());
        for host in &hosts.five {
            let parts = components_meeting(&of, host);
            if parts.len() != 2 || parts.iter().any(|&i| cover.components[i].h() < 5) {
                continue;
            }
            let on_cycle = |i: usize| -> Vec<VertexId> {
                let mut vs: Vec<_> = host.vertices.iter().copied().filter(|&v| of[v] == i).collect();
                vs.sort_unstable();
                vs
            };
            let (mut g1, mut g2) = (parts[0], parts[1]);
            if on_cycle(g1).len() > on_cycle(g2).len() {
                std::mem::swap(&mut g1, &mut g2);
            }
            let (s1, s2) = (on_cycle(g1), on_cycle(g2));
            if s1.len() != 2 || s2.len() != 3 {
                return Err(Error::Invariant(format!("5-cycle {:?} splits {}/{}", host.vertices, s1.len(), s2.len())));
            }
            let host_edges: BTreeMap<EdgeId, u8> = host.edges.iter().map(|&e| (e, 1)).collect();
            let (c1, c2) = (&cover.components[g1], &cover.components[g2]);

            let mut first_vertices: Vec<VertexId> = c1.vertices.iter().copied().chain(s2.iter().copied()).collect();
            first_vertices.sort_unstable();
            let first = merge_eulerian(graph, &first_vertices, &c1.edges, &host_edges, &s1)?;

            let mut vertices: Vec<VertexId> = c1.vertices.iter().chain(&c2.vertices).copied().collect();
            vertices.sort_unstable();
            let mut edges = merge_eulerian(graph, &vertices, &first, &c2.edges, &s2)?;
            for x in edges.values_mut() {
                if *x > 2 {
                    *x -= 2;
                }
            }
            let merged = Component { vertices, edges, origin: Origin::U3 };
            if merged.ell() > c1.ell() + c2.ell() + 1 {
                return Err(Error::Invariant("U3 added more than one edge".into()));
            }
            stats.u3 += 1;
            replace(&mut cover, &[g1, g2], merged);
            cover.check_invariants(graph)?;
            continue 'scan;
        }
        return Ok(cover);
    }
}
