//! Independent ground truth: exact TSP, definition-level validators and
//! brute-force enumerations. Nothing here reuses the builders it checks.

use std::collections::VecDeque;

use crate::cover::EulerianCover;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::tour::Tour;

/// Largest vertex count accepted by [`held_karp_opt`].
pub const HELD_KARP_MAX: usize = 18;

/// All-pairs shortest-path distances with unit edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricClosure {
    n: usize,
    dist: Vec<u32>,
}

impl MetricClosure {
    pub fn new(graph: &Graph) -> Result<Self> {
        let n = graph.n();
        let mut dist = vec![u32::MAX; n * n];
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in graph.neighbors(v) {
                    if row[w] == u32::MAX {
                        row[w] = row[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        if dist.contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(MetricClosure { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }
}

/// Optimal closed walk visiting every vertex, via Held–Karp on the metric
/// closure (endpoint-pair DP anchored at vertex 0).
pub fn held_karp_opt(graph: &Graph) -> Result<u32> {
    let n = graph.n();
    if n > HELD_KARP_MAX {
        return Err(Error::TooLarge(n));
    }
    let metric = MetricClosure::new(graph)?;
    if n <= 1 {
        return Ok(0);
    }
    // cities 1..n are bits 0..n-1
    let k = n - 1;
    let full = 1usize << k;
    let mut dp = vec![u32::MAX; full * k];
    for j in 0..k {
        dp[(1 << j) * k + j] = metric.dist(0, j + 1);
    }
    for mask in 1..full {
        for last in 0..k {
            let cur = dp[mask * k + last];
            if cur == u32::MAX || mask & (1 << last) == 0 {
                continue;
            }
            let mut rest = !mask & (full - 1);
            while rest != 0 {
                let next = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let slot = &mut dp[(mask | (1 << next)) * k + next];
                let cand = cur + metric.dist(last + 1, next + 1);
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    Ok((0..k).map(|j| dp[(full - 1) * k + j] + metric.dist(j + 1, 0)).min().unwrap())
}

/// Exact TSP by trying every permutation of vertices 1..n. Only for tiny n.
pub fn tsp_by_permutations(graph: &Graph) -> Result<u32> {
    let metric = MetricClosure::new(graph)?;
    let n = graph.n();
    if n <= 1 {
        return Ok(0);
    }
    let mut perm: Vec<usize> = (1..n).collect();
    let mut best = u32::MAX;
    loop {
        let mut cost = metric.dist(0, perm[0]) + metric.dist(perm[perm.len() - 1], 0);
        for w in perm.windows(2) {
            cost += metric.dist(w[0], w[1]);
        }
        best = best.min(cost);
        if !next_permutation(&mut perm) {
            return Ok(best);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn reachable_from(n: usize, start: usize, adj: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Tour check straight from the definition: at most two copies per edge,
/// every vertex touched, all degrees even, support connected.
pub fn verify_tour(graph: &Graph, tour: &Tour) -> bool {
    let mult = tour.multiplicities();
    if mult.len() != graph.m() || mult.iter().any(|&x| x > 2) {
        return false;
    }
    let n = graph.n();
    if n <= 1 {
        return true;
    }
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for (e, [u, v]) in graph.edges() {
        if mult[e] > 0 {
            degree[u] += mult[e] as usize;
            degree[v] += mult[e] as usize;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    if degree.iter().any(|&d| d == 0 || d % 2 == 1) {
        return false;
    }
    reachable_from(n, 0, &adj).into_iter().all(|x| x)
}

/// Eulerian cover check from the definition: the component vertex sets
/// partition V, every component is connected and Eulerian on its own vertex
/// set, and no edge is used more than twice.
pub fn verify_cover(graph: &Graph, cover: &EulerianCover) -> bool {
    let n = graph.n();
    let mut owner = vec![usize::MAX; n];
    for (i, c) in cover.components.iter().enumerate() {
        for &v in &c.vertices {
            if v >= n || owner[v] != usize::MAX {
                return false;
            }
            owner[v] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return false;
    }
    for (i, c) in cover.components.iter().enumerate() {
        if c.vertices.is_empty() {
            return false;
        }
        let mut degree = vec![0usize; n];
        let mut adj = vec![Vec::new(); n];
        for (&e, &x) in &c.edges {
            if e >= graph.m() || x == 0 || x > 2 {
                return false;
            }
            let [u, v] = graph.endpoints(e);
            if owner[u] != i || owner[v] != i {
                return false;
            }
            degree[u] += x as usize;
            degree[v] += x as usize;
            adj[u].push(v);
            adj[v].push(u);
        }
        if c.vertices.len() == 1 {
            continue;
        }
        if c.vertices.iter().any(|&v| degree[v] == 0 || degree[v] % 2 == 1) {
            return false;
        }
        let seen = reachable_from(n, c.vertices[0], &adj);
        if c.vertices.iter().any(|&v| !seen[v]) {
            return false;
        }
    }
    true
}

/// Every edge triple whose removal splits the graph into exactly two
/// connected pieces with all three edges crossing. Pure brute force.
pub fn brute_force_three_cuts(graph: &Graph) -> Vec<Vec<EdgeId>> {
    let (n, m) = (graph.n(), graph.m());
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let cut = [a, b, c];
                let mut adj = vec![Vec::new(); n];
                for (e, [u, v]) in graph.edges() {
                    if !cut.contains(&e) {
                        adj[u].push(v);
                        adj[v].push(u);
                    }
                }
                let side = reachable_from(n, 0, &adj);
                let crossing = cut.iter().all(|&e| {
                    let [u, v] = graph.endpoints(e);
                    side[u] != side[v]
                });
                if !crossing {
                    continue;
                }
                let Some(other) = (0..n).find(|&v| !side[v]) else { continue };
                let rest = reachable_from(n, other, &adj);
                if (0..n).all(|v| side[v] || rest[v]) {
                    out.push(cut.to_vec());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn held_karp_examples() {
        assert_eq!(held_karp_opt(&k4()).unwrap(), 4);
        assert_eq!(held_karp_opt(&cube()).unwrap(), 8);
        assert_eq!(held_karp_opt(&petersen()).unwrap(), 11);
        assert_eq!(held_karp_opt(&two_gadget_bridge()).unwrap(), 12);
    }

    #[test]
    fn held_karp_matches_permutations() {
        for g in [k4(), k33(), prism(), cube(), k4_subdivided()] {
            assert_eq!(held_karp_opt(&g).unwrap(), tsp_by_permutations(&g).unwrap());
        }
    }

    #[test]
    fn held_karp_limits() {
        assert!(matches!(held_karp_opt(&Graph::new(19)), Err(Error::TooLarge(19))));
        assert!(matches!(held_karp_opt(&Graph::new(3)), Err(Error::Disconnected)));
    }

    #[test]
    fn metric_is_a_metric() {
        let m = MetricClosure::new(&petersen()).unwrap();
        for u in 0..10 {
            assert_eq!(m.dist(u, u), 0);
            for v in 0..10 {
                assert_eq!(m.dist(u, v), m.dist(v, u));
                assert!(m.dist(u, v) <= 2);
                for w in 0..10 {
                    assert!(m.dist(u, w) <= m.dist(u, v) + m.dist(v, w));
                }
            }
        }
    }

    #[test]
    fn verify_tour_examples() {
        let g = k4();
        assert!(verify_tour(&g, &Tour::from_edge_list(&g, &[0, 3, 5, 2])));
        assert!(!verify_tour(&g, &Tour::from_edge_list(&g, &[0, 3, 5])));
    }
}
