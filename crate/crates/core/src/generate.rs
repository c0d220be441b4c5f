//! Instance generators. Planar families come with the rotation system of
//! their convex embedding.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::barnette::RotationSystem;
use crate::error::{Error, Result};
use crate::graph::{bridges, EdgeId, Graph};

type Point = [f64; 3];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point, b: Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Rotation of a convex polyhedron centred at the origin: neighbours sorted
/// counterclockwise as seen from outside.
fn rotation_from_positions(graph: &Graph, pos: &[Point]) -> Result<RotationSystem> {
    let order = graph
        .vertices()
        .map(|v| {
            let normal = pos[v];
            let first = graph.incident(v)[0];
            let reference = sub(pos[graph.other(first, v)], pos[v]);
            let x = sub(reference, scale(normal, dot(reference, normal) / dot(normal, normal)));
            let y = cross(normal, x);
            let mut inc: Vec<(f64, EdgeId)> = graph
                .incident(v)
                .iter()
                .map(|&e| {
                    let d = sub(pos[graph.other(e, v)], pos[v]);
                    (dot(d, y).atan2(dot(d, x)), e)
                })
                .collect();
            inc.sort_by(|a, b| a.0.total_cmp(&b.0));
            inc.into_iter().map(|(_, e)| e).collect()
        })
        .collect();
    RotationSystem::new(graph, order)
}

fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Prism over an even cycle C_{2k}: a Barnette graph on 4k vertices.
/// Vertices `0..2k` form the top cycle, `2k..4k` the bottom one.
pub fn even_prism(k: usize) -> Result<(Graph, RotationSystem)> {
    if k < 2 {
        return Err(Error::Generator(format!("even prism needs k >= 2, got {k}")));
    }
    let c = 2 * k;
    let mut g = Graph::new(2 * c);
    for i in 0..c {
        g.add_edge(i, (i + 1) % c)?;
    }
    for i in 0..c {
        g.add_edge(c + i, c + (i + 1) % c)?;
    }
    for i in 0..c {
        g.add_edge(i, c + i)?;
    }
    let pos: Vec<Point> = (0..2 * c)
        .map(|v| {
            let t = std::f64::consts::TAU * (v % c) as f64 / c as f64;
            [t.cos(), t.sin(), if v < c { 1.0 } else { -1.0 }]
        })
        .collect();
    let rot = rotation_from_positions(&g, &pos)?;
    Ok((g, rot))
}

/// The cube as the prism over C_4.
pub fn cube_with_rotation() -> (Graph, RotationSystem) {
    even_prism(2).expect("k = 2 is valid")
}

/// Truncated octahedron: the 24 permutations of (0, ±1, ±2), adjacent at
/// distance √2.
pub fn truncated_octahedron() -> (Graph, RotationSystem) {
    let mut pos: Vec<Point> = Vec::new();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        for s1 in [-1.0, 1.0] {
            for s2 in [-1.0, 1.0] {
                let vals = [0.0, s1, 2.0 * s2];
                pos.push([vals[p[0]], vals[p[1]], vals[p[2]]]);
            }
        }
    }
    let mut g = Graph::new(pos.len());
    for u in 0..pos.len() {
        for v in u + 1..pos.len() {
            let d = sub(pos[u], pos[v]);
            if (dot(d, d) - 2.0).abs() < 1e-9 {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    let rot = rotation_from_positions(&g, &pos).expect("convex embedding");
    (g, rot)
}

const MAX_ATTEMPTS: usize = 100_000;

/// Uniform-ish random simple bridgeless cubic graph on `n` vertices by the
/// pairing model with rejection. Deterministic per seed.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cubic_with(n, &mut rng)
}

fn random_cubic_with(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Generator(format!("cubic graphs need an even n >= 4, got {n}")));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        points.shuffle(rng);
        let mut g = Graph::new(n);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v)?;
        }
        if g.is_connected() && bridges(&g, None).is_empty() {
            return Ok(g);
        }
    }
    Err(Error::Generator(format!("no bridgeless cubic graph on {n} vertices after {MAX_ATTEMPTS} attempts")))
}

/// A connected cubic graph with exactly `b` bridges. The pieces left after
/// deleting the bridges are random cubic graphs with some edges subdivided
/// (one subdivision vertex per attached bridge) or, occasionally, single
/// vertices carrying three bridges.
pub fn random_cubic_bridged(n: usize, b: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n % 2 == 1 {
        return Err(Error::Generator(format!("cubic graphs have an even number of vertices, got {n}")));
    }
    let nodes = b + 1;
    let parent: Vec<usize> = (1..nodes).map(|i| rng.gen_range(0..i)).collect();
    let mut tree_degree = vec![0usize; nodes];
    for (i, &p) in parent.iter().enumerate() {
        tree_degree[i + 1] += 1;
        tree_degree[p] += 1;
    }
    let singleton: Vec<bool> = tree_degree.iter().map(|&d| d == 3 && rng.gen_bool(0.5)).collect();
    let blocks: Vec<usize> = (0..nodes).filter(|&i| !singleton[i]).collect();
    // each block holds at least 4 cubic vertices and enough edges to subdivide
    let mut size: Vec<usize> = vec![0; nodes];
    for &i in &blocks {
        size[i] = 4;
        while 3 * size[i] / 2 < tree_degree[i] {
            size[i] += 2;
        }
    }
    let base: usize = (0..nodes).map(|i| if singleton[i] { 1 } else { size[i] + tree_degree[i] }).sum();
    if n < base || (n - base) % 2 == 1 {
        return Err(Error::Generator(format!("cannot build {n} vertices with {b} bridges (need at least {base})")));
    }
    for _ in 0..(n - base) / 2 {
        let i = blocks[rng.gen_range(0..blocks.len())];
        size[i] += 2;
    }

    let mut g = Graph::new(0);
    // attachment vertices still free for each tree node
    let mut ports: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for i in 0..nodes {
        if singleton[i] {
            let v = g.add_vertex();
            ports[i] = vec![v; 3];
            continue;
        }
        let block = random_cubic_with(size[i], &mut rng)?;
        let offset = g.n();
        for _ in 0..block.n() {
            g.add_vertex();
        }
        let mut edge_ids: Vec<EdgeId> = (0..block.m()).collect();
        edge_ids.shuffle(&mut rng);
        let split: Vec<EdgeId> = edge_ids[..tree_degree[i]].to_vec();
        for (e, [u, v]) in block.edges() {
            if split.contains(&e) {
                let mid = g.add_vertex();
                g.add_edge(offset + u, mid)?;
                g.add_edge(mid, offset + v)?;
                ports[i].push(mid);
            } else {
                g.add_edge(offset + u, offset + v)?;
            }
        }
    }
    for (child, &p) in parent.iter().enumerate() {
        let child = child + 1;
        let a = ports[child].pop().expect("free port");
        let c = ports[p].pop().expect("free port");
        g.add_edge(a, c)?;
    }
    debug_assert_eq!(g.n(), n);
    if !g.is_cubic() || bridges(&g, None).len() != b {
        return Err(Error::Generator("bridged construction produced an invalid graph".into()));
    }
    Ok(g)
}

/// A generator request, as used by manifests and the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    EvenPrism { k: usize },
    Cube,
    TruncatedOctahedron,
    Petersen,
    RandomCubic { n: usize, seed: u64 },
    RandomCubicBridged { n: usize, b: usize, seed: u64 },
}

pub struct Generated {
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let planar = |(graph, rot): (Graph, RotationSystem)| Generated { graph, rotation: Some(rot) };
    Ok(match *spec {
        GeneratorSpec::EvenPrism { k } => planar(even_prism(k)?),
        GeneratorSpec::Cube => planar(cube_with_rotation()),
        GeneratorSpec::TruncatedOctahedron => planar(truncated_octahedron()),
        GeneratorSpec::Petersen => Generated { graph: named::petersen(), rotation: None },
        GeneratorSpec::RandomCubic { n, seed } => Generated { graph: random_cubic(n, seed)?, rotation: None },
        GeneratorSpec::RandomCubicBridged { n, b, seed } => {
            Generated { graph: random_cubic_bridged(n, b, seed)?, rotation: None }
        }
    })
}

/// Small named graphs.
pub mod named {
    use crate::graph::Graph;

    pub fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn k33() -> Graph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        Graph::from_edges(6, &e).unwrap()
    }

    /// Triangles 0-1-2 and 3-4-5 joined by the matching 0-3, 1-4, 2-5 (edges 6, 7, 8).
    pub fn prism() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    /// Outer cycle 0..5 (edges 3i), spokes (3i+1), inner pentagram (3i+2).
    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    /// Q3 with vertices as 3-bit labels.
    pub fn cube() -> Graph {
        let mut e = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        Graph::from_edges(8, &e).unwrap()
    }

    /// K4 with edge 0-1 subdivided by a new vertex 4.
    pub fn k4_subdivided() -> Graph {
        Graph::from_edges(5, &[(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Two subdivided K4s joined by an edge between their degree-2 vertices.
    pub fn two_gadget_bridge() -> Graph {
        let mut g = Graph::new(10);
        for off in [0, 5] {
            for (u, v) in [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                g.add_edge(u + off, v + off).unwrap();
            }
        }
        g.add_edge(4, 9).unwrap();
        g
    }

    /// Two hexagons v0..v5 with chords v1v5 and v2v4, joined by v0-v0' and v3-v3'.
    pub fn double_hexagon() -> Graph {
        let mut g = Graph::new(12);
        for off in [0, 6] {
            for i in 0..6 {
                g.add_edge(off + i, off + (i + 1) % 6).unwrap();
            }
            g.add_edge(off + 1, off + 5).unwrap();
            g.add_edge(off + 2, off + 4).unwrap();
        }
        g.add_edge(0, 6).unwrap();
        g.add_edge(3, 9).unwrap();
        g
    }

    /// Hexagon 0..5 with chord 0-3 whose free vertices 1 and 2 share the
    /// outside neighbour 6; 4, 5 and 6 lead to the triangle 7-8-9.
    pub fn hexagon_one_chord_three_w() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..6 {
            g.add_edge(i, (i + 1) % 6).unwrap();
        }
        for (u, v) in [(0, 3), (1, 6), (2, 6), (6, 7), (4, 8), (5, 9), (7, 8), (8, 9), (9, 7)] {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// Hexagon 0..5 with chord 0-3 whose free vertices lead to four distinct
    /// vertices of a second hexagon 6..11 with chord 7-10.
    pub fn hexagon_one_chord_four_w() -> Graph {
        let mut g = Graph::new(12);
        for off in [0, 6] {
            for i in 0..6 {
                g.add_edge(off + i, off + (i + 1) % 6).unwrap();
            }
        }
        for (u, v) in [(0, 3), (1, 6), (2, 8), (4, 9), (5, 11), (7, 10)] {
            g.add_edge(u, v).unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate, DegreeMode};

    #[test]
    fn prisms_and_polyhedra() {
        let (cube, rot) = cube_with_rotation();
        assert_eq!((cube.n(), cube.m()), (8, 12));
        assert_eq!(crate::barnette::faces_from_rotation(&cube, &rot).unwrap().len(), 6);
        for k in 2..=10 {
            let (g, rot) = even_prism(k).unwrap();
            assert!(validate(&g, DegreeMode::Cubic).ok);
            assert_eq!(crate::barnette::faces_from_rotation(&g, &rot).unwrap().len(), 2 * k + 2);
        }
        let (t, rot) = truncated_octahedron();
        assert_eq!((t.n(), t.m()), (24, 36));
        let faces = crate::barnette::faces_from_rotation(&t, &rot).unwrap();
        assert_eq!(faces.faces.iter().filter(|f| f.len() == 4).count(), 6);
        assert_eq!(faces.faces.iter().filter(|f| f.len() == 6).count(), 8);
        assert!(even_prism(1).is_err());
    }

    #[test]
    fn random_cubic_is_reproducible() {
        let a = random_cubic(20, 1).unwrap();
        assert_eq!(a, random_cubic(20, 1).unwrap());
        assert!(a.is_cubic() && !a.has_parallel_edges());
        assert!(bridges(&a, None).is_empty());
        assert!(random_cubic(7, 1).is_err());
    }

    #[test]
    fn bridged_instances() {
        for seed in 0..30 {
            for b in 0..=4 {
                let n = 10 + 6 * b + 2 * (seed as usize % 4);
                let g = random_cubic_bridged(n, b, seed).unwrap();
                assert_eq!(g.n(), n);
                assert!(g.is_cubic());
                assert_eq!(bridges(&g, None).len(), b);
            }
        }
        assert_eq!(random_cubic_bridged(20, 2, 5).unwrap(), random_cubic_bridged(20, 2, 5).unwrap());
        let with_singleton = (0..200u64).any(|seed| {
            let g = random_cubic_bridged(30, 4, seed).unwrap();
            crate::graph::bridges_and_blocks(&g).unwrap().components.iter().any(|c| c.len() == 1)
        });
        assert!(with_singleton);
    }

    #[test]
    fn spec_round_trip() {
        let spec = GeneratorSpec::RandomCubic { n: 12, seed: 3 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"random_cubic","n":12,"seed":3}"#);
        assert_eq!(serde_json::from_str::<GeneratorSpec>(&json).unwrap(), spec);
    }
}
