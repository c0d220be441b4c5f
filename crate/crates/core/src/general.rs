//! Cubic graphs with bridges: split at the bridges, solve every
//! 2-edge-connected piece, and glue the pieces with doubled bridges.

use std::io::Write as _;
use std::process::{Command, Stdio};

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::epsilon;
use crate::error::{Error, Result};
use crate::graph::{bridges, bridges_and_blocks, EdgeId, Graph, VertexId};
use crate::io::{parse_tour, write_edge_list_by_id};
use crate::pipeline;
use crate::tour::Tour;
use crate::Rational;

/// A piece left after deleting the bridges, with its own dense ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeComponent {
    /// Global id of each local vertex.
    pub vertices: Vec<VertexId>,
    /// Global id of each local edge.
    pub edges: Vec<EdgeId>,
    pub graph: Graph,
}

impl BridgeComponent {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Number of vertices of degree 2 inside the piece.
    pub fn degree_two(&self) -> usize {
        self.graph.vertices().filter(|&v| self.graph.degree(v) == 2).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub bridges: Vec<EdgeId>,
    /// The b + 1 pieces, ordered by smallest vertex.
    pub components: Vec<BridgeComponent>,
    /// Vertices all of whose edges are bridges.
    pub singletons: Vec<VertexId>,
}

impl BridgeDecomposition {
    pub fn b(&self) -> usize {
        self.bridges.len()
    }

    pub fn n0(&self) -> usize {
        self.singletons.len()
    }
}

pub fn decompose_bridges(graph: &Graph) -> Result<BridgeDecomposition> {
    let blocks = bridges_and_blocks(graph)?;
    let mut local = vec![usize::MAX; graph.n()];
    let mut owner = vec![usize::MAX; graph.n()];
    for (c, vs) in blocks.components.iter().enumerate() {
        for (i, &v) in vs.iter().enumerate() {
            local[v] = i;
            owner[v] = c;
        }
    }
    let mut components: Vec<BridgeComponent> = blocks
        .components
        .iter()
        .map(|vs| BridgeComponent { vertices: vs.clone(), edges: Vec::new(), graph: Graph::new(vs.len()) })
        .collect();
    for (e, [u, v]) in graph.edges() {
        if owner[u] == owner[v] {
            let c = &mut components[owner[u]];
            c.graph.add_edge(local[u], local[v])?;
            c.edges.push(e);
        }
    }
    let singletons = components.iter().filter(|c| c.is_singleton()).map(|c| c.vertices[0]).collect();
    Ok(BridgeDecomposition { bridges: blocks.bridges, components, singletons })
}

/// 2b + n − n0.
pub fn subtour_lower_bound(graph: &Graph) -> Result<usize> {
    let d = decompose_bridges(graph)?;
    Ok(2 * d.b() + graph.n() - d.n0())
}

/// A degree-2 vertex replaced by the 4-cycle p q r s with chord q s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTwoGadget {
    pub vertex: VertexId,
    pub cycle: [VertexId; 4],
}

/// Replaces every degree-2 vertex by a chorded 4-cycle. Vertex and edge ids
/// of the input are kept (a degree-2 vertex becomes its gadget's `p`); new
/// vertices and gadget edges are appended.
pub fn expand_degree2(component: &Graph) -> (Graph, Vec<DegreeTwoGadget>) {
    let n = component.n();
    let twos: Vec<VertexId> = component.vertices().filter(|&v| component.degree(v) == 2).collect();
    let mut g = Graph::new(n + 3 * twos.len());
    let mut gadgets = Vec::with_capacity(twos.len());
    let mut ends: Vec<[VertexId; 2]> = component.edges().map(|(_, ends)| ends).collect();
    for (i, &v) in twos.iter().enumerate() {
        let (q, r, s) = (n + 3 * i, n + 3 * i + 1, n + 3 * i + 2);
        let second = component.incident(v)[1];
        for end in ends[second].iter_mut().filter(|x| **x == v) {
            *end = r;
        }
        gadgets.push(DegreeTwoGadget { vertex: v, cycle: [v, q, r, s] });
    }
    for [a, b] in ends {
        g.add_edge(a, b).expect("no self-loops");
    }
    for gd in &gadgets {
        let [p, q, r, s] = gd.cycle;
        for (x, y) in [(p, q), (q, r), (r, s), (s, p), (q, s)] {
            g.add_edge(x, y).expect("no self-loops");
        }
    }
    (g, gadgets)
}

fn check_piece(component: &Graph) -> Result<()> {
    if component.n() < 2 {
        return Err(Error::InvalidGraph("a singleton has no tour of its own".into()));
    }
    if component.vertices().any(|v| !(2..=3).contains(&component.degree(v))) {
        return Err(Error::InvalidGraph("expected a subcubic graph with degrees 2 and 3".into()));
    }
    if !component.is_connected() || !bridges(component, None).is_empty() {
        return Err(Error::InvalidGraph("expected a 2-edge-connected graph".into()));
    }
    Ok(())
}

/// Expands degree-2 vertices, solves the cubic graph, and contracts the
/// gadgets again.
pub fn algorithm_b(component: &Graph) -> Result<Tour> {
    check_piece(component)?;
    let (expanded, _) = expand_degree2(component);
    let solution = pipeline::solve(&expanded)?;
    let mut mult = solution.tour.multiplicities().to_vec();
    mult.truncate(component.m());
    let tour = Tour::from_multiplicities(mult);
    tour.validate(component)?;
    Ok(tour)
}

/// External tour heuristic for 2-edge-connected subcubic graphs.
pub trait TourPlugin: Sync {
    fn name(&self) -> &str;
    fn tour(&self, graph: &Graph) -> Result<Tour>;
}

/// Runs `sh -c <command>`, writing the graph as an edge list to stdin and
/// reading the tour as an edge list (one line per traversal) from stdout.
#[derive(Clone, Debug)]
pub struct ExternalPlugin {
    pub command: String,
}

impl TourPlugin for ExternalPlugin {
    fn name(&self) -> &str {
        &self.command
    }

    fn tour(&self, graph: &Graph) -> Result<Tour> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()?;
        child.stdin.take().expect("piped stdin").write_all(write_edge_list_by_id(graph).as_bytes())?;
        let out = child.wait_with_output()?;
        if !out.status.success() {
            return Err(Error::Plugin(format!("`{}` exited with {}", self.command, out.status)));
        }
        let text = String::from_utf8_lossy(&out.stdout);
        parse_tour(graph, &text).map_err(|e| Error::Plugin(e.to_string()))
    }
}

/// The plugin's tour if one is given and valid, otherwise algorithm B.
pub fn algorithm_a(component: &Graph, plugin: Option<&dyn TourPlugin>) -> Result<Tour> {
    match plugin {
        None => algorithm_b(component),
        Some(p) => {
            check_piece(component)?;
            let t = p.tour(component)?;
            t.validate(component).map_err(|e| Error::Plugin(format!("{}: {e}", p.name())))?;
            Ok(t)
        }
    }
}

/// Joins one tour per non-singleton piece (indexed like
/// `decomposition.components`) with every bridge doubled.
pub fn glue(graph: &Graph, decomposition: &BridgeDecomposition, tours: &[Option<Tour>]) -> Result<Tour> {
    let mut mult = vec![0u8; graph.m()];
    for (i, c) in decomposition.components.iter().enumerate() {
        if c.is_singleton() {
            continue;
        }
        let t = tours
            .get(i)
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::InvalidTour(format!("no tour for component {i}")))?;
        for (local, &global) in c.edges.iter().enumerate() {
            mult[global] = t.multiplicity(local);
        }
    }
    for &e in &decomposition.bridges {
        mult[e] = 2;
    }
    let tour = Tour::from_multiplicities(mult);
    tour.validate(graph)?;
    Ok(tour)
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub n: usize,
    pub degree_two: usize,
    pub tour_a: Option<usize>,
    pub tour_b: Option<usize>,
    pub used: Option<usize>,
    /// B(i) ≤ (4/3 − ε)n_i + D(i).
    pub bound_ok: bool,
}

#[derive(Clone, Debug)]
pub struct GeneralSolution {
    pub decomposition: BridgeDecomposition,
    pub pieces: Vec<PieceReport>,
    pub tour: Tour,
    pub lower_bound: usize,
    /// 4b + (4/3 − ε)(n − n0).
    pub length_bound: Rational,
}

impl GeneralSolution {
    pub fn bound_ok(&self) -> bool {
        Rational::from_integer(self.tour.len().into()) <= self.length_bound
    }
}

fn four_thirds_minus_eps() -> Rational {
    Rational::new(4.into(), 3.into()) - epsilon()
}

/// Solves each piece with algorithms A and B (in parallel), keeps the
/// shorter tour per piece, and glues.
pub fn solve_general(graph: &Graph, plugin: Option<&dyn TourPlugin>) -> Result<GeneralSolution> {
    if graph.vertices().any(|v| graph.degree(v) != 3) {
        return Err(Error::InvalidGraph("expected a cubic graph".into()));
    }
    let decomposition = decompose_bridges(graph)?;
    let solved: Vec<(Option<Tour>, PieceReport)> = decomposition
        .components
        .par_iter()
        .map(|c| {
            let d = c.degree_two();
            if c.is_singleton() {
                return Ok((None, PieceReport { n: 1, degree_two: 0, tour_a: None, tour_b: None, used: None, bound_ok: true }));
            }
            let b = algorithm_b(&c.graph)?;
            let a = match plugin {
                Some(_) => Some(algorithm_a(&c.graph, plugin)?),
                None => None,
            };
            let bound = four_thirds_minus_eps() * Rational::from_integer(c.n().into()) + Rational::from_integer(d.into());
            let bound_ok = Rational::from_integer(b.len().into()) <= bound;
            let report = PieceReport {
                n: c.n(),
                degree_two: d,
                tour_a: a.as_ref().map(Tour::len),
                tour_b: Some(b.len()),
                used: None,
                bound_ok,
            };
            let best = match a {
                Some(a) if a.len() < b.len() => a,
                _ => b,
            };
            Ok((Some(best), report))
        })
        .collect::<Result<_>>()?;
    let (tours, mut pieces): (Vec<Option<Tour>>, Vec<PieceReport>) = solved.into_iter().unzip();
    for (p, t) in pieces.iter_mut().zip(&tours) {
        p.used = t.as_ref().map(Tour::len);
    }
    let tour = glue(graph, &decomposition, &tours)?;
    let lower_bound = 2 * decomposition.b() + graph.n() - decomposition.n0();
    let length_bound = Rational::from_integer((4 * decomposition.b()).into())
        + four_thirds_minus_eps() * Rational::from_integer((graph.n() - decomposition.n0()).into());
    Ok(GeneralSolution { decomposition, pieces, tour, lower_bound, length_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named::*;
    use crate::generate::random_cubic_bridged;
    use crate::oracle::held_karp_opt;

    #[test]
    fn two_gadget_instance_meets_the_lower_bound() {
        let g = two_gadget_bridge();
        let d = decompose_bridges(&g).unwrap();
        assert_eq!(d.b(), 1);
        assert_eq!(d.components.iter().map(BridgeComponent::n).collect::<Vec<_>>(), vec![5, 5]);
        assert_eq!(subtour_lower_bound(&g).unwrap(), 12);
        let s = solve_general(&g, None).unwrap();
        assert_eq!(s.tour.len(), 12);
        assert_eq!(s.lower_bound, 12);
        assert_eq!(held_karp_opt(&g).unwrap(), 12);
        assert!(s.bound_ok());
    }

    #[test]
    fn two_connected_input_is_a_single_piece() {
        let g = petersen();
        assert_eq!(subtour_lower_bound(&g).unwrap(), 10);
        let s = solve_general(&g, None).unwrap();
        assert_eq!(s.tour.len(), 11);
        assert_eq!(s.pieces.len(), 1);
    }

    #[test]
    fn expansion_sizes() {
        let (g, map) = expand_degree2(&petersen());
        assert_eq!(g, petersen());
        assert!(map.is_empty());

        let mut c5 = Graph::new(5);
        for i in 0..5 {
            c5.add_edge(i, (i + 1) % 5).unwrap();
        }
        let (g, map) = expand_degree2(&c5);
        assert_eq!((g.n(), map.len()), (20, 5));
        assert!(g.is_cubic());
        assert!(bridges(&g, None).is_empty());

        let (g, map) = expand_degree2(&k4_subdivided());
        assert_eq!((g.n(), map.len()), (8, 1));
        assert!(g.is_cubic());
        assert!(bridges(&g, None).is_empty());
    }

    #[test]
    fn expansion_of_a_digon() {
        let mut d = Graph::new(2);
        d.add_edge(0, 1).unwrap();
        d.add_edge(0, 1).unwrap();
        let (g, _) = expand_degree2(&d);
        assert_eq!(g.n(), 8);
        assert!(g.is_cubic());
        assert!(bridges(&g, None).is_empty());
        let t = algorithm_b(&d).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn algorithm_b_on_subdivided_k4() {
        let c = k4_subdivided();
        let t = algorithm_b(&c).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(held_karp_opt(&c).unwrap(), 5);
    }

    struct Fixed(Vec<u8>);

    impl TourPlugin for Fixed {
        fn name(&self) -> &str {
            "fixed"
        }
        fn tour(&self, _: &Graph) -> Result<Tour> {
            Ok(Tour::from_multiplicities(self.0.clone()))
        }
    }

    #[test]
    fn plugin_results_are_validated() {
        let c = k4_subdivided();
        let bad = Fixed(vec![1; c.m()]);
        assert!(matches!(algorithm_a(&c, Some(&bad)), Err(Error::Plugin(_))));
        let b = algorithm_b(&c).unwrap();
        let good = Fixed(b.multiplicities().to_vec());
        assert_eq!(algorithm_a(&c, Some(&good)).unwrap(), b);
        assert_eq!(algorithm_a(&c, None).unwrap(), b);
    }

    #[test]
    fn external_plugin_round_trip() {
        // `cat` echoes the graph, i.e. every edge once: invalid on K4 with a subdivided edge
        let c = k4_subdivided();
        let echo = ExternalPlugin { command: "cat".into() };
        assert!(algorithm_a(&c, Some(&echo)).is_err());
        // a 4-cycle is its own tour
        let mut sq = Graph::new(4);
        for i in 0..4 {
            sq.add_edge(i, (i + 1) % 4).unwrap();
        }
        assert_eq!(algorithm_a(&sq, Some(&echo)).unwrap().len(), 4);
    }

    #[test]
    fn glue_needs_every_piece() {
        let g = two_gadget_bridge();
        let d = decompose_bridges(&g).unwrap();
        assert!(glue(&g, &d, &[None, None]).is_err());
    }

    #[test]
    fn random_bridged_instances() {
        for seed in 0..20 {
            for b in 1..=4 {
                let g = random_cubic_bridged(30, b, seed).unwrap();
                let s = solve_general(&g, None).unwrap();
                s.tour.validate(&g).unwrap();
                assert_eq!(s.decomposition.b(), b);
                assert!(s.bound_ok(), "seed {seed} b {b}: {} > {}", s.tour.len(), s.length_bound);
                assert!(s.tour.len() >= s.lower_bound);
            }
        }
    }
}
