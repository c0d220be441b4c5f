//! Removal of chorded 6-cycles (reductions R1..R4) and lifting of tours of
//! the reduced graph back to the original.

use serde::{Deserialize, Serialize};

use crate::cycles::{simple_cycles, Cycle};
use crate::error::{Error, Result};
use crate::graph::{bridges, EdgeId, Graph, VertexId};
use crate::tour::Tour;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionKind {
    R1,
    R2,
    R3,
    R4,
}

impl ReductionKind {
    /// Largest admissible growth of the tour when lifting through this step.
    pub fn lift_allowance(self) -> usize {
        match self {
            ReductionKind::R1 => 2,
            ReductionKind::R2 | ReductionKind::R4 => 4,
            ReductionKind::R3 => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChordClass {
    TwoChords,
    OneChord2W,
    OneChord3W,
    OneChord4W,
}

/// A 6-cycle with at least one chord, classified by its surroundings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordedSixCycle {
    pub cycle: Cycle,
    pub chords: Vec<EdgeId>,
    pub class: ChordClass,
    /// Edges leaving the cycle, in cycle order.
    pub boundary: Vec<EdgeId>,
    /// Outside endpoint of each boundary edge.
    pub outside: Vec<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gadget {
    /// 4-cycle g0 g1 g2 g3 with chord g1 g3; attached at g0 and g2.
    ChordedFourCycle,
    /// K4, used when the reduced structure is the whole graph.
    CompleteFour,
    Triangle,
    Edge,
}

impl Gadget {
    fn vertices(self) -> usize {
        match self {
            Gadget::ChordedFourCycle | Gadget::CompleteFour => 4,
            Gadget::Triangle => 3,
            Gadget::Edge => 2,
        }
    }

    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Gadget::ChordedFourCycle => &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)],
            Gadget::CompleteFour => &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (0, 2)],
            Gadget::Triangle => &[(0, 1), (1, 2), (2, 0)],
            Gadget::Edge => &[(0, 1)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEdge {
    pub edge: EdgeId,
    pub inside: VertexId,
    pub outside: VertexId,
}

/// Everything needed to replay one reduction on the graph it was found in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub kind: ReductionKind,
    /// The 6-cycle, in cyclic order.
    pub cycle: Vec<VertexId>,
    /// U, sorted.
    pub removed: Vec<VertexId>,
    pub boundary: Vec<BoundaryEdge>,
    pub gadget: Gadget,
    /// Gadget vertex receiving each boundary edge.
    pub attach: Vec<usize>,
    /// For R4: the boundary indices joined at each end of the new edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<[[usize; 2]; 2]>,
}

/// One applied reduction with the id maps between the two graphs.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub record: ReductionRecord,
    pub before: Graph,
    pub after: Graph,
    /// New id of every edge of `before` with both ends outside U.
    pub kept_edges: Vec<Option<EdgeId>>,
    /// New id of each boundary edge, in boundary order.
    pub cut_edges: Vec<EdgeId>,
}

fn position_in(cycle: &[VertexId], v: VertexId) -> Option<usize> {
    cycle.iter().position(|&u| u == v)
}

/// Chords and classification of a 6-cycle; `None` if it has no chord or a
/// non-cycle edge parallel to a cycle edge.
pub fn classify(graph: &Graph, cycle: &Cycle) -> Option<ChordedSixCycle> {
    let vs = &cycle.vertices;
    let extra = cycle.chords(graph);
    if extra.is_empty() {
        return None;
    }
    for &e in &extra {
        let [a, b] = graph.endpoints(e);
        let (i, j) = (position_in(vs, a)?, position_in(vs, b)?);
        let d = (i + 6 - j) % 6;
        if d == 1 || d == 5 {
            return None;
        }
    }
    let mut boundary = Vec::new();
    let mut outside = Vec::new();
    for &v in vs {
        for &e in graph.incident(v) {
            let w = graph.other(e, v);
            if position_in(vs, w).is_none() {
                boundary.push(e);
                outside.push(w);
            }
        }
    }
    let class = match extra.len() {
        2 => ChordClass::TwoChords,
        1 => {
            let mut ws = outside.clone();
            ws.sort_unstable();
            ws.dedup();
            match ws.len() {
                2 => ChordClass::OneChord2W,
                3 => ChordClass::OneChord3W,
                4 => ChordClass::OneChord4W,
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(ChordedSixCycle { cycle: cycle.clone(), chords: extra, class, boundary, outside })
}

/// Every chorded 6-cycle, in lexicographic cycle order. Includes
/// occurrences that cannot be reduced (see [`find_chorded_six_cycle`]).
pub fn chorded_six_cycles(graph: &Graph) -> Vec<ChordedSixCycle> {
    simple_cycles(graph, 6).iter().filter_map(|c| classify(graph, c)).collect()
}

/// Whether the graph has a 6-cycle with a chord (ignoring parallel copies
/// of cycle edges).
pub fn has_chorded_six_cycle(graph: &Graph) -> bool {
    simple_cycles(graph, 6).iter().any(|c| {
        let vs = &c.vertices;
        c.chords(graph).into_iter().any(|e| {
            let [a, b] = graph.endpoints(e);
            let (i, j) = (position_in(vs, a).unwrap(), position_in(vs, b).unwrap());
            let d = (i + 6 - j) % 6;
            d != 1 && d != 5
        })
    })
}

/// Builds the record for an occurrence, or `None` when it cannot be reduced
/// (a 6-cycle with three chords is the whole graph).
pub fn plan(graph: &Graph, occ: &ChordedSixCycle) -> Result<Option<ReductionRecord>> {
    let cycle = occ.cycle.vertices.clone();
    let b: Vec<BoundaryEdge> = occ
        .boundary
        .iter()
        .zip(&occ.outside)
        .map(|(&edge, &outside)| BoundaryEdge { edge, inside: graph.other(edge, outside), outside })
        .collect();
    let record = match occ.class {
        ChordClass::TwoChords => {
            if b.len() != 2 {
                return Ok(None);
            }
            let mut removed = cycle.clone();
            removed.sort_unstable();
            ReductionRecord {
                kind: ReductionKind::R1,
                cycle,
                removed,
                boundary: b,
                gadget: Gadget::ChordedFourCycle,
                attach: vec![0, 2],
                pairing: None,
            }
        }
        ChordClass::OneChord2W => {
            let mut ws: Vec<VertexId> = occ.outside.clone();
            ws.dedup_by(|a, b| a == b);
            let mut distinct = occ.outside.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.iter().any(|w| occ.outside.iter().filter(|x| *x == w).count() != 2) {
                return Ok(None);
            }
            let mut removed: Vec<VertexId> = cycle.iter().copied().chain(distinct.iter().copied()).collect();
            removed.sort_unstable();
            if removed.len() == graph.n() {
                // the two absorbed vertices are adjacent: no cut is left, and
                // the edge between them closes the gadget into K4
                return Ok(Some(ReductionRecord {
                    kind: ReductionKind::R2,
                    cycle,
                    removed,
                    boundary: Vec::new(),
                    gadget: Gadget::CompleteFour,
                    attach: Vec::new(),
                    pairing: None,
                }));
            }
            let inside = |v: VertexId| removed.binary_search(&v).is_ok();
            // the cut is the third edge of each absorbed w, in order of first appearance on the cycle
            let mut order: Vec<VertexId> = Vec::new();
            for &w in &occ.outside {
                if !order.contains(&w) {
                    order.push(w);
                }
            }
            let mut boundary = Vec::new();
            for &w in &order {
                for &e in graph.incident(w) {
                    let x = graph.other(e, w);
                    if !inside(x) {
                        boundary.push(BoundaryEdge { edge: e, inside: w, outside: x });
                    }
                }
            }
            if boundary.len() != 2 {
                return Ok(None);
            }
            ReductionRecord {
                kind: ReductionKind::R2,
                cycle,
                removed,
                boundary,
                gadget: Gadget::ChordedFourCycle,
                attach: vec![0, 2],
                pairing: None,
            }
        }
        ChordClass::OneChord3W => {
            let star = *occ
                .outside
                .iter()
                .find(|w| occ.outside.iter().filter(|x| x == w).count() == 2)
                .expect("one doubly attached vertex");
            let mut removed = cycle.clone();
            removed.push(star);
            removed.sort_unstable();
            let inside = |v: VertexId| removed.binary_search(&v).is_ok();
            let mut boundary: Vec<BoundaryEdge> = b.iter().copied().filter(|x| x.outside != star).collect();
            for &e in graph.incident(star) {
                let x = graph.other(e, star);
                if !inside(x) {
                    boundary.push(BoundaryEdge { edge: e, inside: star, outside: x });
                }
            }
            if boundary.len() != 3 {
                return Ok(None);
            }
            boundary.sort_by_key(|x| x.edge);
            ReductionRecord {
                kind: ReductionKind::R3,
                cycle,
                removed,
                boundary,
                gadget: Gadget::Triangle,
                attach: vec![0, 1, 2],
                pairing: None,
            }
        }
        ChordClass::OneChord4W => {
            let mut removed = cycle.clone();
            removed.sort_unstable();
            let mut chosen = None;
            for pairing in r4_pairings(&occ.cycle.vertices, graph.endpoints(occ.chords[0]), &b) {
                let mut attach = vec![0; 4];
                for (end, pair) in pairing.iter().enumerate() {
                    for &i in pair {
                        attach[i] = end;
                    }
                }
                let rec = ReductionRecord {
                    kind: ReductionKind::R4,
                    cycle: cycle.clone(),
                    removed: removed.clone(),
                    boundary: b.clone(),
                    gadget: Gadget::Edge,
                    attach,
                    pairing: Some(pairing),
                };
                let red = apply_record(graph, &rec)?;
                if bridges(&red.after, None).is_empty() {
                    chosen = Some(rec);
                    break;
                }
            }
            match chosen {
                Some(rec) => rec,
                None => return Err(Error::Reduction("both pairings of R4 create a bridge".into())),
            }
        }
    };
    Ok(Some(record))
}

/// Candidate endpoint pairings for R4, best first. With a chord between
/// opposite vertices the two neighbours of each chord end are paired; with
/// a shorter chord the vertex between the chord ends is paired with the one
/// opposite to it.
fn r4_pairings(cycle: &[VertexId], chord: [VertexId; 2], b: &[BoundaryEdge]) -> Vec<[[usize; 2]; 2]> {
    let pos = |v: VertexId| position_in(cycle, v).expect("chord end on the cycle");
    let (i, j) = (pos(chord[0]), pos(chord[1]));
    let adjacent = [[0, 1], [2, 3]];
    let wrapped = [[0, 3], [1, 2]];
    let crossed = [[0, 2], [1, 3]];
    if (i + 6 - j) % 6 == 3 {
        let near_i = |k: usize| {
            let p = pos(b[k].inside);
            (p + 1) % 6 == i || (i + 1) % 6 == p
        };
        if near_i(0) == near_i(3) {
            vec![wrapped, adjacent]
        } else {
            vec![adjacent, wrapped]
        }
    } else {
        vec![crossed, adjacent, wrapped]
    }
}

/// The lexicographically smallest reducible chorded 6-cycle.
pub fn find_chorded_six_cycle(graph: &Graph) -> Result<Option<(ChordedSixCycle, ReductionRecord)>> {
    for occ in chorded_six_cycles(graph) {
        if let Some(rec) = plan(graph, &occ)? {
            return Ok(Some((occ, rec)));
        }
    }
    Ok(None)
}

/// Replaces U by the gadget. Kept vertices and edges are renumbered in
/// ascending order; gadget vertices and edges come next, then the new cut
/// edges in boundary order.
pub fn apply_record(graph: &Graph, record: &ReductionRecord) -> Result<Reduction> {
    let n = graph.n();
    let mut in_u = vec![false; n];
    for &v in &record.removed {
        if v >= n {
            return Err(Error::Reduction(format!("vertex {v} out of range")));
        }
        in_u[v] = true;
    }
    for be in &record.boundary {
        if be.edge >= graph.m() || graph.endpoints(be.edge) != sorted_pair(graph, be.edge, be.inside, be.outside) {
            return Err(Error::Reduction(format!("boundary edge {} does not match the graph", be.edge)));
        }
        if !in_u[be.inside] || in_u[be.outside] {
            return Err(Error::Reduction(format!("boundary edge {} does not cross U", be.edge)));
        }
    }
    let cut = graph.boundary_edges(&in_u);
    if cut.len() != record.boundary.len() {
        return Err(Error::Reduction(format!("U has {} boundary edges, record lists {}", cut.len(), record.boundary.len())));
    }
    let mut new_id = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if !in_u[v] {
            new_id[v] = next;
            next += 1;
        }
    }
    let mut after = Graph::new(next + record.gadget.vertices());
    let mut kept_edges = vec![None; graph.m()];
    for (e, [u, v]) in graph.edges() {
        if !in_u[u] && !in_u[v] {
            kept_edges[e] = Some(after.add_edge(new_id[u], new_id[v])?);
        }
    }
    for &(a, b) in record.gadget.edges() {
        after.add_edge(next + a, next + b)?;
    }
    let mut cut_edges = Vec::new();
    for (be, &g) in record.boundary.iter().zip(&record.attach) {
        cut_edges.push(after.add_edge(new_id[be.outside], next + g)?);
    }
    Ok(Reduction { record: record.clone(), before: graph.clone(), after, kept_edges, cut_edges })
}

fn sorted_pair(graph: &Graph, e: EdgeId, a: VertexId, b: VertexId) -> [VertexId; 2] {
    let ends = graph.endpoints(e);
    if ends == [a, b] {
        [a, b]
    } else {
        [b, a]
    }
}

fn check_reduced_step(red: &Reduction) -> Result<()> {
    if !red.after.is_cubic() {
        return Err(Error::Reduction(format!("{:?} broke cubicity", red.record.kind)));
    }
    if !red.after.is_connected() || !bridges(&red.after, None).is_empty() {
        return Err(Error::Reduction(format!("{:?} broke 2-connectivity", red.record.kind)));
    }
    Ok(())
}

/// Applies reductions until no reducible chorded 6-cycle remains.
pub fn reduce_fully(graph: &Graph) -> Result<(Graph, Vec<Reduction>)> {
    let mut current = graph.clone();
    let mut steps = Vec::new();
    while let Some((_, record)) = find_chorded_six_cycle(&current)? {
        let red = apply_record(&current, &record)?;
        check_reduced_step(&red)?;
        current = red.after.clone();
        steps.push(red);
    }
    Ok((current, steps))
}

/// Re-applies a trace of records, checking every step.
pub fn replay(graph: &Graph, records: &[ReductionRecord]) -> Result<(Graph, Vec<Reduction>)> {
    let mut current = graph.clone();
    let mut steps = Vec::new();
    for record in records {
        let red = apply_record(&current, record)?;
        check_reduced_step(&red)?;
        current = red.after.clone();
        steps.push(red);
    }
    Ok((current, steps))
}

/// Lifts a tour of `red.after` to `red.before`. Outside U the tour is kept;
/// inside, the cheapest choice of multiplicities for the edges of G[U],
/// together with keeping or dropping each doubled cut edge, that yields a
/// valid tour is used.
pub fn lift_tour(red: &Reduction, tour: &Tour) -> Result<Tour> {
    tour.validate(&red.after)?;
    let before = &red.before;
    let mut in_u = vec![false; before.n()];
    for &v in &red.record.removed {
        in_u[v] = true;
    }
    let mut base = vec![0u8; before.m()];
    for (e, new) in red.kept_edges.iter().enumerate() {
        if let Some(f) = new {
            base[e] = tour.multiplicity(*f);
        }
    }
    let cut_mult: Vec<u8> = red.cut_edges.iter().map(|&f| tour.multiplicity(f)).collect();
    if cut_mult.iter().map(|&x| x as usize).sum::<usize>() % 2 == 1 {
        return Err(Error::InvalidTour("odd total multiplicity across the cut".into()));
    }
    let internal = before.induced_edges(&in_u);
    let boundary: Vec<EdgeId> = red.record.boundary.iter().map(|b| b.edge).collect();
    let choices: Vec<&[u8]> = cut_mult.iter().map(|&x| if x % 2 == 0 { &[0u8, 2][..] } else { &[1u8][..] }).collect();

    let mut best: Option<(usize, Vec<u8>)> = None;
    let mut cut_pick = vec![0u8; boundary.len()];
    search_cut(before, &in_u, &base, &internal, &boundary, &choices, 0, &mut cut_pick, &mut best);
    let (_, mult) = best.ok_or_else(|| Error::Reduction(format!("no local lift for {:?}", red.record.kind)))?;
    Ok(Tour::from_multiplicities(mult))
}

#[allow(clippy::too_many_arguments)]
fn search_cut(
    g: &Graph,
    in_u: &[bool],
    base: &[u8],
    internal: &[EdgeId],
    boundary: &[EdgeId],
    choices: &[&[u8]],
    i: usize,
    cut_pick: &mut Vec<u8>,
    best: &mut Option<(usize, Vec<u8>)>,
) {
    if i < boundary.len() {
        for &x in choices[i] {
            cut_pick[i] = x;
            search_cut(g, in_u, base, internal, boundary, choices, i + 1, cut_pick, best);
        }
        return;
    }
    let mut mult = base.to_vec();
    for (&e, &x) in boundary.iter().zip(cut_pick.iter()) {
        mult[e] = x;
    }
    search_inner(g, in_u, internal, 0, &mut mult, best);
}

/// Exhaustive search over multiplicities {0,1,2} of the edges of G[U],
/// pruning on parity as soon as all edges at a vertex of U are fixed.
fn search_inner(g: &Graph, in_u: &[bool], internal: &[EdgeId], i: usize, mult: &mut Vec<u8>, best: &mut Option<(usize, Vec<u8>)>) {
    if i == internal.len() {
        let cost: usize = mult.iter().map(|&x| x as usize).sum();
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            let t = Tour::from_multiplicities(mult.clone());
            if t.is_valid(g) {
                *best = Some((cost, mult.clone()));
            }
        }
        return;
    }
    let e = internal[i];
    for x in 0..=2u8 {
        mult[e] = x;
        let ok = g.endpoints(e).iter().all(|&v| {
            let done = g.incident(v).iter().all(|&f| !in_u_edge(g, in_u, f) || internal[..=i].contains(&f));
            if !done {
                return true;
            }
            let d: usize = g.incident(v).iter().map(|&f| mult[f] as usize).sum();
            d > 0 && d.is_multiple_of(2)
        });
        if ok {
            search_inner(g, in_u, internal, i + 1, mult, best);
        }
    }
    mult[e] = 0;
}

fn in_u_edge(g: &Graph, in_u: &[bool], e: EdgeId) -> bool {
    let [a, b] = g.endpoints(e);
    in_u[a] && in_u[b]
}

/// Lifts through a whole trace (last reduction first). Returns the tour on
/// the original graph and the growth at each step, in trace order.
pub fn lift_through(steps: &[Reduction], tour: &Tour) -> Result<(Tour, Vec<usize>)> {
    let mut t = tour.clone();
    let mut growth = vec![0; steps.len()];
    for (i, red) in steps.iter().enumerate().rev() {
        let lifted = lift_tour(red, &t)?;
        growth[i] = lifted.len() - t.len();
        t = lifted;
    }
    Ok((t, growth))
}
