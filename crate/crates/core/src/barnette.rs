//! Tours on Barnette graphs (cubic, bipartite, planar, 3-connected) by
//! face alternation on the three cycle covers given by a 3-face-coloring.

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{tour_from_cover, EulerianCover};
use crate::cycles::CycleCover;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::tour::Tour;

/// Cyclic order of the incident edges at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<EdgeId>>,
}

impl RotationSystem {
    pub fn new(graph: &Graph, order: Vec<Vec<EdgeId>>) -> Result<Self> {
        if order.len() != graph.n() {
            return Err(Error::InvalidRotation(format!("{} rotation lines for {} vertices", order.len(), graph.n())));
        }
        for (v, rot) in order.iter().enumerate() {
            let mut a = rot.clone();
            let mut b = graph.incident(v).to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::InvalidRotation(format!("vertex {v}: {rot:?} is not a cyclic order of {b:?}")));
            }
        }
        Ok(RotationSystem { order })
    }

    pub fn order(&self, v: VertexId) -> &[EdgeId] {
        &self.order[v]
    }

    pub fn orders(&self) -> &[Vec<EdgeId>] {
        &self.order
    }

    /// The edge after `e` around `v`.
    pub fn next(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = &self.order[v];
        let i = rot.iter().position(|&f| f == e).expect("edge incident to vertex");
        rot[(i + 1) % rot.len()]
    }
}

/// A face as a closed walk: `edges[i]` leaves `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// The two faces on either side of each edge.
    pub edge_faces: Vec<[usize; 2]>,
    /// Face colors in {0, 1, 2} once colored.
    pub coloring: Option<Vec<u8>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces sharing an edge with face `f`, ascending and without repeats.
    pub fn neighbours(&self, f: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.faces[f]
            .edges
            .iter()
            .map(|&e| {
                let [a, b] = self.edge_faces[e];
                if a == f {
                    b
                } else {
                    a
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Edge color: the color missing from the edge's two faces.
    pub fn edge_colors(&self) -> Option<Vec<u8>> {
        let colors = self.coloring.as_ref()?;
        Some(self.edge_faces.iter().map(|&[a, b]| 3 - colors[a] - colors[b]).collect())
    }

    pub fn faces_of_color(&self, c: u8) -> Vec<usize> {
        match &self.coloring {
            Some(col) => (0..self.faces.len()).filter(|&f| col[f] == c).collect(),
            None => Vec::new(),
        }
    }
}

/// Traces the faces of the embedding. Dart `2e + s` runs along edge `e`
/// from endpoint `s`; the dart after `(u -> v, e)` leaves `v` along the
/// successor of `e` in the rotation at `v`.
pub fn faces_from_rotation(graph: &Graph, rotation: &RotationSystem) -> Result<FaceSet> {
    let m = graph.m();
    let mut face_of = vec![usize::MAX; 2 * m];
    let mut faces = Vec::new();
    for start in 0..2 * m {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut face = Face { vertices: Vec::new(), edges: Vec::new() };
        let mut dart = start;
        while face_of[dart] == usize::MAX {
            face_of[dart] = faces.len();
            let (e, s) = (dart / 2, dart % 2);
            let [a, b] = graph.endpoints(e);
            let (from, to) = if s == 0 { (a, b) } else { (b, a) };
            face.vertices.push(from);
            face.edges.push(e);
            let next = rotation.next(to, e);
            dart = 2 * next + usize::from(graph.endpoints(next)[0] != to);
        }
        if dart != start {
            return Err(Error::InvalidRotation("face traversal did not close".into()));
        }
        faces.push(face);
    }
    let expected = (2 + m).saturating_sub(graph.n());
    if faces.len() != expected || graph.n() > 2 + m {
        return Err(Error::NotSpherical { faces: faces.len(), expected });
    }
    let edge_faces = (0..m).map(|e| [face_of[2 * e], face_of[2 * e + 1]]).collect();
    Ok(FaceSet { faces, edge_faces, coloring: None })
}

/// Proper 3-coloring of the dual by backtracking, always extending the
/// uncolored face with the most distinct neighbouring colors (ties by index)
/// and trying colors in ascending order.
pub fn three_face_coloring(faces: &FaceSet) -> Result<Vec<u8>> {
    let k = faces.len();
    if faces.faces.iter().any(|f| f.len() % 2 == 1) || faces.edge_faces.iter().any(|&[a, b]| a == b) {
        return Err(Error::NotFaceColorable);
    }
    let adj: Vec<Vec<usize>> = (0..k).map(|f| faces.neighbours(f)).collect();
    let mut color = vec![u8::MAX; k];
    if color_rec(&adj, &mut color, 0) {
        Ok(color)
    } else {
        Err(Error::NotFaceColorable)
    }
}

fn color_rec(adj: &[Vec<usize>], color: &mut [u8], done: usize) -> bool {
    if done == color.len() {
        return true;
    }
    let saturation = |f: usize, color: &[u8]| -> usize {
        let mut seen = [false; 3];
        for &g in &adj[f] {
            if color[g] < 3 {
                seen[color[g] as usize] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    };
    let f = (0..color.len())
        .filter(|&f| color[f] == u8::MAX)
        .max_by_key(|&f| (saturation(f, color), std::cmp::Reverse(f)))
        .expect("an uncolored face");
    for c in 0..3u8 {
        if adj[f].iter().any(|&g| color[g] == c) {
            continue;
        }
        color[f] = c;
        if color_rec(adj, color, done + 1) {
            return true;
        }
    }
    color[f] = u8::MAX;
    false
}

fn is_alternating(face: &Face, mask: &[bool]) -> bool {
    let k = face.len();
    k.is_multiple_of(2) && (0..k).all(|i| mask[face.edges[i]] != mask[face.edges[(i + 1) % k]])
}

/// The cover with edge set `cover △ face`.
pub fn alternate_face(graph: &Graph, cover: &CycleCover, face: &Face, face_index: usize) -> Result<CycleCover> {
    let mut mask = cover.edge_mask(graph.m());
    if !is_alternating(face, &mask) {
        return Err(Error::NotAlternating(face_index));
    }
    for &e in &face.edges {
        mask[e] = !mask[e];
    }
    CycleCover::from_edge_mask(graph, &mask)
}

/// The evolution of one cover C(i).
#[derive(Clone, Debug, Serialize)]
pub struct ColorRun {
    pub color: u8,
    pub initial_cycles: usize,
    pub moves: Vec<usize>,
    pub final_cycles: usize,
    #[serde(skip)]
    pub cover: CycleCover,
}

#[derive(Clone, Debug)]
pub struct BarnetteResult {
    pub tour: Tour,
    pub faces: FaceSet,
    pub runs: Vec<ColorRun>,
    /// Index into `runs` of the cover with fewest cycles.
    pub chosen: usize,
}

impl BarnetteResult {
    pub fn cover(&self) -> &CycleCover {
        &self.runs[self.chosen].cover
    }
}

/// Boundary cycles of the faces of color `c`.
fn face_cover(graph: &Graph, faces: &FaceSet, c: u8) -> Result<CycleCover> {
    let mut mask = vec![false; graph.m()];
    for f in faces.faces_of_color(c) {
        for &e in &faces.faces[f].edges {
            mask[e] = true;
        }
    }
    CycleCover::from_edge_mask(graph, &mask)
}

fn check_loop_invariant(faces: &FaceSet, own: &[usize], mask: &[bool], edge_color: &[u8], i: u8) -> Result<()> {
    if edge_color.iter().enumerate().any(|(e, &c)| c == i && !mask[e]) {
        return Err(Error::Invariant(format!("cover {i} lost an edge of its own color")));
    }
    if let Some(&f) = own.iter().find(|&&f| !is_alternating(&faces.faces[f], mask)) {
        return Err(Error::NotAlternating(f));
    }
    Ok(())
}

fn improve_color(graph: &Graph, faces: &FaceSet, edge_color: &[u8], i: u8) -> Result<ColorRun> {
    let own = faces.faces_of_color(i);
    let mut cover = face_cover(graph, faces, (i + 1) % 3)?;
    let initial_cycles = cover.len();
    let mut moves = Vec::new();
    check_loop_invariant(faces, &own, &cover.edge_mask(graph.m()), edge_color, i)?;
    'scan: loop {
        for &f in &own {
            let next = alternate_face(graph, &cover, &faces.faces[f], f)?;
            if next.len() < cover.len() {
                cover = next;
                moves.push(f);
                check_loop_invariant(faces, &own, &cover.edge_mask(graph.m()), edge_color, i)?;
                continue 'scan;
            }
        }
        break;
    }
    Ok(ColorRun { color: i, initial_cycles, moves, final_cycles: cover.len(), cover })
}

/// Tour of length n + 2|C| − 2 from the best of the three improved covers.
pub fn barnette_tour(graph: &Graph, rotation: &RotationSystem) -> Result<BarnetteResult> {
    if !graph.is_cubic() {
        return Err(Error::InvalidGraph("Barnette input must be cubic".into()));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut faces = faces_from_rotation(graph, rotation)?;
    faces.coloring = Some(three_face_coloring(&faces)?);
    let edge_color = faces.edge_colors().expect("colored");
    for c in 0..3u8 {
        let mut deg = vec![0usize; graph.n()];
        for (e, _) in graph.edges().filter(|&(e, _)| edge_color[e] == c) {
            for v in graph.endpoints(e) {
                deg[v] += 1;
            }
        }
        if deg.iter().any(|&d| d != 1) {
            return Err(Error::Invariant(format!("edge color class {c} is not a perfect matching")));
        }
    }
    let runs: Vec<ColorRun> =
        (0..3u8).into_par_iter().map(|i| improve_color(graph, &faces, &edge_color, i)).collect::<Result<_>>()?;
    let chosen = (0..3).min_by_key(|&i| (runs[i].final_cycles, i)).unwrap();
    let tour = tour_from_cover(graph, &EulerianCover::from_cycle_cover(&runs[chosen].cover))?;
    if tour.len() != graph.n() + 2 * runs[chosen].final_cycles - 2 {
        return Err(Error::Invariant("tour length differs from n + 2|C| - 2".into()));
    }
    tour.validate(graph)?;
    Ok(BarnetteResult { tour, faces, runs, chosen })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BarnetteAudit {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl BarnetteAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, holds: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !holds {
            self.violations.push(what());
        }
    }
}

/// Checks the per-face, per-color and global cycle-count bounds on covers
/// at the fixpoint of the improvement loop. All comparisons are on integers
/// (the global bounds are multiplied through by 18).
pub fn audit_barnette_bounds(graph: &Graph, faces: &FaceSet, covers: &[CycleCover]) -> BarnetteAudit {
    let mut audit = BarnetteAudit::default();
    let Some(colors) = faces.coloring.as_ref() else {
        audit.violations.push("face set is not colored".into());
        return audit;
    };
    let n = graph.n();
    let f4_total = faces.faces.iter().filter(|f| f.len() == 4).count();
    for (i, cover) in covers.iter().enumerate() {
        let c = i as u8;
        let own: Vec<usize> = (0..faces.len()).filter(|&f| colors[f] == c).collect();
        let cycle_of = cover.cycle_of(n);
        let meeting = |f: usize| -> Vec<usize> {
            let mut cs: Vec<usize> = faces.faces[f].vertices.iter().map(|&v| cycle_of[v]).collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        };
        let mut first = 1usize;
        let mut second = 0usize;
        for &f in &own {
            let k = faces.faces[f].len() / 2;
            let hits = meeting(f).len();
            audit.check(hits <= k.div_ceil(2), || {
                format!("color {c}: face {f} of length {} meets {hits} cycles", 2 * k)
            });
            first += (k - 1) / 2;
            second += k.div_ceil(2);
        }
        let count = cover.len();
        audit.check(count <= first, || format!("color {c}: {count} cycles exceed first bound {first}"));
        if count != 1 {
            let on_f4 = cover
                .cycles
                .iter()
                .filter(|cy| {
                    cy.len() == 4
                        && faces.faces.iter().any(|f| {
                            let mut a = f.edges.clone();
                            let mut b = cy.edges.clone();
                            a.sort_unstable();
                            b.sort_unstable();
                            a == b
                        })
                })
                .count();
            audit.check(3 * count <= on_f4 + second, || {
                format!("color {c}: 3·{count} exceeds second bound {on_f4} + {second}")
            });
            let mut faces_met = vec![std::collections::BTreeSet::new(); count];
            for &f in &own {
                for cy in meeting(f) {
                    faces_met[cy].insert(f);
                }
            }
            for (j, cy) in cover.cycles.iter().enumerate() {
                if cy.len() >= 6 {
                    audit.check(faces_met[j].len() >= 3, || {
                        format!("color {c}: cycle {j} of length {} meets {} own faces", cy.len(), faces_met[j].len())
                    });
                }
            }
        }
    }
    if let Some(best) = covers.iter().map(CycleCover::len).min() {
        // best ≤ (n+4)/6 − F4/6  and  best ≤ (n+1)/9 + F4/6
        audit.check(6 * best + f4_total <= n + 4, || format!("|C| = {best} exceeds (n+4)/6 − |F4|/6"));
        audit.check(18 * best <= 2 * (n + 1) + 3 * f4_total, || format!("|C| = {best} exceeds (n+1)/9 + |F4|/6"));
        audit.check(36 * best <= 5 * n + 14, || format!("|C| = {best} exceeds (5n+14)/36"));
        let tour = n + 2 * best - 2;
        audit.check(18 * tour + 22 <= 23 * n, || format!("tour length {tour} exceeds (23n−22)/18"));
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cube_with_rotation, even_prism, truncated_octahedron};
    use crate::graph::fixtures::k4;

    #[test]
    fn cube_faces_and_coloring() {
        let (g, rot) = cube_with_rotation();
        let mut fs = faces_from_rotation(&g, &rot).unwrap();
        assert_eq!(fs.len(), 6);
        assert!(fs.faces.iter().all(|f| f.len() == 4));
        let col = three_face_coloring(&fs).unwrap();
        fs.coloring = Some(col.clone());
        for c in 0..3 {
            let same = fs.faces_of_color(c);
            assert_eq!(same.len(), 2);
            // opposite faces share no vertex
            let (a, b) = (&fs.faces[same[0]], &fs.faces[same[1]]);
            assert!(a.vertices.iter().all(|v| !b.vertices.contains(v)));
        }
    }

    #[test]
    fn hexagonal_prism_faces_and_coloring() {
        let (g, rot) = even_prism(3).unwrap();
        let mut fs = faces_from_rotation(&g, &rot).unwrap();
        assert_eq!(fs.len(), 8);
        assert_eq!(fs.faces.iter().filter(|f| f.len() == 6).count(), 2);
        assert_eq!(fs.faces.iter().filter(|f| f.len() == 4).count(), 6);
        let col = three_face_coloring(&fs).unwrap();
        let hex: Vec<usize> = (0..8).filter(|&f| fs.faces[f].len() == 6).collect();
        assert_eq!(col[hex[0]], col[hex[1]]);
        fs.coloring = Some(col.clone());
        let squares: Vec<usize> = (0..8).filter(|&f| fs.faces[f].len() == 4).collect();
        for &s in &squares {
            assert_ne!(col[s], col[hex[0]]);
            for t in fs.neighbours(s).into_iter().filter(|t| squares.contains(t)) {
                assert_ne!(col[s], col[t]);
            }
        }
    }

    #[test]
    fn k4_is_not_face_colorable() {
        let g = k4();
        // planar rotation of K4: outer triangle 1,2,3 around centre 0
        let order: Vec<Vec<EdgeId>> = vec![vec![0, 1, 2], vec![0, 4, 3], vec![1, 3, 5], vec![2, 5, 4]];
        let rot = RotationSystem::new(&g, order).unwrap();
        let fs = faces_from_rotation(&g, &rot).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.faces.iter().all(|f| f.len() == 3));
        assert!(matches!(three_face_coloring(&fs), Err(Error::NotFaceColorable)));
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        let (g, rot) = cube_with_rotation();
        let mut order = rot.orders().to_vec();
        order[0].swap(0, 1);
        let rot = RotationSystem::new(&g, order).unwrap();
        assert!(matches!(faces_from_rotation(&g, &rot), Err(Error::NotSpherical { .. })));
        assert!(RotationSystem::new(&g, vec![vec![0, 1]; 8]).is_err());
    }

    #[test]
    fn alternation_merges_and_is_an_involution() {
        let (g, rot) = cube_with_rotation();
        let fs = faces_from_rotation(&g, &rot).unwrap();
        // two opposite faces form a cover; any face touching both alternates
        let top = 0;
        let bottom = (0..6).find(|&f| fs.faces[f].vertices.iter().all(|v| !fs.faces[top].vertices.contains(v))).unwrap();
        let mut mask = vec![false; g.m()];
        for f in [top, bottom] {
            for &e in &fs.faces[f].edges {
                mask[e] = true;
            }
        }
        let cover = CycleCover::from_edge_mask(&g, &mask).unwrap();
        let side = (0..6).find(|&f| f != top && f != bottom).unwrap();
        let merged = alternate_face(&g, &cover, &fs.faces[side], side).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.cycles[0].len(), 8);
        assert_eq!(alternate_face(&g, &merged, &fs.faces[side], side).unwrap(), cover);
        assert!(matches!(alternate_face(&g, &cover, &fs.faces[top], top), Err(Error::NotAlternating(_))));
    }

    #[test]
    fn hexagonal_prism_two_hexagons_merge() {
        let (g, rot) = even_prism(3).unwrap();
        let fs = faces_from_rotation(&g, &rot).unwrap();
        let mut mask = vec![false; g.m()];
        for f in fs.faces.iter().filter(|f| f.len() == 6) {
            for &e in &f.edges {
                mask[e] = true;
            }
        }
        let cover = CycleCover::from_edge_mask(&g, &mask).unwrap();
        let sq = (0..8).find(|&f| fs.faces[f].len() == 4).unwrap();
        let merged = alternate_face(&g, &cover, &fs.faces[sq], sq).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.cycles[0].len(), 12);
    }

    #[test]
    fn barnette_examples() {
        for (g, rot) in [cube_with_rotation(), even_prism(3).unwrap(), truncated_octahedron()] {
            let res = barnette_tour(&g, &rot).unwrap();
            let n = g.n();
            let c = res.cover().len();
            assert!(36 * c <= 5 * n + 14);
            assert_eq!(res.tour.len(), n + 2 * c - 2);
            let covers: Vec<CycleCover> = res.runs.iter().map(|r| r.cover.clone()).collect();
            let audit = audit_barnette_bounds(&g, &res.faces, &covers);
            assert!(audit.ok(), "{:?}", audit.violations);
            for r in &res.runs {
                assert!(r.moves.len() < r.initial_cycles.max(1));
            }
        }
        let (g, rot) = cube_with_rotation();
        assert_eq!(barnette_tour(&g, &rot).unwrap().tour.len(), 8);
    }

    #[test]
    fn audit_reports_violations() {
        let (g, rot) = cube_with_rotation();
        let res = barnette_tour(&g, &rot).unwrap();
        // a cover with 2 cycles is not a fixpoint and breaks the global bound 6|C| + |F4| ≤ n + 4
        let top = &res.faces.faces[0];
        let bottom = res.faces.faces.iter().find(|f| f.vertices.iter().all(|v| !top.vertices.contains(v))).unwrap();
        let mut mask = vec![false; g.m()];
        for &e in top.edges.iter().chain(&bottom.edges) {
            mask[e] = true;
        }
        let two = CycleCover::from_edge_mask(&g, &mask).unwrap();
        let audit = audit_barnette_bounds(&g, &res.faces, &[two.clone(), two.clone(), two]);
        assert!(!audit.ok());
    }
}
