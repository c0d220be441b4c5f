//! Text formats: edge lists, rotation files and rational numbers.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::tour::Tour;
use crate::Rational;

/// Line 1 `n m`, then `m` lines `u v`. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header `n m`".into() })?;
    let [n, m] = parse_pair(line, header)?;
    let mut graph = Graph::new(n);
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        graph.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    }
    if graph.m() != m {
        return Err(Error::Parse { line: 1, msg: format!("header announces {m} edges, found {}", graph.m()) });
    }
    Ok(graph)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse { line, msg: format!("expected two integers, got `{text}`") });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| Error::Parse { line, msg: format!("`{f}` is not a vertex id") })?;
    }
    Ok(out)
}

/// Edge list with edges sorted by (min endpoint, max endpoint).
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.m());
    for (u, v) in graph.sorted_edge_pairs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Edge list in edge-id order, so ids survive a round trip.
pub fn write_edge_list_by_id(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.m());
    for (_, [u, v]) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A tour as an edge list with one line per traversal.
pub fn write_tour(graph: &Graph, tour: &Tour) -> String {
    let mut out = format!("{} {}\n", graph.n(), tour.len());
    for (e, k) in tour.edges() {
        let [u, v] = graph.endpoints(e);
        for _ in 0..k {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

/// Reads a tour written by [`write_tour`]. Traversals of a vertex pair are
/// spread over its parallel edges, lowest multiplicity first.
pub fn parse_tour(graph: &Graph, text: &str) -> Result<Tour> {
    let walk = parse_edge_list(text)?;
    if walk.n() != graph.n() {
        return Err(Error::InvalidTour(format!("tour has {} vertices, graph has {}", walk.n(), graph.n())));
    }
    let mut mult = vec![0u8; graph.m()];
    for (_, [u, v]) in walk.edges() {
        let e = graph
            .edges_between(u, v)
            .min_by_key(|&e| (mult[e], e))
            .ok_or_else(|| Error::InvalidTour(format!("{u}-{v} is not an edge")))?;
        mult[e] = mult[e].saturating_add(1);
    }
    Ok(Tour::from_multiplicities(mult))
}

/// One line per vertex listing its incident edge ids in cyclic order.
pub fn parse_rotation(text: &str) -> Result<Vec<Vec<EdgeId>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|f| f.parse().map_err(|_| Error::Parse { line: i + 1, msg: format!("`{f}` is not an edge id") }))
                .collect()
        })
        .collect()
}

pub fn write_rotation(order: &[Vec<EdgeId>]) -> String {
    order
        .iter()
        .map(|es| es.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// `p/q` with an explicit denominator, also for integers.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: num::BigInt = q.trim().parse().ok()?;
            if q == num::BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod ratio {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rational_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).ok_or_else(|| D::Error::custom(format!("`{s}` is not a rational")))
    }

    pub fn serialize_vec<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(rs.iter().map(super::rational_string))
    }
}
