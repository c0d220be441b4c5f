//! (1/3)·χ^E as an exact convex combination of 3-cut perfect matchings.

use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_three_cuts, EdgeCut, EdgeId, Graph};
use crate::lp::basic_feasible_point;
use crate::Rational;

/// One matching of the combination with its weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    #[serde(rename = "lambda", with = "crate::io::ratio")]
    pub lambda: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatchingDistribution {
    pub atoms: Vec<Atom>,
}

impl MatchingDistribution {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Every perfect matching, each as a sorted edge list. The smallest
/// unmatched vertex is matched first, trying its edges by ascending id.
pub fn enumerate_perfect_matchings(graph: &Graph) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    if graph.n() % 2 == 1 {
        return out;
    }
    let mut matched = vec![false; graph.n()];
    let mut current = Vec::new();
    extend(graph, 0, &mut matched, &mut current, &mut out);
    out
}

fn extend(graph: &Graph, from: usize, matched: &mut [bool], current: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
    let Some(v) = (from..graph.n()).find(|&v| !matched[v]) else {
        let mut m = current.clone();
        m.sort_unstable();
        out.push(m);
        return;
    };
    matched[v] = true;
    for &e in graph.incident(v) {
        let w = graph.other(e, v);
        if matched[w] {
            continue;
        }
        matched[w] = true;
        current.push(e);
        extend(graph, v + 1, matched, current, out);
        current.pop();
        matched[w] = false;
    }
    matched[v] = false;
}

/// Keeps the matchings meeting every cut in exactly one edge.
pub fn filter_three_cut_perfect(matchings: Vec<Vec<EdgeId>>, cuts: &[EdgeCut]) -> Vec<Vec<EdgeId>> {
    matchings
        .into_iter()
        .filter(|m| cuts.iter().all(|c| c.edges.iter().filter(|e| m.binary_search(e).is_ok()).count() == 1))
        .collect()
}

fn third() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(3))
}

/// Exact decomposition of (1/3)·χ^E. When the uniform weighting over all
/// 3-cut perfect matchings already has the right marginals and small enough
/// support it is returned; otherwise a basic solution of the feasibility LP
/// is used. Either way the result is checked by [`verify_distribution`].
pub fn decompose_third(graph: &Graph) -> Result<MatchingDistribution> {
    if !graph.is_cubic() {
        return Err(Error::InvalidGraph("decomposition needs a cubic graph".into()));
    }
    let m = graph.m();
    let cuts = enumerate_three_cuts(graph);
    let matchings = filter_three_cut_perfect(enumerate_perfect_matchings(graph), &cuts);
    if matchings.is_empty() {
        return Err(Error::Infeasible);
    }
    let mut count = vec![0usize; m];
    for mt in &matchings {
        for &e in mt {
            count[e] += 1;
        }
    }
    let k = matchings.len();
    let dist = if k <= m + 1 && count.iter().all(|&c| 3 * c == k) {
        let lambda = Rational::new(BigInt::from(1), BigInt::from(k));
        MatchingDistribution {
            atoms: matchings.into_iter().map(|edges| Atom { edges, lambda: lambda.clone() }).collect(),
        }
    } else {
        let zero = Rational::zero();
        let one = Rational::from_integer(BigInt::from(1));
        let mut a = vec![vec![zero.clone(); k]; m + 1];
        for (j, mt) in matchings.iter().enumerate() {
            for &e in mt {
                a[e][j] = one.clone();
            }
            a[m][j] = one.clone();
        }
        let mut b = vec![third(); m];
        b.push(one);
        let x = basic_feasible_point(&a, &b).ok_or(Error::Infeasible)?;
        MatchingDistribution {
            atoms: matchings
                .into_iter()
                .zip(x)
                .filter(|(_, l)| l.is_positive())
                .map(|(edges, lambda)| Atom { edges, lambda })
                .collect(),
        }
    };
    let report = verify_distribution(graph, &dist);
    if !report.ok() {
        return Err(Error::Invariant(format!("decomposition failed verification: {:?}", report.violations)));
    }
    Ok(dist)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DistributionReport {
    pub weights_positive: bool,
    pub sums_to_one: bool,
    pub perfect: bool,
    pub three_cut_perfect: bool,
    pub marginals_third: bool,
    pub violations: Vec<String>,
}

impl DistributionReport {
    pub fn ok(&self) -> bool {
        self.weights_positive && self.sums_to_one && self.perfect && self.three_cut_perfect && self.marginals_third
    }
}

/// Checks all distribution invariants with exact arithmetic. 3-cuts are
/// re-derived by brute force, independently of the decomposition.
pub fn verify_distribution(graph: &Graph, dist: &MatchingDistribution) -> DistributionReport {
    let mut r = DistributionReport {
        weights_positive: true,
        sums_to_one: true,
        perfect: true,
        three_cut_perfect: true,
        marginals_third: true,
        violations: Vec::new(),
    };
    let cuts = crate::oracle::brute_force_three_cuts(graph);
    let mut total = Rational::zero();
    let mut marginal = vec![Rational::zero(); graph.m()];
    for (i, atom) in dist.atoms.iter().enumerate() {
        if !atom.lambda.is_positive() {
            r.weights_positive = false;
            r.violations.push(format!("atom {i} has weight {}", atom.lambda));
        }
        total += &atom.lambda;
        let mut covered = vec![0usize; graph.n()];
        let mut in_m = vec![false; graph.m()];
        for &e in &atom.edges {
            if e >= graph.m() {
                r.perfect = false;
                r.violations.push(format!("atom {i} uses unknown edge {e}"));
                continue;
            }
            in_m[e] = true;
            marginal[e] += &atom.lambda;
            for v in graph.endpoints(e) {
                covered[v] += 1;
            }
        }
        if covered.iter().any(|&c| c != 1) {
            r.perfect = false;
            r.violations.push(format!("atom {i} is not a perfect matching"));
        }
        for cut in &cuts {
            let hits = cut.iter().filter(|&&e| in_m[e]).count();
            if hits != 1 {
                r.three_cut_perfect = false;
                r.violations.push(format!("atom {i} meets 3-cut {cut:?} in {hits} edges"));
            }
        }
    }
    if total != Rational::from_integer(BigInt::from(1)) {
        r.sums_to_one = false;
        r.violations.push(format!("weights sum to {total}"));
    }
    for (e, x) in marginal.iter().enumerate() {
        if *x != third() {
            r.marginals_third = false;
            r.violations.push(format!("edge {e} has marginal {x}"));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn perfect_matching_counts() {
        assert_eq!(enumerate_perfect_matchings(&k4()).len(), 3);
        assert_eq!(enumerate_perfect_matchings(&k33()).len(), 6);
        let p = petersen();
        let pms = enumerate_perfect_matchings(&p);
        assert_eq!(pms.len(), 6);
        for e in 0..p.m() {
            assert_eq!(pms.iter().filter(|m| m.contains(&e)).count(), 2);
        }
        assert!(enumerate_perfect_matchings(&Graph::new(3)).is_empty());
    }

    #[test]
    fn prism_vertical_matching_is_filtered() {
        let g = prism();
        let all = enumerate_perfect_matchings(&g);
        let vertical = vec![6, 7, 8];
        assert!(all.contains(&vertical));
        let kept = filter_three_cut_perfect(all, &enumerate_three_cuts(&g));
        assert!(!kept.contains(&vertical));
        assert!(!kept.is_empty());
    }

    #[test]
    fn uniform_examples() {
        for (g, k, w) in [(k4(), 3, r(1, 3)), (k33(), 6, r(1, 6)), (petersen(), 6, r(1, 6)), (cube(), 9, r(1, 9))] {
            let d = decompose_third(&g).unwrap();
            assert_eq!(d.len(), k);
            assert!(d.atoms.iter().all(|a| a.lambda == w));
        }
    }

    #[test]
    fn prism_needs_the_lp() {
        let g = prism();
        let d = decompose_third(&g).unwrap();
        assert!(verify_distribution(&g, &d).ok());
        assert!(d.len() <= g.m() + 1);
    }

    #[test]
    fn verifier_rejects_bad_weights() {
        let g = k4();
        let mut d = decompose_third(&g).unwrap();
        d.atoms[0].lambda = r(1, 2);
        d.atoms[1].lambda = r(1, 2);
        d.atoms.truncate(2);
        let rep = verify_distribution(&g, &d);
        assert!(!rep.ok());
        assert!(rep.sums_to_one);
        assert!(!rep.marginals_third);
    }

    #[test]
    fn verifier_rejects_cut_violation() {
        let g = prism();
        let d = MatchingDistribution { atoms: vec![Atom { edges: vec![6, 7, 8], lambda: r(1, 1) }] };
        let rep = verify_distribution(&g, &d);
        assert!(rep.perfect);
        assert!(!rep.three_cut_perfect);
    }

    #[test]
    fn infeasible_with_bridge() {
        let g = two_gadget_bridge();
        assert!(g.is_cubic());
        assert!(matches!(decompose_third(&g), Err(Error::Infeasible)));
    }
}
