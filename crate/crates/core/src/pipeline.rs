//! End-to-end solver for 2-connected cubic graphs: reduce, operate on
//! covers, audit, lift.

use num::{BigInt, Integer};

use crate::cover::{audit_contributions, best_tour, epsilon, BestTour, ContributionAudit};
use crate::error::{Error, Result};
use crate::graph::{bridges, Graph};
use crate::reduce::{lift_through, reduce_fully, Reduction};
use crate::tour::Tour;
use crate::Rational;

#[derive(Clone, Debug)]
pub struct Solution {
    /// Tour of the input graph.
    pub tour: Tour,
    /// Graph without reducible chorded 6-cycles the covers were built on.
    pub reduced: Graph,
    pub steps: Vec<Reduction>,
    /// Tour growth at each lifting step, in reduction order.
    pub growth: Vec<usize>,
    pub best: BestTour,
    pub audit: Option<ContributionAudit>,
}

/// ⌊(4/3 − ε)n − 2⌋.
pub fn main_bound(n: usize) -> i64 {
    let r = (Rational::new(4.into(), 3.into()) - epsilon()) * Rational::from_integer(n.into()) - Rational::from_integer(2.into());
    let f: BigInt = r.numer().div_floor(r.denom());
    i64::try_from(f).expect("bound fits in i64")
}

pub fn check_two_connected_cubic(graph: &Graph) -> Result<()> {
    if !graph.is_cubic() {
        return Err(Error::InvalidGraph("expected a cubic graph".into()));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = bridges(graph, None);
    if !b.is_empty() {
        return Err(Error::InvalidGraph(format!("graph has {} bridge(s)", b.len())));
    }
    Ok(())
}

pub fn solve(graph: &Graph) -> Result<Solution> {
    check_two_connected_cubic(graph)?;
    let (reduced, steps) = reduce_fully(graph)?;
    let best = best_tour(&reduced)?;
    let audit = (!best.runs.is_empty()).then(|| audit_contributions(&reduced, &best.runs));
    let (tour, growth) = lift_through(&steps, &best.tour)?;
    tour.validate(graph)?;
    Ok(Solution { tour, reduced, steps, growth, best, audit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named::*;

    #[test]
    fn bound_values() {
        assert_eq!(main_bound(10), 11);
        assert_eq!(main_bound(12), 13);
        // 4n/3 - 2 is an integer here, so the shaving bites
        assert_eq!(main_bound(18), 21);
        assert_eq!(main_bound(4), 3);
    }

    #[test]
    fn petersen_end_to_end() {
        let s = solve(&petersen()).unwrap();
        assert_eq!(s.tour.len(), 11);
        assert!(s.steps.is_empty());
        assert!(s.audit.unwrap().ok());
    }

    #[test]
    fn double_hexagon_end_to_end() {
        let g = double_hexagon();
        let s = solve(&g).unwrap();
        s.tour.validate(&g).unwrap();
        assert_eq!(s.steps.len(), 2);
        assert!(s.tour.len() as i64 <= main_bound(g.n()));
    }

    #[test]
    fn bridges_are_rejected() {
        assert!(matches!(solve(&two_gadget_bridge()), Err(Error::InvalidGraph(_))));
    }
}
