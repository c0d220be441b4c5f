//! Worked examples with values frozen from the brute-force oracles.

use cubic_tsp::general::{algorithm_b, decompose_bridges, subtour_lower_bound};
use cubic_tsp::generate::{named, truncated_octahedron};
use cubic_tsp::graph::{bridges_and_blocks, enumerate_three_cuts};
use cubic_tsp::matching::decompose_third;
use cubic_tsp::oracle::{held_karp_opt, tsp_by_permutations};
use cubic_tsp::reduce::{find_chorded_six_cycle, reduce_fully, ChordClass};
use cubic_tsp::{pipeline, Graph};

#[test]
fn three_cut_counts() {
    let count = |g: &Graph| enumerate_three_cuts(g).len();
    assert_eq!(count(&named::k4()), 4);
    assert_eq!(count(&named::prism()), 7);
    assert_eq!(count(&named::petersen()), 10);
    let prism = enumerate_three_cuts(&named::prism());
    assert_eq!(prism.iter().filter(|c| !c.is_trivial()).map(|c| c.edges.clone()).collect::<Vec<_>>(), vec![vec![6, 7, 8]]);
}

#[test]
fn exact_optima() {
    assert_eq!(held_karp_opt(&named::k4()).unwrap(), 4);
    assert_eq!(held_karp_opt(&named::cube()).unwrap(), 8);
    assert_eq!(held_karp_opt(&named::petersen()).unwrap(), 11);
    assert_eq!(tsp_by_permutations(&named::petersen()).unwrap(), 11);
    assert_eq!(held_karp_opt(&named::two_gadget_bridge()).unwrap(), 12);
    assert_eq!(held_karp_opt(&named::k4_subdivided()).unwrap(), 5);
}

#[test]
fn matching_supports() {
    assert_eq!(decompose_third(&named::k4()).unwrap().len(), 3);
    assert_eq!(decompose_third(&named::k33()).unwrap().len(), 6);
    assert_eq!(decompose_third(&named::petersen()).unwrap().len(), 6);
    assert_eq!(decompose_third(&named::cube()).unwrap().len(), 9);
}

#[test]
fn bridge_gadget_pair() {
    let g = named::two_gadget_bridge();
    let bb = bridges_and_blocks(&g).unwrap();
    assert_eq!(bb.bridges.len(), 1);
    assert_eq!(bb.components.iter().map(Vec::len).collect::<Vec<_>>(), vec![5, 5]);
    assert_eq!(subtour_lower_bound(&g).unwrap(), 12);
    let d = decompose_bridges(&g).unwrap();
    assert_eq!(d.n0(), 0);
    assert_eq!(algorithm_b(&d.components[0].graph).unwrap().len(), 5);
}

#[test]
fn chorded_hexagons() {
    let g = named::double_hexagon();
    let (occ, _) = find_chorded_six_cycle(&g).unwrap().unwrap();
    assert_eq!(occ.class, ChordClass::TwoChords);
    let (h, steps) = reduce_fully(&g).unwrap();
    assert_eq!((steps.len(), h.n()), (2, 8));
    assert!(find_chorded_six_cycle(&named::petersen()).unwrap().is_none());
    assert!(find_chorded_six_cycle(&named::k33()).unwrap().is_none());
}

#[test]
fn truncated_octahedron_tour() {
    let (g, _) = truncated_octahedron();
    let s = pipeline::solve(&g).unwrap();
    assert!(s.tour.len() as i64 <= pipeline::main_bound(24));
}
