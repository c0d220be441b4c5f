//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubic_tsp::barnette::{audit_barnette_bounds, barnette_tour, RotationSystem};
use cubic_tsp::cover::{best_tour, Component, EulerianCover, Origin};
use cubic_tsp::general::{solve_general, subtour_lower_bound};
use cubic_tsp::generate::{cube_with_rotation, even_prism, named, random_cubic, random_cubic_bridged, truncated_octahedron};
use cubic_tsp::graph::enumerate_three_cuts;
use cubic_tsp::matching::{decompose_third, verify_distribution};
use cubic_tsp::oracle::{brute_force_three_cuts, held_karp_opt, tsp_by_permutations, verify_cover, verify_tour};
use cubic_tsp::reduce::ReductionKind;
use cubic_tsp::{pipeline, Graph, Rational, Tour};

type Outcome = Result<String, String>;

fn barnette_instances() -> Vec<(String, Graph, RotationSystem)> {
    let mut out = Vec::new();
    let (g, r) = cube_with_rotation();
    out.push(("cube".to_string(), g, r));
    let (g, r) = truncated_octahedron();
    out.push(("truncated octahedron".to_string(), g, r));
    for k in 2..=10 {
        let (g, r) = even_prism(k).unwrap();
        out.push((format!("prism k={k}"), g, r));
    }
    out
}

fn random_suite() -> Vec<(String, Graph)> {
    (0..200u64)
        .map(|i| {
            let n = 8 + 2 * (i as usize % 9);
            (format!("random n={n} seed={i}"), random_cubic(n, i).unwrap())
        })
        .collect()
}

fn hand_built() -> Vec<(String, Graph)> {
    vec![
        ("double hexagon".to_string(), named::double_hexagon()),
        ("hexagon, one chord, three w".to_string(), named::hexagon_one_chord_three_w()),
        ("hexagon, one chord, four w".to_string(), named::hexagon_one_chord_four_w()),
    ]
}

fn criterion_1() -> Outcome {
    let mut fails = Vec::new();
    for (name, g, rot) in barnette_instances() {
        let start = Instant::now();
        let res = barnette_tour(&g, &rot).map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        let n = g.n() as i64;
        let c = res.runs[res.chosen].final_cycles as i64;
        let t = res.tour.len() as i64;
        if 36 * c > 5 * n + 14 {
            fails.push(format!("{name}: |C| = {c}"));
        }
        if 18 * t > 23 * n - 22 {
            fails.push(format!("{name}: |T| = {t}"));
        }
        if took > Duration::from_secs(1) {
            fails.push(format!("{name}: {took:?}"));
        }
        if (name == "cube" || name == "prism k=3") && t != n {
            fails.push(format!("{name}: |T| = {t}, expected {n}"));
        }
    }
    if fails.is_empty() {
        Ok("11 Barnette instances within both bounds".into())
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let mut checks = 0;
    let mut violations = Vec::new();
    for (name, g, rot) in barnette_instances() {
        let res = barnette_tour(&g, &rot).map_err(|e| format!("{name}: {e}"))?;
        let covers: Vec<_> = res.runs.iter().map(|r| r.cover.clone()).collect();
        let audit = audit_barnette_bounds(&g, &res.faces, &covers);
        checks += audit.checks;
        violations.extend(audit.violations.into_iter().map(|v| format!("{name}: {v}")));
    }
    if violations.is_empty() {
        Ok(format!("{checks} lemma checks, no violations"))
    } else {
        Err(violations.join("; "))
    }
}

/// Independent scan: a 6-cycle (found by walking the adjacency) with an edge
/// between two non-consecutive cycle vertices. A 6-cycle through all
/// vertices of a 6-vertex graph does not count.
fn oracle_has_chorded_six_cycle(g: &Graph) -> bool {
    if g.n() <= 6 {
        return false;
    }
    fn extend(g: &Graph, path: &mut Vec<usize>) -> bool {
        if path.len() == 6 {
            if !g.has_edge(path[5], path[0]) {
                return false;
            }
            return (0..6).any(|i| (i + 2..6).any(|j| !(i == 0 && j == 5) && g.has_edge(path[i], path[j])));
        }
        let last = *path.last().unwrap();
        let mut next: Vec<usize> = g.neighbors(last).filter(|&w| w > path[0] && !path.contains(&w)).collect();
        next.sort_unstable();
        next.dedup();
        for w in next {
            path.push(w);
            if extend(g, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    (0..g.n()).any(|s| extend(g, &mut vec![s]))
}

fn criterion_3() -> Outcome {
    let mut kinds: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut fails = Vec::new();
    let graphs: Vec<(String, Graph)> = random_suite().into_iter().chain(hand_built()).collect();
    for (name, g) in &graphs {
        let s = match pipeline::solve(g) {
            Ok(s) => s,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        if oracle_has_chorded_six_cycle(&s.reduced) {
            fails.push(format!("{name}: reduced graph (n = {}) still has a chorded 6-cycle", s.reduced.n()));
        }
        if !verify_tour(g, &s.tour) {
            fails.push(format!("{name}: lifted tour invalid"));
        }
        for (step, &growth) in s.steps.iter().zip(&s.growth) {
            let kind = step.record.kind;
            let e = kinds.entry(format!("{kind:?}")).or_default();
            e.0 += 1;
            e.1 = e.1.max(growth);
            if growth > kind.lift_allowance() {
                fails.push(format!("{name}: {kind:?} grew the tour by {growth}"));
            }
        }
    }
    {
        let (name, kind) = ("double hexagon", ReductionKind::R1);
        let g = &graphs.iter().find(|(n, _)| n == name).unwrap().1;
        let s = pipeline::solve(g).unwrap();
        if s.steps.first().map(|r| r.record.kind) != Some(kind) {
            fails.push(format!("{name}: first step is not {kind:?}"));
        }
    }
    let summary: Vec<String> = kinds.iter().map(|(k, (c, m))| format!("{k}: {c} steps, max growth {m}")).collect();
    if fails.is_empty() {
        Ok(format!("{} graphs; {}", graphs.len(), summary.join(", ")))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_4() -> Outcome {
    let q = |p: i64, d: i64| Rational::new(BigInt::from(p), BigInt::from(d));
    let mut cases: Vec<(String, Graph, Option<Rational>)> = vec![
        ("K4".into(), named::k4(), Some(q(1, 3))),
        ("K3,3".into(), named::k33(), Some(q(1, 6))),
        ("Petersen".into(), named::petersen(), Some(q(1, 6))),
    ];
    for (name, g) in random_suite() {
        if g.n() <= 20 {
            cases.push((name, g, None));
        }
    }
    let mut fails = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, g, uniform) in &cases {
        let start = Instant::now();
        let dist = match decompose_third(g) {
            Ok(d) => d,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        let report = verify_distribution(g, &dist);
        let took = start.elapsed();
        slowest = slowest.max(took);
        if !report.ok() {
            fails.push(format!("{name}: {:?}", report.violations));
        }
        if dist.len() > g.m() + 1 {
            fails.push(format!("{name}: support {} > |E| + 1", dist.len()));
        }
        if let Some(w) = uniform {
            if dist.atoms.iter().any(|a| &a.lambda != w) {
                fails.push(format!("{name}: not the uniform distribution"));
            }
        }
        if took > Duration::from_secs(10) {
            fails.push(format!("{name}: {took:?}"));
        }
    }
    if fails.is_empty() {
        Ok(format!("{} instances exact, slowest {slowest:?}", cases.len()))
    } else {
        Err(fails.join("; "))
    }
}

/// Instances with n < 8 are reported separately: there ⌊(4/3 − ε)n − 2⌋ < n,
/// which no tour can meet.
fn criterion_5() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = random_suite().into_iter().chain(hand_built()).collect();
    graphs.push(("Petersen".into(), named::petersen()));
    graphs.push(("cube".into(), named::cube()));
    for (name, g, _) in barnette_instances() {
        graphs.push((format!("{name} (as general 2-connected)"), g));
    }
    let mut fails = Vec::new();
    for (name, g) in &graphs {
        let s = pipeline::solve(g).map_err(|e| format!("{name}: {e}"))?;
        let bound = pipeline::main_bound(g.n());
        if s.tour.len() as i64 > bound {
            fails.push(format!("{name}: |T| = {} > {bound}", s.tour.len()));
        }
    }
    let mut small = Vec::new();
    for (name, g) in [("K4", named::k4()), ("K3,3", named::k33()), ("prism", named::prism())] {
        let s = pipeline::solve(&g).map_err(|e| format!("{name}: {e}"))?;
        small.push(format!("{name} |T| = {} vs {}", s.tour.len(), pipeline::main_bound(g.n())));
    }
    if fails.is_empty() {
        Ok(format!("{} instances with n >= 8 within the bound (excluded, n < 8: {})", graphs.len(), small.join(", ")))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = random_suite().into_iter().chain(hand_built()).collect();
    graphs.push(("Petersen".into(), named::petersen()));
    let mut audited = 0;
    let mut checks = 0;
    let mut fails = Vec::new();
    for (name, g) in &graphs {
        let s = pipeline::solve(g).map_err(|e| format!("{name}: {e}"))?;
        if let Some(a) = &s.audit {
            audited += 1;
            checks += a.checks;
            fails.extend(a.violations.iter().map(|v| format!("{name}: {v}")));
        }
    }
    if fails.is_empty() {
        Ok(format!("{audited} audited graphs, {checks} checks, no violations"))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_7() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = random_suite().into_iter().filter(|(_, g)| g.n() <= 16).collect();
    graphs.extend(hand_built().into_iter().filter(|(_, g)| g.n() <= 16));
    for (name, g) in [("K4", named::k4()), ("K3,3", named::k33()), ("prism", named::prism()), ("cube", named::cube())] {
        graphs.push((name.into(), g));
    }
    let mut fails = Vec::new();
    let mut worst = Rational::from_integer(1.into());
    for (name, g) in &graphs {
        let t = pipeline::solve(g).map_err(|e| format!("{name}: {e}"))?.tour.len();
        let opt = held_karp_opt(g).map_err(|e| format!("{name}: {e}"))? as usize;
        let ratio = Rational::new(t.into(), opt.into());
        if 3 * t > 4 * opt {
            fails.push(format!("{name}: {t}/{opt}"));
        }
        if t < opt {
            fails.push(format!("{name}: tour {t} below optimum {opt}"));
        }
        worst = worst.max(ratio);
    }
    let p = named::petersen();
    let t = best_tour(&p).map_err(|e| e.to_string())?.tour.len();
    let opt = held_karp_opt(&p).map_err(|e| e.to_string())?;
    if t != 11 || opt != 11 {
        fails.push(format!("Petersen: |T| = {t}, OPT = {opt}"));
    }
    if fails.is_empty() {
        Ok(format!("{} instances, worst ratio {}; Petersen |T| = OPT = 11", graphs.len() + 1, cubic_tsp::io::rational_string(&worst)))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_8() -> Outcome {
    let mut fails = Vec::new();
    let mut count = 0;
    let sizes = [(1, 24), (1, 30), (2, 24), (2, 30), (3, 24), (3, 30), (4, 30)];
    for seed in 0..25u64 {
        for &(b, n) in &sizes {
            let g = match random_cubic_bridged(n, b, seed) {
                Ok(g) => g,
                Err(e) => {
                    fails.push(format!("n={n} b={b} seed={seed}: {e}"));
                    continue;
                }
            };
            count += 1;
            match solve_general(&g, None) {
                Ok(s) => {
                    if !verify_tour(&g, &s.tour) {
                        fails.push(format!("n={n} b={b} seed={seed}: invalid tour"));
                    }
                    if !s.bound_ok() {
                        fails.push(format!("n={n} b={b} seed={seed}: |T| = {}", s.tour.len()));
                    }
                }
                Err(e) => fails.push(format!("n={n} b={b} seed={seed}: {e}")),
            }
        }
    }
    let g = named::two_gadget_bridge();
    let s = solve_general(&g, None).map_err(|e| e.to_string())?;
    let lb = subtour_lower_bound(&g).map_err(|e| e.to_string())?;
    if s.tour.len() != 12 || lb != 12 {
        fails.push(format!("two-gadget instance: |T| = {}, lower bound {lb}", s.tour.len()));
    }
    if fails.is_empty() {
        Ok(format!("{count} bridged instances within 4b + (4/3 - eps)(n - n0); two-gadget |T| = 12 = SUB bound"))
    } else {
        Err(fails.join("; "))
    }
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

fn random_cubic_any(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = 2 * rng.gen_range(2..=max_n / 2);
    let seed = rng.gen();
    if rng.gen_bool(0.3) && n >= 20 {
        let b = rng.gen_range(1..=2);
        if let Ok(g) = random_cubic_bridged(n, b, seed) {
            return g;
        }
    }
    random_cubic(n, seed).unwrap()
}

fn criterion_9() -> Outcome {
    const RUNS: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fails = Vec::new();

    let mut tour_mismatch = 0;
    let mut cover_mismatch = 0;
    for _ in 0..RUNS {
        let n = rng.gen_range(2..=10);
        let extra = rng.gen_range(0..8);
        let g = random_connected(&mut rng, n, extra);
        let mult: Vec<u8> = (0..g.m()).map(|_| rng.gen_range(0..=3)).collect();
        let t = Tour::from_multiplicities(mult.clone());
        if t.is_valid(&g) != verify_tour(&g, &t) {
            tour_mismatch += 1;
        }
        // components from a random vertex colouring; edges kept only inside a colour
        let colours = rng.gen_range(1..=3);
        let colour: Vec<usize> = (0..n).map(|_| rng.gen_range(0..colours)).collect();
        let mut comps: Vec<Component> = (0..colours)
            .map(|c| Component {
                vertices: (0..n).filter(|&v| colour[v] == c).collect(),
                edges: BTreeMap::new(),
                origin: Origin::Initial,
            })
            .filter(|c| !c.vertices.is_empty())
            .collect();
        for (e, [u, v]) in g.edges() {
            let x = mult[e];
            if x > 0 && (colour[u] == colour[v] || rng.gen_bool(0.05)) {
                if let Some(c) = comps.iter_mut().find(|c| c.vertices.contains(&u)) {
                    c.edges.insert(e, x);
                }
            }
        }
        let cover = EulerianCover { components: comps };
        if cover.validate(&g).is_ok() != verify_cover(&g, &cover) {
            cover_mismatch += 1;
        }
    }
    if tour_mismatch + cover_mismatch > 0 {
        fails.push(format!("validators: {tour_mismatch} tour and {cover_mismatch} cover discrepancies"));
    }

    let mut cut_mismatch = 0;
    for i in 0..RUNS {
        let g = random_cubic_any(&mut rng, if i % 100 == 0 { 30 } else { 14 });
        let mut ours: Vec<Vec<usize>> = enumerate_three_cuts(&g).into_iter().map(|c| c.edges).collect();
        for c in ours.iter_mut() {
            c.sort_unstable();
        }
        ours.sort();
        let mut brute = brute_force_three_cuts(&g);
        brute.sort();
        if ours != brute {
            cut_mismatch += 1;
        }
    }
    if cut_mismatch > 0 {
        fails.push(format!("3-cuts: {cut_mismatch} discrepancies"));
    }

    let mut tsp_mismatch = 0;
    for _ in 0..RUNS {
        let n = rng.gen_range(1..=9);
        let extra = rng.gen_range(0..6);
        let g = random_connected(&mut rng, n, extra);
        if held_karp_opt(&g).ok() != tsp_by_permutations(&g).ok() {
            tsp_mismatch += 1;
        }
    }
    if tsp_mismatch > 0 {
        fails.push(format!("Held-Karp: {tsp_mismatch} discrepancies"));
    }

    if fails.is_empty() {
        Ok(format!("{RUNS} checks each for validators, 3-cuts and Held-Karp; no discrepancies"))
    } else {
        Err(fails.join("; "))
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Barnette bounds", criterion_1),
        ("Barnette lemma audit", criterion_2),
        ("reduction soundness", criterion_3),
        ("decomposition exactness", criterion_4),
        ("main bound", criterion_5),
        ("contribution audit", criterion_6),
        ("optimality ratio", criterion_7),
        ("general cubic gluing", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
