//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured time. Run with `cargo test --test acceptance -- --nocapture`
//! to see the per-criterion lines.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::MinimaxOracle;
use flipwidth::census::{run_census, CensusConfig};
use flipwidth::flips::{apply_flip, flip_pair, FlipSpec, Partition};
use flipwidth::graph::{Graph, Radius, VertexSet};
use flipwidth::iso::{enumerate_classes, enumerate_labeled};
use flipwidth::obstructions::{
    flip_closure_table, isolation_census, two_vertex_component_census, CensusOutcome,
    is_obstruction_free, CensusPairs, ObstructionKind,
};
use flipwidth::solver::{flip_width, solve, solve_with, SolveOptions};
use flipwidth::strategy::{radius1_script, synthesize_strategy};
use flipwidth::verify::verify_strategy;

const RADII: [Radius; 3] = [Radius::Finite(1), Radius::Finite(2), Radius::Infinite];

#[test]
fn criterion_1_obstructions_escape_width_2_at_radius_2() {
    let t0 = Instant::now();
    for kind in ObstructionKind::ALL {
        let t = Instant::now();
        let verdict = solve(&kind.graph(), 2, Radius::Finite(2)).unwrap();
        assert!(
            !verdict.flipper_wins,
            "{kind} must not be caught at width 2, radius 2"
        );
        assert!(!verdict.safe_region.is_empty());
        println!("  {kind}: flipper loses ({:?})", t.elapsed());
    }
    println!("criterion 1 (lower bound): PASS in {:?}", t0.elapsed());
}

fn run_characterization_census(n: usize) {
    let graphs = enumerate_classes(n).unwrap();
    let report = run_census(&graphs, &CensusConfig::new(Radius::Infinite));
    assert_eq!(report.summary.inconsistent, 0, "n={n} census has inconsistencies");
    assert_eq!(report.summary.skipped, 0, "n={n} census skipped graphs");
    assert_eq!(report.summary.strategy_failures, 0, "n={n} strategy failures");
    for r in &report.records {
        assert_eq!(r.obstruction_free, r.completely_decomposable);
        assert_eq!(r.completely_decomposable, r.fw_le_2);
        if r.obstruction_free == Some(true) {
            assert_eq!(r.strategy_verified, Some(true), "{} strategy unverified", r.graph6);
        }
    }
}

#[test]
fn criterion_2_characterization_census_up_to_n6() {
    let t0 = Instant::now();
    for n in 1..=6 {
        let count = enumerate_classes(n).unwrap().len();
        if n == 6 {
            assert_eq!(count, 156);
        }
        run_characterization_census(n);
        println!("  n={n}: {count} classes consistent");
    }
    println!("criterion 2 (characterization, n <= 6): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_2_extended_census_n7() {
    let t0 = Instant::now();
    assert_eq!(enumerate_classes(7).unwrap().len(), 1044);
    run_characterization_census(7);
    println!("criterion 2 extended (n = 7, 1044 classes): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_3_radius_1_scripts() {
    let t0 = Instant::now();
    let cogem = ObstructionKind::CoGem.graph();
    let gem = ObstructionKind::Gem.graph();
    let cogem_script = radius1_script(ObstructionKind::CoGem).unwrap();
    let gem_script = radius1_script(ObstructionKind::Gem).unwrap();

    let r1 = verify_strategy(&cogem, Radius::Finite(1), &cogem_script).unwrap();
    assert!(r1.captures, "co-gem script must capture at radius 1");

    let g1 = verify_strategy(&gem, Radius::Finite(1), &gem_script).unwrap();
    assert!(g1.captures, "conjugated gem script must capture at radius 1");

    let r2 = verify_strategy(&cogem, Radius::Finite(2), &cogem_script).unwrap();
    assert!(!r2.captures, "co-gem script must fail at radius 2");
    assert!(r2.escape.is_some());

    println!("criterion 3 (radius-1 scripts): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_4_flip_closure_of_the_obstruction_set() {
    let t0 = Instant::now();
    let mut rows = 0;
    for kind in ObstructionKind::ALL {
        let table = flip_closure_table(kind)
            .unwrap_or_else(|(a, h)| panic!("{kind}: flip at {a} left the set: {h:?}"));
        assert_eq!(table.len(), 15);
        rows += table.len();
    }
    assert_eq!(rows, 60);
    println!("criterion 4 (single-flip closure, 60 rows): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_5_flip_censuses_match_the_case_lists() {
    let t0 = Instant::now();

    // expected hits, (obstruction, A, pair flags), in enumeration order
    let aa = CensusPairs::AA;
    let bb = CensusPairs::BB;
    let ab = CensusPairs::AB;
    let expect_isolation: [(ObstructionKind, &[(&[usize], u8)]); 4] = [
        (ObstructionKind::C5, &[]),
        (ObstructionKind::Bull, &[]),
        (
            ObstructionKind::Gem,
            &[
                (&[0, 2], bb | ab),
                (&[1, 3], bb | ab),
                (&[1, 4], aa | ab),
                (&[2, 4], aa | ab),
            ],
        ),
        (
            ObstructionKind::CoGem,
            &[(&[0, 1], aa), (&[2, 3], aa), (&[0, 4], bb), (&[3, 4], bb)],
        ),
    ];
    for (kind, expected) in expect_isolation {
        let hits = isolation_census(kind);
        let got: Vec<(VertexSet, u8)> = hits.iter().map(|h| (h.a, h.pairs.0)).collect();
        let want: Vec<(VertexSet, u8)> = expected
            .iter()
            .map(|&(a, p)| (VertexSet::from_iter(a.iter().copied()), p))
            .collect();
        assert_eq!(got, want, "{kind} isolation census");
        for h in &hits {
            assert_eq!(
                h.outcome,
                CensusOutcome::IsolatedVertices(2),
                "{kind}: a hit must have exactly two isolated vertices"
            );
        }
    }

    let expect_components: [(ObstructionKind, &[(&[usize], u8)]); 4] = [
        (ObstructionKind::C5, &[]),
        (ObstructionKind::Bull, &[(&[0, 1], aa | ab), (&[3, 4], bb)]),
        (ObstructionKind::Gem, &[(&[0, 3], bb | ab)]),
        (ObstructionKind::CoGem, &[(&[1, 2], aa)]),
    ];
    for (kind, expected) in expect_components {
        let hits = two_vertex_component_census(kind);
        let got: Vec<(VertexSet, u8)> = hits.iter().map(|h| (h.a, h.pairs.0)).collect();
        let want: Vec<(VertexSet, u8)> = expected
            .iter()
            .map(|&(a, p)| (VertexSet::from_iter(a.iter().copied()), p))
            .collect();
        assert_eq!(got, want, "{kind} two-vertex-component census");
        for h in &hits {
            match &h.outcome {
                CensusOutcome::ComponentOrders(orders) => assert!(orders.contains(&2)),
                other => panic!("unexpected outcome {other:?}"),
            }
        }
    }

    println!("criterion 5 (flip censuses): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_6_cross_edge_elimination_across_the_census() {
    let t0 = Instant::now();
    let mut triples = 0usize;
    for n in 1..=7 {
        for g in enumerate_classes(n).unwrap() {
            if !is_obstruction_free(&g) {
                continue;
            }
            let strat = synthesize_strategy(&g).unwrap();
            for phase in strat.plan().values() {
                // direct edge scan: the announced graph joins no two
                // distinct members of the phase triple
                let h = apply_flip(&g, &phase.spec).unwrap();
                let [a, b, c] = phase.triple.members();
                for u in h.vertices() {
                    let own = [a, b, c].into_iter().find(|s| s.contains(u)).unwrap();
                    assert!(
                        h.neighbors(u).is_subset_of(own),
                        "cross edge after {} on {:?}",
                        phase.spec,
                        g
                    );
                }
                triples += 1;
            }
        }
    }
    assert!(triples > 0);
    println!(
        "criterion 6 (cross-edge elimination, {triples} triples over n <= 7): PASS in {:?}",
        t0.elapsed()
    );
}

#[test]
fn criterion_7a_flip_involution_and_commutativity_random() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f11b);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges);

        let blocks = rng.gen_range(1..=n.min(4));
        let mut parts = vec![VertexSet::EMPTY; blocks];
        for v in 0..n {
            parts[rng.gen_range(0..blocks)].insert(v);
        }
        parts.retain(|p| !p.is_empty());
        let p = parts.len();
        let all_pairs: Vec<(usize, usize)> =
            (0..p).flat_map(|i| (i..p).map(move |j| (i, j))).collect();
        let pairs: Vec<(usize, usize)> =
            all_pairs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let spec = FlipSpec::new(Partition::new(parts).unwrap(), pairs).unwrap();

        // involution
        let h = apply_flip(&g, &spec).unwrap();
        assert_eq!(apply_flip(&h, &spec).unwrap(), g);

        // commutativity: shuffled pair-at-a-time application
        let mut order: Vec<(usize, usize)> = spec.pairs().to_vec();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut stepwise = g;
        for (i, j) in order {
            stepwise = flip_pair(
                &stepwise,
                spec.partition().parts()[i],
                spec.partition().parts()[j],
            );
        }
        assert_eq!(stepwise, h);
    }
    println!("criterion 7a (10^4 random flip specs): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_7b_complement_conjugation_of_verdicts() {
    let t0 = Instant::now();
    for n in 1..=5 {
        for g in enumerate_classes(n).unwrap() {
            for k in 1..=2 {
                for r in RADII {
                    let a = solve(&g, k, r).unwrap().flipper_wins;
                    let b = solve(&g.complement(), k, r).unwrap().flipper_wins;
                    assert_eq!(a, b, "conjugation fails on {g:?} k={k} r={r}");
                }
            }
        }
    }
    println!("criterion 7b (complement conjugation, n <= 5): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_7c_radius_monotone_verdicts() {
    let t0 = Instant::now();
    let radii = [Radius::Finite(1), Radius::Finite(2), Radius::Finite(3), Radius::Infinite];
    for n in 1..=5 {
        for g in enumerate_classes(n).unwrap() {
            for k in 1..=2 {
                let wins: Vec<bool> =
                    radii.iter().map(|&r| solve(&g, k, r).unwrap().flipper_wins).collect();
                // a win against a more mobile runner implies a win against
                // a less mobile one: wins must be monotone decreasing
                for w in wins.windows(2) {
                    assert!(
                        w[0] || !w[1],
                        "radius monotonicity fails on {g:?} k={k}: {wins:?}"
                    );
                }
            }
        }
    }
    println!("criterion 7c (radius-monotone verdicts, n <= 5): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_7d_induced_subgraph_monotonicity() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d_5eed);
    let classes: Vec<Graph> = (1..=5).flat_map(|n| enumerate_classes(n).unwrap()).collect();
    for trial in 0..100 {
        let g = classes[rng.gen_range(0..classes.len())];
        let s = VertexSet(rng.gen_range(0..1u16 << g.order()));
        let (h, _) = g.induced_subgraph(s);
        let r = RADII[trial % 3];
        let fw_g = flip_width(&g, r).unwrap();
        let fw_h = if h.order() == 0 { 1 } else { flip_width(&h, r).unwrap() };
        assert!(
            fw_h <= fw_g,
            "induced monotonicity fails: fw({h:?})={fw_h} > fw({g:?})={fw_g} at r={r}"
        );
    }
    println!("criterion 7d (induced-subgraph monotonicity, 100 pairs): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_7e_solver_equals_minimax_oracle() {
    let t0 = Instant::now();
    for n in 0..=4 {
        for g in enumerate_labeled(n).unwrap() {
            for k in 1..=3.min(n.max(1)) {
                for r in RADII {
                    let (verdict, arena) = solve_with(&g, k, r, &SolveOptions::default()).unwrap();
                    let oracle = MinimaxOracle::new(&g, k, r).solve();
                    assert_eq!(
                        verdict.flipper_wins, oracle.flipper_wins,
                        "oracle mismatch on {g:?} k={k} r={r}"
                    );
                    let solver_depths: std::collections::HashMap<(Graph, usize), u32> = verdict
                        .ranks
                        .iter()
                        .map(|(s, &rank)| ((arena.flips()[s.graph].1, s.runner), rank))
                        .collect();
                    assert_eq!(
                        solver_depths, oracle.depth,
                        "capture depths differ on {g:?} k={k} r={r}"
                    );
                }
            }
        }
    }
    println!("criterion 7e (solver = minimax oracle, n <= 4): PASS in {:?}", t0.elapsed());
}

#[test]
fn criterion_8_width_1_graphs_are_complete_or_edgeless() {
    let t0 = Instant::now();
    for n in 1..=5 {
        for g in enumerate_classes(n).unwrap() {
            let expect = g.is_complete() || g.is_edgeless();
            for r in RADII {
                let fw = flip_width(&g, r).unwrap();
                assert_eq!(
                    fw == 1,
                    expect,
                    "width-1 characterization fails on {g:?} at r={r} (fw={fw})"
                );
            }
        }
    }
    println!("criterion 8 (flip-width 1 characterization, n <= 5): PASS in {:?}", t0.elapsed());
}
