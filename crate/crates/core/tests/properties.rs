mod common;

use gallai_core::bounds::{evaluate_bounds, general_upper, known_ramsey, s2_value};
use gallai_core::corpus::{random_coloring, random_free_gallai, random_gallai};
use gallai_core::detect::{find_mono, max_mono_star};
use gallai_core::format::{parse_coloring, serialize};
use gallai_core::partition::{check_part_dichotomy, find_finest_partition, reduced_graph, DichotomySide};
use gallai_core::reduction::{extract_reduction, part_cap, ReductionError, ReductionOutcome};
use gallai_core::{find_gallai_partition, validate_partition, Color, EdgeColoring, TargetGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gallai(seed: u64, n: usize, k: usize) -> EdgeColoring {
    random_gallai(&mut ChaCha8Rng::seed_from_u64(seed), n, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gallai_partition_is_valid(seed in any::<u64>(), n in 2usize..=24, k in 1usize..=5) {
        let c = gallai(seed, n, k);
        let p = find_gallai_partition(&c).unwrap();
        validate_partition(&c, &p).unwrap();
        prop_assert!(p.len() >= 2);
        prop_assert!(p.reduced_colors.len() <= 2);
        let mut seen: Vec<usize> = p.parts.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        prop_assert!(reduced_graph(&c, &p).unwrap().used_colors().len() <= 2);
        let (finest, colors) = find_finest_partition(&c).unwrap();
        validate_partition(&c, &finest).unwrap();
        prop_assert!(finest.largest_part() <= p.largest_part());
        prop_assert!(colors.len() <= 2);
    }

    #[test]
    fn rainbow_inputs_are_rejected(seed in any::<u64>(), n in 3usize..=10) {
        let c = random_coloring(&mut ChaCha8Rng::seed_from_u64(seed), n, 3);
        prop_assert_eq!(find_gallai_partition(&c).is_err(), common::has_rainbow_triangle(&c));
    }

    #[test]
    fn mono_star_has_two_fifths(seed in any::<u64>(), n in 2usize..=15, k in 1usize..=5) {
        let c = gallai(seed, n, k);
        let s = max_mono_star(&c);
        prop_assert!(5 * s.leaves >= 2 * n, "{} leaves on {} vertices", s.leaves, n);
        prop_assert_eq!(s.leaves, (0..k as Color).map(|col| common::max_degree(&c, col)).max().unwrap());
    }

    #[test]
    fn coloring_text_round_trips(seed in any::<u64>(), n in 1usize..=20, k in 1usize..=12) {
        let c = random_coloring(&mut ChaCha8Rng::seed_from_u64(seed), n, k);
        let text = serialize(&c);
        let back = parse_coloring(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serialize(&back), text);
        let json = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<EdgeColoring>(&json).unwrap(), c);
    }

    #[test]
    fn bounds_bracket_is_ordered_and_monotone(
        l in 2usize..=4, extra in 0usize..=3, r in 2u64..=60, k in 2usize..=10,
    ) {
        let m = l + extra;
        let t = TargetGraph::CompleteBipartite { small: l, large: m };
        let now = evaluate_bounds(&t, k, Some(r)).unwrap();
        let next = evaluate_bounds(&t, k + 1, Some(r)).unwrap();
        let (lo, up) = (now.lower.unwrap().value, now.upper.unwrap().value);
        prop_assert!(lo <= up, "{lo} > {up}");
        prop_assert!(next.lower.unwrap().value >= lo);
        // the K_{3,m} formula starts at k = 3
        if k >= 3 {
            prop_assert!(next.upper.unwrap().value >= up);
        }
        if l == 2 {
            prop_assert_eq!(up, s2_value(r, k as u64));
            prop_assert_eq!(general_upper(r, k as u64, 2), s2_value(r, k as u64));
        }
    }
}

#[test]
fn part_dichotomy_never_refuted() {
    for (l, m) in [(2, 2), (2, 3)] {
        let family = common::free_family(l, m, 17, 400);
        assert_eq!(family.len(), 400);
        for c in &family {
            for p in [find_gallai_partition(c).unwrap(), find_finest_partition(c).unwrap().0] {
                let r = check_part_dichotomy(c, &p, l, m).unwrap();
                assert_ne!(r.side, DichotomySide::Refutation, "{c:?}");
            }
        }
    }
}

#[test]
fn reduction_postconditions() {
    let targets = [
        (TargetGraph::C4, 6),
        (TargetGraph::CompleteBipartite { small: 2, large: 3 }, 10),
        (TargetGraph::CompleteBipartite { small: 3, large: 3 }, 18),
        (TargetGraph::Matching(2), 5),
        (TargetGraph::P3Forest(2), 7),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut reduced, mut witnesses, mut errors) = (0, 0, 0);
    for i in 0..600 {
        let (t, r) = targets[i % targets.len()];
        let a = t.s_value().unwrap();
        let n = 2 + i % 14;
        let k = 2 + i % 4;
        let c = if i % 2 == 0 {
            random_gallai(&mut rng, n, k)
        } else {
            match random_free_gallai(&mut rng, n, k, &t) {
                Some(c) => c,
                None => continue,
            }
        };
        let free = (0..k as Color).all(|col| find_mono(&c, col, &t).unwrap().is_none());
        match extract_reduction(&c, &t, r) {
            Ok(ReductionOutcome::MonoWitness(w)) => {
                w.validate(&c).unwrap();
                witnesses += 1;
            }
            Ok(ReductionOutcome::Reduced(red)) => {
                reduced += 1;
                let g = &red.g_prime;
                assert!(g.k() == 3 && g.n() == red.vertices.len());
                assert!(g.n() >= red.size_floor);
                validate_partition(g, &red.partition).unwrap();
                assert!(red.partition.largest_part() <= part_cap(a));
                for (i, j, col) in g.edges() {
                    let orig = c.color(red.vertices[i], red.vertices[j]);
                    match col {
                        2 => {}
                        x => assert_eq!(orig, red.pair_colors[x as usize]),
                    }
                }
                // exceptions of T vertices all point into T
                let rest: Vec<usize> = red.vertices.iter().copied().filter(|w| !red.returned.contains(w)).collect();
                for &(v, col) in &red.t_set {
                    let off = rest.iter().filter(|&&w| w != v && c.color(v, w) != col).count();
                    assert_eq!(off, 0, "T vertex {v} has {off} exceptions outside T");
                    assert_eq!(red.vertices.contains(&v), red.returned.contains(&v));
                }
                if free && n >= r + (a - 1) * (k - 2) {
                    assert!(g.n() >= r, "reduced order {} < R = {r}", g.n());
                }
            }
            Err(ReductionError::TooSmallRemainder { .. }) | Err(ReductionError::LargePart { .. }) => errors += 1,
            Err(e) => panic!("{e}"),
        }
    }
    assert!(reduced > 100 && witnesses > 20, "{reduced} reduced, {witnesses} witnesses, {errors} errors");
}

#[test]
fn known_values_fit_the_bracket() {
    for t in [TargetGraph::C4, TargetGraph::CompleteBipartite { small: 2, large: 3 }, TargetGraph::CompleteBipartite { small: 3, large: 3 }] {
        let r = known_ramsey(&t).unwrap();
        for k in 3..=10u64 {
            let rep = evaluate_bounds(&t, k as usize, None).unwrap();
            assert_eq!(rep.exact(), Some(r + (t.s_value().unwrap() as u64 - 1) * (k - 2)), "{t} k={k}");
        }
    }
}
