use bgit::bicorn::{bicorn_crossings, enumerate_bicorns, Direction, Strategy as PathStrategy};
use bgit::diagram::{parse_diagram, serialize_diagram, serialize_diagram_json, IntersectionDiagram};
use bgit::farey::{annular_distance, farey_adjacent, farey_distance, Slope};
use bgit::fuzz::{certify, random_assembly, FuzzStats};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A certified diagram from `seed`, retrying a bounded number of candidates.
fn diagram(seed: u64, curves: usize, max: usize) -> Option<IntersectionDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    (0..200).find_map(|k| {
        let counts: Vec<usize> = (0..if curves == 2 { 1 } else { 3 }).map(|j| 1 + (seed as usize + k + j) % max).collect();
        certify(random_assembly(&mut rng, curves, &counts), &mut stats)
    })
}

fn slope() -> impl Strategy<Value = Slope> {
    (-40i64..=40, 0i64..=40).prop_filter_map("not a slope", |(p, q)| Slope::new(p, q).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>(), curves in 2usize..=3) {
        if let Some(d) = diagram(seed, curves, 6) {
            let text = serialize_diagram(d.spec());
            let back = parse_diagram(&text).unwrap();
            prop_assert_eq!(back.spec(), d.spec());
            prop_assert_eq!(serialize_diagram(back.spec()), text);
            let json = serialize_diagram_json(d.spec());
            let from_json = parse_diagram(&json).unwrap();
            prop_assert_eq!(from_json.spec(), d.spec());
        }
    }

    #[test]
    fn intersection_number_counts_crossings(seed in any::<u64>()) {
        if let Some(d) = diagram(seed, 3, 5) {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                prop_assert_eq!(d.intersection_number(a, b).unwrap(), d.crossings_between(a, b).len());
            }
        }
    }

    #[test]
    fn bicorn_crossings_are_symmetric(seed in any::<u64>()) {
        if let Some(d) = diagram(seed, 2, 6) {
            let all: Vec<_> = enumerate_bicorns(&d).unwrap().into_iter().collect();
            for g in &all {
                prop_assert!(d.is_essential(&g.walk(&d)));
                for h in &all {
                    prop_assert_eq!(bicorn_crossings(&d, g, h), bicorn_crossings(&d, h, g));
                }
            }
        }
    }

    #[test]
    fn slope_text_round_trip(s in slope()) {
        prop_assert_eq!(s.to_string().parse::<Slope>().unwrap(), s);
    }

    #[test]
    fn farey_distance_is_a_metric_on_neighbours(u in slope(), v in slope()) {
        let d = farey_distance(u, v).unwrap();
        prop_assert_eq!(d, farey_distance(v, u).unwrap());
        prop_assert_eq!(d == 0, u == v);
        prop_assert_eq!(d == 1, farey_adjacent(u, v));
    }

    #[test]
    fn annular_distance_is_symmetric(v in slope(), u in slope(), w in slope()) {
        prop_assume!(u != v && w != v);
        prop_assert_eq!(annular_distance(v, u, w).unwrap(), annular_distance(v, w, u).unwrap());
    }

    #[test]
    fn strategy_text_round_trip(start in 0u32..1000, f in any::<bool>(), g in any::<bool>()) {
        let dir = |b: bool| if b { Direction::Forward } else { Direction::Backward };
        let s = PathStrategy { start, direction: dir(f), side: dir(g) };
        prop_assert_eq!(s.to_string().parse::<PathStrategy>().unwrap(), s);
    }
}
