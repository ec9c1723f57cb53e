use super::*;
use crate::diagram::parse_diagram;
use crate::fuzz::{fuzz_diagrams, fuzz_triples};

const TORUS: &str = "genus 1\ncurves A B\nx 0 A B +1\ncycle A 0:0\ncycle B 0:1\n";

#[test]
fn one_crossing_has_only_the_two_curves() {
    let d = parse_diagram(TORUS).unwrap();
    let all = enumerate_bicorns(&d).unwrap();
    assert_eq!(all.len(), 2);
    let p = bicorn_path(&d, 0, 1, None).unwrap();
    assert_eq!(p.steps, vec![Bicorn::whole_alpha(0, 1), Bicorn::whole_beta(0, 1)]);
    assert!(p.violations(&d).is_empty());
    let s = Strategy::default_for(&d, 0, 1).unwrap();
    assert_eq!(initial_bicorn(&d, 0, 1, &s).unwrap(), Bicorn::whole_beta(0, 1));
    assert_eq!(bicorn_crossings(&d, all.first().unwrap(), all.last().unwrap()), 1);
}

#[test]
fn strategy_text_round_trip() {
    let s: Strategy = "3:-:+".parse().unwrap();
    assert_eq!(s, Strategy { start: 3, direction: Direction::Backward, side: Direction::Forward });
    assert_eq!(s.to_string(), "3:-:+");
    assert!("3:x:+".parse::<Strategy>().is_err());
}

#[test]
fn ledger_arithmetic() {
    let l = BoundLedger::default();
    assert_eq!((l.threshold, l.segment_cap), (18, 36));
    assert_eq!(compose_bound(&l).unwrap(), 44);
    let z = BoundLedger::new(0, 4);
    assert_eq!((z.threshold, z.segment_cap, compose_bound(&z).unwrap()), (4, 8, 16));
    let bad = BoundLedger { theorem_bound: 43, ..l };
    assert!(compose_bound(&bad).is_err());
}

#[test]
fn fuzzed_paths_satisfy_every_invariant() {
    let (ds, stats) = fuzz_diagrams(7, 150, 9, 200_000);
    assert_eq!(ds.len(), 150, "{stats:?}");
    for d in &ds {
        for s in strategies(d, 0, 1) {
            let p = bicorn_path(d, 0, 1, Some(s)).unwrap();
            let v = p.violations(d);
            assert!(v.is_empty(), "{}\nstrategy {s}: {v:?}", d);
        }
        for g in enumerate_bicorns(d).unwrap() {
            assert!(d.is_essential(&g.walk(d)), "{}", d);
        }
    }
}

#[test]
fn extension_grows_beta_arc() {
    let (ds, _) = fuzz_diagrams(11, 40, 8, 100_000);
    for d in &ds {
        let p = bicorn_path(d, 0, 1, None).unwrap();
        let all = enumerate_bicorns(d).unwrap();
        for w in p.steps.windows(2) {
            assert!(w[0].beta_arc_below(&w[1], d));
            assert!(all.contains(&w[1]));
        }
    }
}

#[test]
fn fuzzed_triples_have_slim_witnesses() {
    let (ds, stats) = fuzz_triples(3, 30, 4, 400_000);
    assert!(!ds.is_empty(), "{stats:?}");
    for d in &ds {
        for g in enumerate_bicorns_between(d, 0, 1).unwrap() {
            let o = slim_witness(d, &g, 2).unwrap();
            if o.witness.is_none() {
                assert!(o.meets_gamma <= 3, "{}\n{:?}", d, o);
            }
        }
    }
}
