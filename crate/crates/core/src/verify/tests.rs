use super::*;

fn small(seed: u64) -> RunConfig {
    let mut c = RunConfig::new(seed);
    c.scale = Scale { max_denominator: 5, fuzz_count: 40, triple_count: 8, max_per_pair: 4, host_count: 8, ..Scale::default() };
    c
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(run_suite("bicorns", &small(1)), Err(VerifyError::UnknownSuite(_))));
}

#[test]
fn every_suite_passes_at_small_scale() {
    for s in SUITES {
        let r = run_suite(s, &small(2)).unwrap();
        assert!(r.passed(), "{s}: {:?}", r.violations);
        assert!(r.wall_time_ms.is_none());
    }
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite("slim-triangles", &small(3)).unwrap();
    let b = run_suite("slim-triangles", &small(3)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_csv(), b.to_csv());
}

#[test]
fn csv_mirrors_cases_maxima_and_violations() {
    let mut r = Report::new("demo");
    r.count("paths", 3);
    r.max("steps", 4);
    r.violate("fuzz#1", "adjacent", "crosses twice, badly");
    let csv = r.to_csv();
    assert_eq!(
        csv,
        "suite,section,key,value\ndemo,cases,paths,3\ndemo,maxima,steps,4\ndemo,violation,fuzz#1/adjacent,\"crosses twice, badly\"\n"
    );
    assert!(!r.passed());
}

#[test]
fn ledger_suite_reproduces_the_bound() {
    let r = run_suite("ledger", &small(0)).unwrap();
    assert_eq!(r.maxima["theorem_bound"], 44);
    assert_eq!(r.maxima["threshold"], 18);
    assert_eq!(r.maxima["segment_cap"], 36);
}
