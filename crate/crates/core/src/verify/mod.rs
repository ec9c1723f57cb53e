//! Acceptance suites over the shipped fixtures and seeded fuzz streams,
//! producing JSON reports with CSV mirrors.

mod manifest;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

pub use manifest::{load_fixtures, Expected, Fixture, FixtureEntry, FixtureManifest, Provenance, EXPECTED_KEYS};
pub use report::{Report, Violation};

use crate::bicorn::{
    bicorn_path, compose_bound, enumerate_bicorns, enumerate_bicorns_between, lemma18_evidence, slim_witness,
    strategies, BicornError, BoundLedger, Configuration, EvidenceOutcome, WitnessRoute,
};
use crate::diagram::IntersectionDiagram;
use crate::farey::{bgit_farey_sweep, FareyError};
use crate::fuzz::{fuzz_diagrams, fuzz_disjoint_hosts, fuzz_triples, FuzzStats, MAX_FUZZ_CROSSINGS};
use crate::projection::{ProjectedArc, Projection, ProjectionError, SubsurfaceSpec};

/// Env var naming the default report directory.
pub const REPORT_DIR_ENV: &str = "BGIT_REPORT_DIR";

pub const SUITES: [&str; 6] = ["farey-bgit", "bicorn-paths", "slim-triangles", "lemma18", "projections", "ledger"];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}` (expected one of {})", SUITES.join(", "))]
    UnknownSuite(String),
    #[error("fixture manifest, {locus}: {message}")]
    Manifest { locus: String, message: String },
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Bicorn(#[from] BicornError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error("report: {0}")]
    Io(#[from] std::io::Error),
}

/// Size knobs; defaults are the desk-scale caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scale {
    pub max_denominator: i64,
    pub fuzz_count: usize,
    pub max_crossings: usize,
    pub triple_count: usize,
    pub max_per_pair: usize,
    pub host_count: usize,
    pub attempt_cap: usize,
}

impl Default for Scale {
    fn default() -> Self {
        Scale {
            max_denominator: 30,
            fuzz_count: 1000,
            max_crossings: MAX_FUZZ_CROSSINGS,
            triple_count: 200,
            max_per_pair: 10,
            host_count: 200,
            attempt_cap: 5_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub scale: Scale,
    pub fixtures: PathBuf,
    pub with_timing: bool,
}

impl RunConfig {
    pub fn new(seed: u64) -> Self {
        RunConfig { seed, scale: Scale::default(), fixtures: default_fixture_dir(), with_timing: false }
    }
}

pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let mut r = Report::new(name);
    r.note("seed", cfg.seed);
    match name {
        "farey-bgit" => farey(cfg, &mut r)?,
        "bicorn-paths" => paths(cfg, &load_fixtures(&cfg.fixtures)?, &mut r)?,
        "slim-triangles" => slim(cfg, &load_fixtures(&cfg.fixtures)?, &mut r)?,
        "lemma18" => lemma18(cfg, &load_fixtures(&cfg.fixtures)?, &mut r)?,
        "projections" => projections(cfg, &load_fixtures(&cfg.fixtures)?, &mut r)?,
        "ledger" => ledger(&mut r)?,
        _ => return Err(VerifyError::UnknownSuite(name.into())),
    }
    if cfg.with_timing {
        r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

/// Runs the suite and writes its reports under `dir`.
pub fn run_and_write(name: &str, cfg: &RunConfig, dir: &Path) -> Result<Report, VerifyError> {
    let r = run_suite(name, cfg)?;
    r.write(dir)?;
    Ok(r)
}

fn fuzz_stats(r: &mut Report, key: &str, s: &FuzzStats) {
    r.count(&format!("{key}_attempts"), s.attempts as u64);
    r.count(&format!("{key}_accepted"), s.accepted as u64);
    r.count(&format!("{key}_invalid"), s.invalid as u64);
    r.count(&format!("{key}_with_bigons"), s.with_bigons as u64);
    r.count(&format!("{key}_inessential"), s.inessential as u64);
}

fn expected_mismatch(r: &mut Report, f: &Fixture, key: &str, got: toml::Value) {
    if let Some(want) = f.expected(key) {
        r.count("expected_values_checked", 1);
        if *want != got {
            r.violate(f.name(), "expected", format!("{key}: manifest says {want}, computed {got}"));
        }
    }
}

fn farey(cfg: &RunConfig, r: &mut Report) -> Result<(), VerifyError> {
    let s = bgit_farey_sweep(cfg.scale.max_denominator)?;
    r.note("convention", &s.convention);
    r.note("max_denominator", s.max_denominator);
    r.note("search_bound", s.search_bound);
    r.note("check_bound", s.check_bound);
    r.note("slack_invoked", s.slack_invoked);
    r.count("slopes", s.slope_count);
    r.count("pairs", s.pair_count);
    r.count("triples", s.triple_count);
    r.count("avoiding_triples", s.avoiding_triples);
    r.count("forcing_triples", s.forcing_triples);
    r.count("forcing_triples_containing_pivot", s.forcing_triples_containing_pivot);
    r.max("dv_avoiding", s.max_dv_avoiding);
    r.max("dv_overall", s.max_dv_overall);
    for v in &s.violations {
        r.violate(format!("v={} u={} w={}", v.pivot, v.u, v.w), &v.kind, format!("d_v = {}", v.dv));
    }
    if s.violation_count > s.violations.len() as u64 {
        r.violate("sweep", "truncated", format!("{} violations in total", s.violation_count));
    }
    Ok(())
}

/// Per-diagram results, computed in parallel and merged in input order.
fn merge_all<T: Sync, F>(items: &[T], r: &mut Report, check: F)
where
    F: Fn(&T, &mut Report) + Sync,
{
    let parts: Vec<Report> = items
        .par_iter()
        .map(|item| {
            let mut part = Report::new(&r.suite);
            check(item, &mut part);
            part
        })
        .collect();
    for p in parts {
        for (k, v) in p.cases {
            r.count(&k, v);
        }
        for (k, v) in p.maxima {
            r.max(&k, v);
        }
        r.violations.extend(p.violations);
    }
}

fn pairs(d: &IntersectionDiagram) -> Vec<(usize, usize)> {
    let n = d.curve_labels().len();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn check_paths(case: &str, d: &IntersectionDiagram, a: usize, b: usize, r: &mut Report) {
    let i = d.crossings_between(a, b).len() as i64;
    for s in strategies(d, a, b) {
        r.count("paths", 1);
        match bicorn_path(d, a, b, Some(s)) {
            Ok(p) => {
                r.max("path_steps", p.steps.len() as i64);
                r.max("path_steps_minus_crossings", p.steps.len() as i64 - i);
                for v in p.violations(d) {
                    r.violate(format!("{case} {}{} {s}", d.label(a), d.label(b)), v.kind, v.detail);
                }
            }
            Err(e) => r.violate(case, "error", e.to_string()),
        }
    }
    r.max("crossings", i);
}

fn paths(cfg: &RunConfig, fixtures: &[Fixture], r: &mut Report) -> Result<(), VerifyError> {
    r.note("strategies", "every (start crossing, direction along beta, alpha side)");
    r.note("default_strategy", "lowest crossing id, forward along beta, alpha side holding the next lowest id");
    r.note("max_crossings", cfg.scale.max_crossings);
    for f in fixtures {
        let d = &f.diagram;
        r.count("fixtures", 1);
        let bigons: usize = pairs(d).iter().map(|&(a, b)| d.detect_bigons(a, b).len()).sum();
        expected_mismatch(r, f, "bigons", (bigons as i64).into());
        if d.curve_labels().len() == 2 && bigons == 0 {
            if let Ok(all) = enumerate_bicorns(d) {
                expected_mismatch(r, f, "bicorns", (all.len() as i64).into());
                let configs: Vec<Configuration> = all.iter().filter_map(|g| g.configuration(d)).collect();
                if let Some(&c) = configs.first() {
                    let name = if configs.iter().all(|&x| x == c) { format!("{c:?}").to_uppercase() } else { "MIXED".into() };
                    expected_mismatch(r, f, "configuration", name.into());
                }
            }
            if let Ok(p) = bicorn_path(d, 0, 1, None) {
                expected_mismatch(r, f, "path_steps", (p.steps.len() as i64).into());
                if let Some(toml::Value::Integer(min)) = f.expected("path_steps_min") {
                    r.count("expected_values_checked", 1);
                    if (p.steps.len() as i64) < *min {
                        r.violate(f.name(), "expected", format!("default path has {} bicorns", p.steps.len()));
                    }
                }
            }
            expected_mismatch(r, f, "filling", (d.regions().iter().all(|g| g.is_disk())).into());
        }
        if bigons == 0 {
            for (a, b) in pairs(d) {
                if !d.crossings_between(a, b).is_empty() {
                    check_paths(f.name(), d, a, b, r);
                }
            }
        }
    }
    let (ds, stats) = fuzz_diagrams(cfg.seed, cfg.scale.fuzz_count, cfg.scale.max_crossings, cfg.scale.attempt_cap);
    fuzz_stats(r, "fuzz", &stats);
    if ds.len() < cfg.scale.fuzz_count {
        r.violate("fuzz", "yield", format!("{} of {} diagrams before the attempt cap", ds.len(), cfg.scale.fuzz_count));
    }
    let cases: Vec<(usize, &IntersectionDiagram)> = ds.iter().enumerate().collect();
    merge_all(&cases, r, |(k, d), part| {
        part.count("fuzzed_diagrams", 1);
        part.max("genus", d.genus() as i64);
        check_paths(&format!("fuzz#{k}"), d, 0, 1, part);
    });
    Ok(())
}

/// Triples whose three pairs all cross and have no bigons.
fn triple_fixtures(fixtures: &[Fixture]) -> Vec<&Fixture> {
    fixtures
        .iter()
        .filter(|f| {
            let d = &f.diagram;
            d.curve_labels().len() == 3
                && pairs(d).iter().all(|&(a, b)| !d.crossings_between(a, b).is_empty() && d.detect_bigons(a, b).is_empty())
        })
        .collect()
}

const ROLES: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn check_slim(case: &str, d: &IntersectionDiagram, r: &mut Report) -> (bool, bool) {
    let (mut surgery, mut disjoint) = (false, false);
    for (a, b, c) in ROLES {
        let Ok(all) = enumerate_bicorns_between(d, a, b) else {
            r.violate(case, "error", "bicorn enumeration failed");
            continue;
        };
        for g in &all {
            r.count("bicorns", 1);
            let o = match slim_witness(d, g, c) {
                Ok(o) => o,
                Err(e) => {
                    r.violate(case, "error", e.to_string());
                    continue;
                }
            };
            r.max("meets_gamma", o.meets_gamma as i64);
            r.count(&format!("route_{}", serde_json::to_value(o.route).unwrap().as_str().unwrap()), 1);
            surgery |= o.route == WitnessRoute::Surgery && o.meets_gamma >= 4;
            disjoint |= g.arcs().is_some() && o.meets_gamma == 0;
            match &o.witness {
                Some(w) if w.crossings_with_g > 1 => {
                    r.violate(case, "witness", format!("witness crosses g {} times", w.crossings_with_g))
                }
                Some(_) => {}
                None if o.meets_gamma <= 3 => r.count("disjointness_records", 1),
                None => r.violate(
                    format!("{case} {}{}/{}", d.label(a), d.label(b), d.label(c)),
                    "no_witness",
                    format!("bicorn meets the third curve {} times", o.meets_gamma),
                ),
            }
        }
    }
    (surgery, disjoint)
}

fn slim(cfg: &RunConfig, fixtures: &[Fixture], r: &mut Report) -> Result<(), VerifyError> {
    r.note("roles", "each of the three curves in turn plays the third curve");
    r.note("max_per_pair", cfg.scale.max_per_pair);
    for f in triple_fixtures(fixtures) {
        r.count("fixtures", 1);
        let (surgery, disjoint) = check_slim(f.name(), &f.diagram, r);
        if f.expected("slim_route").is_some() {
            expected_mismatch(r, f, "slim_route", if surgery { "surgery" } else { "none" }.into());
        }
        expected_mismatch(r, f, "slim_disjoint", disjoint.into());
    }
    let (ds, stats) = fuzz_triples(cfg.seed, cfg.scale.triple_count, cfg.scale.max_per_pair, cfg.scale.attempt_cap);
    fuzz_stats(r, "fuzz", &stats);
    let cases: Vec<(usize, &IntersectionDiagram)> = ds.iter().enumerate().collect();
    merge_all(&cases, r, |(k, d), part| {
        part.count("fuzzed_triples", 1);
        check_slim(&format!("fuzz#{k}"), d, part);
    });
    Ok(())
}

fn check_lemma18(case: &str, d: &IntersectionDiagram, r: &mut Report) -> bool {
    let mut found = false;
    for (b, c, a) in ROLES {
        let p = match bicorn_path(d, b, c, None) {
            Ok(p) => p,
            Err(e) => {
                r.violate(case, "error", e.to_string());
                continue;
            }
        };
        r.count("paths", 1);
        match lemma18_evidence(d, a, &p) {
            Ok(EvidenceOutcome::Found(e)) => {
                found = true;
                r.count("applicable", 1);
                r.count("found", 1);
                r.count(if e.same_step { "found_within_one_step" } else { "found_across_adjacent_steps" }, 1);
                if e.contradiction_branch {
                    r.count("contradiction_branch", 1);
                }
            }
            Ok(EvidenceOutcome::NotApplicable { crossings, .. }) => {
                r.count("not_applicable", 1);
                r.max("min_crossings_not_applicable", crossings as i64);
            }
            Ok(EvidenceOutcome::NotFound { transitions }) => {
                r.count("applicable", 1);
                r.violate(
                    format!("{case} path {}{} against {}", d.label(b), d.label(c), d.label(a)),
                    "not_found",
                    format!("no disjoint surgered arcs across {transitions} transitions"),
                );
            }
            Err(e) => r.violate(case, "error", e.to_string()),
        }
    }
    found
}

fn lemma18(cfg: &RunConfig, fixtures: &[Fixture], r: &mut Report) -> Result<(), VerifyError> {
    r.note("path_strategy", "default");
    r.note("applicable", "every bicorn of the path crosses the third curve at least 4 times");
    for f in triple_fixtures(fixtures) {
        r.count("fixtures", 1);
        let found = check_lemma18(f.name(), &f.diagram, r);
        expected_mismatch(r, f, "surgery_pair", found.into());
    }
    let (ds, stats) = fuzz_triples(cfg.seed, cfg.scale.triple_count, cfg.scale.max_per_pair, cfg.scale.attempt_cap);
    fuzz_stats(r, "fuzz", &stats);
    let cases: Vec<(usize, &IntersectionDiagram)> = ds.iter().enumerate().collect();
    merge_all(&cases, r, |(k, d), part| {
        part.count("fuzzed_triples", 1);
        check_lemma18(&format!("fuzz#{k}"), d, part);
    });
    Ok(())
}

/// The subsurfaces on either side of `C` with complexity at least one.
pub fn sides_of_c(d: &IntersectionDiagram) -> Vec<SubsurfaceSpec<'_>> {
    let Ok(c) = d.curve("C") else { return Vec::new() };
    if d.is_free(c) {
        return Vec::new();
    }
    let e = d.edges()[d.edge_id(c, 0)];
    let mut out: Vec<SubsurfaceSpec> = Vec::new();
    for h in [e.tail, e.head] {
        if let Ok(y) = SubsurfaceSpec::with_region(d, &[c], d.region_of_face(d.face_of_dart(h))) {
            if y.complexity() >= 1 && !out.iter().any(|o| o.component == y.component) {
                out.push(y);
            }
        }
    }
    out
}

fn arcs_of(y: &SubsurfaceSpec, c: usize) -> Result<Vec<ProjectedArc>, ProjectionError> {
    Ok(match y.pi_a(c)?.projection {
        Projection::Arcs(a) => a,
        _ => Vec::new(),
    })
}

#[derive(Default)]
struct HostFacts {
    complexity: Option<i64>,
    y_boundary: Option<usize>,
    routes: Vec<&'static str>,
}

fn check_host(case: &str, d: &IntersectionDiagram, r: &mut Report) -> HostFacts {
    let mut facts = HostFacts::default();
    let (Ok(a), Ok(b)) = (d.curve("A"), d.curve("B")) else { return facts };
    for y in sides_of_c(d) {
        r.count("subsurfaces", 1);
        facts.complexity.get_or_insert(y.complexity());
        facts.y_boundary.get_or_insert(y.info().boundary);
        r.max("complexity", y.complexity());
        match y.check_arc_lipschitz(a, b) {
            Ok(_) => r.count("arc_lipschitz", 1),
            Err(ProjectionError::Hypothesis(_)) => r.count("arc_lipschitz_hypothesis_fails", 1),
            Err(e) => r.violate(case, "arc_lipschitz", e.to_string()),
        }
        let all = match (arcs_of(&y, a), arcs_of(&y, b)) {
            (Ok(x), Ok(z)) => [x, z].concat(),
            (Err(e), _) | (_, Err(e)) => {
                r.violate(case, "projection", e.to_string());
                continue;
            }
        };
        r.max("arcs", all.len() as i64);
        for (i, x) in all.iter().enumerate() {
            for z in &all[i..] {
                r.count("pi0_pairs", 1);
                match y.check_pi0_lipschitz(x, z) {
                    Ok(ch) => {
                        r.count(&format!("pi0_route_{}", ch.route), 1);
                        r.max("pi0_length", ch.length as i64);
                        if !facts.routes.contains(&ch.route) {
                            facts.routes.push(ch.route);
                        }
                    }
                    Err(e) => r.violate(case, "pi0_lipschitz", e.to_string()),
                }
            }
        }
    }
    facts
}

fn projections(cfg: &RunConfig, fixtures: &[Fixture], r: &mut Report) -> Result<(), VerifyError> {
    r.note("subsurface", "each side of C with complexity >= 1; A and B disjoint");
    r.note("pi0", "essential frontier curves of a regular neighbourhood of the arc and the boundary");
    for f in fixtures.iter().filter(|f| f.diagram.curve_labels().len() == 3) {
        let d = &f.diagram;
        let (a, b) = (d.curve("A").unwrap(), d.curve("B").unwrap());
        if !d.crossings_between(a, b).is_empty() {
            continue;
        }
        r.count("fixtures", 1);
        let facts = check_host(f.name(), d, r);
        if let Some(c) = facts.complexity {
            expected_mismatch(r, f, "complexity", c.into());
        }
        if let Some(b) = facts.y_boundary {
            expected_mismatch(r, f, "y_boundary", (b as i64).into());
        }
        if let Some(toml::Value::String(route)) = f.expected("pi0_route") {
            r.count("expected_values_checked", 1);
            if !facts.routes.contains(&route.as_str()) {
                r.violate(f.name(), "expected", format!("route {route} never taken: {:?}", facts.routes));
            }
        }
    }
    let (ds, stats) = fuzz_disjoint_hosts(cfg.seed, cfg.scale.host_count, 4, cfg.scale.attempt_cap);
    fuzz_stats(r, "fuzz", &stats);
    let cases: Vec<(usize, &IntersectionDiagram)> = ds.iter().enumerate().collect();
    merge_all(&cases, r, |(k, d), part| {
        part.count("fuzzed_hosts", 1);
        check_host(&format!("fuzz#{k}"), d, part);
    });
    Ok(())
}

fn ledger(r: &mut Report) -> Result<(), VerifyError> {
    let l = BoundLedger::default();
    r.note("ledger", l);
    let bound = compose_bound(&l)?;
    r.count("checks", 4);
    r.max("theorem_bound", bound as i64);
    r.max("threshold", l.threshold as i64);
    r.max("segment_cap", l.segment_cap as i64);
    let want = [
        ("theorem_bound", bound, 44),
        ("threshold = hausdorff_radius + filling_min", l.threshold, 14 + 4),
        ("segment_cap = 2 * threshold", l.segment_cap, 2 * 18),
        ("lemma18 + 1 + cap + 1 + lemma18", 3 + 1 + l.segment_cap + 1 + 3, 44),
    ];
    for (what, got, expected) in want {
        if got != expected {
            r.violate("ledger", "arithmetic", format!("{what}: {got} != {expected}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
