//! The eight acceptance criteria, one PASS/FAIL line each. Wherever a check
//! can be restated without the library, the restatement here is the oracle.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bgit::bicorn::{
    bicorn_path, compose_bound, enumerate_bicorns, lemma18_evidence, ArcPart, BoundLedger, EvidenceOutcome,
};
use bgit::diagram::{rotate, IntersectionDiagram};
use bgit::farey::{annular_distance, bgit_farey_sweep, Slope};
use bgit::fuzz::{fuzz_diagrams, fuzz_triples, random_assembly};
use bgit::verify::{load_fixtures, run_suite, Report, RunConfig};
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20;

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome { pass, summary: summary.into() }
}

fn violations(r: &Report) -> String {
    let shown: Vec<String> = r.violations.iter().take(5).map(|v| format!("{} [{}] {}", v.case, v.kind, v.detail)).collect();
    shown.join("; ")
}

fn case(r: &Report, key: &str) -> u64 {
    r.cases.get(key).copied().unwrap_or(0)
}

// ---- Farey oracle: slopes as (p, q) pairs, plain BFS ----

fn slopes(height: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0)];
    for q in 1..=height {
        for p in -height..=height {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

struct Window {
    slopes: Vec<(i64, i64)>,
    adj: Vec<Vec<usize>>,
    index: HashMap<(i64, i64), usize>,
}

impl Window {
    fn new(height: i64) -> Self {
        let slopes = slopes(height);
        let index: HashMap<_, _> = slopes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut adj = vec![Vec::new(); slopes.len()];
        for i in 0..slopes.len() {
            for j in i + 1..slopes.len() {
                let ((a, b), (c, d)) = (slopes[i], slopes[j]);
                if (a * d - b * c).abs() == 1 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Window { slopes, adj, index }
    }

    /// Distances from `s`, never entering `banned`.
    fn bfs(&self, s: (i64, i64), banned: Option<(i64, i64)>) -> Vec<u32> {
        let ban = banned.map(|b| self.index[&b]);
        let mut dist = vec![u32::MAX; self.slopes.len()];
        let src = self.index[&s];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if Some(y) != ban && dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// Whether some geodesic from `u` to `w` avoids `v`, agreeing in two windows.
fn avoids(small: &Window, large: &Window, v: (i64, i64), u: (i64, i64), w: (i64, i64)) -> Option<bool> {
    let answer = |win: &Window| {
        let full = win.bfs(u, None)[win.index[&w]];
        let cut = win.bfs(u, Some(v))[win.index[&w]];
        cut == full
    };
    let a = answer(small);
    (a == answer(large)).then_some(a)
}

fn slope(s: (i64, i64)) -> Slope {
    Slope::new(s.0, s.1).unwrap()
}

fn criterion_1_and_2() -> (Outcome, Outcome) {
    let n = 30;
    let start = Instant::now();
    let r = match bgit_farey_sweep(n) {
        Ok(r) => r,
        Err(e) => return (outcome(false, e.to_string()), outcome(false, "sweep failed")),
    };
    let elapsed = start.elapsed();
    let count_ok = r.slope_count == slopes(n).len() as u64;
    // a triple with d_v >= 5 off some geodesic breaks both statements at once
    let bound = r.violation_count;
    let forcing = r.forcing_triples - r.forcing_triples_containing_pivot;

    // all triples of a small window, decided by BFS alone
    let small_n = 5;
    let (w4, w8) = (Window::new(4 * small_n), Window::new(8 * small_n));
    let base = slopes(small_n);
    let (mut avoiding, mut oracle_errors, mut max_dv) = (0u64, Vec::new(), 0);
    for &v in &base {
        for (i, &u) in base.iter().enumerate() {
            for &w in &base[i + 1..] {
                if u == v || w == v {
                    continue;
                }
                let dv = annular_distance(slope(v), slope(u), slope(w)).unwrap();
                match avoids(&w4, &w8, v, u, w) {
                    Some(true) => {
                        avoiding += 1;
                        max_dv = max_dv.max(dv);
                        if dv > 4 {
                            oracle_errors.push(format!("v={v:?} u={u:?} w={w:?} avoiding with d_v {dv}"));
                        }
                    }
                    Some(false) => {}
                    None => oracle_errors.push(format!("window disagreement at v={v:?} u={u:?} w={w:?}")),
                }
                if dv >= 5 && avoids(&w4, &w8, v, u, w) != Some(false) {
                    oracle_errors.push(format!("v={v:?} u={u:?} w={w:?}: d_v {dv} but a geodesic avoids v"));
                }
            }
        }
    }
    let small = bgit_farey_sweep(small_n).unwrap();
    if small.avoiding_triples != avoiding {
        oracle_errors.push(format!("avoiding triples: sweep {} oracle {avoiding}", small.avoiding_triples));
    }
    let slack = if r.max_dv_avoiding == 4 { "" } else { " (convention slack invoked)" };
    let c1 = outcome(
        bound == 0 && r.max_dv_avoiding <= 4 && count_ok && oracle_errors.is_empty() && elapsed < Duration::from_secs(180),
        format!(
            "{} avoiding triples over {} slopes, max d_v {}{slack}; {} violations; oracle at height {small_n}: {} avoiding, max d_v {max_dv}, {} discrepancies {:?}; {:.1?}",
            r.avoiding_triples,
            r.slope_count,
            r.max_dv_avoiding,
            bound,
            avoiding,
            oracle_errors.len(),
            oracle_errors.iter().take(3).collect::<Vec<_>>(),
            elapsed
        ),
    );
    let c2 = outcome(
        forcing == 0 && r.forcing_triples > 0 && oracle_errors.is_empty(),
        format!(
            "{} triples with d_v >= 5, {} with every geodesic through v",
            r.forcing_triples, r.forcing_triples_containing_pivot
        ),
    );
    (c1, c2)
}

fn criterion_3() -> Outcome {
    let l = BoundLedger::default();
    let bound = compose_bound(&l);
    let pass = bound.as_ref().ok() == Some(&44)
        && l.threshold == 14 + 4
        && l.segment_cap == 2 * 18
        && (l.lemma18_bound, l.lipschitz_step, l.segment_cap) == (3, 1, 36);
    outcome(pass, format!("compose_bound = {bound:?}, threshold {}, cap {}", l.threshold, l.segment_cap))
}

fn cfg() -> RunConfig {
    let mut c = RunConfig::new(SEED);
    c.with_timing = true;
    c
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = match run_suite("bicorn-paths", &cfg()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let fuzzed = case(&r, "fuzzed_diagrams");
    let within = r.maxima.get("path_steps_minus_crossings").is_some_and(|&m| m <= 2);

    // restated here: the beta arcs of consecutive steps strictly lengthen and
    // the last step is beta
    let (ds, _) = fuzz_diagrams(SEED, 200, 12, 1_000_000);
    let mut beta_errors = 0;
    for d in &ds {
        let p = bicorn_path(d, 0, 1, None).unwrap();
        let lens: Vec<usize> = p
            .steps
            .iter()
            .map(|g| match g.beta_arc {
                ArcPart::Empty => 0,
                ArcPart::Proper(a) => a.len,
                ArcPart::Full => usize::MAX,
            })
            .collect();
        if !lens.windows(2).all(|w| w[0] < w[1]) || *lens.last().unwrap() != usize::MAX {
            beta_errors += 1;
        }
    }
    outcome(
        r.passed() && fuzzed >= 1000 && within && beta_errors == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{} fixtures, {fuzzed} fuzzed diagrams, {} paths, max {} steps; {} violations {}; {beta_errors} oracle mismatches; {:.1?}",
            case(&r, "fixtures"),
            case(&r, "paths"),
            r.maxima.get("path_steps").copied().unwrap_or(0),
            r.violations.len(),
            violations(&r),
            elapsed
        ),
    )
}

// ---- bicorn and bigon oracles ----

type Key = (usize, usize, usize, usize);

/// Every (alpha start, alpha length, beta start, beta length) of two subarcs
/// with the same two endpoints and no other common crossing.
fn brute_bicorns(d: &IntersectionDiagram) -> BTreeSet<Key> {
    let (va, vb) = (d.visits(0), d.visits(1));
    let (n, m) = (va.len(), vb.len());
    let mut out = BTreeSet::new();
    for s in 0..n {
        for l in 1..n {
            let ends: BTreeSet<usize> = [va[s], va[(s + l) % n]].into();
            let inner_a: BTreeSet<usize> = (1..l).map(|k| va[(s + k) % n]).collect();
            for t in 0..m {
                for k in 1..m {
                    let ends_b: BTreeSet<usize> = [vb[t], vb[(t + k) % m]].into();
                    if ends_b == ends && (1..k).all(|j| !inner_a.contains(&vb[(t + j) % m])) {
                        out.insert((s, l, t, k));
                    }
                }
            }
        }
    }
    out
}

fn library_bicorns(d: &IntersectionDiagram) -> Option<BTreeSet<Key>> {
    let all = enumerate_bicorns(d).ok()?;
    let whole = all.iter().filter(|g| g.is_alpha() || g.is_beta()).count();
    let proper = all.iter().filter_map(|g| g.arcs().map(|(a, b)| (a.start, a.len, b.start, b.len))).collect();
    (whole == 2).then_some(proper)
}

/// Degree-2 dart orbits in single-face disk regions with one side on each curve.
fn brute_bigons(d: &IntersectionDiagram) -> BTreeSet<usize> {
    let darts = 4 * d.crossing_count();
    let mut seen = vec![false; darts];
    let mut out = BTreeSet::new();
    for h0 in 0..darts {
        if seen[h0] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut h = h0;
        while !seen[h] {
            seen[h] = true;
            orbit.push(h);
            h = rotate(d.opposite(h));
        }
        let face = d.face_of_dart(h0);
        let region = &d.regions()[d.region_of_face(face)];
        let curves: BTreeSet<usize> = orbit.iter().map(|&h| d.curve_of_dart(h)).collect();
        if orbit.len() == 2 && curves.len() == 2 && region.is_disk() && region.faces.len() == 1 {
            out.insert(face);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut diagrams: Vec<IntersectionDiagram> = Vec::new();
    for k in 0..600 {
        let spec = random_assembly(&mut rng, 2, &[1 + k % 8]);
        if let Ok(d) = IntersectionDiagram::from_spec_inferring_genus(spec) {
            diagrams.push(d);
        }
    }
    let (fuzzed, _) = fuzz_diagrams(SEED + 1, 400, 8, 1_000_000);
    diagrams.extend(fuzzed);
    let fixtures = load_fixtures(&bgit::verify::default_fixture_dir()).unwrap();
    diagrams.extend(
        fixtures
            .into_iter()
            .map(|f| f.diagram)
            .filter(|d| d.curve_labels().len() == 2 && d.crossing_count() <= 8),
    );
    let (mut bicorn_cases, mut bigon_cases, mut with_bigons) = (0, 0, 0);
    let mut discrepancies = Vec::new();
    for d in &diagrams {
        bigon_cases += 1;
        let lib: BTreeSet<usize> = d.detect_bigons(0, 1).iter().flat_map(|b| b.faces.clone()).collect();
        let oracle = brute_bigons(d);
        if lib != oracle {
            discrepancies.push(format!("bigons {lib:?} vs {oracle:?}\n{d}"));
        }
        if !oracle.is_empty() {
            with_bigons += 1;
            continue;
        }
        if d.crossing_count() == 0 {
            continue;
        }
        bicorn_cases += 1;
        match library_bicorns(d) {
            Some(lib) if lib == brute_bicorns(d) => {}
            other => discrepancies.push(format!("bicorns {other:?} vs {:?}\n{d}", brute_bicorns(d))),
        }
    }
    outcome(
        discrepancies.is_empty() && bicorn_cases > 0 && with_bigons > 0,
        format!(
            "{bicorn_cases} bicorn sets, {bigon_cases} bigon scans ({with_bigons} with bigons), {} discrepancies {:?}",
            discrepancies.len(),
            discrepancies.first()
        ),
    )
}

fn criterion_6() -> Outcome {
    let r = match run_suite("slim-triangles", &cfg()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let no_witness = r.violations.iter().filter(|v| v.kind == "no_witness").count();
    outcome(
        r.passed() && case(&r, "fuzzed_triples") > 0,
        format!(
            "{} triples, {} bicorns: {} surgery, {} exhaustive, {} degenerate, {} disjointness records; {no_witness} NO_WITNESS; {}",
            case(&r, "fuzzed_triples") + case(&r, "fixtures"),
            case(&r, "bicorns"),
            case(&r, "route_surgery"),
            case(&r, "route_exhaustive"),
            case(&r, "route_degenerate"),
            case(&r, "disjointness_records"),
            violations(&r)
        ),
    )
}

fn criterion_7() -> Outcome {
    let r = match run_suite("lemma18", &cfg()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    // restated here: the two kept arcs share no crossing
    let (ds, _) = fuzz_triples(SEED, 100, 10, 1_000_000);
    let (mut checked, mut overlaps) = (0, 0);
    for d in &ds {
        for (b, c, a) in [(1, 2, 0), (2, 0, 1), (0, 1, 2)] {
            let p = bicorn_path(d, b, c, None).unwrap();
            if let Ok(EvidenceOutcome::Found(e)) = lemma18_evidence(d, a, &p) {
                checked += 1;
                let crossings = |s: &bgit::diagram::Subarc| -> BTreeSet<usize> {
                    let n = d.curve_len(s.curve);
                    (0..=s.len).map(|k| d.visits(s.curve)[(s.start + k) % n]).collect()
                };
                if !crossings(&e.first.kept).is_disjoint(&crossings(&e.second.kept)) {
                    overlaps += 1;
                }
            }
        }
    }
    outcome(
        r.passed() && case(&r, "applicable") > 0 && overlaps == 0 && checked > 0,
        format!(
            "{} applicable, {} found, {} not applicable; oracle rechecked {checked} pairs, {overlaps} overlapping; {}",
            case(&r, "applicable"),
            case(&r, "found"),
            case(&r, "not_applicable"),
            violations(&r)
        ),
    )
}

fn criterion_8() -> Outcome {
    let r = match run_suite("projections", &cfg()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let routes: Vec<String> =
        r.cases.iter().filter(|(k, _)| k.starts_with("pi0_route_")).map(|(k, v)| format!("{}={v}", &k[10..])).collect();
    outcome(
        r.passed() && case(&r, "arc_lipschitz") > 0 && case(&r, "pi0_pairs") > 0,
        format!(
            "{} arc checks ({} without the hypothesis), {} arc pairs [{}], max chain {}; {}",
            case(&r, "arc_lipschitz"),
            case(&r, "arc_lipschitz_hypothesis_fails"),
            case(&r, "pi0_pairs"),
            routes.join(" "),
            r.maxima.get("pi0_length").copied().unwrap_or(-1),
            violations(&r)
        ),
    )
}

fn main() -> ExitCode {
    let (c1, c2) = criterion_1_and_2();
    let results = [
        ("1 farey bound d_v <= 4", c1),
        ("2 farey forcing", c2),
        ("3 ledger arithmetic", criterion_3()),
        ("4 bicorn paths", criterion_4()),
        ("5 oracle equivalence", criterion_5()),
        ("6 slim triangles", criterion_6()),
        ("7 surgery pairs", criterion_7()),
        ("8 projection lipschitz", criterion_8()),
    ];
    let mut ok = true;
    for (name, o) in &results {
        println!("criterion {name}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        ok &= o.pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
