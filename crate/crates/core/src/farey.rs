//! Exact Farey graph.
//!
//! Vertices are slopes `p/q` in lowest terms together with `1/0`; two slopes
//! are adjacent when `|p1*q2 - p2*q1| = 1`. Distances and geodesics are found
//! by breadth-first search inside a finite window of slopes of bounded height,
//! and every answer is re-checked in a window twice as large.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Window multiplier: searches run over slopes of height at most
/// `SEARCH_FACTOR * max(input heights)`.
pub const SEARCH_FACTOR: i64 = 4;

/// Upper bound on the number of geodesics `enumerate_geodesics` will list.
pub const MAX_GEODESICS: usize = 200_000;

/// Largest value of `annular_distance` allowed for a triple whose endpoints
/// are joined by a geodesic avoiding the pivot.
pub const AVOIDING_BOUND: i64 = 4;

pub const PROJECTION_CONVENTION: &str = "pivot sent to 1/0 by the Bezout matrix [[p, r], [q, s]] with ps - qr = 1 \
minimising |r| + |s| (ties: r >= 0, then smaller |r|); a slope with image x projects to {floor(x)} if x is an \
integer and {floor(x), floor(x) + 1} otherwise; d_v is the diameter of the union of the two projections";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FareyError {
    #[error("invalid slope `{0}`")]
    Parse(String),
    #[error("0/0 is not a slope")]
    ZeroSlope,
    #[error("{0} is not adjacent to pivot {1}")]
    NotAdjacent(Slope, Slope),
    #[error("projection to the annulus about {0} is undefined for the pivot itself")]
    PivotProjection(Slope),
    #[error("geodesic enumeration needs distinct endpoints")]
    SameEndpoints,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("max denominator must be at least {min}, got {got}")]
    BadBound { min: i64, got: i64 },
}

/// A vertex of the Farey graph: a reduced fraction `p/q` with `q >= 0`,
/// where `1/0` is the only slope with `q = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self, FareyError> {
        if p == 0 && q == 0 {
            return Err(FareyError::ZeroSlope);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(n: i64) -> Self {
        Slope { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    fn from_pair(a: i64, b: i64) -> Self {
        Slope::new(a, b).expect("unimodular image of a slope is a slope")
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Slope::INFINITY);
        }
        let bad = || FareyError::Parse(s.to_string());
        match t.split_once('/') {
            Some((a, b)) => {
                let p = a.trim().parse::<i64>().map_err(|_| bad())?;
                let q = b.trim().parse::<i64>().map_err(|_| bad())?;
                Slope::new(p, q).map_err(|_| bad())
            }
            None => t.parse::<i64>().map(Slope::integer).map_err(|_| bad()),
        }
    }
}

impl TryFrom<String> for Slope {
    type Error = FareyError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Slope> for String {
    fn from(s: Slope) -> String {
        s.to_string()
    }
}

pub fn farey_adjacent(u: Slope, v: Slope) -> bool {
    let det = u.p as i128 * v.q as i128 - v.p as i128 * u.q as i128;
    det.abs() == 1
}

/// Some `(r, s)` with `p*s - q*r = 1`.
fn bezout(p: i64, q: i64) -> (i64, i64) {
    // extended gcd gives x*p + y*q = 1, so s = x and r = -y.
    let e = p.extended_gcd(&q);
    let (x, y) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    debug_assert_eq!(x * p + y * q, 1);
    (-y, x)
}

/// The matrix `[[p, r], [q, s]]` of determinant one sending `1/0` to the pivot,
/// with the normalised Bezout column described in [`PROJECTION_CONVENTION`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PivotFrame {
    pivot: Slope,
    r: i64,
    s: i64,
}

impl PivotFrame {
    pub fn new(pivot: Slope) -> Self {
        let (p, q) = (pivot.p, pivot.q);
        let (r0, s0) = bezout(p, q);
        // f(k) = |r0 + k p| + |s0 + k q| is convex; scan between its breakpoints.
        let mut marks = Vec::new();
        if p != 0 {
            marks.push(Integer::div_floor(&(-r0), &p));
            marks.push(Integer::div_ceil(&(-r0), &p));
        }
        if q != 0 {
            marks.push(Integer::div_floor(&(-s0), &q));
            marks.push(Integer::div_ceil(&(-s0), &q));
        }
        marks.push(0);
        let lo = *marks.iter().min().unwrap() - 1;
        let hi = *marks.iter().max().unwrap() + 1;
        let (r, s) = (lo..=hi)
            .map(|k| (r0 + k * p, s0 + k * q))
            .min_by_key(|&(r, s)| (r.abs() + s.abs(), r < 0, r.abs()))
            .unwrap();
        debug_assert_eq!(p * s - q * r, 1);
        PivotFrame { pivot, r, s }
    }

    pub fn pivot(&self) -> Slope {
        self.pivot
    }

    /// The Bezout column `(r, s)`.
    pub fn column(&self) -> (i64, i64) {
        (self.r, self.s)
    }

    /// Image of `u` under the inverse matrix, as an unreduced pair `(a, b)` with `b >= 0`.
    pub fn to_frame(&self, u: Slope) -> (i64, i64) {
        let (p, q, r, s) = (self.pivot.p, self.pivot.q, self.r, self.s);
        let a = s * u.p - r * u.q;
        let b = -q * u.p + p * u.q;
        if b < 0 || (b == 0 && a < 0) {
            (-a, -b)
        } else {
            (a, b)
        }
    }

    pub fn from_frame(&self, a: i64, b: i64) -> Slope {
        let (p, q, r, s) = (self.pivot.p, self.pivot.q, self.r, self.s);
        Slope::from_pair(p * a + r * b, q * a + s * b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCoordinate {
    pub pivot: Slope,
    pub index: i64,
}

impl LinkCoordinate {
    pub fn decode(&self) -> Slope {
        PivotFrame::new(self.pivot).from_frame(self.index, 1)
    }
}

pub fn link_coordinate(pivot: Slope, u: Slope) -> Result<LinkCoordinate, FareyError> {
    if !farey_adjacent(pivot, u) {
        return Err(FareyError::NotAdjacent(u, pivot));
    }
    let (a, b) = PivotFrame::new(pivot).to_frame(u);
    debug_assert_eq!(b, 1);
    Ok(LinkCoordinate { pivot, index: a })
}

/// Projection of a slope to the annulus about a pivot: one integer, or two
/// consecutive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnularProjection {
    pub lo: i64,
    pub hi: i64,
}

impl AnnularProjection {
    pub fn indices(&self) -> BTreeSet<i64> {
        (self.lo..=self.hi).collect()
    }
}

fn project_in_frame(frame: &PivotFrame, u: Slope) -> Result<AnnularProjection, FareyError> {
    let (a, b) = frame.to_frame(u);
    if b == 0 {
        return Err(FareyError::PivotProjection(frame.pivot));
    }
    let lo = Integer::div_floor(&a, &b);
    let hi = if a.is_multiple_of(&b) { lo } else { lo + 1 };
    Ok(AnnularProjection { lo, hi })
}

pub fn annular_projection(pivot: Slope, u: Slope) -> Result<AnnularProjection, FareyError> {
    project_in_frame(&PivotFrame::new(pivot), u)
}

pub fn projection_distance(a: AnnularProjection, b: AnnularProjection) -> i64 {
    a.hi.max(b.hi) - a.lo.min(b.lo)
}

pub fn annular_distance(pivot: Slope, u: Slope, w: Slope) -> Result<i64, FareyError> {
    let frame = PivotFrame::new(pivot);
    Ok(projection_distance(project_in_frame(&frame, u)?, project_in_frame(&frame, w)?))
}

/// All slopes of height at most `bound`, with their adjacency lists.
pub struct SlopeWindow {
    bound: i64,
    slopes: Vec<Slope>,
    index: HashMap<Slope, u32>,
    adjacency: Vec<Vec<u32>>,
}

impl SlopeWindow {
    pub fn new(bound: i64) -> Self {
        let bound = bound.max(1);
        let mut slopes = vec![Slope::INFINITY];
        for q in 1..=bound {
            for p in -bound..=bound {
                if p.gcd(&q) == 1 {
                    slopes.push(Slope { p, q });
                }
            }
        }
        slopes.sort();
        let index: HashMap<Slope, u32> =
            slopes.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
        let adjacency = slopes
            .par_iter()
            .map(|&s| {
                let mut nbrs: Vec<u32> = neighbors_within(s, bound)
                    .into_iter()
                    .map(|n| index[&n])
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        SlopeWindow { bound, slopes, index, adjacency }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn index_of(&self, s: Slope) -> Option<u32> {
        self.index.get(&s).copied()
    }

    pub fn neighbors(&self, i: u32) -> &[u32] {
        &self.adjacency[i as usize]
    }

    /// Breadth-first distances from `source`; unreachable entries are `u16::MAX`.
    pub fn distances_from(&self, source: u32) -> Vec<u16> {
        let mut dist = vec![u16::MAX; self.len()];
        let mut frontier = vec![source];
        dist[source as usize] = 0;
        let mut level = 0u16;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &self.adjacency[x as usize] {
                    if dist[y as usize] == u16::MAX {
                        dist[y as usize] = level;
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Vertices lying on some geodesic from the BFS source to `target`,
    /// grouped by distance from the source.
    pub fn interval_layers(&self, dist: &[u16], target: u32) -> Vec<Vec<u32>> {
        let d = dist[target as usize] as usize;
        let mut layers = vec![Vec::new(); d + 1];
        layers[d].push(target);
        for k in (1..=d).rev() {
            let mut prev: Vec<u32> = Vec::new();
            for &x in &layers[k] {
                for &y in &self.adjacency[x as usize] {
                    if dist[y as usize] as usize == k - 1 {
                        prev.push(y);
                    }
                }
            }
            prev.sort_unstable();
            prev.dedup();
            layers[k - 1] = prev;
        }
        layers
    }
}

/// Neighbours of `s` whose height is at most `bound`.
pub fn neighbors_within(s: Slope, bound: i64) -> Vec<Slope> {
    // Every neighbour is (r + k p) / (s + k q) for one integer k.
    let (p, q) = (s.p, s.q);
    let (r, t) = bezout(p, q);
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for (base, step) in [(r, p), (t, q)] {
        if step == 0 {
            if base.abs() > bound {
                return Vec::new();
            }
            continue;
        }
        // |base + k step| <= bound
        let (a, b) = ((-bound - base), (bound - base));
        let (k1, k2) = if step > 0 {
            (Integer::div_ceil(&a, &step), Integer::div_floor(&b, &step))
        } else {
            (Integer::div_ceil(&b, &step), Integer::div_floor(&a, &step))
        };
        lo = lo.max(k1);
        hi = hi.min(k2);
    }
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi).map(|k| Slope::from_pair(r + k * p, t + k * q)).collect()
}

fn search_bound(slopes: &[Slope]) -> i64 {
    slopes.iter().map(Slope::height).max().unwrap_or(1).max(1) * SEARCH_FACTOR
}

fn window_distance(window: &SlopeWindow, u: Slope, v: Slope) -> u32 {
    let (iu, iv) = (window.index_of(u).unwrap(), window.index_of(v).unwrap());
    window.distances_from(iu)[iv as usize] as u32
}

pub fn farey_distance(u: Slope, v: Slope) -> Result<u32, FareyError> {
    if u == v {
        return Ok(0);
    }
    if farey_adjacent(u, v) {
        return Ok(1);
    }
    let bound = search_bound(&[u, v]);
    let d = window_distance(&SlopeWindow::new(bound), u, v);
    let check = window_distance(&SlopeWindow::new(2 * bound), u, v);
    if check != d {
        return Err(FareyError::ResourceLimit(format!(
            "distance {u} -> {v} shrinks from {d} to {check} when the window grows past height {bound}"
        )));
    }
    Ok(d)
}

/// A shortest path in the Farey graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FareyGeodesic {
    pub vertices: Vec<Slope>,
}

impl FareyGeodesic {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Slope) -> bool {
        self.vertices.contains(&v)
    }
}

fn geodesics_in(window: &SlopeWindow, u: Slope, v: Slope) -> Result<BTreeSet<FareyGeodesic>, FareyError> {
    let iu = window.index_of(u).unwrap();
    let iv = window.index_of(v).unwrap();
    let dist = window.distances_from(iu);
    let mut out = BTreeSet::new();
    // Walk backwards from v through the BFS layers.
    let mut stack: Vec<Vec<u32>> = vec![vec![iv]];
    while let Some(path) = stack.pop() {
        let head = *path.last().unwrap();
        let k = dist[head as usize];
        if k == 0 {
            let vertices = path.iter().rev().map(|&i| window.slopes[i as usize]).collect();
            out.insert(FareyGeodesic { vertices });
            if out.len() > MAX_GEODESICS {
                return Err(FareyError::ResourceLimit(format!(
                    "more than {MAX_GEODESICS} geodesics between {u} and {v}"
                )));
            }
            continue;
        }
        for &y in window.neighbors(head) {
            if dist[y as usize] + 1 == k {
                let mut next = path.clone();
                next.push(y);
                stack.push(next);
            }
        }
    }
    Ok(out)
}

pub fn enumerate_geodesics(u: Slope, v: Slope) -> Result<BTreeSet<FareyGeodesic>, FareyError> {
    if u == v {
        return Err(FareyError::SameEndpoints);
    }
    let bound = search_bound(&[u, v]);
    let found = geodesics_in(&SlopeWindow::new(bound), u, v)?;
    let check = geodesics_in(&SlopeWindow::new(2 * bound), u, v)?;
    if found != check {
        return Err(FareyError::ResourceLimit(format!(
            "geodesics {u} -> {v} change when the window grows past height {bound}"
        )));
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepViolation {
    pub kind: String,
    pub pivot: Slope,
    pub u: Slope,
    pub w: Slope,
    pub dv: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub convention: String,
    pub max_denominator: i64,
    pub search_bound: i64,
    pub check_bound: i64,
    pub slope_count: u64,
    pub pair_count: u64,
    pub triple_count: u64,
    /// Triples with a geodesic between the endpoints avoiding the pivot.
    pub avoiding_triples: u64,
    pub max_dv_avoiding: i64,
    /// Triples with `d_v >= 5`.
    pub forcing_triples: u64,
    pub forcing_triples_containing_pivot: u64,
    pub max_dv_overall: i64,
    pub slack_invoked: bool,
    pub violation_count: u64,
    pub violations: Vec<SweepViolation>,
}

/// Number of (pivot, unordered endpoint pair) triples of distinct slopes.
pub fn admissible_triples(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 2
    }
}

const MAX_LISTED_VIOLATIONS: usize = 100;

#[derive(Default)]
struct SweepAcc {
    pairs: u64,
    triples: u64,
    avoiding: u64,
    max_avoiding: i64,
    forcing: u64,
    forcing_ok: u64,
    max_overall: i64,
    violation_count: u64,
    violations: Vec<SweepViolation>,
}

impl SweepAcc {
    fn merge(mut self, other: SweepAcc) -> SweepAcc {
        self.pairs += other.pairs;
        self.triples += other.triples;
        self.avoiding += other.avoiding;
        self.max_avoiding = self.max_avoiding.max(other.max_avoiding);
        self.forcing += other.forcing;
        self.forcing_ok += other.forcing_ok;
        self.max_overall = self.max_overall.max(other.max_overall);
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self
    }
}

/// Exhaustive check of the annular bound over every pivot and endpoint pair of
/// height at most `max_denominator`.
pub fn bgit_farey_sweep(max_denominator: i64) -> Result<SweepReport, FareyError> {
    if max_denominator < 2 {
        return Err(FareyError::BadBound { min: 2, got: max_denominator });
    }
    let base = SlopeWindow::new(max_denominator);
    let search = SlopeWindow::new(SEARCH_FACTOR * max_denominator);
    let check = SlopeWindow::new(2 * SEARCH_FACTOR * max_denominator);
    let n = base.len();
    let frames: Vec<PivotFrame> = base.slopes().iter().map(|&v| PivotFrame::new(v)).collect();
    // proj[v][x] for pivots and targets in the base window.
    let proj: Vec<Vec<AnnularProjection>> = frames
        .par_iter()
        .map(|f| {
            base.slopes()
                .iter()
                .map(|&x| {
                    project_in_frame(f, x).unwrap_or(AnnularProjection { lo: 0, hi: 0 })
                })
                .collect()
        })
        .collect();
    let to_search: Vec<u32> = base.slopes().iter().map(|s| search.index_of(*s).unwrap()).collect();
    let to_check: Vec<u32> = base.slopes().iter().map(|s| check.index_of(*s).unwrap()).collect();
    let search_to_base: HashMap<u32, u32> =
        to_search.iter().enumerate().map(|(b, s)| (*s, b as u32)).collect();

    let acc = (0..n)
        .into_par_iter()
        .map(|iu| -> Result<SweepAcc, FareyError> {
            let mut acc = SweepAcc::default();
            let dist = search.distances_from(to_search[iu]);
            let dist_check = check.distances_from(to_check[iu]);
            for iw in (iu + 1)..n {
                let layers = search.interval_layers(&dist, to_search[iw]);
                let layers_check = check.interval_layers(&dist_check, to_check[iw]);
                let as_slopes = |w: &SlopeWindow, ls: &[Vec<u32>]| -> Vec<BTreeSet<Slope>> {
                    ls.iter()
                        .map(|l| l.iter().map(|&i| w.slopes()[i as usize]).collect())
                        .collect()
                };
                if as_slopes(&search, &layers) != as_slopes(&check, &layers_check) {
                    return Err(FareyError::ResourceLimit(format!(
                        "geodesics {} -> {} change beyond height {}",
                        base.slopes()[iu],
                        base.slopes()[iw],
                        search.bound()
                    )));
                }
                // Pivots lying on every geodesic: singleton interior layers.
                let forced: Vec<u32> = layers[1..layers.len().saturating_sub(1)]
                    .iter()
                    .filter(|l| l.len() == 1)
                    .filter_map(|l| search_to_base.get(&l[0]).copied())
                    .collect();
                acc.pairs += 1;
                for iv in 0..n {
                    if iv == iu || iv == iw {
                        continue;
                    }
                    acc.triples += 1;
                    let dv = projection_distance(proj[iv][iu], proj[iv][iw]);
                    acc.max_overall = acc.max_overall.max(dv);
                    let on_every = forced.contains(&(iv as u32));
                    if !on_every {
                        acc.avoiding += 1;
                        acc.max_avoiding = acc.max_avoiding.max(dv);
                    }
                    if dv > AVOIDING_BOUND {
                        acc.forcing += 1;
                        if on_every {
                            acc.forcing_ok += 1;
                        } else {
                            acc.violation_count += 1;
                            if acc.violations.len() < MAX_LISTED_VIOLATIONS {
                                acc.violations.push(SweepViolation {
                                    kind: "geodesic avoids pivot with d_v >= 5".into(),
                                    pivot: base.slopes()[iv],
                                    u: base.slopes()[iu],
                                    w: base.slopes()[iw],
                                    dv,
                                });
                            }
                        }
                    }
                }
            }
            Ok(acc)
        })
        .try_reduce(SweepAcc::default, |a, b| Ok(a.merge(b)))?;

    let mut violations = acc.violations;
    violations.sort_by_key(|v| (v.pivot, v.u, v.w));
    violations.truncate(MAX_LISTED_VIOLATIONS);
    Ok(SweepReport {
        convention: PROJECTION_CONVENTION.to_string(),
        max_denominator,
        search_bound: search.bound(),
        check_bound: check.bound(),
        slope_count: n as u64,
        pair_count: acc.pairs,
        triple_count: acc.triples,
        avoiding_triples: acc.avoiding,
        max_dv_avoiding: acc.max_avoiding,
        forcing_triples: acc.forcing,
        forcing_triples_containing_pivot: acc.forcing_ok,
        max_dv_overall: acc.max_overall,
        slack_invoked: acc.max_avoiding != AVOIDING_BOUND,
        violation_count: acc.violation_count,
        violations,
    })
}

/// Vertices and edges of the window, placed on the unit circle by the Cayley
/// transform `x -> ((1 - x^2) / (1 + x^2), 2x / (1 + x^2))`, as CSV rows.
pub fn window_csv(bound: i64) -> (String, String) {
    let window = SlopeWindow::new(bound);
    let point = |s: Slope| -> (f64, f64) {
        if s.is_infinity() {
            return (-1.0, 0.0);
        }
        let x = s.p as f64 / s.q as f64;
        let d = 1.0 + x * x;
        ((1.0 - x * x) / d, 2.0 * x / d)
    };
    let mut vertices = String::from("slope,p,q,x,y\n");
    for &s in window.slopes() {
        let (x, y) = point(s);
        vertices.push_str(&format!("{s},{},{},{x:.9},{y:.9}\n", s.p, s.q));
    }
    let mut edges = String::from("from,to\n");
    for (i, &s) in window.slopes().iter().enumerate() {
        for &j in window.neighbors(i as u32) {
            if (j as usize) > i {
                edges.push_str(&format!("{s},{}\n", window.slopes()[j as usize]));
            }
        }
    }
    (vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Slope {
        t.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(Slope::new(2, -4).unwrap(), s("-1/2"));
        assert_eq!(Slope::new(-3, 0).unwrap(), Slope::INFINITY);
        assert_eq!(Slope::new(0, -5).unwrap(), s("0/1"));
        assert_eq!(Slope::new(0, 0), Err(FareyError::ZeroSlope));
        assert_eq!(s("inf").to_string(), "inf");
        assert_eq!(s("7").to_string(), "7/1");
        assert!("1/x".parse::<Slope>().is_err());
    }

    #[test]
    fn adjacency_examples() {
        assert!(farey_adjacent(s("0/1"), s("inf")));
        assert!(!farey_adjacent(s("2/3"), s("2/3")));
        assert!(farey_adjacent(s("1/2"), s("2/3")));
    }

    #[test]
    fn frame_normalisation() {
        assert_eq!(PivotFrame::new(Slope::INFINITY).column(), (0, 1));
        assert_eq!(PivotFrame::new(s("0/1")).column(), (-1, 0));
        for v in ["3/7", "-5/2", "1/1", "12/29"] {
            let f = PivotFrame::new(s(v));
            let (r, t) = f.column();
            assert_eq!(s(v).p() * t - s(v).q() * r, 1);
            assert_eq!(f.from_frame(1, 0), s(v));
        }
    }

    #[test]
    fn link_of_infinity_is_identity() {
        for n in -5..=5 {
            let c = link_coordinate(Slope::INFINITY, Slope::integer(n)).unwrap();
            assert_eq!(c.index, n);
            assert_eq!(c.decode(), Slope::integer(n));
        }
    }

    #[test]
    fn link_of_zero() {
        let c = link_coordinate(s("0/1"), Slope::INFINITY).unwrap();
        assert_eq!(c.index, 0);
        assert_eq!(c.decode(), Slope::INFINITY);
        let link: BTreeSet<Slope> = (-6..=6)
            .map(|i| LinkCoordinate { pivot: s("0/1"), index: i }.decode())
            .collect();
        for t in ["-1/2", "-1/1", "inf", "1/1", "1/2"] {
            assert!(link.contains(&s(t)), "{t}");
        }
        assert!(link_coordinate(s("0/1"), s("2/1")).is_err());
    }

    #[test]
    fn projection_examples() {
        let inf = Slope::INFINITY;
        assert_eq!(annular_projection(inf, s("3")).unwrap().indices(), BTreeSet::from([3]));
        let p = annular_projection(inf, s("2/5")).unwrap();
        assert_eq!(p.indices(), BTreeSet::from([0, 1]));
        for i in p.indices() {
            assert!(farey_adjacent(inf, LinkCoordinate { pivot: inf, index: i }.decode()));
        }
        assert_eq!(annular_projection(s("0/1"), inf).unwrap().indices().len(), 1);
        assert_eq!(annular_projection(inf, inf), Err(FareyError::PivotProjection(inf)));
        assert_eq!(annular_distance(inf, s("0/1"), s("5")).unwrap(), 5);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(farey_distance(s("3/8"), s("3/8")).unwrap(), 0);
        assert_eq!(farey_distance(s("0/1"), Slope::INFINITY).unwrap(), 1);
        assert_eq!(farey_distance(Slope::INFINITY, s("2/5")).unwrap(), 3);
    }

    #[test]
    fn adjacent_geodesic_is_unique() {
        let g = enumerate_geodesics(s("0/1"), Slope::INFINITY).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.iter().next().unwrap().vertices, vec![s("0/1"), Slope::INFINITY]);
        assert_eq!(enumerate_geodesics(s("1/3"), s("1/3")), Err(FareyError::SameEndpoints));
    }

    #[test]
    fn neighbours_respect_bound() {
        let nb = neighbors_within(s("0/1"), 3);
        assert!(nb.contains(&Slope::INFINITY));
        assert!(nb.iter().all(|x| x.height() <= 3 && farey_adjacent(*x, s("0/1"))));
        assert_eq!(nb.len(), 7); // inf, +-1/1, +-1/2, +-1/3
    }

    #[test]
    fn sweep_rejects_small_bound() {
        assert!(matches!(bgit_farey_sweep(1), Err(FareyError::BadBound { .. })));
    }

    #[test]
    fn admissible_count_identity() {
        for n in 3..40u64 {
            assert_eq!(admissible_triples(n), n * ((n - 1) * (n - 2) / 2));
        }
    }
}
