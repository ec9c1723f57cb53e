//! Random diagrams: random cyclic crossing orders and signs, kept when they
//! validate, are pairwise bigon-free and every curve is essential.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{CrossingSpec, CycleSpec, DiagramSpec, IntersectionDiagram};

pub const MAX_FUZZ_CROSSINGS: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzStats {
    pub attempts: usize,
    pub accepted: usize,
    pub invalid: usize,
    pub with_bigons: usize,
    pub inessential: usize,
}

impl FuzzStats {
    pub fn acceptance_ratio(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.accepted as f64 / self.attempts as f64
        }
    }
}

const LABELS: [&str; 3] = ["A", "B", "C"];

/// Assembles a diagram with `counts[k]` crossings between the k-th pair of
/// curves and random orders along each curve.
pub fn random_assembly(rng: &mut ChaCha8Rng, curves: usize, counts: &[usize]) -> DiagramSpec {
    let pairs: &[(usize, usize)] = if curves == 2 { &[(0, 1)] } else { &[(0, 1), (0, 2), (1, 2)] };
    let mut crossings = Vec::new();
    let mut on_curve: Vec<Vec<(u32, u8)>> = vec![Vec::new(); curves];
    let mut id = 0u32;
    for (&(x, y), &n) in pairs.iter().zip(counts) {
        for _ in 0..n {
            let sign: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
            crossings.push(CrossingSpec { id, x: LABELS[x].into(), y: LABELS[y].into(), sign });
            on_curve[x].push((id, 0));
            on_curve[y].push((id, if sign > 0 { 1 } else { 3 }));
            id += 1;
        }
    }
    let cycles = on_curve
        .into_iter()
        .enumerate()
        .map(|(c, mut visits)| {
            // fix the first visit so rotations of the same cycle are not resampled
            if visits.len() > 1 {
                visits[1..].shuffle(rng);
            }
            CycleSpec { curve: LABELS[c].into(), visits }
        })
        .collect();
    DiagramSpec {
        genus: 0,
        curves: LABELS[..curves].iter().map(|s| s.to_string()).collect(),
        many_curves: false,
        crossings,
        cycles,
        regions: Vec::new(),
    }
}

/// Validates a candidate, keeping it when every pair of curves is bigon-free
/// and every curve is essential.
pub fn certify(spec: DiagramSpec, stats: &mut FuzzStats) -> Option<IntersectionDiagram> {
    stats.attempts += 1;
    let Ok(d) = IntersectionDiagram::from_spec_inferring_genus(spec) else {
        stats.invalid += 1;
        return None;
    };
    let k = d.curve_labels().len();
    for a in 0..k {
        for b in a + 1..k {
            if !d.detect_bigons(a, b).is_empty() {
                stats.with_bigons += 1;
                return None;
            }
        }
    }
    if !(0..k).all(|c| d.is_essential(&d.curve_walk(c))) {
        stats.inessential += 1;
        return None;
    }
    stats.accepted += 1;
    Some(d)
}

/// Up to `count` two-curve diagrams with 1 to `max_crossings` crossings.
/// Gives up after `attempt_cap` candidates.
pub fn fuzz_diagrams(
    seed: u64,
    count: usize,
    max_crossings: usize,
    attempt_cap: usize,
) -> (Vec<IntersectionDiagram>, FuzzStats) {
    let max_crossings = max_crossings.clamp(1, MAX_FUZZ_CROSSINGS);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    let mut out = Vec::new();
    while out.len() < count && stats.attempts < attempt_cap {
        let n = rng.gen_range(1..=max_crossings);
        let spec = random_assembly(&mut rng, 2, &[n]);
        if let Some(d) = certify(spec, &mut stats) {
            out.push(d);
        }
    }
    (out, stats)
}

/// Up to `count` three-curve diagrams with 1 to `max_per_pair` crossings per
/// pair of curves.
pub fn fuzz_triples(
    seed: u64,
    count: usize,
    max_per_pair: usize,
    attempt_cap: usize,
) -> (Vec<IntersectionDiagram>, FuzzStats) {
    let max_per_pair = max_per_pair.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    let mut out = Vec::new();
    while out.len() < count && stats.attempts < attempt_cap {
        let counts: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=max_per_pair)).collect();
        let spec = random_assembly(&mut rng, 3, &counts);
        if let Some(d) = certify(spec, &mut stats) {
            out.push(d);
        }
    }
    (out, stats)
}

/// Up to `count` three-curve diagrams where `A` and `B` are disjoint and both
/// cross `C`, for projections to the sides of `C`.
pub fn fuzz_disjoint_hosts(
    seed: u64,
    count: usize,
    max_per_pair: usize,
    attempt_cap: usize,
) -> (Vec<IntersectionDiagram>, FuzzStats) {
    let max_per_pair = max_per_pair.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    let mut out = Vec::new();
    while out.len() < count && stats.attempts < attempt_cap {
        let counts = [0, rng.gen_range(1..=max_per_pair), rng.gen_range(1..=max_per_pair)];
        let spec = random_assembly(&mut rng, 3, &counts);
        if let Some(d) = certify(spec, &mut stats) {
            out.push(d);
        }
    }
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn yields_genus_two_pairs_that_round_trip() {
        let (ds, stats) = fuzz_diagrams(1, 1000, 8, 1_000_000);
        assert_eq!(ds.len(), 1000);
        assert!(stats.acceptance_ratio() > 0.0 && stats.attempts >= 1000);
        assert!(ds.iter().any(|d| d.genus() == 2));
        for d in &ds {
            assert_eq!(parse_diagram(&d.to_string()).unwrap().spec(), d.spec());
        }
    }

    #[test]
    fn triples_cross_pairwise_once_per_crossing() {
        let (ds, _) = fuzz_triples(2, 20, 4, 100_000);
        for d in &ds {
            // each crossing lies on exactly two curves, so no triple points
            let on: usize = (0..3).map(|c| d.visits(c).len()).sum();
            assert_eq!(on, 2 * d.crossing_count());
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = fuzz_diagrams(5, 30, 6, 10_000);
        let b = fuzz_diagrams(5, 30, 6, 10_000);
        assert_eq!(a.1, b.1);
        assert!(a.0.iter().zip(&b.0).all(|(x, y)| x.spec() == y.spec()));
    }
}
