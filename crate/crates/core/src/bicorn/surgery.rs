use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use super::{bicorn_crossings, enumerate_bicorns_between, ArcPart, Bicorn, BicornError, BicornPath};
use crate::diagram::{DiagramError, IntersectionDiagram, Subarc};

/// Replacing part of a bicorn by an arc `c` of a third curve: `c` joins two
/// crossings that are consecutive along it among the crossings with one arc of
/// the bicorn, and `kept` is the piece of that arc between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Surgery {
    pub kept: Subarc,
    pub c: Subarc,
    /// Crossings of `c` with the other arc of the bicorn.
    pub other_crossings: usize,
    pub result: Bicorn,
}

impl Surgery {
    fn json(&self, d: &IntersectionDiagram) -> Value {
        json!({
            "side": d.label(self.kept.curve),
            "c": d.subarc_record(&self.c),
            "kept": d.subarc_record(&self.kept),
            "other_crossings": self.other_crossings,
            "result": self.result.record(d),
        })
    }
}

/// Crossing `x` lies on `part` of `curve`; arc endpoints count.
fn on_part(d: &IntersectionDiagram, curve: usize, part: ArcPart, x: usize) -> bool {
    match part {
        ArcPart::Empty => false,
        ArcPart::Full => d.position(curve, x).is_some(),
        ArcPart::Proper(arc) => offset(d, &arc, x).is_some(),
    }
}

fn offset(d: &IntersectionDiagram, arc: &Subarc, x: usize) -> Option<usize> {
    let n = d.curve_len(arc.curve);
    let p = d.position(arc.curve, x)?;
    let k = (p + n - arc.start) % n;
    (k <= arc.len).then_some(k)
}

/// Pieces of `part` between two of its crossings.
fn pieces(d: &IntersectionDiagram, curve: usize, part: ArcPart, x: usize, y: usize) -> Vec<Subarc> {
    match part {
        ArcPart::Proper(arc) => {
            let (kx, ky) = (offset(d, &arc, x).unwrap(), offset(d, &arc, y).unwrap());
            let (lo, hi) = (kx.min(ky), kx.max(ky));
            let n = d.curve_len(curve);
            vec![Subarc { curve, start: (arc.start + lo) % n, len: hi - lo }]
        }
        ArcPart::Full => vec![d.subarc_between(curve, x, y).unwrap(), d.subarc_between(curve, y, x).unwrap()],
        ArcPart::Empty => Vec::new(),
    }
}

/// Every surgery of `g` along curve `w`, in order along `w`.
pub fn surgery_candidates(d: &IntersectionDiagram, g: &Bicorn, w: usize) -> Vec<Surgery> {
    let parts = [(g.alpha, g.alpha_arc), (g.beta, g.beta_arc)];
    // (crossing, which arc of g) in cyclic order along w
    let marks: Vec<(usize, usize)> = d
        .visits(w)
        .iter()
        .filter_map(|&x| parts.iter().position(|&(c, p)| on_part(d, c, p, x)).map(|s| (x, s)))
        .collect();
    let m = marks.len();
    let mut out = Vec::new();
    for i in 0..m {
        let (x, side) = marks[i];
        let Some(j) = (1..m).map(|k| (i + k) % m).find(|&j| marks[j].1 == side) else {
            continue;
        };
        let between = (1..m).map(|k| (i + k) % m).take_while(|&k| k != j).count();
        if between > 1 {
            continue;
        }
        let y = marks[j].0;
        let c = d.subarc_between(w, x, y).unwrap();
        let (curve, part) = parts[side];
        for kept in pieces(d, curve, part, x, y) {
            out.push(Surgery { kept, c, other_crossings: between, result: Bicorn::proper(kept, c) });
        }
    }
    out
}

/// Crossings of curve `w` with the arcs of `g`.
fn meets(d: &IntersectionDiagram, g: &Bicorn, w: usize) -> usize {
    d.visits(w)
        .iter()
        .filter(|&&x| on_part(d, g.alpha, g.alpha_arc, x) || on_part(d, g.beta, g.beta_arc, x))
        .count()
}

fn distinct(a: usize, b: usize, c: usize) -> Result<(), BicornError> {
    if a == b || b == c || a == c {
        return Err(DiagramError::Precondition("three distinct curves are required".into()).into());
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    /// `g` is one of the two curves, which is itself a bicorn with the third.
    Degenerate,
    Surgery,
    /// No surgery stays within one crossing of `g`; found by searching all bicorns.
    Exhaustive,
    NoWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlimWitness {
    pub bicorn: Bicorn,
    pub surgery: Option<Surgery>,
    pub crossings_with_g: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlimOutcome {
    pub g: Bicorn,
    pub gamma: usize,
    pub meets_gamma: usize,
    pub crosses_gamma: usize,
    pub route: WitnessRoute,
    pub witness: Option<SlimWitness>,
    pub surgery_candidates: usize,
}

impl SlimOutcome {
    pub fn to_json(&self, d: &IntersectionDiagram) -> Value {
        json!({
            "g": self.g.record(d),
            "third_curve": d.label(self.gamma),
            "g_meets_third": self.meets_gamma,
            "g_crosses_third": self.crosses_gamma,
            "route": self.route,
            "surgery_candidates": self.surgery_candidates,
            "witness": self.witness.as_ref().map(|w| json!({
                "bicorn": w.bicorn.record(d),
                "surgery": w.surgery.map(|s| s.json(d)),
                "crossings_with_g": w.crossings_with_g,
            })),
        })
    }
}

/// Best bicorn of `(g.alpha, gamma)` or `(g.beta, gamma)` by crossings with `g`.
fn exhaustive_witness(d: &IntersectionDiagram, g: &Bicorn, gamma: usize) -> Result<Option<SlimWitness>, BicornError> {
    let mut all: BTreeSet<Bicorn> = enumerate_bicorns_between(d, g.alpha, gamma)?;
    all.extend(enumerate_bicorns_between(d, g.beta, gamma)?);
    Ok(all
        .into_iter()
        .map(|b| (bicorn_crossings(d, &b, g), b))
        .filter(|(c, _)| *c <= 1)
        .min_by_key(|(c, _)| *c)
        .map(|(c, bicorn)| SlimWitness { bicorn, surgery: None, crossings_with_g: c }))
}

/// A bicorn with the third curve `gamma` within one crossing of `g`.
pub fn slim_witness(d: &IntersectionDiagram, g: &Bicorn, gamma: usize) -> Result<SlimOutcome, BicornError> {
    distinct(g.alpha, g.beta, gamma)?;
    for (p, q) in [(g.alpha, g.beta), (g.alpha, gamma), (g.beta, gamma)] {
        d.intersection_number(p, q)?;
    }
    let gw = g.walk(d);
    let mut out = SlimOutcome {
        g: *g,
        gamma,
        meets_gamma: meets(d, g, gamma),
        crosses_gamma: d.walk_crossings(&gw, &d.curve_walk(gamma)),
        route: WitnessRoute::NoWitness,
        witness: None,
        surgery_candidates: 0,
    };
    if g.is_alpha() || g.is_beta() {
        let c = if g.is_alpha() { g.alpha } else { g.beta };
        out.route = WitnessRoute::Degenerate;
        out.witness = Some(SlimWitness { bicorn: Bicorn::whole_alpha(c, gamma), surgery: None, crossings_with_g: 0 });
        return Ok(out);
    }
    let cands = surgery_candidates(d, g, gamma);
    out.surgery_candidates = cands.len();
    if cands.is_empty() {
        return Ok(out);
    }
    for s in &cands {
        let c = d.walk_crossings(&s.result.walk(d), &gw);
        if c <= 1 {
            out.route = WitnessRoute::Surgery;
            out.witness = Some(SlimWitness { bicorn: s.result, surgery: Some(*s), crossings_with_g: c });
            return Ok(out);
        }
    }
    if let Some(w) = exhaustive_witness(d, g, gamma)? {
        out.route = WitnessRoute::Exhaustive;
        out.witness = Some(w);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma18Evidence {
    pub step: usize,
    pub same_step: bool,
    pub first: Surgery,
    pub second: Surgery,
    /// Some extracted arc misses `alpha` in its interior, so its bicorn can be
    /// pushed off `alpha`.
    pub contradiction_branch: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvidenceOutcome {
    Found(Lemma18Evidence),
    NotApplicable { step: usize, bicorn: Bicorn, crossings: usize },
    NotFound { transitions: usize },
}

impl EvidenceOutcome {
    pub fn to_json(&self, d: &IntersectionDiagram, path: &BicornPath) -> Value {
        match self {
            EvidenceOutcome::Found(e) => json!({
                "status": "found",
                "step": e.step,
                "same_step": e.same_step,
                "b_k": path.steps[e.step].record(d),
                "b_k_next": path.steps[e.step + usize::from(!e.same_step)].record(d),
                "first": e.first.json(d),
                "second": e.second.json(d),
                "delta_disjoint": true,
                "contradiction_branch": e.contradiction_branch,
            }),
            EvidenceOutcome::NotApplicable { step, bicorn, crossings } => json!({
                "status": "not_applicable",
                "step": step,
                "bicorn": bicorn.record(d),
                "crossings_with_alpha": crossings,
            }),
            EvidenceOutcome::NotFound { transitions } => json!({
                "status": "not_found",
                "transitions": transitions,
            }),
        }
    }
}

fn arc_crossings(d: &IntersectionDiagram, a: &Subarc) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = d.subarc_interior(a).into_iter().collect();
    s.insert(d.subarc_start(a));
    s.insert(d.subarc_end(a));
    s
}

/// Along a path of bicorns between `gi` and `gj` whose steps all cross
/// `alpha` at least four times, finds a step (or two consecutive steps) whose
/// surgeries along `alpha` land in both `B(gi, alpha)` and `B(gj, alpha)` with
/// disjoint extracted arcs.
pub fn lemma18_evidence(d: &IntersectionDiagram, alpha: usize, path: &BicornPath) -> Result<EvidenceOutcome, BicornError> {
    let (gi, gj) = (path.source, path.target);
    distinct(gi, gj, alpha)?;
    let aw = d.curve_walk(alpha);
    for (k, b) in path.steps.iter().enumerate() {
        let c = d.walk_crossings(&b.walk(d), &aw);
        if c < 4 {
            return Ok(EvidenceOutcome::NotApplicable { step: k, bicorn: *b, crossings: c });
        }
    }
    let split: Vec<(Vec<Surgery>, Vec<Surgery>)> = path
        .steps
        .iter()
        .map(|b| surgery_candidates(d, b, alpha).into_iter().partition(|s| s.kept.curve == gi))
        .collect();
    let interior_misses = |s: &Surgery| d.subarc_interior(&s.kept).iter().all(|&x| d.position(alpha, x).is_none());
    let mut transitions = 0;
    for k in 0..path.steps.len() {
        for k2 in [k, k + 1] {
            if k2 >= path.steps.len() {
                continue;
            }
            let (first, second) = (&split[k].0, &split[k2].1);
            if !first.is_empty() && !second.is_empty() {
                transitions += 1;
            }
            for si in first {
                let di = arc_crossings(d, &si.kept);
                for sj in second {
                    if arc_crossings(d, &sj.kept).is_disjoint(&di) {
                        return Ok(EvidenceOutcome::Found(Lemma18Evidence {
                            step: k,
                            same_step: k == k2,
                            first: *si,
                            second: *sj,
                            contradiction_branch: interior_misses(si) || interior_misses(sj),
                        }));
                    }
                }
            }
        }
    }
    Ok(EvidenceOutcome::NotFound { transitions })
}
