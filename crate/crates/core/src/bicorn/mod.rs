//! Bicorn curves between two curves of a diagram: enumeration, paths obtained
//! by extending along the second curve, and surgeries against a third curve.

mod ledger;
mod path;
mod surgery;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CurveWalk, DiagramError, IntersectionDiagram, Subarc, SubarcRecord};

pub use ledger::{compose_bound, BoundLedger};
pub use path::{
    bicorn_path, extend_bicorn, initial_bicorn, strategies, BicornPath, Direction, PathViolation, Strategy,
};
pub use surgery::{
    lemma18_evidence, slim_witness, surgery_candidates, EvidenceOutcome, Lemma18Evidence, SlimOutcome,
    SlimWitness, Surgery, WitnessRoute,
};

#[derive(Debug, Error)]
pub enum BicornError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0} and {1} do not cross; there is no initial bicorn")]
    NoCrossings(String, String),
    #[error("cannot extend the full second curve")]
    NothingToExtend,
    #[error("ledger invariant violated: {0}")]
    Ledger(String),
}

/// The part of one curve used by a bicorn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcPart {
    Empty,
    Full,
    Proper(Subarc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Configuration {
    Same,
    Opposite,
}

/// A curve made of one arc of `alpha` and one arc of `beta`, or one of the
/// two curves itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicorn {
    pub alpha: usize,
    pub beta: usize,
    pub alpha_arc: ArcPart,
    pub beta_arc: ArcPart,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicornRecord {
    pub kind: &'static str,
    pub curves: [String; 2],
    pub alpha_arc: Option<SubarcRecord>,
    pub beta_arc: Option<SubarcRecord>,
    pub endpoints: Option<[u32; 2]>,
    pub configuration: Option<Configuration>,
    pub essential: bool,
}

impl Bicorn {
    pub fn whole_alpha(alpha: usize, beta: usize) -> Self {
        Bicorn { alpha, beta, alpha_arc: ArcPart::Full, beta_arc: ArcPart::Empty }
    }

    pub fn whole_beta(alpha: usize, beta: usize) -> Self {
        Bicorn { alpha, beta, alpha_arc: ArcPart::Empty, beta_arc: ArcPart::Full }
    }

    pub fn proper(alpha_arc: Subarc, beta_arc: Subarc) -> Self {
        Bicorn {
            alpha: alpha_arc.curve,
            beta: beta_arc.curve,
            alpha_arc: ArcPart::Proper(alpha_arc),
            beta_arc: ArcPart::Proper(beta_arc),
        }
    }

    pub fn is_alpha(&self) -> bool {
        self.alpha_arc == ArcPart::Full
    }

    pub fn is_beta(&self) -> bool {
        self.beta_arc == ArcPart::Full
    }

    pub fn arcs(&self) -> Option<(Subarc, Subarc)> {
        match (self.alpha_arc, self.beta_arc) {
            (ArcPart::Proper(a), ArcPart::Proper(b)) => Some((a, b)),
            _ => None,
        }
    }

    /// Start and end crossing of the alpha arc.
    pub fn endpoints(&self, d: &IntersectionDiagram) -> Option<(usize, usize)> {
        self.arcs().map(|(a, _)| (d.subarc_start(&a), d.subarc_end(&a)))
    }

    pub fn configuration(&self, d: &IntersectionDiagram) -> Option<Configuration> {
        let (x, y) = self.endpoints(d)?;
        Some(if d.oriented_sign(x, self.alpha) == d.oriented_sign(y, self.alpha) {
            Configuration::Same
        } else {
            Configuration::Opposite
        })
    }

    pub fn walk(&self, d: &IntersectionDiagram) -> CurveWalk {
        match self.arcs() {
            Some((a, b)) => d.join_arcs(&a, &b),
            None if self.is_alpha() => d.curve_walk(self.alpha),
            None => d.curve_walk(self.beta),
        }
    }

    /// Edges of the beta arc; `None` stands for the whole curve.
    fn beta_edges(&self, d: &IntersectionDiagram) -> Option<BTreeSet<usize>> {
        match self.beta_arc {
            ArcPart::Empty => Some(BTreeSet::new()),
            ArcPart::Full => None,
            ArcPart::Proper(b) => Some(d.subarc_edges(&b).into_iter().collect()),
        }
    }

    /// Whether the beta arc of `other` strictly contains the beta arc of `self`.
    pub fn beta_arc_below(&self, other: &Bicorn, d: &IntersectionDiagram) -> bool {
        match (self.beta_edges(d), other.beta_edges(d)) {
            (_, None) => !self.is_beta(),
            (None, Some(_)) => false,
            (Some(s), Some(o)) => s.len() < o.len() && s.is_subset(&o),
        }
    }

    pub fn record(&self, d: &IntersectionDiagram) -> BicornRecord {
        let kind = if self.is_alpha() {
            "alpha"
        } else if self.is_beta() {
            "beta"
        } else {
            "proper"
        };
        let arcs = self.arcs();
        BicornRecord {
            kind,
            curves: [d.label(self.alpha).to_string(), d.label(self.beta).to_string()],
            alpha_arc: arcs.map(|(a, _)| d.subarc_record(&a)),
            beta_arc: arcs.map(|(_, b)| d.subarc_record(&b)),
            endpoints: self.endpoints(d).map(|(x, y)| [d.crossings()[x].id, d.crossings()[y].id]),
            configuration: self.configuration(d),
            essential: d.is_essential(&self.walk(d)),
        }
    }
}

fn require_minimal(d: &IntersectionDiagram, a: usize, b: usize) -> Result<(), BicornError> {
    d.intersection_number(a, b)?;
    Ok(())
}

/// The two curves of a two-curve diagram.
pub fn curve_pair(d: &IntersectionDiagram) -> Result<(usize, usize), BicornError> {
    if d.curve_labels().len() != 2 {
        return Err(DiagramError::Precondition(format!(
            "expected a two-curve diagram, got {} curves",
            d.curve_labels().len()
        ))
        .into());
    }
    Ok((0, 1))
}

pub fn enumerate_bicorns(d: &IntersectionDiagram) -> Result<BTreeSet<Bicorn>, BicornError> {
    let (a, b) = curve_pair(d)?;
    enumerate_bicorns_between(d, a, b)
}

/// All bicorns of the pair `(a, b)`, including the two curves themselves.
pub fn enumerate_bicorns_between(
    d: &IntersectionDiagram,
    a: usize,
    b: usize,
) -> Result<BTreeSet<Bicorn>, BicornError> {
    require_minimal(d, a, b)?;
    let mut out = BTreeSet::new();
    out.insert(Bicorn::whole_alpha(a, b));
    out.insert(Bicorn::whole_beta(a, b));
    let xs = d.crossings_between(a, b);
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            for (p, q) in [(x, y), (y, x)] {
                let alpha_arc = d.subarc_between(a, p, q).expect("crossing on alpha");
                let shared: BTreeSet<usize> =
                    d.subarc_interior(&alpha_arc).into_iter().filter(|z| xs.contains(z)).collect();
                for (r, s) in [(x, y), (y, x)] {
                    let beta_arc = d.subarc_between(b, r, s).expect("crossing on beta");
                    if d.subarc_interior(&beta_arc).iter().all(|z| !shared.contains(z)) {
                        out.insert(Bicorn::proper(alpha_arc, beta_arc));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Transverse crossings of two bicorns in their inherited position.
pub fn bicorn_crossings(d: &IntersectionDiagram, g1: &Bicorn, g2: &Bicorn) -> usize {
    d.walk_crossings(&g1.walk(d), &g2.walk(d))
}

#[cfg(test)]
mod tests;
