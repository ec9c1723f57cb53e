use serde::{Deserialize, Serialize};

use super::BicornError;

/// Constants feeding the final distance bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundLedger {
    pub hausdorff_radius: u64,
    pub filling_min: u64,
    pub threshold: u64,
    pub segment_cap: u64,
    pub lemma18_bound: u64,
    pub lipschitz_step: u64,
    pub theorem_bound: u64,
    pub forcing_gap: u64,
}

impl Default for BoundLedger {
    fn default() -> Self {
        BoundLedger::new(14, 4)
    }
}

impl BoundLedger {
    pub fn new(hausdorff_radius: u64, filling_min: u64) -> Self {
        let threshold = hausdorff_radius + filling_min;
        let segment_cap = 2 * threshold;
        let (lemma18_bound, lipschitz_step) = (3, 1);
        BoundLedger {
            hausdorff_radius,
            filling_min,
            threshold,
            segment_cap,
            lemma18_bound,
            lipschitz_step,
            theorem_bound: 2 * lemma18_bound + 2 * lipschitz_step + segment_cap,
            forcing_gap: 5,
        }
    }

    pub fn check(&self) -> Result<(), BicornError> {
        let mut errs = Vec::new();
        if self.threshold != self.hausdorff_radius + self.filling_min {
            errs.push(format!("threshold {} != {} + {}", self.threshold, self.hausdorff_radius, self.filling_min));
        }
        if self.segment_cap != 2 * self.threshold {
            errs.push(format!("segment_cap {} != 2 * {}", self.segment_cap, self.threshold));
        }
        let sum = self.lemma18_bound + self.lipschitz_step + self.segment_cap + self.lipschitz_step + self.lemma18_bound;
        if self.theorem_bound != sum {
            errs.push(format!("theorem_bound {} != {sum}", self.theorem_bound));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(BicornError::Ledger(errs.join("; ")))
        }
    }
}

pub fn compose_bound(ledger: &BoundLedger) -> Result<u64, BicornError> {
    ledger.check()?;
    Ok(ledger.lemma18_bound + ledger.lipschitz_step + ledger.segment_cap + ledger.lipschitz_step + ledger.lemma18_bound)
}
