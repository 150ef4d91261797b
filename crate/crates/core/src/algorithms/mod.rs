//! Routing algorithms: greedy baselines, ECMP, Melen-Turner and the
//! two-phase 9/5-approximation.
//!
//! Ties are broken towards the lowest middle switch and the lowest copy;
//! flows with equal demand are ordered by ascending id.

mod ecmp;
mod expansion;
mod greedy;
mod melen_turner;
mod two_phase;

use thiserror::Error;

pub use ecmp::ecmp;
pub use expansion::{copy_count, CopyExpansion};
pub use greedy::{greedy_choice, sorted_greedy, unsorted_greedy};
pub use melen_turner::{melen_turner, melen_turner_expansion};
pub use two_phase::{
    route_two_phase, two_phase_detailed, uphold_properties, CopyStats, Phase1State, TwoPhaseRun,
};

use crate::congestion::HoseViolation;
use crate::matching::MatchingError;
use crate::model::FlowId;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgorithmError {
    #[error("flow order is not a permutation of the flow ids (offending entry: {0:?})")]
    BadOrder(Option<FlowId>),
    #[error("invalid flow set: {0}")]
    InvalidFlowSet(#[from] HoseViolation),
    #[error(
        "invalid configuration: p = {p} is below the harmonic sum {} required for q = {q}", harmonic_sum(*.q)
    )]
    BadConfig { p: Rational, q: usize },
    #[error("q must be positive")]
    ZeroQ,
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// `1 + 1/2 + ... + 1/(q-1)`, the smallest admissible `p` for `q`.
pub fn harmonic_sum(q: usize) -> Rational {
    (1..q).map(|k| Rational::new(1, k as i64)).sum()
}

/// Tie-breaking rule for middle switches and copies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    LowestIndex,
}

/// Parameters of the two-phase algorithm (`p`, `q`) and of ECMP (`rng_seed`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmConfig {
    pub p: Rational,
    pub q: usize,
    pub tie_break: TieBreak,
    pub rng_seed: u64,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig {
            p: Rational::new(9, 5),
            q: 3,
            tie_break: TieBreak::LowestIndex,
            rng_seed: 0,
        }
    }
}

impl AlgorithmConfig {
    pub fn with_p(mut self, p: Rational) -> Self {
        self.p = p;
        self
    }

    pub fn with_q(mut self, q: usize) -> Self {
        self.q = q;
        self
    }

    /// `p` must be at least `1 + 1/2 + ... + 1/(q-1)`.
    pub fn validate(&self) -> Result<(), AlgorithmError> {
        if self.q == 0 {
            return Err(AlgorithmError::ZeroQ);
        }
        if self.p < harmonic_sum(self.q) {
            return Err(AlgorithmError::BadConfig {
                p: self.p.clone(),
                q: self.q,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = AlgorithmConfig::default();
        assert_eq!(cfg.p, Rational::new(9, 5));
        assert_eq!(cfg.q, 3);
        cfg.validate().unwrap();
    }

    #[test]
    fn config_rejects_small_p() {
        let cfg = AlgorithmConfig::default().with_p(Rational::new(7, 5));
        assert!(matches!(
            cfg.validate(),
            Err(AlgorithmError::BadConfig { .. })
        ));
        let cfg = AlgorithmConfig::default()
            .with_q(4)
            .with_p(Rational::new(11, 6));
        cfg.validate().unwrap();
        assert!(AlgorithmConfig::default().with_q(0).validate().is_err());
    }
}
