//! Exhaustive verification of skew monoidal structures on finite categories.
//!
//! The crate is layered bottom-up:
//!
//! - [`fincat`] stores finite categories, functors and families of morphisms.
//! - [`skewstruct`] adds a tensor and associator and checks the five axioms.
//! - [`units`] enumerates unit candidates and builds the category of units.
//! - [`monfun`] checks monoidal functors between two such structures.
//! - [`setmodels`] evaluates magma-driven models over finite sets and runs the census.
//! - [`io`] and [`cli`] read and write the file formats and drive the binary.

pub mod cli;
pub mod fincat;
pub mod fixtures;
pub mod io;
pub mod monfun;
pub mod setmodels;
pub mod skewstruct;
pub mod units;

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

/// A statement that holds in every skew monoidal category failed on a
/// concrete instance. This can only be a bug, so it is raised as an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proposition violated: {claim}; counterexample: {counterexample}")]
pub struct PropositionViolated {
    pub claim: String,
    pub counterexample: String,
}

impl PropositionViolated {
    pub fn new(claim: impl Into<String>, counterexample: impl Into<String>) -> Self {
        PropositionViolated {
            claim: claim.into(),
            counterexample: counterexample.into(),
        }
    }
}

/// Default number of partial assignments a search may explore.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "SKEWCHECK_BUDGET";

/// The search budget, read from the environment when set and parseable.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search budget of {budget} exceeded after exploring {explored} states ({found} results so far)")]
pub struct SearchBudgetExceeded {
    pub budget: u64,
    pub explored: u64,
    pub found: usize,
}

/// Work counter shared between search threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// Charges `n` units of work; false once the limit is passed.
    pub fn charge(&self, n: u64) -> bool {
        self.used.fetch_add(n, Ordering::Relaxed).saturating_add(n) <= self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn exceeded(&self, found: usize) -> SearchBudgetExceeded {
        SearchBudgetExceeded {
            budget: self.limit,
            explored: self.used(),
            found,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_counts_across_charges() {
        let b = Budget::new(5);
        assert!(b.charge(3));
        assert!(b.charge(2));
        assert!(!b.charge(1));
        assert_eq!(b.exceeded(0).explored, 6);
    }
}
