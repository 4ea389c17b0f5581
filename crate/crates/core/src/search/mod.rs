//! Canonical model generators, the naive enumeration oracle, random
//! structure samplers and the counterexample search built on them.

mod brute;
mod generate;
pub mod oracle;
pub mod random;
mod separate;

use crate::axiom::Axiom;
use crate::structures::Violation;

pub use brute::{brute_force_representation, BRUTE_FORCE_LIMIT};
pub use generate::{generate_clock, generate_integer_amplitude};
pub use oracle::{oracle_check, oracle_check_with, oracle_holds_at, ORACLE_MAX_CARRIER};
pub use separate::{find_separating_model, SearchBudget, SearchOutcome};
pub use random::{random_amplitude, random_phase, symmetric_amplitude, symmetric_phase};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("axiom {axiom} does not apply to {kind} structures")]
    WrongFamily { axiom: Axiom, kind: &'static str },
    #[error("structure is malformed: {0:?}")]
    Malformed(Vec<Violation>),
    #[error("checker and oracle disagree on {axiom} at trial {trial}")]
    OracleDisagreement { axiom: Axiom, trial: u64 },
}
