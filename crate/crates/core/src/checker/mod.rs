//! Decision procedures for the amplitude, phase and periodic-extensive
//! axioms on finite structures.
//!
//! Every failing report carries the lexicographically first failing
//! instantiation of the axiom's universally quantified variables, over
//! sorted region ids. Quotient-level (A-family) witnesses use each class's
//! smallest member as its representative.

mod amplitude;
mod periodic;
mod phase;

use rayon::prelude::*;

use crate::axiom::{Axiom, AxiomReport, CheckConfig, Family, Status};
use crate::represent::PhaseQuotient;
use crate::structures::{AmplitudeStructure, PhaseStructure, Violation};
use crate::table::{AmpTable, PhaseTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("axiom {0} does not belong to the {1:?} family")]
    UnknownAxiom(Axiom, Family),
    #[error("structure is malformed: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Malformed(Vec<Violation>),
}

fn family_guard(cfg: &CheckConfig, family: Family) -> Result<(), CheckError> {
    match cfg.axioms().iter().find(|a| a.family() != family) {
        Some(&a) => Err(CheckError::UnknownAxiom(a, family)),
        None => Ok(()),
    }
}

fn run<F>(cfg: &CheckConfig, one: F) -> Vec<AxiomReport>
where
    F: Fn(Axiom) -> AxiomReport + Sync,
{
    if cfg.parallel {
        cfg.axioms().par_iter().map(|&a| one(a)).collect()
    } else {
        cfg.axioms().iter().map(|&a| one(a)).collect()
    }
}

/// Decides the requested G/S axioms.
pub fn check_amplitude(s: &AmplitudeStructure, cfg: &CheckConfig) -> Result<Vec<AxiomReport>, CheckError> {
    family_guard(cfg, Family::Amplitude)?;
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(CheckError::Malformed(violations));
    }
    let table = AmpTable::new(s);
    Ok(run(cfg, |a| amplitude::check(&table, a)))
}

/// Decides the requested C/K axioms.
pub fn check_phase(s: &PhaseStructure, cfg: &CheckConfig) -> Result<Vec<AxiomReport>, CheckError> {
    family_guard(cfg, Family::Phase)?;
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(CheckError::Malformed(violations));
    }
    let table = PhaseTable::new(s);
    let ctx = phase::Context::new(&table);
    Ok(run(cfg, |a| phase::check(&ctx, a, cfg.k4_midpoints)))
}

/// Decides A0–A5 on a phase quotient.
pub fn check_periodic_extensive(q: &PhaseQuotient) -> Vec<AxiomReport> {
    Axiom::PERIODIC.iter().map(|&a| periodic::check(q, a)).collect()
}

/// True when no report failed.
pub fn all_pass(reports: &[AxiomReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

/// First failing report, if any.
pub fn first_failure(reports: &[AxiomReport]) -> Option<&AxiomReport> {
    reports.iter().find(|r| r.failed())
}
