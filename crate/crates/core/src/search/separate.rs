use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::oracle::{oracle_check, ORACLE_MAX_CARRIER};
use super::random::{random_amplitude, random_phase, symmetric_amplitude, symmetric_phase};
use super::SearchError;
use crate::axiom::{Axiom, CheckConfig, Family, Status};
use crate::checker::{check_amplitude, check_phase};
use crate::structures::{RegionId, Structure};

/// Limits for [`find_separating_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_carrier: usize,
    pub max_trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        trial: u64,
        structure: Structure,
        /// The oracle's witness for the violated axiom.
        witness: Vec<RegionId>,
    },
    /// Budget exhausted. Says nothing about whether a model exists.
    NotFound { trials: u64, max_carrier: usize },
}

fn trial_structure(family: Family, budget: &SearchBudget, trial: u64) -> Structure {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    rng.set_stream(trial);
    let sizes = budget.max_carrier as u64;
    let size = 1 + (trial % sizes) as usize;
    let symmetric = (trial / sizes) % 2 == 1;
    match (family, symmetric) {
        (Family::Amplitude, false) => random_amplitude(&mut rng, size).into(),
        (Family::Amplitude, true) => symmetric_amplitude(&mut rng, size).into(),
        (_, false) => random_phase(&mut rng, size).into(),
        (_, true) => symmetric_phase(&mut rng, size).into(),
    }
}

fn separates(s: &Structure, cfg: &CheckConfig, violate: Axiom) -> bool {
    let reports = match s {
        Structure::Amplitude(a) => check_amplitude(a, cfg),
        Structure::Phase(p) => check_phase(p, cfg),
    }
    .expect("sampled structures are well formed");
    reports.iter().all(|r| if r.axiom == violate { r.status == Status::Fail } else { r.status != Status::Fail })
}

/// Seeded random search for a structure satisfying every axiom in
/// `satisfy` and failing `violate`, confirmed by the oracle.
///
/// Trial `t` draws a carrier of size `1 + t mod max_carrier`. Alternate
/// rounds sample raw relations and unions of symmetry orbits. The lowest
/// successful trial index is returned, independent of thread scheduling.
pub fn find_separating_model(
    satisfy: &[Axiom],
    violate: Axiom,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    if satisfy.contains(&violate) {
        return Err(SearchError::InvalidRequest(format!("{violate} cannot be both satisfied and violated")));
    }
    let family = violate.family();
    if family == Family::PeriodicExtensive {
        return Err(SearchError::InvalidRequest(format!("{violate} is checked on quotients, not structures")));
    }
    if let Some(&other) = satisfy.iter().find(|a| a.family() != family) {
        return Err(SearchError::WrongFamily { axiom: other, kind: if family == Family::Amplitude { "amplitude" } else { "phase" } });
    }
    if budget.max_carrier == 0 || budget.max_trials == 0 {
        return Err(SearchError::InvalidRequest("budget needs a positive carrier size and trial count".into()));
    }
    if budget.max_carrier > ORACLE_MAX_CARRIER {
        return Err(SearchError::BudgetExceeded(format!(
            "carriers above {ORACLE_MAX_CARRIER} regions are out of the oracle's reach"
        )));
    }
    let cfg = CheckConfig::new(satisfy.iter().copied().chain([violate])).expect("violate is present");

    let hit = (0..budget.max_trials).into_par_iter().find_map_first(|trial| {
        let s = trial_structure(family, budget, trial);
        separates(&s, &cfg, violate).then_some((trial, s))
    });
    let Some((trial, structure)) = hit else {
        return Ok(SearchOutcome::NotFound { trials: budget.max_trials, max_carrier: budget.max_carrier });
    };
    for &axiom in satisfy {
        if oracle_check(&structure, axiom)?.status == Status::Fail {
            return Err(SearchError::OracleDisagreement { axiom, trial });
        }
    }
    let report = oracle_check(&structure, violate)?;
    match report.witness {
        Some(witness) if report.status == Status::Fail => Ok(SearchOutcome::Found { trial, structure, witness }),
        _ => Err(SearchError::OracleDisagreement { axiom: violate, trial }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(seed: u64) -> SearchBudget {
        SearchBudget { max_carrier: 3, max_trials: 10_000, seed }
    }

    #[test]
    fn finds_cyclic_geq() {
        let out = find_separating_model(&[Axiom::G1], Axiom::G2, &budget(1)).unwrap();
        let SearchOutcome::Found { structure, .. } = out else { panic!("expected a model") };
        assert!(structure.carrier().len() <= 3);
    }

    #[test]
    fn rejects_contradictory_requests() {
        assert!(matches!(
            find_separating_model(&Axiom::PHASE, Axiom::K3, &budget(0)),
            Err(SearchError::InvalidRequest(_))
        ));
        assert!(matches!(
            find_separating_model(&[Axiom::G1], Axiom::K3, &budget(0)),
            Err(SearchError::WrongFamily { .. })
        ));
    }

    #[test]
    fn exhausted_budget_reports_not_found() {
        // Every one-region structure satisfying K1 also satisfies K3.
        let tiny = SearchBudget { max_carrier: 1, max_trials: 50, seed: 9 };
        assert_eq!(
            find_separating_model(&[Axiom::K1], Axiom::K3, &tiny).unwrap(),
            SearchOutcome::NotFound { trials: 50, max_carrier: 1 }
        );
    }

    #[test]
    fn search_is_deterministic() {
        let a = find_separating_model(&[Axiom::G1], Axiom::G2, &budget(5)).unwrap();
        let b = find_separating_model(&[Axiom::G1], Axiom::G2, &budget(5)).unwrap();
        assert_eq!(a, b);
    }
}
