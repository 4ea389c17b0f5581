use num_traits::Signed;

use super::SearchError;
use crate::rational::{int, Rational};
use crate::represent::{verify_phase_rep, PhaseRepresentation};
use crate::structures::{PhaseStructure, RegionId};

/// Largest number of candidate maps enumerated.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 24;

/// Every map carrier → `{0, k/ticks, …, (ticks−1)k/ticks}` that verifies,
/// in lexicographic order of tick vectors over sorted ids.
pub fn brute_force_representation(
    s: &PhaseStructure,
    k: &Rational,
    ticks: u64,
) -> Result<Vec<PhaseRepresentation>, SearchError> {
    if !k.is_positive() {
        return Err(SearchError::InvalidRequest("modulus must be positive".into()));
    }
    if ticks == 0 || ticks > 12 {
        return Err(SearchError::InvalidRequest(format!("ticks must lie in 1..=12, got {ticks}")));
    }
    let mut ids: Vec<RegionId> = s.carrier().to_vec();
    ids.sort();
    ids.dedup();
    let count = u32::try_from(ids.len()).ok().and_then(|n| ticks.checked_pow(n));
    if count.is_none_or(|c| c > BRUTE_FORCE_LIMIT) {
        return Err(SearchError::BudgetExceeded(format!(
            "{ticks}^{} candidate maps exceed the limit of {BRUTE_FORCE_LIMIT}",
            ids.len()
        )));
    }
    let levels: Vec<Rational> = (0..ticks).map(|t| k * int(t as i64) / int(ticks as i64)).collect();
    let mut choice = vec![0usize; ids.len()];
    let mut out = Vec::new();
    loop {
        let values = ids.iter().cloned().zip(choice.iter().map(|&c| levels[c].clone())).collect();
        let f = PhaseRepresentation::new(values, k.clone()).expect("levels lie in [0, k)");
        if verify_phase_rep(s, &f) {
            out.push(f);
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < levels.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}
