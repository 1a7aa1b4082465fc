//! Affine retractions: CF proof search, translation to LPS, and witness
//! synthesis.

mod cf;
mod lps;
mod search;
mod synth;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cf::{check_cf, CfDerivation, CfRule, DGroup};
pub use lps::{check_lps, lps_from_cf, LpsDerivation, LpsRule};
pub use search::{decide_affine, AffineSearch, BudgetExhausted, DEFAULT_BUDGET};
pub use synth::{synthesize_witness, ENV_PREFIX, MAIN_VAR};

use crate::kernel::RetractWitness;
use crate::types::SimpleType;

/// The first node of a derivation that is not a rule instance. `path` lists
/// premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("invalid {rule} node at {path:?} ({rho} <= {tau}): {message}")]
pub struct DerivationError {
    pub path: Vec<usize>,
    pub rule: String,
    pub rho: SimpleType,
    pub tau: SimpleType,
    pub message: String,
}

/// Everything produced for a positive affine query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineEvidence {
    pub cf: CfDerivation,
    pub lps: LpsDerivation,
    pub witness: RetractWitness,
}

/// Decides `rho <=1 tau` within `budget` search steps and, on success,
/// carries the derivation all the way to a witness.
pub fn affine_evidence(
    rho: &SimpleType,
    tau: &SimpleType,
    budget: u64,
) -> Result<Option<AffineEvidence>, BudgetExhausted> {
    let Some(cf) = AffineSearch::with_budget(budget).decide(rho, tau)? else {
        return Ok(None);
    };
    let lps = lps_from_cf(&cf).expect("search produces valid CF derivations");
    let witness = synthesize_witness(&lps).expect("translation produces valid LPS derivations");
    Ok(Some(AffineEvidence { cf, lps, witness }))
}
