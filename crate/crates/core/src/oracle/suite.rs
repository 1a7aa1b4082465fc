//! Agreement between `decide_affine` and the brute-force oracle.

use serde::{Deserialize, Serialize};

use super::{brute_force_affine, EnumBudget, OracleOutcome};
use crate::affine::{AffineSearch, DEFAULT_BUDGET};
use crate::types::SimpleType;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CfVerdict {
    Retract,
    NotRetract,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub rho: SimpleType,
    pub tau: SimpleType,
    pub cf: CfVerdict,
    pub oracle_witness: bool,
    pub pairs_checked: u64,
    pub truncated: bool,
    /// The oracle ruled the pair out by a finite model before enumerating.
    pub model_refuted: bool,
    /// Coder and decoder sizes of the oracle witness, if any.
    pub witness_sizes: Option<(usize, usize)>,
    pub agree: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub budget: EnumBudget,
    pub pairs: usize,
    pub cf_positive: usize,
    pub oracle_positive: usize,
    pub truncated: usize,
    pub model_refuted: usize,
    pub disagreements: Vec<AgreementRow>,
    /// Every row when requested, otherwise empty.
    pub rows: Vec<AgreementRow>,
}

impl AgreementReport {
    pub fn agreement(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn check_pair(rho: &SimpleType, tau: &SimpleType, budget: &EnumBudget) -> AgreementRow {
    let cf = match AffineSearch::with_budget(DEFAULT_BUDGET).decide(rho, tau) {
        Ok(Some(_)) => CfVerdict::Retract,
        Ok(None) => CfVerdict::NotRetract,
        Err(_) => CfVerdict::BudgetExhausted,
    };
    let outcome = brute_force_affine(rho, tau, budget);
    let (pairs_checked, truncated, model_refuted, witness_sizes) = match &outcome {
        OracleOutcome::Witness { witness, pairs_checked } => (
            *pairs_checked,
            false,
            false,
            Some((witness.coder.size(), witness.decoder.size())),
        ),
        OracleOutcome::NoneUpToBudget {
            pairs_checked,
            truncated,
            refuting_model,
        } => (*pairs_checked, *truncated, refuting_model.is_some(), None),
    };
    let oracle_witness = outcome.is_witness();
    let agree = match cf {
        CfVerdict::Retract => oracle_witness,
        CfVerdict::NotRetract => !oracle_witness,
        CfVerdict::BudgetExhausted => false,
    };
    AgreementRow {
        rho: rho.clone(),
        tau: tau.clone(),
        cf,
        oracle_witness,
        pairs_checked,
        truncated,
        model_refuted,
        witness_sizes,
        agree,
    }
}

pub fn agreement_suite(pairs: &[(SimpleType, SimpleType)], budget: &EnumBudget, keep_rows: bool) -> AgreementReport {
    let mut report = AgreementReport {
        budget: budget.clone(),
        pairs: pairs.len(),
        ..AgreementReport::default()
    };
    for (rho, tau) in pairs {
        let row = check_pair(rho, tau, budget);
        if row.cf == CfVerdict::Retract {
            report.cf_positive += 1;
        }
        if row.oracle_witness {
            report.oracle_positive += 1;
        }
        report.truncated += usize::from(row.truncated);
        report.model_refuted += usize::from(row.model_refuted);
        if !row.agree {
            report.disagreements.push(row.clone());
        }
        if keep_rows {
            report.rows.push(row);
        }
    }
    report
}
