//! Brute-force validation: enumeration of long normal terms, certificate
//! search for affine retractions, and the agreement suite.

mod brute;
mod enumerate;
mod model;
mod suite;
mod universe;

use serde::{Deserialize, Serialize};

pub use brute::{brute_force_affine, OracleOutcome};
pub use enumerate::enumerate_long_normal;
pub use suite::{agreement_suite, check_pair, AgreementReport, AgreementRow, CfVerdict};
pub use universe::{all_types, canonical_universe, grown_pair, random_pairs, random_type};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumBudget {
    pub max_term_depth: usize,
    pub env_pool_per_type: usize,
    pub max_pairs: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_term_depth: 12,
            env_pool_per_type: 6,
            max_pairs: 200_000,
        }
    }
}
