//! Deciding and witnessing retractions between simple types.

mod lex;
pub mod affine;
pub mod analysis;
pub mod beta;
pub mod kernel;
pub mod oracle;
pub mod types;

pub use kernel::{RetractWitness, Term, TypeEnv};
pub use types::SimpleType;
