//! Retraction witnesses and their verification.
//!
//! A witness for `rho <| tau` consists of an environment `E`, a main variable
//! `x`, a coder `C` and a decoder `D` such that
//!
//! 1. `E, x:rho |- C : tau`
//! 2. `E |- D : tau -> rho`
//! 3. `D C =βη x`
//! 4. `x` is not free in `D`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{is_affine, long_nameless, typecheck, Nl, Term, TypeEnv, TypeError};
use crate::lex::ParseError;
use crate::types::{parse_type, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractWitness {
    pub rho: SimpleType,
    pub tau: SimpleType,
    pub coder: Term,
    pub decoder: Term,
    pub env: TypeEnv,
    pub main_var: String,
}

/// Outcome of a successful verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub coder_affine: bool,
    pub decoder_affine: bool,
    /// Long normal form of `D C`; the long form of the main variable.
    pub composite: Term,
}

impl Verification {
    pub fn is_affine(&self) -> bool {
        self.coder_affine && self.decoder_affine
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("condition 1: main variable `{0}` is already bound in the environment")]
    MainVarInEnv(String),
    #[error("condition 1: coder is ill-typed: {0}")]
    CoderIllTyped(TypeError),
    #[error("condition 1: coder has type {found}, expected {expected}")]
    CoderType {
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("condition 2: decoder is ill-typed: {0}")]
    DecoderIllTyped(TypeError),
    #[error("condition 2: decoder has type {found}, expected {expected}")]
    DecoderType {
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("condition 3: decoder applied to coder normalizes to {composite}, not the main variable")]
    NotIdentity { composite: Term },
    #[error("condition 4: main variable `{0}` occurs free in the decoder")]
    MainVarFreeInDecoder(String),
}

impl WitnessError {
    /// Which of the four witness conditions failed.
    pub fn condition(&self) -> u8 {
        match self {
            WitnessError::MainVarInEnv(_)
            | WitnessError::CoderIllTyped(_)
            | WitnessError::CoderType { .. } => 1,
            WitnessError::DecoderIllTyped(_) | WitnessError::DecoderType { .. } => 2,
            WitnessError::NotIdentity { .. } => 3,
            WitnessError::MainVarFreeInDecoder(_) => 4,
        }
    }
}

pub fn verify_witness(w: &RetractWitness) -> Result<Verification, WitnessError> {
    let mut coder_env = w.env.clone();
    coder_env
        .insert(w.main_var.clone(), w.rho.clone())
        .map_err(|_| WitnessError::MainVarInEnv(w.main_var.clone()))?;

    let ct = typecheck(&coder_env, &w.coder).map_err(WitnessError::CoderIllTyped)?;
    if ct != w.tau {
        return Err(WitnessError::CoderType {
            expected: w.tau.clone(),
            found: ct,
        });
    }

    let expected_d = SimpleType::arrow(w.tau.clone(), w.rho.clone());
    let dt = typecheck(&w.env, &w.decoder).map_err(WitnessError::DecoderIllTyped)?;
    if dt != expected_d {
        return Err(WitnessError::DecoderType {
            expected: expected_d,
            found: dt,
        });
    }

    if w.decoder.free_vars().contains(&w.main_var) {
        return Err(WitnessError::MainVarFreeInDecoder(w.main_var.clone()));
    }

    let composite = Term::app(w.decoder.clone(), w.coder.clone());
    let lhs = long_nameless(&coder_env, &composite).expect("typed above");
    let rhs = long_nameless(&coder_env, &Term::var(w.main_var.clone())).expect("main var is bound");
    let composite = lhs.to_term();
    if !lhs.alpha_eq(&rhs) {
        return Err(WitnessError::NotIdentity { composite });
    }

    Ok(Verification {
        coder_affine: is_affine(&w.coder),
        decoder_affine: is_affine(&w.decoder),
        composite,
    })
}

/// Long normal form of the composite, whether or not verification passes.
#[allow(dead_code)]
pub(crate) fn composite_long_form(w: &RetractWitness) -> Option<Nl> {
    let env = w.env.clone().with(w.main_var.clone(), w.rho.clone());
    long_nameless(&env, &Term::app(w.decoder.clone(), w.coder.clone())).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("missing field `{0}`")]
    Missing(&'static str),
}

/// Text form, one `key: value` per line:
///
/// ```text
/// rho: b->a
/// tau: ((b->a)->a)->a
/// main: x
/// env: E:e, F:b
/// coder: \k:(b->a)->a. k x
/// decoder: \f:((b->a)->a)->a. \z:b. f (\s:b->a. s z)
/// ```
///
/// `env` may be empty or omitted; `#` starts a comment line.
impl fmt::Display for RetractWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rho: {}", self.rho)?;
        writeln!(f, "tau: {}", self.tau)?;
        writeln!(f, "main: {}", self.main_var)?;
        let env: Vec<String> = self.env.iter().map(|(n, t)| format!("{n}:{t}")).collect();
        writeln!(f, "env: {}", env.join(", "))?;
        writeln!(f, "coder: {}", self.coder)?;
        writeln!(f, "decoder: {}", self.decoder)
    }
}

impl FromStr for RetractWitness {
    type Err = WitnessFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mut rho, mut tau, mut main, mut coder, mut decoder) = (None, None, None, None, None);
        let mut env = TypeEnv::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let (key, value) = text.split_once(':').ok_or_else(|| WitnessFileError::Syntax {
                line,
                message: "expected `key: value`".into(),
            })?;
            let value = value.trim();
            let parse_err = |source| WitnessFileError::Parse { line, source };
            match key.trim() {
                "rho" => rho = Some(parse_type(value).map_err(parse_err)?),
                "tau" => tau = Some(parse_type(value).map_err(parse_err)?),
                "main" => main = Some(value.to_string()),
                "coder" => coder = Some(value.parse::<Term>().map_err(parse_err)?),
                "decoder" => decoder = Some(value.parse::<Term>().map_err(parse_err)?),
                "env" => {
                    for entry in value.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                        let (name, ty) = entry.split_once(':').ok_or_else(|| WitnessFileError::Syntax {
                            line,
                            message: format!("env entry `{entry}` is not `name:type`"),
                        })?;
                        let ty = parse_type(ty.trim()).map_err(parse_err)?;
                        env.insert(name.trim(), ty).map_err(|e| WitnessFileError::Syntax {
                            line,
                            message: e.to_string(),
                        })?;
                    }
                }
                other => {
                    return Err(WitnessFileError::Syntax {
                        line,
                        message: format!("unknown field `{other}`"),
                    })
                }
            }
        }
        Ok(RetractWitness {
            rho: rho.ok_or(WitnessFileError::Missing("rho"))?,
            tau: tau.ok_or(WitnessFileError::Missing("tau"))?,
            coder: coder.ok_or(WitnessFileError::Missing("coder"))?,
            decoder: decoder.ok_or(WitnessFileError::Missing("decoder"))?,
            env,
            main_var: main.unwrap_or_else(|| "x".to_string()),
        })
    }
}
