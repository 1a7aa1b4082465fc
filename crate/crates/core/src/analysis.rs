//! Necessary conditions for arbitrary (beta-eta) retractions and the
//! combined verdict for a query.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{affine_evidence, CfDerivation, LpsDerivation, DEFAULT_BUDGET};
use crate::beta::beta_retract;
use crate::kernel::{verify_witness, RetractWitness};
use crate::types::{canonical_type, delayed_arguments, iso, node_paths, paths, word_embed, PathWord, SimpleType};

/// Why `rho <| tau` is impossible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum RefutationReason {
    Head { rho_head: String, tau_head: String },
    Rank { rho_rank: usize, tau_rank: usize },
    /// A root-to-leaf word of `rho` that embeds into no root-to-node word of `tau`.
    Path { word: PathWord },
    /// An argument of `rho` for which every delayed argument of `tau` is
    /// itself refuted; one sub-certificate per candidate.
    Argument {
        argument: SimpleType,
        candidates: Vec<Refutation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub rho: SimpleType,
    pub tau: SimpleType,
    #[serde(flatten)]
    pub reason: RefutationReason,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

impl Refutation {
    fn write_indented(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        write!(f, "{:indent$}{} <| {}: ", "", self.rho, self.tau)?;
        match &self.reason {
            RefutationReason::Head { rho_head, tau_head } => {
                writeln!(f, "heads differ ({rho_head} vs {tau_head})")
            }
            RefutationReason::Rank { rho_rank, tau_rank } => {
                writeln!(f, "rank {rho_rank} exceeds {tau_rank}")
            }
            RefutationReason::Path { word } => writeln!(f, "path {word} embeds into no path of the target"),
            RefutationReason::Argument { argument, candidates } => {
                if candidates.is_empty() {
                    writeln!(f, "argument {argument} has no delayed target")?;
                } else {
                    writeln!(f, "argument {argument} fits no delayed target:")?;
                }
                for c in candidates {
                    c.write_indented(f, indent + 2)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum NecessaryOutcome {
    /// The conditions hold; this is not a claim that a retraction exists.
    Consistent,
    Refuted(Refutation),
}

impl NecessaryOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, NecessaryOutcome::Consistent)
    }
}

/// Checks, recursively: equal heads, `rank(rho) <= rank(tau)`, every
/// root-to-leaf word of `rho` embeds into a root-to-node word of `tau`, and
/// every argument of `rho` passes against some delayed argument of `tau`.
pub fn necessary_check(rho: &SimpleType, tau: &SimpleType) -> NecessaryOutcome {
    let mut memo = HashMap::new();
    match check(rho, tau, &mut memo) {
        None => NecessaryOutcome::Consistent,
        Some(r) => NecessaryOutcome::Refuted(r),
    }
}

type Memo = HashMap<(SimpleType, SimpleType), Option<Refutation>>;

fn check(rho: &SimpleType, tau: &SimpleType, memo: &mut Memo) -> Option<Refutation> {
    let key = (canonical_type(rho), canonical_type(tau));
    if let Some(hit) = memo.get(&key) {
        return hit.clone().map(|mut r| {
            r.rho = rho.clone();
            r.tau = tau.clone();
            r
        });
    }
    let found = refute(rho, tau, memo).map(|reason| Refutation {
        rho: rho.clone(),
        tau: tau.clone(),
        reason,
    });
    memo.insert(key, found.clone());
    found
}

fn refute(rho: &SimpleType, tau: &SimpleType, memo: &mut Memo) -> Option<RefutationReason> {
    if rho.head() != tau.head() {
        return Some(RefutationReason::Head {
            rho_head: rho.head().to_string(),
            tau_head: tau.head().to_string(),
        });
    }
    let (rr, tr) = (rho.rank(), tau.rank());
    if rr > tr {
        return Some(RefutationReason::Rank { rho_rank: rr, tau_rank: tr });
    }
    let targets = node_paths(tau);
    if let Some(word) = paths(rho)
        .into_iter()
        .find(|w| !targets.iter().any(|v| word_embed(w, v)))
    {
        return Some(RefutationReason::Path { word });
    }
    let mut delayed: Vec<SimpleType> = Vec::new();
    for (d, _) in delayed_arguments(tau) {
        if !delayed.iter().any(|e| iso(e, &d)) {
            delayed.push(d);
        }
    }
    for arg in rho.args() {
        let mut candidates = Vec::new();
        let mut ok = false;
        for d in &delayed {
            match check(arg, d, memo) {
                None => {
                    ok = true;
                    break;
                }
                Some(r) => candidates.push(r),
            }
        }
        if !ok {
            return Some(RefutationReason::Argument {
                argument: arg.clone(),
                candidates,
            });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verdict {
    AffineRetract {
        derivation: CfDerivation,
        lps: LpsDerivation,
        witness: RetractWitness,
    },
    WitnessedRetract {
        witness: RetractWitness,
        affine: bool,
    },
    /// Only reported when the affine search ran out of budget.
    BetaRetract { stripped: Vec<SimpleType> },
    RefutedNecessary { reason: Refutation },
    Unknown { affine_budget_exhausted: bool },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::AffineRetract { .. } => "AffineRetract",
            Verdict::WitnessedRetract { .. } => "WitnessedRetract",
            Verdict::BetaRetract { .. } => "BetaRetract",
            Verdict::RefutedNecessary { .. } => "RefutedNecessary",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    /// Positive evidence that `rho <| tau`.
    pub fn is_retract(&self) -> bool {
        matches!(
            self,
            Verdict::AffineRetract { .. } | Verdict::WitnessedRetract { .. } | Verdict::BetaRetract { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("claimed witness is for {claimed_rho} <| {claimed_tau}, but the query is {rho} <| {tau}")]
    WitnessMismatch {
        rho: SimpleType,
        tau: SimpleType,
        claimed_rho: SimpleType,
        claimed_tau: SimpleType,
    },
}

pub fn classify(
    rho: &SimpleType,
    tau: &SimpleType,
    claimed: Option<&RetractWitness>,
) -> Result<Verdict, ClassifyError> {
    classify_with_budget(rho, tau, claimed, DEFAULT_BUDGET)
}

/// Evidence in priority order: isomorphism or affine derivation, a claimed
/// witness that verifies, a beta-retraction (when the affine search gave up),
/// a necessary-condition refutation, and otherwise `Unknown`.
pub fn classify_with_budget(
    rho: &SimpleType,
    tau: &SimpleType,
    claimed: Option<&RetractWitness>,
    budget: u64,
) -> Result<Verdict, ClassifyError> {
    if let Some(w) = claimed {
        if w.rho != *rho || w.tau != *tau {
            return Err(ClassifyError::WitnessMismatch {
                rho: rho.clone(),
                tau: tau.clone(),
                claimed_rho: w.rho.clone(),
                claimed_tau: w.tau.clone(),
            });
        }
    }
    // isomorphic pairs always succeed here, through an (H)/Axiom derivation
    let budget = if iso(rho, tau) { u64::MAX } else { budget };
    let exhausted = match affine_evidence(rho, tau, budget) {
        Ok(Some(ev)) => {
            return Ok(Verdict::AffineRetract {
                derivation: ev.cf,
                lps: ev.lps,
                witness: ev.witness,
            })
        }
        Ok(None) => false,
        Err(_) => true,
    };
    if let Some(w) = claimed {
        if let Ok(v) = verify_witness(w) {
            return Ok(Verdict::WitnessedRetract {
                witness: w.clone(),
                affine: v.is_affine(),
            });
        }
    }
    if exhausted {
        if let Some(stripped) = beta_retract(rho, tau) {
            return Ok(Verdict::BetaRetract { stripped });
        }
    }
    if let NecessaryOutcome::Refuted(reason) = necessary_check(rho, tau) {
        return Ok(Verdict::RefutedNecessary { reason });
    }
    Ok(Verdict::Unknown {
        affine_budget_exhausted: exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_term, TypeEnv};
    use crate::types::ty;

    fn refuted(r: &str, t: &str) -> Refutation {
        match necessary_check(&ty(r), &ty(t)) {
            NecessaryOutcome::Refuted(x) => x,
            NecessaryOutcome::Consistent => panic!("{r} <| {t} should be refuted"),
        }
    }

    fn consistent(r: &str, t: &str) {
        let out = necessary_check(&ty(r), &ty(t));
        assert!(out.is_consistent(), "{r} <| {t}: {out:?}");
    }

    #[test]
    fn head_and_rank_refutations() {
        assert!(matches!(refuted("b", "(b->a)->a").reason, RefutationReason::Head { .. }));
        assert_eq!(
            refuted("a->a", "a").reason,
            RefutationReason::Rank { rho_rank: 1, tau_rank: 0 }
        );
    }

    #[test]
    fn consistent_examples() {
        consistent("(e->a)->c->a", "(e->(a->c->a)->a)->a");
        // consistent although no retraction exists: the check is incomplete
        consistent("(e->a)->c->a", "(e->(c->a)->a)->a");
        consistent("a", "b->a");
        consistent("b->a", "((b->a)->a)->a");
        for t in ["a", "a->b->c", "((a->b)->c)->(d->a)->c"] {
            consistent(t, t);
        }
    }

    #[test]
    fn path_refutation() {
        // a.b.a does not embed into any word of (a->a)->b->a
        let r = refuted("(a->b)->a", "(a->a)->b->a");
        assert!(matches!(r.reason, RefutationReason::Path { .. }), "{r}");
    }

    #[test]
    fn argument_refutation() {
        // both words of the argument embed, but into different delayed arguments
        let r = refuted("(b->c->d)->a", "(b->d)->(c->d)->a");
        match &r.reason {
            RefutationReason::Argument { argument, candidates } => {
                assert_eq!(*argument, ty("b->c->d"));
                assert_eq!(candidates.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    fn example_4_1_witness() -> RetractWitness {
        RetractWitness {
            rho: ty("(e->a)->c->a"),
            tau: ty("(e->(a->c->a)->a)->a"),
            coder: parse_term(
                r"\y:e->(a->c->a)->a. y E (\w1:a. \w2:c. x (\v:e. y v (\w1:a. \w2:c. w1)) w2)",
            )
            .unwrap(),
            decoder: parse_term(
                r"\f:(e->(a->c->a)->a)->a. \z1:e->a. \z2:c. f (\u1:e. \u2:a->c->a. u2 (z1 u1) z2)",
            )
            .unwrap(),
            env: TypeEnv::new().with("E", ty("e")),
            main_var: "x".into(),
        }
    }

    #[test]
    fn classify_examples() {
        let v = classify(&ty("b->a"), &ty("((b->a)->a)->a"), None).unwrap();
        assert_eq!(v.name(), "AffineRetract");

        let w = example_4_1_witness();
        let v = classify(&w.rho, &w.tau, Some(&w)).unwrap();
        assert_eq!(v, Verdict::WitnessedRetract { witness: w.clone(), affine: false });

        let v = classify(&ty("(e->a)->c->a"), &ty("(e->(c->a)->a)->a"), None).unwrap();
        assert_eq!(v, Verdict::Unknown { affine_budget_exhausted: false });

        let v = classify(&ty("b"), &ty("(b->a)->a"), None).unwrap();
        assert_eq!(v.name(), "RefutedNecessary");
    }

    #[test]
    fn claimed_witness_for_another_query() {
        let w = example_4_1_witness();
        assert!(matches!(
            classify(&ty("a"), &ty("a"), Some(&w)),
            Err(ClassifyError::WitnessMismatch { .. })
        ));
    }

    #[test]
    fn beta_retract_reported_when_search_gives_up() {
        let v = classify_with_budget(&ty("a"), &ty("b->a"), None, 0).unwrap();
        assert_eq!(v, Verdict::BetaRetract { stripped: vec![ty("b")] });
    }

    #[test]
    fn json_shapes() {
        let v = classify(&ty("b"), &ty("(b->a)->a"), None).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains(r#""status":"RefutedNecessary""#), "{s}");
        assert!(s.contains(r#""condition":"head""#), "{s}");
        assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), v);
    }
}
