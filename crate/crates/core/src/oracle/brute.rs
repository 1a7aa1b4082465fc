//! Certificate search for affine retractions by enumerating coder and
//! decoder candidates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::enumerate::{bit, binder_hint, Binding, Entry, Gen, Mask};
use super::model::refuting_model;
use super::EnumBudget;
use crate::kernel::{Nl, RetractWitness, TypeEnv};
use crate::types::{parts, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum OracleOutcome {
    Witness {
        witness: RetractWitness,
        pairs_checked: u64,
    },
    NoneUpToBudget {
        pairs_checked: u64,
        truncated: bool,
        /// Atom sizes of a finite model where `rho` is larger than `tau`,
        /// when the search was skipped for that reason.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        refuting_model: Option<BTreeMap<String, u128>>,
    },
}

impl OracleOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, OracleOutcome::Witness { .. })
    }
}

/// Opaque variables for every distinct part type of `tau`, named `p<i>_<k>`:
/// one per occurrence of that part, capped at `env_pool_per_type`. Env
/// variables can only vanish from the composite by erasure, so a witness
/// never needs them anywhere but as whole, eta-expanded arguments.
fn env_pool(tau: &SimpleType, per_type: usize) -> Vec<Entry> {
    let mut kinds: Vec<(SimpleType, usize)> = Vec::new();
    for (p, _) in parts(tau) {
        match kinds.iter_mut().find(|(k, _)| *k == p) {
            Some((_, n)) => *n += 1,
            None => kinds.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    for (i, (t, n)) in kinds.iter().enumerate() {
        for k in 0..(*n).min(per_type) {
            let mut e = Entry::opaque(format!("p{}_{}", i + 1, k + 1), t.clone());
            if k > 0 {
                e.prev_copy = Some(out.len() - 1);
            }
            out.push(e);
        }
    }
    out
}

/// Decoders `\f:tau. \zs:rho_args. f Ms` that use every `z` and never `f`.
fn decoders(rho: &SimpleType, tau: &SimpleType, pool: &[Entry], budget: &EnumBudget) -> Vec<(Nl, Mask)> {
    if rho.head() != tau.head() || budget.max_term_depth == 0 {
        return Vec::new();
    }
    let zs: Vec<SimpleType> = rho.args().into_iter().cloned().collect();
    let mut ctx = pool.to_vec();
    let first_z = ctx.len();
    for (l, z) in zs.iter().enumerate() {
        ctx.push(Entry {
            binding: Binding::Bound(l + 1),
            ty: z.clone(),
            prev_copy: None,
            opaque: None,
        });
    }
    let all_z: Mask = (first_z..ctx.len()).fold(0, |m, i| m | bit(i));
    let mut g = Gen::new(ctx, true);
    g.levels = 1 + zs.len();
    let params: Vec<SimpleType> = tau.args().into_iter().cloned().collect();
    let mut out = Vec::new();
    for (ms, mask) in g.spine(&params, budget.max_term_depth - 1, 0) {
        if mask & all_z != all_z {
            continue;
        }
        let body = ms.into_iter().fold(Nl::Bound(zs.len()), Nl::app);
        let with_z = zs
            .iter()
            .rev()
            .fold(body, |acc, z| Nl::Lam(binder_hint(z), z.clone(), Box::new(acc)));
        out.push((Nl::Lam("f".into(), tau.clone(), Box::new(with_z)), mask));
    }
    out
}

/// Coders of type `tau` under `x:rho` and the pool that use `x`.
fn coders(rho: &SimpleType, tau: &SimpleType, pool: &[Entry], budget: &EnumBudget) -> Vec<(Nl, Mask)> {
    let mut ctx = pool.to_vec();
    let xi = ctx.len();
    ctx.push(Entry::free("x", rho.clone()));
    let mut g = Gen::new(ctx, true);
    g.terms(tau, budget.max_term_depth, 0)
        .into_iter()
        .filter(|(_, m)| m & bit(xi) != 0)
        .collect()
}

fn nl_size(t: &Nl) -> usize {
    match t {
        Nl::Bound(_) | Nl::Free(_) => 1,
        Nl::Lam(_, _, b) => 1 + nl_size(b),
        Nl::App(f, a) => nl_size(f) + nl_size(a),
    }
}

fn none(pairs_checked: u64, truncated: bool) -> OracleOutcome {
    OracleOutcome::NoneUpToBudget {
        pairs_checked,
        truncated,
        refuting_model: None,
    }
}

/// Searches affine long normal coder/decoder pairs for `rho <=1 tau` and
/// returns the first pair whose composite is the main variable. Pairs are
/// tried by increasing total size.
pub fn brute_force_affine(rho: &SimpleType, tau: &SimpleType, budget: &EnumBudget) -> OracleOutcome {
    if let Some(model) = refuting_model(rho, tau) {
        return OracleOutcome::NoneUpToBudget {
            pairs_checked: 0,
            truncated: false,
            refuting_model: Some(model),
        };
    }
    let pool = env_pool(tau, budget.env_pool_per_type);
    let ds = decoders(rho, tau, &pool, budget);
    if ds.is_empty() {
        return none(0, false);
    }
    let cs = coders(rho, tau, &pool, budget);
    if cs.is_empty() {
        return none(0, false);
    }
    let mut by_size: Vec<Vec<usize>> = Vec::new();
    for (i, (c, _)) in cs.iter().enumerate() {
        let n = nl_size(c);
        if by_size.len() <= n {
            by_size.resize(n + 1, Vec::new());
        }
        by_size[n].push(i);
    }
    let mut ds: Vec<(usize, &(Nl, Mask))> = ds.iter().map(|d| (nl_size(&d.0), d)).collect();
    ds.sort_by_key(|(n, _)| *n);

    let env_all: TypeEnv = pool
        .iter()
        .filter_map(|e| match &e.binding {
            Binding::Free(n) => Some((n.clone(), e.ty.clone())),
            Binding::Bound(_) => None,
        })
        .collect();
    let target = Nl::Free("x".into()).eta_long(rho, &env_all.with("x", rho.clone()), &mut Vec::new());

    let mut checked = 0u64;
    let max_total = ds.last().map_or(0, |(n, _)| *n) + by_size.len();
    for total in 0..=max_total {
        for (dn, (d, dm)) in &ds {
            let Some(bucket) = total.checked_sub(*dn).and_then(|k| by_size.get(k)) else {
                continue;
            };
            for &ci in bucket {
                let (c, cm) = &cs[ci];
                if checked >= budget.max_pairs {
                    return none(checked, true);
                }
                checked += 1;
                if !Nl::app(d.clone(), c.clone()).normalize().alpha_eq(&target) {
                    continue;
                }
                let used = dm | cm;
                let env = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| used & bit(*i) != 0)
                    .filter_map(|(_, e)| match &e.binding {
                        Binding::Free(n) => Some((n.clone(), e.ty.clone())),
                        Binding::Bound(_) => None,
                    })
                    .collect();
                return OracleOutcome::Witness {
                    witness: RetractWitness {
                        rho: rho.clone(),
                        tau: tau.clone(),
                        coder: c.to_term(),
                        decoder: d.to_term(),
                        env,
                        main_var: "x".into(),
                    },
                    pairs_checked: checked,
                };
            }
        }
    }
    none(checked, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_term, verify_witness};
    use crate::types::ty;

    fn found(r: &str, t: &str) -> RetractWitness {
        match brute_force_affine(&ty(r), &ty(t), &EnumBudget::default()) {
            OracleOutcome::Witness { witness, .. } => {
                let v = verify_witness(&witness).unwrap_or_else(|e| panic!("{r} <= {t}: {e}"));
                assert!(v.is_affine());
                witness
            }
            other => panic!("{r} <= {t}: {other:?}"),
        }
    }

    #[test]
    fn identity_at_an_atom() {
        let w = found("a", "a");
        assert_eq!(w.coder, parse_term("x").unwrap());
        assert_eq!(w.decoder, parse_term(r"\f:a. f").unwrap());
    }

    #[test]
    fn positive_examples() {
        found("b->a", "((b->a)->a)->a");
        found("a", "b->a");
        found("a->b->c", "b->a->c");
        found("a", "a->a->a");
        found("b->c->a", "((b->a)->a)->((c->a)->a)->a");
    }

    #[test]
    fn negative_example() {
        let out = brute_force_affine(&ty("b"), &ty("(b->a)->a"), &EnumBudget::default());
        assert!(!out.is_witness());
    }

    #[test]
    fn pool_copies_are_chained() {
        let pool = env_pool(&ty("b->b->a"), 4);
        assert_eq!(pool.len(), 2);
        assert_eq!(pool[1].prev_copy, Some(0));
        assert_eq!(env_pool(&ty("b->b->a"), 1).len(), 1);
    }
}
