//! Proof search for CF using the combined rule (U).
//!
//! A step for `rho = r1..rm -> a`, `tau = t1..tn -> a` sends each `ri` either
//! to a distinct `tj` (passive, `ri <= tj`) or into a group attached to some
//! `tj` with head `a` (active). Every active group `Delta` then needs an
//! argument `s` of its `tj` with `Delta -> a <= s`. Unused `tj` are discarded.

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use super::cf::{CfDerivation, DGroup};
use crate::types::{canonical_type, SimpleType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("affine search exceeded its budget of {0} steps")]
pub struct BudgetExhausted(pub u64);

pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// One search session; memo and step counter live for the whole session.
pub struct AffineSearch {
    budget: u64,
    steps: u64,
    memo: HashMap<(SimpleType, SimpleType), Option<Rc<CfDerivation>>>,
}

impl Default for AffineSearch {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Free,
    Passive(usize),
    Active,
}

struct Step<'a> {
    a: &'a str,
    r: Vec<SimpleType>,
    t: Vec<SimpleType>,
    slots: Vec<Slot>,
    /// `groups[j]` lists the `r` indices attached to `t[j]`.
    groups: Vec<Vec<usize>>,
    passive: Vec<Option<Rc<CfDerivation>>>,
}

impl AffineSearch {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_BUDGET)
    }

    pub fn with_budget(budget: u64) -> Self {
        AffineSearch {
            budget,
            steps: 0,
            memo: HashMap::new(),
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// A CF derivation of `rho <= tau` if one exists; the root conclusion is
    /// exactly `(rho, tau)`, inner nodes carry canonical types.
    pub fn decide(&mut self, rho: &SimpleType, tau: &SimpleType) -> Result<Option<CfDerivation>, BudgetExhausted> {
        let found = self.solve(&canonical_type(rho), &canonical_type(tau))?;
        Ok(found.map(|d| {
            let mut d = (*d).clone();
            d.rho = rho.clone();
            d.tau = tau.clone();
            d
        }))
    }

    fn tick(&mut self) -> Result<(), BudgetExhausted> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    /// Both arguments canonical.
    fn solve(&mut self, rho: &SimpleType, tau: &SimpleType) -> Result<Option<Rc<CfDerivation>>, BudgetExhausted> {
        if rho.head() != tau.head() || rho.size() > tau.size() || rho.rank() > tau.rank() {
            return Ok(None);
        }
        let key = (rho.clone(), tau.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let mut st = Step {
            a: rho.head(),
            r: rho.args().into_iter().cloned().collect(),
            t: tau.args().into_iter().cloned().collect(),
            slots: vec![Slot::Free; tau.arity()],
            groups: vec![Vec::new(); tau.arity()],
            passive: vec![None; rho.arity()],
        };
        let found = self.assign(&mut st, 0)?.map(Rc::new);
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    fn assign(&mut self, st: &mut Step, i: usize) -> Result<Option<CfDerivation>, BudgetExhausted> {
        if i == st.r.len() {
            return self.close(st);
        }
        self.tick()?;
        let ri = st.r[i].clone();

        // passive: ri <= tj for a free tj; among equal free tj try only one
        for j in 0..st.t.len() {
            if st.slots[j] != Slot::Free || first_equal_free(st, j) != j {
                continue;
            }
            if let Some(d) = self.solve(&ri, &st.t[j].clone())? {
                st.slots[j] = Slot::Passive(i);
                st.passive[i] = Some(d);
                let r = self.assign(st, i + 1)?;
                st.slots[j] = Slot::Free;
                st.passive[i] = None;
                if r.is_some() {
                    return Ok(r);
                }
            }
        }

        // active: join an open group or open one on a free tj with head a
        for j in 0..st.t.len() {
            let opening = match st.slots[j] {
                Slot::Active => false,
                Slot::Free if first_equal_free(st, j) == j && can_host(&st.t[j], st.a) => true,
                _ => continue,
            };
            st.groups[j].push(i);
            if group_fits(st, j) {
                if opening {
                    st.slots[j] = Slot::Active;
                }
                let r = self.assign(st, i + 1)?;
                if opening {
                    st.slots[j] = Slot::Free;
                }
                if r.is_some() {
                    st.groups[j].pop();
                    return Ok(r);
                }
            }
            st.groups[j].pop();
        }
        Ok(None)
    }

    /// All of rho is placed; solve the group premises and build the tree.
    fn close(&mut self, st: &Step) -> Result<Option<CfDerivation>, BudgetExhausted> {
        let a = st.a;
        let mut groups = Vec::new();
        let mut premises = Vec::new();
        for j in 0..st.t.len() {
            if st.slots[j] != Slot::Active {
                continue;
            }
            let delta: Vec<SimpleType> = st.groups[j].iter().map(|&i| st.r[i].clone()).collect();
            let lhs = canonical_type(&SimpleType::from_spine(delta.iter().cloned(), a));
            let sargs: Vec<SimpleType> = st.t[j].args().into_iter().cloned().collect();
            let mut hit = None;
            for (k, s) in sargs.iter().enumerate() {
                if k > 0 && sargs[k - 1] == *s {
                    continue;
                }
                if let Some(d) = self.solve(&lhs, s)? {
                    hit = Some((k, d));
                    break;
                }
            }
            let Some((k, d)) = hit else { return Ok(None) };
            let mut discarded = sargs.clone();
            let sigma = discarded.remove(k);
            groups.push(DGroup { delta, sigma, discarded });
            premises.push((*d).clone());
        }

        let mut inner = if groups.is_empty() {
            CfDerivation::axiom(a)
        } else {
            CfDerivation::d(a, groups, premises)
        };
        let sigma: Vec<SimpleType> = (0..st.t.len())
            .filter(|&j| st.slots[j] == Slot::Free)
            .map(|j| st.t[j].clone())
            .collect();
        if !sigma.is_empty() {
            inner = CfDerivation::n(sigma, inner);
        }
        let mut pairs: Vec<(usize, usize)> = (0..st.t.len())
            .filter_map(|j| match st.slots[j] {
                Slot::Passive(i) => Some((i, j)),
                _ => None,
            })
            .collect();
        pairs.sort();
        for &(i, _) in pairs.iter().rev() {
            let p = st.passive[i].as_ref().expect("passive premise recorded");
            inner = CfDerivation::h((**p).clone(), inner);
        }
        Ok(Some(inner))
    }
}

fn first_equal_free(st: &Step, j: usize) -> usize {
    (0..j)
        .find(|&k| st.slots[k] == Slot::Free && st.t[k] == st.t[j])
        .unwrap_or(j)
}

/// `tj` can take a group only if it and one of its arguments have head `a`.
fn can_host(tj: &SimpleType, a: &str) -> bool {
    tj.head() == a && tj.args().iter().any(|s| s.head() == a)
}

/// Size bound: `Delta -> a` must fit under some argument of `tj` with head `a`.
fn group_fits(st: &Step, j: usize) -> bool {
    let need = 1 + st.groups[j].iter().map(|&i| st.r[i].size()).sum::<usize>();
    st.t[j]
        .args()
        .iter()
        .any(|s| s.head() == st.a && s.size() >= need)
}

/// `rho <=1 tau` with the default budget.
pub fn decide_affine(rho: &SimpleType, tau: &SimpleType) -> Option<CfDerivation> {
    AffineSearch::new()
        .decide(rho, tau)
        .expect("default affine budget exhausted; use AffineSearch::with_budget")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::check_cf;
    use crate::types::ty;

    fn yes(r: &str, t: &str) -> CfDerivation {
        let d = decide_affine(&ty(r), &ty(t)).unwrap_or_else(|| panic!("{r} <= {t} should hold"));
        check_cf(&d).unwrap_or_else(|e| panic!("{r} <= {t}: {e}\n{d}"));
        assert_eq!((d.rho.clone(), d.tau.clone()), (ty(r), ty(t)));
        d
    }

    fn no(r: &str, t: &str) {
        assert!(decide_affine(&ty(r), &ty(t)).is_none(), "{r} <= {t} should fail");
    }

    #[test]
    fn discard_one_argument() {
        let d = yes("a", "b->a");
        assert_eq!(d.rule.name(), "N");
        assert_eq!(d.premises[0].rule.name(), "Axiom");
    }

    #[test]
    fn small_positive_cases() {
        yes("b->a", "((b->a)->a)->a");
        yes("a->b->c", "b->a->c");
        yes("a->c", "a->a->c");
        yes("a->a", "((a->a)->a)->a");
        yes("b->c->a", "((b->a)->a)->((c->a)->a)->a");
        yes("(a->b)->c", "(a->b)->c");
    }

    #[test]
    fn small_negative_cases() {
        no("b", "(b->a)->a");
        no("(e->a)->c->a", "(e->(a->c->a)->a)->a");
        no("a->a", "a");
        no("a", "b");
        no("a->a->a", "a->a");
        // the host of a group must end in the head atom
        no("a->a", "((a->a)->b)->a");
        no("a->a", "b->((a->a)->b)->a");
    }

    #[test]
    fn grouped_arguments() {
        // both b and c go into one group under (b->c->a)->a
        let d = yes("b->c->a", "((b->c->a)->a)->a");
        assert_eq!(d.rule.name(), "D");
    }

    #[test]
    fn budget_is_reported() {
        let mut s = AffineSearch::with_budget(1);
        assert_eq!(
            s.decide(&ty("b->c->a"), &ty("((b->a)->a)->((c->a)->a)->a")),
            Err(BudgetExhausted(1))
        );
    }
}
