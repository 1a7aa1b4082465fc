//! beta-retractions, beta-embeddings and implicational inhabitation.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::kernel::{Term, TypeEnv};
use crate::types::SimpleType;

/// `tau = stripped -> rho` with the fewest stripped arguments, if any.
pub fn beta_retract(rho: &SimpleType, tau: &SimpleType) -> Option<Vec<SimpleType>> {
    let mut stripped = Vec::new();
    let mut t = tau;
    loop {
        if t == rho {
            return Some(stripped);
        }
        match t {
            SimpleType::Arrow(a, r) => {
                stripped.push((**a).clone());
                t = r;
            }
            SimpleType::Atom(_) => return None,
        }
    }
}

/// Is `goal` provable from the hypotheses in `context`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InhabitationQuery {
    pub context: TypeEnv,
    pub goal: SimpleType,
}

impl InhabitationQuery {
    pub fn closed(goal: SimpleType) -> Self {
        InhabitationQuery {
            context: TypeEnv::new(),
            goal,
        }
    }
}

struct Prover {
    /// Hypotheses in scope, newest last.
    hyps: Vec<(String, SimpleType)>,
    next: usize,
    /// States on the current branch, for loop checking.
    active: HashSet<(BTreeSet<SimpleType>, SimpleType)>,
    /// States known to fail independently of any loop cut.
    failed: HashSet<(BTreeSet<SimpleType>, SimpleType)>,
}

impl Prover {
    fn key(&self, goal: &SimpleType) -> (BTreeSet<SimpleType>, SimpleType) {
        (self.hyps.iter().map(|(_, t)| t.clone()).collect(), goal.clone())
    }

    /// A name not bound by any hypothesis in scope.
    fn fresh(&mut self, stem: &str) -> String {
        loop {
            self.next += 1;
            let n = format!("{stem}{}", self.next);
            if !self.hyps.iter().any(|(h, _)| *h == n) {
                return n;
            }
        }
    }

    /// Long normal inhabitant of `goal`. The flag reports whether a failure
    /// depended on cutting a loop (such failures are not cached).
    fn prove(&mut self, goal: &SimpleType) -> (Option<Term>, bool) {
        let args: Vec<SimpleType> = goal.args().into_iter().cloned().collect();
        let names: Vec<String> = args
            .iter()
            .map(|t| self.fresh(if t.is_atom() { "u" } else { "h" }))
            .collect();
        let base = self.hyps.len();
        for (n, t) in names.iter().zip(&args) {
            self.hyps.push((n.clone(), t.clone()));
        }
        let atom = SimpleType::atom(goal.head());
        let (body, cut) = self.prove_atom(&atom);
        self.hyps.truncate(base);
        let term = body.map(|b| {
            names
                .into_iter()
                .zip(args)
                .rev()
                .fold(b, |acc, (n, t)| Term::abs(n, t, acc))
        });
        (term, cut)
    }

    fn prove_atom(&mut self, a: &SimpleType) -> (Option<Term>, bool) {
        let key = self.key(a);
        if self.failed.contains(&key) {
            return (None, false);
        }
        if self.active.contains(&key) {
            return (None, true);
        }
        self.active.insert(key.clone());
        let mut cut = false;
        let mut seen = HashSet::new();
        let mut result = None;
        for k in (0..self.hyps.len()).rev() {
            let (name, ty) = self.hyps[k].clone();
            if ty.head() != a.head() || !seen.insert(ty.clone()) {
                continue;
            }
            let mut call = Vec::new();
            let mut ok = true;
            for p in ty.args() {
                let (m, c) = self.prove(p);
                cut |= c;
                match m {
                    Some(m) => call.push(m),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                result = Some(Term::apply(Term::var(name), call));
                break;
            }
        }
        self.active.remove(&key);
        if result.is_none() && !cut {
            self.failed.insert(key);
        }
        (result, cut)
    }
}

/// A long normal inhabitant of the goal, found by goal-directed search with
/// loop checking on (hypotheses as a set, atomic goal).
pub fn inhabited(q: &InhabitationQuery) -> Option<Term> {
    let mut p = Prover {
        hyps: q.context.iter().map(|(n, t)| (n.clone(), t.clone())).collect(),
        next: 0,
        active: HashSet::new(),
        failed: HashSet::new(),
    };
    p.prove(&q.goal).0
}

/// `beta_retract` plus, for every stripped argument, an inhabitant under
/// `x : tau`.
pub fn beta_embed(rho: &SimpleType, tau: &SimpleType) -> Option<Vec<Term>> {
    let stripped = beta_retract(rho, tau)?;
    let context = TypeEnv::new().with("x", tau.clone());
    stripped
        .into_iter()
        .map(|goal| {
            inhabited(&InhabitationQuery {
                context: context.clone(),
                goal,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{long_normal_form, parse_term, typecheck};
    use crate::types::ty;

    fn closed(goal: &str) -> Option<Term> {
        inhabited(&InhabitationQuery::closed(ty(goal)))
    }

    #[test]
    fn strip_examples() {
        assert_eq!(beta_retract(&ty("c"), &ty("a->b->c")), Some(vec![ty("a"), ty("b")]));
        assert_eq!(beta_retract(&ty("a->b"), &ty("a->b")), Some(vec![]));
        assert_eq!(beta_retract(&ty("a->b->c"), &ty("b->a->c")), None);
        // a repeated suffix: the shortest strip wins
        assert_eq!(beta_retract(&ty("a->a"), &ty("a->a->a")), Some(vec![ty("a")]));
    }

    #[test]
    fn closed_inhabitants() {
        assert_eq!(closed("a->a"), Some(parse_term(r"\x:a. x").unwrap()));
        assert_eq!(closed("a"), None);
        assert_eq!(closed("((a->b)->a)->a"), None);
        assert!(closed("a->b->a").is_some());
        assert!(closed("(a->b)->(b->c)->a->c").is_some());
        assert_eq!(closed("(a->a)->a"), None);
    }

    #[test]
    fn argument_swap() {
        let q = InhabitationQuery {
            context: TypeEnv::new().with("x", ty("a->b->c")),
            goal: ty("b->a->c"),
        };
        let m = inhabited(&q).unwrap();
        assert_eq!(m, parse_term(r"\u:b. \v:a. x v u").unwrap());
    }

    #[test]
    fn witnesses_typecheck_in_long_form() {
        for g in ["a->b->a", "(a->b)->(b->c)->a->c", "((a->b)->b)->(a->b)->b", "a->(a->a)->a"] {
            let m = closed(g).unwrap();
            let env = TypeEnv::new();
            assert_eq!(typecheck(&env, &m).unwrap(), ty(g));
            assert_eq!(long_normal_form(&env, &m).unwrap(), m);
        }
    }

    #[test]
    fn embedding_examples() {
        let w = beta_embed(&ty("c"), &ty("(c->c)->c")).unwrap();
        assert_eq!(w, vec![parse_term(r"\z:c. z").unwrap()]);
        assert_eq!(beta_embed(&ty("a"), &ty("b->a")), None);
        assert_eq!(beta_embed(&ty("a->b"), &ty("a->b")), Some(vec![]));
    }

    #[test]
    fn loops_do_not_poison_the_cache() {
        // proving a from (a->a) alone loops; b->a with b available must still succeed
        let q = InhabitationQuery {
            context: TypeEnv::new().with("f", ty("a->a")).with("g", ty("b->a")).with("y", ty("b")),
            goal: ty("a"),
        };
        assert!(inhabited(&q).is_some());
    }
}
