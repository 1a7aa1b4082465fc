//! Locally nameless (de Bruijn index) representation used for substitution,
//! normalization and alpha-equivalence. Binder names survive only as hints
//! for converting back.

use std::collections::BTreeSet;

use super::{Term, TypeEnv, TypeError};
use crate::types::SimpleType;

#[derive(Debug, Clone)]
pub(crate) enum Nl {
    Bound(usize),
    Free(String),
    Lam(String, SimpleType, Box<Nl>),
    App(Box<Nl>, Box<Nl>),
}

impl Nl {
    pub(crate) fn app(f: Nl, a: Nl) -> Nl {
        Nl::App(Box::new(f), Box::new(a))
    }

    pub(crate) fn from_term(t: &Term) -> Nl {
        fn go(t: &Term, scope: &mut Vec<String>) -> Nl {
            match t {
                Term::Var(n) => match scope.iter().rposition(|s| s == n) {
                    Some(p) => Nl::Bound(scope.len() - 1 - p),
                    None => Nl::Free(n.clone()),
                },
                Term::Abs(x, ty, body) => {
                    scope.push(x.clone());
                    let b = go(body, scope);
                    scope.pop();
                    Nl::Lam(x.clone(), ty.clone(), Box::new(b))
                }
                Term::App(f, a) => Nl::app(go(f, scope), go(a, scope)),
            }
        }
        go(t, &mut Vec::new())
    }

    pub(crate) fn free_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Nl::Bound(_) => {}
            Nl::Free(n) => {
                out.insert(n.clone());
            }
            Nl::Lam(_, _, b) => b.free_names(out),
            Nl::App(f, a) => {
                f.free_names(out);
                a.free_names(out);
            }
        }
    }

    /// Converts back to named syntax. Binder names keep their hint unless it
    /// would capture a free name or shadow an enclosing binder.
    pub(crate) fn to_term(&self) -> Term {
        fn fresh(hint: &str, taken: &BTreeSet<String>, scope: &[String]) -> String {
            let clash = |n: &str| taken.contains(n) || scope.iter().any(|s| s == n);
            if !clash(hint) {
                return hint.to_string();
            }
            let stem = hint.trim_end_matches(|c: char| c.is_ascii_digit());
            let stem = if stem.is_empty() { "v" } else { stem };
            (1..)
                .map(|i| format!("{stem}{i}"))
                .find(|n| !clash(n))
                .expect("unbounded name supply")
        }
        fn go(t: &Nl, taken: &BTreeSet<String>, scope: &mut Vec<String>) -> Term {
            match t {
                Nl::Bound(i) => Term::Var(scope[scope.len() - 1 - i].clone()),
                Nl::Free(n) => Term::Var(n.clone()),
                Nl::Lam(hint, ty, b) => {
                    let name = fresh(hint, taken, scope);
                    scope.push(name.clone());
                    let body = go(b, taken, scope);
                    scope.pop();
                    Term::Abs(name, ty.clone(), Box::new(body))
                }
                Nl::App(f, a) => Term::app(go(f, taken, scope), go(a, taken, scope)),
            }
        }
        let mut taken = BTreeSet::new();
        self.free_names(&mut taken);
        go(self, &taken, &mut Vec::new())
    }

    /// Alpha-equivalence: binder hints are ignored, binder types are not.
    pub(crate) fn alpha_eq(&self, other: &Nl) -> bool {
        match (self, other) {
            (Nl::Bound(i), Nl::Bound(j)) => i == j,
            (Nl::Free(m), Nl::Free(n)) => m == n,
            (Nl::Lam(_, s, b), Nl::Lam(_, t, c)) => s == t && b.alpha_eq(c),
            (Nl::App(f, a), Nl::App(g, b)) => f.alpha_eq(g) && a.alpha_eq(b),
            _ => false,
        }
    }

    fn shift(&self, d: isize, cutoff: usize) -> Nl {
        match self {
            Nl::Bound(i) if *i >= cutoff => Nl::Bound((*i as isize + d) as usize),
            Nl::Bound(_) | Nl::Free(_) => self.clone(),
            Nl::Lam(h, ty, b) => Nl::Lam(h.clone(), ty.clone(), Box::new(b.shift(d, cutoff + 1))),
            Nl::App(f, a) => Nl::app(f.shift(d, cutoff), a.shift(d, cutoff)),
        }
    }

    /// Replaces index `j` by `s`.
    fn subst(&self, j: usize, s: &Nl) -> Nl {
        match self {
            Nl::Bound(i) if *i == j => s.shift(j as isize, 0),
            Nl::Bound(_) | Nl::Free(_) => self.clone(),
            Nl::Lam(h, ty, b) => Nl::Lam(h.clone(), ty.clone(), Box::new(b.subst(j + 1, s))),
            Nl::App(f, a) => Nl::app(f.subst(j, s), a.subst(j, s)),
        }
    }

    /// Contracts `(\x.body) arg`.
    fn instantiate(body: &Nl, arg: &Nl) -> Nl {
        body.subst(0, &arg.shift(1, 0)).shift(-1, 0)
    }

    /// beta-normal form. Only called on simply typed terms, which are
    /// strongly normalizing, so the recursion terminates.
    pub(crate) fn normalize(&self) -> Nl {
        match self {
            Nl::Bound(_) | Nl::Free(_) => self.clone(),
            Nl::Lam(h, ty, b) => Nl::Lam(h.clone(), ty.clone(), Box::new(b.normalize())),
            Nl::App(f, a) => match f.whnf() {
                Nl::Lam(_, _, body) => Nl::instantiate(&body, a).normalize(),
                head => Nl::app(head.normalize(), a.normalize()),
            },
        }
    }

    /// Weak head normal form (leftmost-outermost, no reduction under lambda).
    fn whnf(&self) -> Nl {
        match self {
            Nl::App(f, a) => match f.whnf() {
                Nl::Lam(_, _, body) => Nl::instantiate(&body, a).whnf(),
                head => Nl::app(head, (**a).clone()),
            },
            _ => self.clone(),
        }
    }

    pub(crate) fn has_redex(&self) -> bool {
        match self {
            Nl::Bound(_) | Nl::Free(_) => false,
            Nl::Lam(_, _, b) => b.has_redex(),
            Nl::App(f, a) => matches!(**f, Nl::Lam(..)) || f.has_redex() || a.has_redex(),
        }
    }

    pub(crate) fn type_of(&self, env: &TypeEnv, ctx: &mut Vec<SimpleType>) -> Result<SimpleType, TypeError> {
        match self {
            Nl::Bound(i) => Ok(ctx[ctx.len() - 1 - i].clone()),
            Nl::Free(n) => env
                .get(n)
                .cloned()
                .ok_or_else(|| TypeError::Unbound(n.clone())),
            Nl::Lam(_, ty, b) => {
                ctx.push(ty.clone());
                let r = b.type_of(env, ctx);
                ctx.pop();
                Ok(SimpleType::arrow(ty.clone(), r?))
            }
            Nl::App(f, a) => {
                let ft = f.type_of(env, ctx)?;
                let at = a.type_of(env, ctx)?;
                match ft {
                    SimpleType::Arrow(p, r) if *p == at => Ok(*r),
                    SimpleType::Arrow(p, _) => Err(TypeError::Mismatch {
                        expected: *p,
                        found: at,
                    }),
                    other => Err(TypeError::NotAFunction(other)),
                }
            }
        }
    }

    /// Full eta-expansion of a beta-normal, well-typed term at type `ty`.
    pub(crate) fn eta_long(self, ty: &SimpleType, env: &TypeEnv, ctx: &mut Vec<SimpleType>) -> Nl {
        match (self, ty) {
            (Nl::Lam(h, a, body), SimpleType::Arrow(_, r)) => {
                ctx.push(a.clone());
                let b = body.eta_long(r, env, ctx);
                ctx.pop();
                Nl::Lam(h, a, Box::new(b))
            }
            (neutral, SimpleType::Arrow(a, r)) => {
                ctx.push((**a).clone());
                let applied = Nl::app(neutral.shift(1, 0), Nl::Bound(0));
                let b = applied.eta_long(r, env, ctx);
                ctx.pop();
                Nl::Lam(binder_hint(a), (**a).clone(), Box::new(b))
            }
            (neutral, SimpleType::Atom(_)) => {
                let mut args = Vec::new();
                let mut head = neutral;
                while let Nl::App(f, a) = head {
                    args.push(*a);
                    head = *f;
                }
                args.reverse();
                let head_ty = head
                    .type_of(env, ctx)
                    .expect("eta_long called on an ill-typed term");
                let params = head_ty.args().into_iter().cloned().collect::<Vec<_>>();
                args.into_iter()
                    .zip(params.iter())
                    .fold(head, |acc, (arg, p)| Nl::app(acc, arg.eta_long(p, env, ctx)))
            }
        }
    }
}

fn binder_hint(ty: &SimpleType) -> String {
    if ty.is_atom() { "y" } else { "g" }.to_string()
}
