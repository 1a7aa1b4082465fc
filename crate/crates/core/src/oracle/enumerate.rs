//! Exhaustive enumeration of long normal terms.
//!
//! Terms are produced directly in nameless form. The depth of a long normal
//! term `\xs. h M1 .. Mk` is `1 + max depth(Mi)`, so `\x:a. x` has depth 1.

use crate::kernel::{Nl, Term, TypeEnv};
use crate::types::SimpleType;

use super::EnumBudget;

#[derive(Clone)]
pub(crate) enum Binding {
    Free(String),
    /// Lambda level counted from the outermost binder.
    Bound(usize),
}

#[derive(Clone)]
pub(crate) struct Entry {
    pub binding: Binding,
    pub ty: SimpleType,
    /// Index of the previous interchangeable copy; this entry may only be
    /// used once that copy has been (symmetry breaking on the env pool).
    pub prev_copy: Option<usize>,
    /// Opaque entries are never applied: they only fill a goal of exactly
    /// their type, as this eta-long term.
    pub opaque: Option<Nl>,
}

impl Entry {
    pub fn free(name: impl Into<String>, ty: SimpleType) -> Self {
        Entry {
            binding: Binding::Free(name.into()),
            ty,
            prev_copy: None,
            opaque: None,
        }
    }

    pub fn opaque(name: impl Into<String>, ty: SimpleType) -> Self {
        let name = name.into();
        let env = TypeEnv::new().with(name.clone(), ty.clone());
        let term = Nl::Free(name.clone()).eta_long(&ty, &env, &mut Vec::new());
        Entry {
            opaque: Some(term),
            ..Entry::free(name, ty)
        }
    }
}

pub(crate) type Mask = u64;

pub(crate) fn bit(i: usize) -> Mask {
    1u64 << i
}

/// Enumeration state: the variables in scope and the current lambda depth.
pub(crate) struct Gen {
    pub ctx: Vec<Entry>,
    pub levels: usize,
    pub affine: bool,
}

impl Gen {
    pub fn new(ctx: Vec<Entry>, affine: bool) -> Self {
        assert!(ctx.len() < 48, "context too large for enumeration");
        Gen {
            ctx,
            levels: 0,
            affine,
        }
    }

    fn var(&self, i: usize) -> Nl {
        match &self.ctx[i].binding {
            Binding::Free(n) => Nl::Free(n.clone()),
            Binding::Bound(l) => Nl::Bound(self.levels - 1 - l),
        }
    }

    fn usable(&self, i: usize, mask: Mask) -> bool {
        if !self.affine {
            return true;
        }
        if mask & bit(i) != 0 {
            return false;
        }
        match self.ctx[i].prev_copy {
            Some(p) => mask & bit(p) != 0,
            _ => true,
        }
    }

    /// Long normal terms of type `ty` with depth at most `depth`, each with
    /// the set of context entries used so far (including `mask`).
    pub fn terms(&mut self, ty: &SimpleType, depth: usize, mask: Mask) -> Vec<(Nl, Mask)> {
        if depth == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..self.ctx.len() {
            if let Some(t) = &self.ctx[i].opaque {
                if self.ctx[i].ty == *ty && self.usable(i, mask) {
                    out.push((t.clone(), if self.affine { mask | bit(i) } else { mask }));
                }
            }
        }
        let base = self.ctx.len();
        let args: Vec<SimpleType> = ty.args().into_iter().cloned().collect();
        for a in &args {
            self.ctx.push(Entry {
                binding: Binding::Bound(self.levels),
                ty: a.clone(),
                prev_copy: None,
                opaque: None,
            });
            self.levels += 1;
        }
        assert!(self.ctx.len() < 64, "context too large for enumeration");
        let bodies = self.neutral(ty.head(), depth, mask);
        self.ctx.truncate(base);
        self.levels -= args.len();
        let keep: Mask = bit(base) - 1;
        out.extend(bodies.into_iter().map(|(b, m)| {
            let t = args
                .iter()
                .rev()
                .fold(b, |acc, a| Nl::Lam(binder_hint(a), a.clone(), Box::new(acc)));
            (t, m & keep)
        }));
        out
    }

    /// `h M1 .. Mk : atom` for every usable head `h`.
    fn neutral(&mut self, atom: &str, depth: usize, mask: Mask) -> Vec<(Nl, Mask)> {
        let mut out = Vec::new();
        for i in 0..self.ctx.len() {
            if self.ctx[i].opaque.is_some() || self.ctx[i].ty.head() != atom || !self.usable(i, mask) {
                continue;
            }
            let m0 = if self.affine { mask | bit(i) } else { mask };
            let params: Vec<SimpleType> = self.ctx[i].ty.args().into_iter().cloned().collect();
            let head = self.var(i);
            for (args, m) in self.spine(&params, depth - 1, m0) {
                out.push((args.into_iter().fold(head.clone(), Nl::app), m));
            }
        }
        out
    }

    /// Argument lists for the given parameter types, threading the mask left
    /// to right.
    pub fn spine(&mut self, params: &[SimpleType], depth: usize, mask: Mask) -> Vec<(Vec<Nl>, Mask)> {
        let mut acc: Vec<(Vec<Nl>, Mask)> = vec![(Vec::new(), mask)];
        for p in params {
            let mut next = Vec::new();
            for (prefix, m) in acc {
                for (t, m2) in self.terms(p, depth, m) {
                    let mut v = prefix.clone();
                    v.push(t);
                    next.push((v, m2));
                }
            }
            if next.is_empty() {
                return next;
            }
            acc = next;
        }
        acc
    }
}

pub(crate) fn binder_hint(ty: &SimpleType) -> String {
    if ty.is_atom() { "u" } else { "g" }.to_string()
}

/// Every long normal term of type `goal` under `env` with depth at most
/// `budget.max_term_depth`, without repetition up to alpha. With
/// `affine_only`, only terms using each variable at most once.
pub fn enumerate_long_normal(env: &TypeEnv, goal: &SimpleType, affine_only: bool, budget: &EnumBudget) -> Vec<Term> {
    let ctx = env.iter().map(|(n, t)| Entry::free(n.clone(), t.clone())).collect();
    let mut g = Gen::new(ctx, affine_only);
    g.terms(goal, budget.max_term_depth, 0)
        .into_iter()
        .map(|(t, _)| t.to_term())
        .collect()
}
