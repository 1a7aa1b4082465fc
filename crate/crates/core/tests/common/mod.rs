//! Generators shared by the integration suites.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use retract_core::kernel::Term;
use retract_core::SimpleType;

pub fn ty(s: &str) -> SimpleType {
    s.parse().unwrap_or_else(|e| panic!("bad type {s:?}: {e}"))
}

pub fn tm(s: &str) -> Term {
    s.parse().unwrap_or_else(|e| panic!("bad term {s:?}: {e}"))
}

/// Types over `atoms` with at most `max_atoms` atom occurrences.
pub fn arb_type(atoms: &'static [&'static str], max_atoms: usize) -> impl Strategy<Value = SimpleType> {
    let leaf = proptest::sample::select(atoms).prop_map(SimpleType::atom);
    leaf.prop_recursive(5, max_atoms as u32, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| SimpleType::arrow(l, r))
    })
    .prop_filter("too many atoms", move |t| t.size() <= max_atoms)
}

/// Shuffles the arguments at every node: the result is `~` to `t`.
pub fn permute<R: Rng>(rng: &mut R, t: &SimpleType) -> SimpleType {
    let mut args: Vec<SimpleType> = t.args().into_iter().map(|a| permute(rng, a)).collect();
    args.shuffle(rng);
    SimpleType::from_spine(args, t.head())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random well-typed term of type `goal` over the context, with beta
/// redexes sprinkled in. Needs a variable of every atom type in `ctx`.
pub fn random_term<R: Rng>(rng: &mut R, ctx: &mut Vec<(String, SimpleType)>, goal: &SimpleType, fuel: usize) -> Term {
    if let SimpleType::Arrow(a, r) = goal {
        if rng.gen_bool(0.7) || fuel == 0 {
            let name = format!("v{}", ctx.len());
            ctx.push((name.clone(), (**a).clone()));
            let body = random_term(rng, ctx, r, fuel.saturating_sub(1));
            ctx.pop();
            return Term::abs(name, (**a).clone(), body);
        }
    }
    if fuel > 0 && rng.gen_bool(0.25) {
        // a redex (\y:s. M) N
        let s = ctx[rng.gen_range(0..ctx.len())].1.clone();
        let arg = random_term(rng, ctx, &s, fuel / 2);
        let name = format!("v{}", ctx.len());
        ctx.push((name.clone(), s.clone()));
        let body = random_term(rng, ctx, goal, fuel / 2);
        ctx.pop();
        return Term::app(Term::abs(name, s, body), arg);
    }
    // a variable whose type ends in goal, applied to enough arguments
    let mut options = Vec::new();
    for (n, t) in ctx.iter() {
        let mut t0 = t;
        let mut params = Vec::new();
        loop {
            if t0 == goal {
                options.push((n.clone(), params.clone()));
            }
            match t0 {
                SimpleType::Arrow(a, r) => {
                    params.push((**a).clone());
                    t0 = r;
                }
                SimpleType::Atom(_) => break,
            }
        }
    }
    if fuel == 0 {
        options.retain(|(_, p)| p.is_empty());
    }
    if options.is_empty() {
        // fall back to an abstraction for arrow goals
        let SimpleType::Arrow(a, r) = goal else {
            panic!("no variable of type {goal} in context");
        };
        let name = format!("v{}", ctx.len());
        ctx.push((name.clone(), (**a).clone()));
        let body = random_term(rng, ctx, r, 0);
        ctx.pop();
        return Term::abs(name, (**a).clone(), body);
    }
    let (n, params) = options[rng.gen_range(0..options.len())].clone();
    let args: Vec<Term> = params
        .iter()
        .map(|p| random_term(rng, ctx, p, fuel.saturating_sub(2)))
        .collect();
    Term::apply(Term::var(n), args)
}
