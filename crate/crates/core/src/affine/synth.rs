//! Affine coder/decoder synthesis from LPS derivations.
//!
//! Each node `s <= t` is turned into a pair of closed coercions
//! `F : s -> t` and `G : t -> s` (up to fresh environment variables) with
//! `G . F = id`; the witness is then `C = F x` and `D = G`, normalized.

use super::lps::{check_lps, LpsDerivation, LpsRule};
use super::DerivationError;
use crate::kernel::{long_normal_form, RetractWitness, Term, TypeEnv};
use crate::types::{canonical_type, SimpleType};

/// Prefix of environment variables introduced for discarded arguments.
pub const ENV_PREFIX: &str = "_e";

pub const MAIN_VAR: &str = "x";

struct Synth {
    next_var: usize,
    env: TypeEnv,
}

impl Synth {
    fn fresh(&mut self) -> String {
        self.next_var += 1;
        format!("v{}", self.next_var)
    }

    fn fresh_env(&mut self, ty: SimpleType) -> Term {
        let name = format!("{ENV_PREFIX}{}", self.env.len() + 1);
        self.env.insert(name.clone(), ty).expect("env names are fresh");
        Term::var(name)
    }

    /// `\x:s. x` specialised to nothing when `s == t`, otherwise a closed
    /// argument permutation `s -> t` for `s ~ t`.
    fn iso_term(&mut self, s: &SimpleType, t: &SimpleType) -> Term {
        let x = self.fresh();
        let body = self.iso_apply(s, t, Term::var(&x));
        Term::abs(x, s.clone(), body)
    }

    /// Coerces `m : s` to type `t` where `s ~ t`.
    fn iso_apply(&mut self, s: &SimpleType, t: &SimpleType, m: Term) -> Term {
        if s == t {
            return m;
        }
        let t_args: Vec<SimpleType> = t.args().into_iter().cloned().collect();
        let t_keys: Vec<SimpleType> = t_args.iter().map(canonical_type).collect();
        let ys: Vec<String> = t_args.iter().map(|_| self.fresh()).collect();
        let mut used = vec![false; t_args.len()];
        let mut call_args = Vec::new();
        for si in s.args() {
            let key = canonical_type(si);
            let j = (0..t_args.len())
                .find(|&j| !used[j] && t_keys[j] == key)
                .expect("iso_apply called on non-isomorphic types");
            used[j] = true;
            call_args.push(self.iso_apply(&t_args[j], si, Term::var(&ys[j])));
        }
        let body = Term::apply(m, call_args);
        ys.into_iter()
            .zip(t_args)
            .rev()
            .fold(body, |acc, (y, ty)| Term::abs(y, ty, acc))
    }

    /// `\x:a. g (f x)` for `f : a -> b`, `g : b -> c`.
    fn compose(&mut self, a: &SimpleType, f: Term, g: Term) -> Term {
        let x = self.fresh();
        Term::abs(x.clone(), a.clone(), Term::app(g, Term::app(f, Term::var(x))))
    }

    /// Returns `(F, G)` with `F : rho -> tau`, `G : tau -> rho` for the node.
    fn coercions(&mut self, d: &LpsDerivation) -> (Term, Term) {
        let (s, t, f, g) = match &d.rule {
            LpsRule::A1 => {
                let s = d.rho.clone();
                let f = self.iso_term(&s, &s);
                let g = self.iso_term(&s, &s);
                (s.clone(), s, f, g)
            }
            LpsRule::A2 { discarded } => {
                let s = d.rho.clone();
                let t = SimpleType::arrow(discarded.clone(), s.clone());
                let (x, y, h) = (self.fresh(), self.fresh(), self.fresh());
                let f = Term::abs(&x, s.clone(), Term::abs(y, discarded.clone(), Term::var(&x)));
                let e = self.fresh_env(discarded.clone());
                let g = Term::abs(&h, t.clone(), Term::app(Term::var(&h), e));
                (s, t, f, g)
            }
            LpsRule::A4 { atom } => {
                let s = d.rho.clone();
                let a = SimpleType::atom(atom.as_str());
                let k_ty = SimpleType::arrow(s.clone(), a.clone());
                let t = SimpleType::arrow(k_ty.clone(), a);
                let (x, k) = (self.fresh(), self.fresh());
                let f = Term::abs(
                    &x,
                    s.clone(),
                    Term::abs(&k, k_ty, Term::app(Term::var(&k), Term::var(&x))),
                );
                let h = self.fresh();
                let sv = self.fresh();
                let zs: Vec<(String, SimpleType)> =
                    s.args().into_iter().map(|z| (self.fresh(), z.clone())).collect();
                let inner = Term::abs(
                    &sv,
                    s.clone(),
                    Term::apply(Term::var(&sv), zs.iter().map(|(z, _)| Term::var(z))),
                );
                let body = Term::app(Term::var(&h), inner);
                let body = zs.into_iter().rev().fold(body, |acc, (z, ty)| Term::abs(z, ty, acc));
                let g = Term::abs(&h, t.clone(), body);
                (s, t, f, g)
            }
            LpsRule::R1 => {
                let (p, q) = (&d.premises[0], &d.premises[1]);
                let (f0, g0) = self.coercions(p);
                let (f1, g1) = self.coercions(q);
                let mid_f = self.iso_term(&p.tau, &q.rho);
                let mid_g = self.iso_term(&q.rho, &p.tau);
                let f01 = self.compose(&p.rho, f0, mid_f);
                let f = self.compose(&p.rho, f01, f1);
                let g10 = self.compose(&q.tau, g1, mid_g);
                let g = self.compose(&q.tau, g10, g0);
                (p.rho.clone(), q.tau.clone(), f, g)
            }
            LpsRule::R2 => {
                let (p, q) = (&d.premises[0], &d.premises[1]);
                let (f0, g0) = self.coercions(p);
                let (f1, g1) = self.coercions(q);
                let s = SimpleType::arrow(p.rho.clone(), q.rho.clone());
                let t = SimpleType::arrow(p.tau.clone(), q.tau.clone());
                let (x, y) = (self.fresh(), self.fresh());
                let f = Term::abs(
                    &x,
                    s.clone(),
                    Term::abs(
                        &y,
                        p.tau.clone(),
                        Term::app(f1, Term::app(Term::var(&x), Term::app(g0, Term::var(&y)))),
                    ),
                );
                let (h, z) = (self.fresh(), self.fresh());
                let g = Term::abs(
                    &h,
                    t.clone(),
                    Term::abs(
                        &z,
                        p.rho.clone(),
                        Term::app(g1, Term::app(Term::var(&h), Term::app(f0, Term::var(&z)))),
                    ),
                );
                (s, t, f, g)
            }
        };
        self.adapt(d, &s, &t, f, g)
    }

    /// Moves coercions between the schema types `(s, t)` and the node's own
    /// conclusion, which agrees with them up to `~`.
    fn adapt(&mut self, d: &LpsDerivation, s: &SimpleType, t: &SimpleType, f: Term, g: Term) -> (Term, Term) {
        if *s == d.rho && *t == d.tau {
            return (f, g);
        }
        let x = self.fresh();
        let into_s = self.iso_apply(&d.rho, s, Term::var(&x));
        let fx = Term::app(f, into_s);
        let f = Term::abs(x, d.rho.clone(), self.iso_apply(t, &d.tau, fx));
        let h = self.fresh();
        let into_t = self.iso_apply(&d.tau, t, Term::var(&h));
        let gh = Term::app(g, into_t);
        let g = Term::abs(h, d.tau.clone(), self.iso_apply(s, &d.rho, gh));
        (f, g)
    }
}

/// Builds an affine witness for the conclusion of a valid LPS derivation.
/// Coder and decoder are returned in long normal form.
pub fn synthesize_witness(d: &LpsDerivation) -> Result<RetractWitness, DerivationError> {
    check_lps(d)?;
    let mut sy = Synth {
        next_var: 0,
        env: TypeEnv::new(),
    };
    let (f, g) = sy.coercions(d);
    let env = sy.env;
    let coder_env = env.clone().with(MAIN_VAR, d.rho.clone());
    let coder = long_normal_form(&coder_env, &Term::app(f, Term::var(MAIN_VAR)))
        .expect("synthesized coder is well typed");
    let decoder = long_normal_form(&env, &g).expect("synthesized decoder is well typed");
    Ok(RetractWitness {
        rho: d.rho.clone(),
        tau: d.tau.clone(),
        coder,
        decoder,
        env,
        main_var: MAIN_VAR.to_string(),
    })
}
