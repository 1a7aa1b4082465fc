//! Church-style simply typed lambda terms.
//!
//! Terms are kept in named form for printing and parsing; substitution,
//! normalization and comparison go through a de Bruijn representation, so
//! `==` on [`Term`] is alpha-equivalence.

mod nameless;
mod parse;
mod witness;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub(crate) use nameless::Nl;
pub use parse::parse_term;
pub use witness::{verify_witness, RetractWitness, Verification, WitnessError, WitnessFileError};

use crate::lex::ParseError;
use crate::types::SimpleType;

#[derive(Debug, Clone)]
pub enum Term {
    Var(String),
    Abs(String, SimpleType, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn abs(name: impl Into<String>, ty: SimpleType, body: Term) -> Self {
        Term::Abs(name.into(), ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Self {
        Term::App(Box::new(f), Box::new(a))
    }

    /// `h a1 .. an`
    pub fn apply(head: Term, args: impl IntoIterator<Item = Term>) -> Self {
        args.into_iter().fold(head, Term::app)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        Nl::from_term(self).free_names(&mut out);
        out
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        Nl::from_term(self).alpha_eq(&Nl::from_term(other))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, _, b) => 1 + b.size(),
            Term::App(f, a) => f.size() + a.size(),
        }
    }

    pub fn has_beta_redex(&self) -> bool {
        Nl::from_term(self).has_redex()
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(n) => f.write_str(n),
            Term::Abs(x, ty, b) => write!(f, "\\{x}:{ty}. {b}"),
            Term::App(g, a) => {
                match **g {
                    Term::Abs(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **a {
                    Term::Var(_) => write!(f, " {a}"),
                    _ => write!(f, " ({a})"),
                }
            }
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_term(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate binding for `{0}` in type environment")]
pub struct DuplicateBinding(pub String);

/// Finite map from free variable names to types.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeEnv(BTreeMap<String, SimpleType>);

impl TypeEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, ty: SimpleType) -> Result<(), DuplicateBinding> {
        let name = name.into();
        if self.0.contains_key(&name) {
            return Err(DuplicateBinding(name));
        }
        self.0.insert(name, ty);
        Ok(())
    }

    /// Builder-style insert; panics on a duplicate name.
    pub fn with(mut self, name: impl Into<String>, ty: SimpleType) -> Self {
        self.insert(name, ty).expect("duplicate binding");
        self
    }

    pub fn get(&self, name: &str) -> Option<&SimpleType> {
        self.0.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &SimpleType)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, SimpleType)> for TypeEnv {
    fn from_iter<I: IntoIterator<Item = (String, SimpleType)>>(iter: I) -> Self {
        TypeEnv(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("argument type mismatch: expected {expected}, found {found}")]
    Mismatch {
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("cannot apply a term of atomic type {0}")]
    NotAFunction(SimpleType),
    #[error("terms have different types: {0} and {1}")]
    DifferentTypes(SimpleType, SimpleType),
}

pub fn typecheck(env: &TypeEnv, m: &Term) -> Result<SimpleType, TypeError> {
    Nl::from_term(m).type_of(env, &mut Vec::new())
}

/// beta-normal form by normal-order reduction.
pub fn beta_normalize(m: &Term) -> Term {
    Nl::from_term(m).normalize().to_term()
}

/// beta-normal, fully eta-expanded form.
pub fn long_normal_form(env: &TypeEnv, m: &Term) -> Result<Term, TypeError> {
    Ok(long_nameless(env, m)?.to_term())
}

pub(crate) fn long_nameless(env: &TypeEnv, m: &Term) -> Result<Nl, TypeError> {
    let nl = Nl::from_term(m);
    let ty = nl.type_of(env, &mut Vec::new())?;
    Ok(nl.normalize().eta_long(&ty, env, &mut Vec::new()))
}

pub fn beta_eta_equal(env: &TypeEnv, m: &Term, n: &Term) -> Result<bool, TypeError> {
    let (tm, tn) = (typecheck(env, m)?, typecheck(env, n)?);
    if tm != tn {
        return Err(TypeError::DifferentTypes(tm, tn));
    }
    Ok(long_nameless(env, m)?.alpha_eq(&long_nameless(env, n)?))
}

/// Every variable, free or bound, occurs at most once.
pub fn is_affine(m: &Term) -> bool {
    fn go(t: &Nl, depth: usize, bound: &mut Vec<usize>, free: &mut HashMap<String, usize>) -> bool {
        match t {
            Nl::Bound(i) => {
                let slot = &mut bound[depth - 1 - i];
                *slot += 1;
                *slot <= 1
            }
            Nl::Free(n) => {
                let c = free.entry(n.clone()).or_insert(0);
                *c += 1;
                *c <= 1
            }
            Nl::Lam(_, _, b) => {
                bound.push(0);
                let ok = go(b, depth + 1, bound, free);
                bound.pop();
                ok
            }
            Nl::App(f, a) => go(f, depth, bound, free) && go(a, depth, bound, free),
        }
    }
    go(&Nl::from_term(m), 0, &mut Vec::new(), &mut HashMap::new())
}

#[cfg(test)]
pub(crate) fn tm(s: &str) -> Term {
    parse_term(s).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::ty;

    #[test]
    fn typecheck_examples() {
        let empty = TypeEnv::new();
        assert_eq!(typecheck(&empty, &tm(r"\x:a. x")), Ok(ty("a->a")));
        assert_eq!(typecheck(&TypeEnv::new().with("x", ty("a")), &tm("x")), Ok(ty("a")));
        assert_eq!(
            typecheck(&empty, &tm(r"(\x:a. x) (\y:b. y)")),
            Err(TypeError::Mismatch { expected: ty("a"), found: ty("b->b") })
        );
        assert_eq!(typecheck(&empty, &tm("x")), Err(TypeError::Unbound("x".into())));
        let env = TypeEnv::new().with("x", ty("a"));
        assert_eq!(typecheck(&env, &tm("x x")), Err(TypeError::NotAFunction(ty("a"))));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_normalize(&tm(r"(\x:a. x) y")), tm("y"));
        assert_eq!(
            beta_normalize(&tm(r"(\f:a->a. \z:a. f z) g")),
            tm(r"\z:a. g z")
        );
    }

    #[test]
    fn long_normal_form_examples() {
        let env = TypeEnv::new().with("x", ty("a->a"));
        assert_eq!(long_normal_form(&env, &tm("x")).unwrap(), tm(r"\y:a. x y"));
        let env = TypeEnv::new().with("x", ty("a"));
        assert_eq!(long_normal_form(&env, &tm("x")).unwrap(), tm("x"));
        let env = TypeEnv::new().with("x", ty("(a->a)->a"));
        let lnf = long_normal_form(&env, &tm("x")).unwrap();
        assert_eq!(lnf, tm(r"\s:a->a. x (\y:a. s y)"));
        assert_eq!(long_normal_form(&env, &lnf).unwrap(), lnf);
    }

    #[test]
    fn beta_eta_examples() {
        let env = TypeEnv::new().with("x", ty("a->a"));
        assert_eq!(beta_eta_equal(&env, &tm(r"\y:a. x y"), &tm("x")), Ok(true));
        assert_eq!(
            beta_eta_equal(&env, &tm(r"\z:a. (\w:a. x w) z"), &tm("x")),
            Ok(true)
        );
        let env = TypeEnv::new().with("x", ty("a")).with("y", ty("a"));
        assert_eq!(beta_eta_equal(&env, &tm("x"), &tm("y")), Ok(false));
        let env = TypeEnv::new().with("x", ty("a")).with("y", ty("b"));
        assert!(matches!(
            beta_eta_equal(&env, &tm("x"), &tm("y")),
            Err(TypeError::DifferentTypes(..))
        ));
    }

    #[test]
    fn affinity_examples() {
        assert!(is_affine(&tm(r"\x:a. x")));
        assert!(!is_affine(&tm(r"\f:a->a->a. \z:a. f z z")));
        assert!(is_affine(&tm(r"\x:a. \y:a. y")));
        // shadowing: two distinct binders named x
        assert!(is_affine(&tm(r"\x:a->a. x (\x:a. x)")));
        assert!(!is_affine(&tm("f x x")));
        assert!(is_affine(&tm(r"(\x:a. x) (\x:a. x)")));
    }

    #[test]
    fn alpha_equivalence() {
        assert_eq!(tm(r"\x:a. x"), tm(r"\y:a. y"));
        assert_ne!(tm(r"\x:a. x"), tm(r"\x:b. x"));
        assert_ne!(tm(r"\x:a. y"), tm(r"\y:a. y"));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            r"\x:a. x",
            r"\f:(b->a)->a. \z:b. f (\s:b->a. s z)",
            r"(\x:a. x) y",
            r"f (g x) y",
            r"\y:b. x",
        ] {
            assert_eq!(tm(s).to_string(), s);
        }
    }
}
