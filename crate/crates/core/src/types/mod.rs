//! Simple types over an open alphabet of atoms.
//!
//! A type `s1 -> ... -> sn -> a` is viewed through its *spine*: the list of
//! arguments `s1..sn` and the target atom `a` (its head). Most operations in
//! this crate work on spines rather than on the binary arrow structure,
//! because retractions are invariant under permutation of arguments.

mod canon;
pub(crate) mod parse;
mod tree;
mod word;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use canon::{canonicalize, iso, CanonicalType};
pub(crate) use canon::canonical_type;
pub use tree::{delayed_arguments, node_paths, parts, parts_under, paths, tree, PathWord, TypeTree};
pub use word::word_embed;

pub use crate::lex::ParseError;

/// Atom names: `[a-z][a-z0-9]*`.
pub type Atom = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    Atom(Atom),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn atom(name: impl Into<Atom>) -> Self {
        SimpleType::Atom(name.into())
    }

    pub fn arrow(arg: SimpleType, res: SimpleType) -> Self {
        SimpleType::Arrow(Box::new(arg), Box::new(res))
    }

    /// Builds `args[0] -> ... -> args[n-1] -> head`.
    pub fn from_spine<I>(args: I, head: &str) -> Self
    where
        I: IntoIterator<Item = SimpleType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(SimpleType::atom(head), |acc, a| SimpleType::arrow(a, acc))
    }

    /// Builds `args[0] -> ... -> args[n-1] -> result`.
    pub fn arrows<I>(args: I, result: SimpleType) -> Self
    where
        I: IntoIterator<Item = SimpleType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| SimpleType::arrow(a, acc))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, SimpleType::Atom(_))
    }

    pub fn head(&self) -> &str {
        let mut t = self;
        loop {
            match t {
                SimpleType::Atom(a) => return a,
                SimpleType::Arrow(_, r) => t = r,
            }
        }
    }

    /// Spine arguments, outermost first.
    pub fn args(&self) -> Vec<&SimpleType> {
        let mut out = Vec::new();
        let mut t = self;
        while let SimpleType::Arrow(a, r) = t {
            out.push(&**a);
            t = r;
        }
        out
    }

    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut t = self;
        while let SimpleType::Arrow(_, r) = t {
            n += 1;
            t = r;
        }
        n
    }

    pub fn spine(&self) -> Spine {
        Spine {
            args: self.args().into_iter().cloned().collect(),
            head: self.head().to_string(),
        }
    }

    /// `rank(a) = 0`, `rank(s1 -> .. -> sn -> a) = 1 + max rank(si)`.
    pub fn rank(&self) -> usize {
        match self {
            SimpleType::Atom(_) => 0,
            _ => 1 + self.args().iter().map(|a| a.rank()).max().unwrap_or(0),
        }
    }

    /// Number of atom occurrences.
    pub fn size(&self) -> usize {
        match self {
            SimpleType::Atom(_) => 1,
            SimpleType::Arrow(a, r) => a.size() + r.size(),
        }
    }

    /// Distinct atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        fn go<'a>(t: &'a SimpleType, out: &mut Vec<&'a str>) {
            match t {
                SimpleType::Atom(a) => {
                    if !out.contains(&a.as_str()) {
                        out.push(a);
                    }
                }
                SimpleType::Arrow(a, r) => {
                    go(a, out);
                    go(r, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Ordinary (binary) depth, as opposed to [`rank`](Self::rank).
    pub fn depth(&self) -> usize {
        match self {
            SimpleType::Atom(_) => 0,
            SimpleType::Arrow(a, r) => 1 + a.depth().max(r.depth()),
        }
    }
}

/// The spine decomposition `args -> head`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spine {
    pub args: Vec<SimpleType>,
    pub head: Atom,
}

impl Spine {
    pub fn to_type(&self) -> SimpleType {
        SimpleType::from_spine(self.args.iter().cloned(), &self.head)
    }
}

pub fn parse_type(text: &str) -> Result<SimpleType, ParseError> {
    parse::parse_type(text)
}

pub fn spine(t: &SimpleType) -> Spine {
    t.spine()
}

pub fn rank(t: &SimpleType) -> usize {
    t.rank()
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Atom(a) => f.write_str(a),
            SimpleType::Arrow(a, r) => {
                if a.is_atom() {
                    write!(f, "{a}->{r}")
                } else {
                    write!(f, "({a})->{r}")
                }
            }
        }
    }
}

impl FromStr for SimpleType {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_type(s)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_type(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn ty(s: &str) -> SimpleType {
    parse_type(s).unwrap()
}
