//! Canonical representatives of `~`-classes: argument multisets are sorted
//! recursively, by size first and then by their printed form.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SimpleType;

/// A type whose spine arguments are, at every level, sorted under
/// [`canonical_order`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalType(SimpleType);

impl CanonicalType {
    pub fn as_type(&self) -> &SimpleType {
        &self.0
    }

    pub fn into_type(self) -> SimpleType {
        self.0
    }
}

impl fmt::Display for CanonicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Total order used to sort argument multisets.
pub fn canonical_order(x: &SimpleType, y: &SimpleType) -> Ordering {
    x.size()
        .cmp(&y.size())
        .then_with(|| x.to_string().cmp(&y.to_string()))
}

pub fn canonicalize(t: &SimpleType) -> CanonicalType {
    CanonicalType(canonical_type(t))
}

pub(crate) fn canonical_type(t: &SimpleType) -> SimpleType {
    if t.is_atom() {
        return t.clone();
    }
    let mut args: Vec<SimpleType> = t.args().into_iter().map(canonical_type).collect();
    args.sort_by(canonical_order);
    SimpleType::from_spine(args, t.head())
}

pub fn iso(r: &SimpleType, t: &SimpleType) -> bool {
    r == t || canonicalize(r) == canonicalize(t)
}
