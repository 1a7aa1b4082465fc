//! Cardinalities of types in finite set models.
//!
//! A retraction with environment `E` gives, for any choice of values for
//! `E`, an injection of the interpretation of `rho` into that of `tau`.
//! When every atom is a non-empty finite set every type is non-empty, so
//! `|rho| > |tau|` in one such model rules the pair out.

use std::collections::BTreeMap;

use crate::types::SimpleType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Card {
    Finite(u128),
    /// Larger than `u128::MAX`.
    Huge,
}

pub(crate) fn cardinality(t: &SimpleType, sizes: &BTreeMap<&str, u128>) -> Card {
    match t {
        SimpleType::Atom(a) => Card::Finite(sizes.get(a.as_str()).copied().unwrap_or(1)),
        SimpleType::Arrow(l, r) => match cardinality(r, sizes) {
            Card::Finite(0) | Card::Finite(1) => cardinality(r, sizes),
            base => match (base, cardinality(l, sizes)) {
                (Card::Finite(b), Card::Finite(e)) => u32::try_from(e)
                    .ok()
                    .and_then(|e| b.checked_pow(e))
                    .map_or(Card::Huge, Card::Finite),
                _ => Card::Huge,
            },
        },
    }
}

fn assignments<'a>(atoms: &[&'a str]) -> Vec<BTreeMap<&'a str, u128>> {
    let mut out = Vec::new();
    let only = |pairs: &[(&'a str, u128)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
    for &k in &[2, 3] {
        out.push(atoms.iter().map(|&a| (a, k)).collect());
    }
    for (i, &a) in atoms.iter().enumerate() {
        for k in [2, 3, 4, 5, 7] {
            out.push(only(&[(a, k)]));
        }
        for &b in &atoms[i + 1..] {
            for (ka, kb) in [(2, 3), (3, 2), (2, 4), (4, 2), (3, 4), (4, 3), (4, 4)] {
                out.push(only(&[(a, ka), (b, kb)]));
            }
        }
    }
    out
}

/// Atom sizes of a finite model in which `rho` is strictly larger than `tau`.
pub(crate) fn refuting_model(rho: &SimpleType, tau: &SimpleType) -> Option<BTreeMap<String, u128>> {
    let mut atoms: Vec<&str> = rho.atoms();
    atoms.extend(tau.atoms());
    atoms.sort_unstable();
    atoms.dedup();
    assignments(&atoms).into_iter().find_map(|sizes| {
        let bigger = match (cardinality(rho, &sizes), cardinality(tau, &sizes)) {
            (Card::Finite(r), Card::Finite(t)) => r > t,
            (Card::Huge, Card::Finite(_)) => true,
            _ => false,
        };
        bigger.then(|| {
            atoms
                .iter()
                .map(|a| (a.to_string(), sizes.get(a).copied().unwrap_or(1)))
                .collect()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::ty;

    fn card(t: &str, a: u128, b: u128) -> Card {
        cardinality(&ty(t), &[("a", a), ("b", b)].into_iter().collect())
    }

    #[test]
    fn exponentials() {
        assert_eq!(card("a->b", 2, 3), Card::Finite(9));
        assert_eq!(card("(a->a)->a", 2, 1), Card::Finite(16));
        assert_eq!(card("(((a->a)->a)->a)->a", 2, 1), Card::Huge);
        // a one-element codomain absorbs any domain
        assert_eq!(card("((((a->a)->a)->a)->a)->b", 2, 1), Card::Finite(1));
    }

    #[test]
    fn refutations() {
        assert!(refuting_model(&ty("b"), &ty("(b->a)->a")).is_some());
        assert!(refuting_model(&ty("a->a"), &ty("((a->a)->b)->a")).is_some());
        assert!(refuting_model(&ty("b->a"), &ty("((b->a)->a)->a")).is_none());
        assert!(refuting_model(&ty("a"), &ty("b->a")).is_none());
    }
}
