//! Shared fixtures for benchmarks.

use retract_core::types::parse_type;
use retract_core::SimpleType;

/// Named `(rho, tau)` pairs of moderate size, positive and negative.
pub const PAIRS: &[(&str, &str, &str)] = &[
    ("discard", "a", "b->a"),
    ("double_negation", "b->a", "((b->a)->a)->a"),
    ("head_mismatch", "b", "(b->a)->a"),
    ("paired", "b->c->a", "((b->a)->a)->((c->a)->a)->a"),
    ("non_affine_only", "(e->a)->c->a", "(e->(a->c->a)->a)->a"),
    (
        "wide_permutation",
        "a->b->c->d->(a->b)->(c->d)->e",
        "(c->d)->d->c->(a->b)->b->a->e",
    ),
];

pub fn pair(rho: &str, tau: &str) -> (SimpleType, SimpleType) {
    (parse_type(rho).expect("fixture"), parse_type(tau).expect("fixture"))
}

/// `rho = b1->..->bn->a` against `tau = ((b1->a)->a)->..->((bn->a)->a)->a`:
/// every argument needs its own group.
pub fn grouped_family(n: usize) -> (SimpleType, SimpleType) {
    let a = SimpleType::atom("a");
    let bs: Vec<SimpleType> = (1..=n).map(|i| SimpleType::atom(format!("b{i}"))).collect();
    let rho = SimpleType::arrows(bs.iter().cloned(), a.clone());
    let wrapped = bs
        .iter()
        .map(|b| SimpleType::arrow(SimpleType::arrow(b.clone(), a.clone()), a.clone()))
        .collect::<Vec<_>>();
    (rho, SimpleType::arrows(wrapped, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use retract_core::affine::decide_affine;

    #[test]
    fn fixtures_parse_and_family_is_positive() {
        for (_, r, t) in PAIRS {
            pair(r, t);
        }
        let (r, t) = grouped_family(4);
        assert!(decide_affine(&r, &t).is_some());
    }
}
