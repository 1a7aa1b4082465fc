//! Type universes for exhaustive suites and seeded random pair generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::types::{canonical_type, SimpleType};

/// Every type over `atoms` with `1..=max_atoms` atom occurrences.
pub fn all_types(atoms: &[&str], max_atoms: usize) -> Vec<SimpleType> {
    let mut by_size: Vec<Vec<SimpleType>> = vec![Vec::new(); max_atoms + 1];
    if max_atoms == 0 {
        return Vec::new();
    }
    by_size[1] = atoms.iter().map(|a| SimpleType::atom(*a)).collect();
    for n in 2..=max_atoms {
        let mut level = Vec::new();
        for k in 1..n {
            for l in &by_size[k] {
                for r in &by_size[n - k] {
                    level.push(SimpleType::arrow(l.clone(), r.clone()));
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

/// One canonical representative per `~`-class, ordered by size then text.
pub fn canonical_universe(atoms: &[&str], max_atoms: usize) -> Vec<SimpleType> {
    let set: BTreeSet<(usize, String, SimpleType)> = all_types(atoms, max_atoms)
        .iter()
        .map(|t| {
            let c = canonical_type(t);
            (c.size(), c.to_string(), c)
        })
        .collect();
    set.into_iter().map(|(_, _, t)| t).collect()
}

pub fn random_type<R: Rng>(rng: &mut R, atoms: &[&str], n_atoms: usize) -> SimpleType {
    if n_atoms <= 1 {
        return SimpleType::atom(*atoms.choose(rng).expect("non-empty alphabet"));
    }
    let k = rng.gen_range(1..n_atoms);
    SimpleType::arrow(random_type(rng, atoms, k), random_type(rng, atoms, n_atoms - k))
}

/// One retraction-preserving step: discard a new argument, wrap in a
/// double negation at the head, permute arguments, or grow one argument.
fn grow_once<R: Rng>(rng: &mut R, t: &SimpleType, atoms: &[&str], room: usize) -> SimpleType {
    let head = t.head().to_string();
    let mut args: Vec<SimpleType> = t.args().into_iter().cloned().collect();
    match rng.gen_range(0..4) {
        0 if room >= 1 => {
            let n = rng.gen_range(1..=room.min(3));
            let extra = random_type(rng, atoms, n);
            let at = rng.gen_range(0..=args.len());
            args.insert(at, extra);
            SimpleType::from_spine(args, &head)
        }
        1 if room >= 2 => {
            let a = SimpleType::atom(&head);
            SimpleType::arrow(SimpleType::arrow(t.clone(), a.clone()), a)
        }
        2 if args.len() >= 2 => {
            args.shuffle(rng);
            SimpleType::from_spine(args, &head)
        }
        3 if !args.is_empty() && room >= 1 => {
            let i = rng.gen_range(0..args.len());
            args[i] = grow_once(rng, &args[i], atoms, room);
            SimpleType::from_spine(args, &head)
        }
        _ => t.clone(),
    }
}

/// A pair `(rho, tau)` with `rho <=1 tau` by construction.
pub fn grown_pair<R: Rng>(rng: &mut R, atoms: &[&str], max_atoms: usize) -> (SimpleType, SimpleType) {
    let start = rng.gen_range(1..=max_atoms.min(5));
    let rho = random_type(rng, atoms, start);
    let mut tau = rho.clone();
    for _ in 0..rng.gen_range(1..=4) {
        let room = max_atoms.saturating_sub(tau.size());
        let next = grow_once(rng, &tau, atoms, room);
        if next.size() <= max_atoms {
            tau = next;
        }
    }
    (rho, tau)
}

/// `count` pairs with at most `max_atoms` atoms per side: even positions
/// are uniformly random, odd positions are grown positive pairs.
pub fn random_pairs(seed: u64, count: usize, max_atoms: usize, atoms: &[&str]) -> Vec<(SimpleType, SimpleType)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                let n = rng.gen_range(1..=max_atoms);
                let m = rng.gen_range(1..=max_atoms);
                let rho = random_type(&mut rng, atoms, n);
                // share the head half of the time so the pair is not trivially negative
                let mut tau = random_type(&mut rng, atoms, m);
                if rng.gen_bool(0.5) {
                    let args: Vec<SimpleType> = tau.args().into_iter().cloned().collect();
                    tau = SimpleType::from_spine(args, rho.head());
                }
                (rho, tau)
            } else {
                grown_pair(&mut rng, atoms, max_atoms)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_counts() {
        // Catalan(n-1) * 2^n types with n atoms
        assert_eq!(all_types(&["a", "b"], 3).len(), 2 + 4 + 16);
        assert_eq!(all_types(&["a", "b"], 6).len(), 3238);
        let u = canonical_universe(&["a", "b"], 3);
        // a->b->a ~ b->a->a collapse
        assert!(u.len() < 22);
        assert_eq!(u[0], SimpleType::atom("a"));
    }

    #[test]
    fn random_pairs_are_deterministic_and_bounded() {
        let p = random_pairs(7, 50, 10, &["a", "b", "c"]);
        assert_eq!(p, random_pairs(7, 50, 10, &["a", "b", "c"]));
        assert!(p.iter().all(|(r, t)| r.size() <= 10 && t.size() <= 10));
    }
}
