//! Derivations in system LPS (A1, A2, restricted A4, R1, R2) and the
//! translation from CF.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cf::{CfDerivation, CfRule};
use super::DerivationError;
use crate::types::{iso, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum LpsRule {
    /// `s <= s`
    A1,
    /// `s <= discarded -> s`
    A2 { discarded: SimpleType },
    /// `s <= (s -> atom) -> atom`, provided `head(s) = atom`
    A4 { atom: String },
    /// `s <= t`, `t <= r` gives `s <= r`
    R1,
    /// `s <= s'`, `t <= t'` gives `s -> t <= s' -> t'`
    R2,
}

impl LpsRule {
    pub fn name(&self) -> &'static str {
        match self {
            LpsRule::A1 => "A1",
            LpsRule::A2 { .. } => "A2",
            LpsRule::A4 { .. } => "A4",
            LpsRule::R1 => "R1",
            LpsRule::R2 => "R2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpsDerivation {
    pub rho: SimpleType,
    pub tau: SimpleType,
    #[serde(flatten)]
    pub rule: LpsRule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<LpsDerivation>,
}

impl LpsDerivation {
    pub fn a1(t: SimpleType) -> Self {
        LpsDerivation {
            rho: t.clone(),
            tau: t,
            rule: LpsRule::A1,
            premises: vec![],
        }
    }

    pub fn a2(s: SimpleType, discarded: SimpleType) -> Self {
        LpsDerivation {
            tau: SimpleType::arrow(discarded.clone(), s.clone()),
            rho: s,
            rule: LpsRule::A2 { discarded },
            premises: vec![],
        }
    }

    /// A4 at the head of `s`.
    pub fn a4(s: SimpleType) -> Self {
        let a = s.head().to_string();
        LpsDerivation {
            tau: SimpleType::arrow(SimpleType::arrow(s.clone(), SimpleType::atom(&a)), SimpleType::atom(&a)),
            rho: s,
            rule: LpsRule::A4 { atom: a },
            premises: vec![],
        }
    }

    pub fn r1(first: LpsDerivation, second: LpsDerivation) -> Self {
        LpsDerivation {
            rho: first.rho.clone(),
            tau: second.tau.clone(),
            rule: LpsRule::R1,
            premises: vec![first, second],
        }
    }

    pub fn r2(left: LpsDerivation, right: LpsDerivation) -> Self {
        LpsDerivation {
            rho: SimpleType::arrow(left.rho.clone(), right.rho.clone()),
            tau: SimpleType::arrow(left.tau.clone(), right.tau.clone()),
            rule: LpsRule::R2,
            premises: vec![left, right],
        }
    }

    fn relabel(mut self, rho: &SimpleType, tau: &SimpleType) -> Self {
        self.rho = rho.clone();
        self.tau = tau.clone();
        self
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }
}

fn fail(path: &[usize], d: &LpsDerivation, message: impl Into<String>) -> DerivationError {
    DerivationError {
        path: path.to_vec(),
        rule: d.rule.name().to_string(),
        rho: d.rho.clone(),
        tau: d.tau.clone(),
        message: message.into(),
    }
}

/// Checks every node, comparing types up to `~`. An A4 node whose left side
/// does not have the node's atom as head is rejected.
pub fn check_lps(d: &LpsDerivation) -> Result<(), DerivationError> {
    check_at(d, &mut Vec::new())
}

fn check_at(d: &LpsDerivation, path: &mut Vec<usize>) -> Result<(), DerivationError> {
    let want = match d.rule {
        LpsRule::A1 | LpsRule::A2 { .. } | LpsRule::A4 { .. } => 0,
        LpsRule::R1 | LpsRule::R2 => 2,
    };
    if d.premises.len() != want {
        return Err(fail(path, d, format!("expected {want} premises, found {}", d.premises.len())));
    }
    match &d.rule {
        LpsRule::A1 => {
            if !iso(&d.rho, &d.tau) {
                return Err(fail(path, d, "sides are not isomorphic"));
            }
        }
        LpsRule::A2 { discarded } => {
            if !iso(&d.tau, &SimpleType::arrow(discarded.clone(), d.rho.clone())) {
                return Err(fail(path, d, format!("right side is not {discarded} -> left side")));
            }
        }
        LpsRule::A4 { atom } => {
            if d.rho.head() != atom {
                return Err(fail(
                    path,
                    d,
                    format!("side condition fails: head({}) = {} is not {atom}", d.rho, d.rho.head()),
                ));
            }
            let a = SimpleType::atom(atom.as_str());
            let expected = SimpleType::arrow(SimpleType::arrow(d.rho.clone(), a.clone()), a);
            if !iso(&d.tau, &expected) {
                return Err(fail(path, d, format!("right side is not {expected}")));
            }
        }
        LpsRule::R1 => {
            let (p, q) = (&d.premises[0], &d.premises[1]);
            if !iso(&d.rho, &p.rho) || !iso(&d.tau, &q.tau) {
                return Err(fail(path, d, "conclusion does not match the outer premise sides"));
            }
            if !iso(&p.tau, &q.rho) {
                return Err(fail(path, d, format!("middle types differ: {} and {}", p.tau, q.rho)));
            }
        }
        LpsRule::R2 => {
            let (p, q) = (&d.premises[0], &d.premises[1]);
            if !iso(&d.rho, &SimpleType::arrow(p.rho.clone(), q.rho.clone()))
                || !iso(&d.tau, &SimpleType::arrow(p.tau.clone(), q.tau.clone()))
            {
                return Err(fail(path, d, "conclusion is not the premises joined by ->"));
            }
        }
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_at(p, path)?;
        path.pop();
    }
    Ok(())
}

/// `base <= discarded -> base` by one A2 per discarded type, chained by R1.
fn a2_chain(base: SimpleType, discarded: &[SimpleType]) -> LpsDerivation {
    match discarded.split_last() {
        None => LpsDerivation::a1(base),
        Some((last, rest)) => {
            let step = LpsDerivation::a2(base, last.clone());
            if rest.is_empty() {
                step
            } else {
                let tail = a2_chain(step.tau.clone(), rest);
                LpsDerivation::r1(step, tail)
            }
        }
    }
}

/// `others -> d.rho <= others -> d.tau` by R2 with A1 on each of `others`.
fn lift(others: &[SimpleType], d: LpsDerivation) -> LpsDerivation {
    others
        .iter()
        .rev()
        .fold(d, |acc, c| LpsDerivation::r2(LpsDerivation::a1(c.clone()), acc))
}

/// Translates a CF derivation into LPS. (H) becomes (R2), (N) becomes an
/// (A2) chain joined by (R1), and each group of a (D) node unfolds into
/// `L <= (L->a)->a <= (s->a)->a <= (S->s->a)->a` with `L = delta -> a`.
pub fn lps_from_cf(d: &CfDerivation) -> Result<LpsDerivation, DerivationError> {
    super::cf::check_cf(d)?;
    Ok(translate(d))
}

fn translate(d: &CfDerivation) -> LpsDerivation {
    let out = match &d.rule {
        CfRule::Axiom => LpsDerivation::a1(d.rho.clone()),
        CfRule::H => LpsDerivation::r2(translate(&d.premises[0]), translate(&d.premises[1])),
        CfRule::N { discarded } => {
            let p = translate(&d.premises[0]);
            if discarded.is_empty() {
                p
            } else {
                let chain = a2_chain(p.tau.clone(), discarded);
                LpsDerivation::r1(p, chain)
            }
        }
        CfRule::D { groups } => {
            let a = d.rho.head().to_string();
            let atom = SimpleType::atom(&a);
            let mut done: Vec<SimpleType> = Vec::new();
            let mut acc: Option<LpsDerivation> = None;
            for (g, (grp, prem)) in groups.iter().zip(&d.premises).enumerate().rev() {
                let l = SimpleType::from_spine(grp.delta.iter().cloned(), &a);
                let p = translate(prem).relabel(&l, &grp.sigma);
                let s1 = LpsDerivation::a4(l);
                let s2 = LpsDerivation::r2(
                    LpsDerivation::r2(p, LpsDerivation::a1(atom.clone())),
                    LpsDerivation::a1(atom.clone()),
                );
                let sigma_a = SimpleType::arrow(grp.sigma.clone(), atom.clone());
                let s3 = LpsDerivation::r2(a2_chain(sigma_a, &grp.discarded), LpsDerivation::a1(atom.clone()));
                let step = LpsDerivation::r1(LpsDerivation::r1(s1, s2), s3);

                let mut others: Vec<SimpleType> =
                    groups[..g].iter().flat_map(|h| h.delta.iter().cloned()).collect();
                others.extend(done.iter().cloned());
                let lifted = lift(&others, step);
                done.push(grp.target(&a));
                acc = Some(match acc {
                    None => lifted,
                    Some(prev) => LpsDerivation::r1(prev, lifted),
                });
            }
            acc.expect("(D) has at least one group")
        }
    };
    out.relabel(&d.rho, &d.tau)
}

impl LpsDerivation {
    fn write_tree(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        write!(f, "{:indent$}{}  {} <= {}", "", self.rule.name(), self.rho, self.tau)?;
        match &self.rule {
            LpsRule::A2 { discarded } => write!(f, "  discard {discarded}")?,
            LpsRule::A4 { atom } => write!(f, "  at {atom}")?,
            _ => {}
        }
        writeln!(f)?;
        for p in &self.premises {
            p.write_tree(f, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for LpsDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}
