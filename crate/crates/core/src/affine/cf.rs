//! Derivations in the cut-free system CF.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::DerivationError;
use crate::types::{iso, SimpleType};

/// One active group of a (D) step: `delta -> a <= sigma`, where the
/// target argument of `tau` is `discarded -> sigma -> a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DGroup {
    pub delta: Vec<SimpleType>,
    pub sigma: SimpleType,
    pub discarded: Vec<SimpleType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum CfRule {
    Axiom,
    H,
    N { discarded: Vec<SimpleType> },
    D { groups: Vec<DGroup> },
}

impl CfRule {
    pub fn name(&self) -> &'static str {
        match self {
            CfRule::Axiom => "Axiom",
            CfRule::H => "H",
            CfRule::N { .. } => "N",
            CfRule::D { .. } => "D",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfDerivation {
    pub rho: SimpleType,
    pub tau: SimpleType,
    #[serde(flatten)]
    pub rule: CfRule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<CfDerivation>,
}

impl CfDerivation {
    pub fn axiom(atom: &str) -> Self {
        CfDerivation {
            rho: SimpleType::atom(atom),
            tau: SimpleType::atom(atom),
            rule: CfRule::Axiom,
            premises: vec![],
        }
    }

    pub fn h(first: CfDerivation, rest: CfDerivation) -> Self {
        CfDerivation {
            rho: SimpleType::arrow(first.rho.clone(), rest.rho.clone()),
            tau: SimpleType::arrow(first.tau.clone(), rest.tau.clone()),
            rule: CfRule::H,
            premises: vec![first, rest],
        }
    }

    pub fn n(discarded: Vec<SimpleType>, premise: CfDerivation) -> Self {
        CfDerivation {
            rho: premise.rho.clone(),
            tau: SimpleType::arrows(discarded.iter().cloned(), premise.tau.clone()),
            rule: CfRule::N { discarded },
            premises: vec![premise],
        }
    }

    /// (D) with head `a`; `premises[j]` derives `groups[j].delta -> a <= groups[j].sigma`.
    pub fn d(a: &str, groups: Vec<DGroup>, premises: Vec<CfDerivation>) -> Self {
        let rho = SimpleType::from_spine(groups.iter().flat_map(|g| g.delta.iter().cloned()), a);
        let tau = SimpleType::from_spine(groups.iter().map(|g| g.target(a)), a);
        CfDerivation {
            rho,
            tau,
            rule: CfRule::D { groups },
            premises,
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(|p| p.height()).max().unwrap_or(0)
    }
}

impl DGroup {
    /// `discarded -> sigma -> a`
    pub fn target(&self, a: &str) -> SimpleType {
        SimpleType::arrows(
            self.discarded.iter().cloned(),
            SimpleType::arrow(self.sigma.clone(), SimpleType::atom(a)),
        )
    }
}

fn fail(path: &[usize], d: &CfDerivation, message: impl Into<String>) -> DerivationError {
    DerivationError {
        path: path.to_vec(),
        rule: d.rule.name().to_string(),
        rho: d.rho.clone(),
        tau: d.tau.clone(),
        message: message.into(),
    }
}

/// Checks every node against its rule schema, comparing types up to `~`.
pub fn check_cf(d: &CfDerivation) -> Result<(), DerivationError> {
    check_at(d, &mut Vec::new())
}

fn check_at(d: &CfDerivation, path: &mut Vec<usize>) -> Result<(), DerivationError> {
    let arity = |n: usize| {
        if d.premises.len() == n {
            Ok(())
        } else {
            Err(fail(path, d, format!("expected {n} premises, found {}", d.premises.len())))
        }
    };
    match &d.rule {
        CfRule::Axiom => {
            arity(0)?;
            if !(d.rho.is_atom() && d.rho == d.tau) {
                return Err(fail(path, d, "axiom sides must be the same atom"));
            }
        }
        CfRule::H => {
            arity(2)?;
            let (p, q) = (&d.premises[0], &d.premises[1]);
            if !iso(&d.rho, &SimpleType::arrow(p.rho.clone(), q.rho.clone())) {
                return Err(fail(path, d, "left side is not premise lefts joined by ->"));
            }
            if !iso(&d.tau, &SimpleType::arrow(p.tau.clone(), q.tau.clone())) {
                return Err(fail(path, d, "right side is not premise rights joined by ->"));
            }
        }
        CfRule::N { discarded } => {
            arity(1)?;
            let p = &d.premises[0];
            if !iso(&d.rho, &p.rho) {
                return Err(fail(path, d, "left side differs from the premise"));
            }
            if !iso(&d.tau, &SimpleType::arrows(discarded.iter().cloned(), p.tau.clone())) {
                return Err(fail(path, d, "right side is not the discarded types over the premise"));
            }
        }
        CfRule::D { groups } => {
            if groups.is_empty() {
                return Err(fail(path, d, "(D) needs at least one group"));
            }
            arity(groups.len())?;
            let a = d.rho.head();
            let union = SimpleType::from_spine(groups.iter().flat_map(|g| g.delta.iter().cloned()), a);
            if !iso(&d.rho, &union) {
                return Err(fail(path, d, "left side is not the union of the groups over the head"));
            }
            let targets = SimpleType::from_spine(groups.iter().map(|g| g.target(a)), a);
            if !iso(&d.tau, &targets) {
                return Err(fail(path, d, format!("right side is not {targets} up to ~")));
            }
            for (j, (g, p)) in groups.iter().zip(&d.premises).enumerate() {
                let want = SimpleType::from_spine(g.delta.iter().cloned(), a);
                if !iso(&p.rho, &want) || !iso(&p.tau, &g.sigma) {
                    return Err(fail(
                        path,
                        d,
                        format!("premise {j} should conclude {want} <= {}", g.sigma),
                    ));
                }
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

fn list(ts: &[SimpleType]) -> String {
    let items: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

impl CfDerivation {
    fn write_tree(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        write!(f, "{:indent$}{}  {} <= {}", "", self.rule.name(), self.rho, self.tau)?;
        match &self.rule {
            CfRule::N { discarded } => write!(f, "  discard {}", list(discarded))?,
            CfRule::D { groups } => {
                for g in groups {
                    write!(f, "  [{} <= {} | discard {}]", list(&g.delta), g.sigma, list(&g.discarded))?;
                }
            }
            _ => {}
        }
        writeln!(f)?;
        for p in &self.premises {
            p.write_tree(f, indent + 2)?;
        }
        Ok(())
    }
}

/// Indented tree, one node per line, premises below their conclusion.
impl fmt::Display for CfDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}
