//! The spine-tree view of a type: `s1 -> .. -> sn -> a` is a node labelled
//! `a` whose children are the trees of `s1..sn`. Its depth is the rank.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Atom, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTree {
    pub label: Atom,
    pub children: Vec<TypeTree>,
}

impl TypeTree {
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TypeTree::node_count).sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(TypeTree::leaf_count).sum()
        }
    }

    /// Depth counted in edges; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| 1 + c.depth())
            .max()
            .unwrap_or(0)
    }

    fn write_ascii(&self, f: &mut fmt::Formatter<'_>, prefix: &str) -> fmt::Result {
        for (i, c) in self.children.iter().enumerate() {
            let last = i + 1 == self.children.len();
            writeln!(f, "{prefix}{}{}", if last { "`-- " } else { "+-- " }, c.label)?;
            let next = format!("{prefix}{}", if last { "    " } else { "|   " });
            c.write_ascii(f, &next)?;
        }
        Ok(())
    }
}

/// ASCII rendering, one node per line.
impl fmt::Display for TypeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.label)?;
        self.write_ascii(f, "")
    }
}

pub fn tree(t: &SimpleType) -> TypeTree {
    TypeTree {
        label: t.head().to_string(),
        children: t.args().into_iter().map(tree).collect(),
    }
}

/// Labels along a path of a [`TypeTree`], root first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathWord(pub Vec<Atom>);

impl PathWord {
    pub fn new<S: Into<Atom>>(letters: impl IntoIterator<Item = S>) -> Self {
        PathWord(letters.into_iter().map(Into::into).collect())
    }

    pub fn letters(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a^k`.
    pub fn power(a: &str, k: usize) -> Self {
        PathWord(vec![a.to_string(); k])
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("."))
    }
}

/// Root-to-leaf path words, in left-to-right leaf order.
pub fn paths(t: &SimpleType) -> Vec<PathWord> {
    fn go(t: &SimpleType, prefix: &mut Vec<Atom>, out: &mut Vec<PathWord>) {
        prefix.push(t.head().to_string());
        let args = t.args();
        if args.is_empty() {
            out.push(PathWord(prefix.clone()));
        }
        for a in args {
            go(a, prefix, out);
        }
        prefix.pop();
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Root-to-node path words for every node (prefixes of leaf paths),
/// deduplicated, in preorder.
pub fn node_paths(t: &SimpleType) -> Vec<PathWord> {
    fn go(t: &SimpleType, prefix: &mut Vec<Atom>, out: &mut Vec<PathWord>) {
        prefix.push(t.head().to_string());
        let w = PathWord(prefix.clone());
        if !out.contains(&w) {
            out.push(w);
        }
        for a in t.args() {
            go(a, prefix, out);
        }
        prefix.pop();
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Parts of `t` under `w`: the spine arguments of `t` sit under the one-letter
/// word `head(t)`, and a part of an argument `s` under `v` sits under
/// `head(t) . v` (root-first reading).
pub fn parts_under(t: &SimpleType, w: &PathWord) -> Vec<SimpleType> {
    fn go(t: &SimpleType, w: &[Atom], out: &mut Vec<SimpleType>) {
        let Some((first, rest)) = w.split_first() else {
            return;
        };
        if t.head() != first {
            return;
        }
        for a in t.args() {
            if rest.is_empty() {
                out.push(a.clone());
            } else {
                go(a, rest, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, w.letters(), &mut out);
    out
}

/// Every part of `t` (every non-root node of its tree) with the word it sits
/// under.
pub fn parts(t: &SimpleType) -> Vec<(SimpleType, PathWord)> {
    fn go(t: &SimpleType, prefix: &mut Vec<Atom>, out: &mut Vec<(SimpleType, PathWord)>) {
        prefix.push(t.head().to_string());
        for a in t.args() {
            out.push((a.clone(), PathWord(prefix.clone())));
            go(a, prefix, out);
        }
        prefix.pop();
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Parts of `t` under `a^k` with `a = head(t)` and `k` odd, paired with `k`.
pub fn delayed_arguments(t: &SimpleType) -> Vec<(SimpleType, usize)> {
    fn go(t: &SimpleType, a: &str, k: usize, out: &mut Vec<(SimpleType, usize)>) {
        // t sits under a^(k-1) and has head a, so its arguments sit under a^k
        for arg in t.args() {
            if k % 2 == 1 {
                out.push((arg.clone(), k));
            }
            if arg.head() == a {
                go(arg, a, k + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, t.head(), 1, &mut out);
    out
}
