use std::collections::HashMap;

use super::PathWord;

/// Whether `v` is obtained from `w` by repeatedly tripling single letter
/// occurrences. Each letter of `w` then expands to a block of an odd number
/// of copies of itself, so the check is a memoized block matching over
/// suffix positions of both words.
pub fn word_embed(w: &PathWord, v: &PathWord) -> bool {
    let (w, v) = (w.letters(), v.letters());
    if v.len() < w.len() || (v.len() - w.len()) % 2 != 0 {
        return false;
    }
    let mut memo = HashMap::new();
    matches(w, v, 0, 0, &mut memo)
}

fn matches(
    w: &[String],
    v: &[String],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), bool>,
) -> bool {
    if i == w.len() {
        return j == v.len();
    }
    if let Some(&r) = memo.get(&(i, j)) {
        return r;
    }
    let letter = &w[i];
    // longest run of `letter` starting at j
    let run = v[j..].iter().take_while(|c| *c == letter).count();
    // the remaining letters of w each need at least one letter of v
    let room = (v.len() - j).saturating_sub(w.len() - i - 1);
    let r = (1..=run.min(room))
        .step_by(2)
        .any(|k| matches(w, v, i + 1, j + k, memo));
    memo.insert((i, j), r);
    r
}
