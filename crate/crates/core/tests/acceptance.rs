//! End-to-end acceptance checks. Run with `--nocapture` to see one line per
//! check; a failing check fails the test with all lines in the message.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::Rng;

use common::{rng, tm, ty};
use retract_core::affine::{decide_affine, lps_from_cf, synthesize_witness, AffineSearch};
use retract_core::analysis::{classify, necessary_check, NecessaryOutcome, RefutationReason, Verdict};
use retract_core::beta::{beta_retract, inhabited, InhabitationQuery};
use retract_core::kernel::{long_normal_form, typecheck, verify_witness, RetractWitness, TypeEnv};
use retract_core::oracle::{
    all_types, canonical_universe, check_pair, enumerate_long_normal, random_pairs, random_type, CfVerdict,
    EnumBudget,
};
use retract_core::types::{iso, node_paths, paths, word_embed};
use retract_core::SimpleType;

const SEP_RHO: &str = "(e->a)->c->a";
const SEP_TAU: &str = "(e->(a->c->a)->a)->a";
const SEP_CODER: &str = r"\y:e->(a->c->a)->a. y E (\w1:a. \w2:c. x (\v:e. y v (\w1:a. \w2:c. w1)) w2)";
const SEP_DECODER: &str = r"\f:(e->(a->c->a)->a)->a. \z1:e->a. \z2:c. f (\u1:e. \u2:a->c->a. u2 (z1 u1) z2)";
const GAP_TAU: &str = "(e->(c->a)->a)->a";
const PAIRED_RHO: &str = "b->c->a";
const PAIRED_TAU: &str = "((b->a)->a)->((c->a)->a)->a";

const FIXTURES: &[(&str, &str, bool)] = &[
    ("a", "b->a", true),
    ("b->a", "((b->a)->a)->a", true),
    ("b", "(b->a)->a", false),
    ("a->b->c", "b->a->c", true),
    ("a->c", "a->a->c", true),
    ("a->a", "((a->a)->a)->a", true),
    (PAIRED_RHO, PAIRED_TAU, true),
    (SEP_RHO, SEP_TAU, false),
];

struct Report {
    lines: Vec<String>,
    ok: bool,
}

impl Report {
    fn line(&mut self, n: usize, name: &str, pass: bool, detail: String) {
        let l = format!("[{}] {n}. {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        println!("{l}");
        self.lines.push(l);
        self.ok &= pass;
    }
}

fn separation_witness() -> RetractWitness {
    RetractWitness {
        rho: ty(SEP_RHO),
        tau: ty(SEP_TAU),
        coder: tm(SEP_CODER),
        decoder: tm(SEP_DECODER),
        env: [("E".to_string(), ty("e"))].into_iter().collect(),
        main_var: "x".into(),
    }
}

/// Synthesizes and verifies the witness for a CF-positive pair.
fn affine_witness_ok(r: &SimpleType, t: &SimpleType) -> Result<bool, String> {
    let Some(d) = decide_affine(r, t) else { return Ok(false) };
    let lps = lps_from_cf(&d).map_err(|e| e.to_string())?;
    let w = synthesize_witness(&lps).map_err(|e| e.to_string())?;
    match verify_witness(&w) {
        Ok(v) if v.is_affine() => Ok(true),
        Ok(_) => Err(format!("{r} <= {t}: synthesized witness is not affine")),
        Err(e) => Err(format!("{r} <= {t}: {e}")),
    }
}

fn paths_embed(r: &SimpleType, t: &SimpleType) -> bool {
    let targets = node_paths(t);
    paths(r).iter().all(|w| targets.iter().any(|v| word_embed(w, v)))
}

fn fixture_table(rep: &mut Report) -> Vec<(SimpleType, SimpleType)> {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut positives = Vec::new();
    for &(r, t, expected) in FIXTURES {
        let (r, t) = (ty(r), ty(t));
        let start = Instant::now();
        let got = decide_affine(&r, &t);
        let took = start.elapsed();
        slowest = slowest.max(took);
        if got.is_some() != expected || took >= Duration::from_secs(1) {
            bad.push(format!("{r} <= {t}"));
        }
        if got.is_some() {
            positives.push((r, t));
        }
    }
    let paired = affine_witness_ok(&ty(PAIRED_RHO), &ty(PAIRED_TAU)) == Ok(true);
    if !paired {
        bad.push("paired pair has no affine witness".into());
    }
    rep.line(
        1,
        "fixture table",
        bad.is_empty(),
        format!("{}/{} pairs as expected, slowest {:.1?}, mismatches {bad:?}", FIXTURES.len() - bad.len(), FIXTURES.len(), slowest),
    );
    positives
}

fn witness_soundness(rep: &mut Report, fixtures: &[(SimpleType, SimpleType)]) -> Vec<(SimpleType, SimpleType)> {
    let mut pairs = fixtures.to_vec();
    pairs.extend(random_pairs(20_261_016, 500, 10, &["a", "b", "c"]));
    let (mut checked, mut exhausted) = (0, 0);
    let mut failures = Vec::new();
    let mut positives = Vec::new();
    for (r, t) in &pairs {
        match AffineSearch::new().decide(r, t) {
            Err(_) => exhausted += 1,
            Ok(None) => {}
            Ok(Some(_)) => {
                checked += 1;
                match affine_witness_ok(r, t) {
                    Ok(true) => positives.push((r.clone(), t.clone())),
                    Ok(false) => failures.push(format!("{r} <= {t}: decision changed")),
                    Err(e) => failures.push(e),
                }
            }
        }
    }
    rep.line(
        2,
        "witness soundness",
        failures.is_empty() && exhausted == 0,
        format!(
            "{checked} successes among {} pairs verified affine, {} failures, {exhausted} budget exhaustions {:?}",
            pairs.len(),
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
    positives
}

fn separation(rep: &mut Report) {
    let v = verify_witness(&separation_witness());
    let verified_non_affine = matches!(&v, Ok(v) if !v.is_affine());
    let no_affine = decide_affine(&ty(SEP_RHO), &ty(SEP_TAU)).is_none();
    rep.line(
        3,
        "affine/general separation",
        verified_non_affine && no_affine,
        format!("printed witness {:?}, decide_affine none: {no_affine}", v.map(|v| (v.coder_affine, v.decoder_affine))),
    );
}

struct Universe {
    types: Vec<SimpleType>,
    /// CF-positive ordered pairs, by index.
    positive: HashSet<(usize, usize)>,
}

fn oracle_equivalence(rep: &mut Report) -> Universe {
    let types = canonical_universe(&["a", "b"], 6);
    let budget = EnumBudget::default();
    let start = Instant::now();
    let mut positive = HashSet::new();
    let (mut pairs, mut oracle_positive, mut truncated, mut model) = (0usize, 0usize, 0usize, 0usize);
    let mut disagreements = Vec::new();
    for (i, r) in types.iter().enumerate() {
        for (j, t) in types.iter().enumerate() {
            pairs += 1;
            let row = check_pair(r, t, &budget);
            if row.cf == CfVerdict::Retract {
                positive.insert((i, j));
            }
            oracle_positive += usize::from(row.oracle_witness);
            truncated += usize::from(row.truncated);
            model += usize::from(row.model_refuted);
            if !row.agree {
                disagreements.push(format!("{r} <= {t} cf={:?} oracle={}", row.cf, row.oracle_witness));
            }
        }
    }
    let took = start.elapsed();
    rep.line(
        4,
        "oracle equivalence",
        disagreements.is_empty() && took <= Duration::from_secs(600),
        format!(
            "{} raw types, {} classes, {pairs} ordered pairs, {} cf-positive, {oracle_positive} oracle-positive, \
             {model} ruled out by finite models, {truncated} truncated, {} disagreements {:?}, {:.1?} \
             (depth {}, pool {}, max pairs {})",
            all_types(&["a", "b"], 6).len(),
            types.len(),
            positive.len(),
            disagreements.len(),
            disagreements.iter().take(3).collect::<Vec<_>>(),
            took,
            budget.max_term_depth,
            budget.env_pool_per_type,
            budget.max_pairs,
        ),
    );
    Universe { types, positive }
}

fn antisymmetry(rep: &mut Report, u: &Universe) {
    let mut two_way = 0;
    let mut bad = Vec::new();
    for &(i, j) in &u.positive {
        if u.positive.contains(&(j, i)) {
            two_way += 1;
            if !iso(&u.types[i], &u.types[j]) {
                bad.push(format!("{} / {}", u.types[i], u.types[j]));
            }
        }
    }
    rep.line(
        5,
        "two-way affine retraction gives iso",
        bad.is_empty(),
        format!("{two_way} two-way pairs, {} counterexamples {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    );
}

fn necessary_soundness(rep: &mut Report, u: &Universe, extra: &[(SimpleType, SimpleType)]) {
    let mut evidence: Vec<(SimpleType, SimpleType)> =
        u.positive.iter().map(|&(i, j)| (u.types[i].clone(), u.types[j].clone())).collect();
    evidence.extend_from_slice(extra);
    // a verified non-affine witness counts as evidence too
    evidence.push((ty(SEP_RHO), ty(SEP_TAU)));
    let mut wrong = Vec::new();
    let mut unverified = 0;
    for (r, t) in &evidence {
        let verified = if (r, t) == (&ty(SEP_RHO), &ty(SEP_TAU)) {
            verify_witness(&separation_witness()).is_ok()
        } else {
            affine_witness_ok(r, t) == Ok(true)
        };
        if !verified {
            unverified += 1;
        }
        if matches!(necessary_check(r, t), NecessaryOutcome::Refuted(_)) {
            wrong.push(format!("{r} <= {t}"));
        }
    }
    let gap_consistent = necessary_check(&ty(SEP_RHO), &ty(GAP_TAU)).is_consistent();
    let gap_unknown = matches!(classify(&ty(SEP_RHO), &ty(GAP_TAU), None), Ok(Verdict::Unknown { .. }));
    let head_refuted = matches!(
        necessary_check(&ty("b"), &ty("(b->a)->a")),
        NecessaryOutcome::Refuted(r) if matches!(r.reason, RefutationReason::Head { .. })
    );
    rep.line(
        6,
        "necessary-condition soundness",
        wrong.is_empty() && unverified == 0 && gap_consistent && gap_unknown && head_refuted,
        format!(
            "{} pairs with verified evidence ({unverified} unverified), {} wrongly refuted {:?}; \
             gap pair consistent: {gap_consistent}, verdict unknown: {gap_unknown}; head refutation: {head_refuted}",
            evidence.len(),
            wrong.len(),
            wrong.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

fn rank_and_paths(rep: &mut Report, u: &Universe, extra: &[(SimpleType, SimpleType)]) {
    let mut pairs: Vec<(SimpleType, SimpleType)> =
        u.positive.iter().map(|&(i, j)| (u.types[i].clone(), u.types[j].clone())).collect();
    pairs.extend_from_slice(extra);
    let mut bad = Vec::new();
    for (r, t) in &pairs {
        if r.rank() > t.rank() || !paths_embed(r, t) {
            bad.push(format!("{r} <= {t}"));
        }
    }
    rep.line(
        7,
        "rank and path invariants",
        bad.is_empty(),
        format!("{} positive pairs, {} violations {:?}", pairs.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    );
}

/// A long normal inhabitant of minimal depth never repeats a (hypothesis
/// set, atomic goal) state along a branch. Hypothesis sets only grow, so a
/// branch has at most `(hypothesis types + 1) * atoms` states.
fn saturation_depth(goal: &SimpleType) -> usize {
    fn hyps(t: &SimpleType, out: &mut BTreeSet<SimpleType>) {
        for a in t.args() {
            out.insert(a.clone());
            for b in a.args() {
                hyps(b, out);
            }
        }
    }
    let mut hs = BTreeSet::new();
    hyps(goal, &mut hs);
    (hs.len() + 1) * goal.atoms().len().max(1)
}

fn enumeration_finds(goal: &SimpleType) -> bool {
    (1..=saturation_depth(goal)).any(|d| {
        let budget = EnumBudget { max_term_depth: d, ..EnumBudget::default() };
        !enumerate_long_normal(&TypeEnv::new(), goal, false, &budget).is_empty()
    })
}

fn inhabitation(rep: &mut Report) {
    let listed: &[(&str, bool)] = &[
        ("a->a", true),
        ("a->b->a", true),
        ("(a->b)->(b->c)->a->c", true),
        ("a", false),
        ("((a->b)->a)->a", false),
        ("(a->a)->a", false),
    ];
    let mut bad = Vec::new();
    let mut goals: Vec<(SimpleType, Option<bool>)> = listed.iter().map(|(g, e)| (ty(g), Some(*e))).collect();
    goals.extend(canonical_universe(&["a", "b"], 5).into_iter().map(|g| (g, None)));
    for (g, expected) in &goals {
        let found = inhabited(&InhabitationQuery::closed(g.clone()));
        if let Some(m) = &found {
            let env = TypeEnv::new();
            if typecheck(&env, m).ok().as_ref() != Some(g) || long_normal_form(&env, m).ok().as_ref() != Some(m) {
                bad.push(format!("{g}: bad witness {m}"));
            }
        }
        let enumerated = enumeration_finds(g);
        if found.is_some() != enumerated || expected.is_some_and(|e| e != enumerated) {
            bad.push(format!("{g}: search {} enumeration {enumerated}", found.is_some()));
        }
    }
    rep.line(
        8,
        "inhabitation suite",
        bad.is_empty(),
        format!(
            "{} listed goals and {} more canonical goals, {} disagreements {:?}",
            listed.len(),
            goals.len() - listed.len(),
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

fn beta_absorption(rep: &mut Report, u: &Universe) {
    let mut g = rng(9_000);
    let mut failures = Vec::new();
    let mut sampled = Vec::new();
    while sampled.len() < 200 {
        let n = g.gen_range(1..=10);
        let tau = random_type(&mut g, &["a", "b", "c"], n);
        let k = g.gen_range(0..=tau.arity());
        let mut rho = tau.clone();
        for _ in 0..k {
            if let SimpleType::Arrow(_, r) = rho {
                rho = *r;
            }
        }
        if beta_retract(&rho, &tau).is_some() {
            if decide_affine(&rho, &tau).is_none() {
                failures.push(format!("{rho} <= {tau}"));
            }
            sampled.push((rho, tau));
        }
    }
    let mut two_way_checked = 0;
    let mut bad = Vec::new();
    let universe_pairs = u.types.iter().flat_map(|r| u.types.iter().map(move |t| (r, t)));
    for (r, t) in sampled.iter().map(|(r, t)| (r, t)).chain(universe_pairs) {
        if beta_retract(r, t).is_some() && beta_retract(t, r).is_some() {
            two_way_checked += 1;
            if r != t {
                bad.push(format!("{r} / {t}"));
            }
        }
    }
    rep.line(
        9,
        "beta absorption",
        failures.is_empty() && bad.is_empty(),
        format!(
            "{} beta pairs, {} not affine {:?}; {two_way_checked} two-way beta pairs, {} unequal",
            sampled.len(),
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>(),
            bad.len()
        ),
    );
}

#[test]
fn acceptance() {
    let mut rep = Report { lines: Vec::new(), ok: true };
    let fixtures = fixture_table(&mut rep);
    let random_positive = witness_soundness(&mut rep, &fixtures);
    separation(&mut rep);
    let u = oracle_equivalence(&mut rep);
    antisymmetry(&mut rep, &u);
    necessary_soundness(&mut rep, &u, &random_positive);
    rank_and_paths(&mut rep, &u, &random_positive);
    inhabitation(&mut rep);
    beta_absorption(&mut rep, &u);
    assert!(rep.ok, "\n{}", rep.lines.join("\n"));
}
