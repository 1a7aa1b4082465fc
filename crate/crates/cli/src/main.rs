//! `retract`: command-line front end for retract-core.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use retract_core::affine::{affine_evidence, DEFAULT_BUDGET};
use retract_core::analysis::{classify_with_budget, necessary_check, Verdict};
use retract_core::beta::{beta_embed, beta_retract};
use retract_core::kernel::{verify_witness, Verification};
use retract_core::oracle::{agreement_suite, canonical_universe, random_pairs, EnumBudget};
use retract_core::types::{delayed_arguments, iso, node_paths, parse_type, paths, tree};
use retract_core::{RetractWitness, SimpleType};

#[derive(Parser)]
#[command(name = "retract", version, about = "Decide and witness retractions between simple types")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

/// A pair of types, each given inline or as `@file`.
#[derive(Args)]
struct Pair {
    rho: String,
    tau: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide affine retraction rho <=1 tau.
    Affine {
        #[command(flatten)]
        pair: Pair,
        /// Print the synthesized witness and its verification.
        #[arg(long)]
        witness: bool,
        /// Print the CF and LPS derivations.
        #[arg(long)]
        derivation: bool,
        /// Search step budget.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Isomorphism up to argument permutation.
    Iso {
        #[command(flatten)]
        pair: Pair,
    },
    /// Beta-retraction: rho is tau with trailing arguments removed.
    Beta {
        #[command(flatten)]
        pair: Pair,
    },
    /// Beta-embedding: a beta-retraction whose stripped arguments are inhabited.
    Embed {
        #[command(flatten)]
        pair: Pair,
    },
    /// Combine all evidence into a verdict.
    Classify {
        #[command(flatten)]
        pair: Pair,
        /// A claimed witness file for the pair.
        #[arg(long, value_name = "FILE")]
        witness: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check a witness file.
    Verify { file: String },
    Rank { ty: String },
    /// Print the type tree.
    Tree { ty: String },
    /// Root-to-leaf words; with --nodes, words to every node.
    Paths {
        ty: String,
        #[arg(long)]
        nodes: bool,
    },
    /// Delayed arguments with their delays.
    Delayed { ty: String },
    /// Compare the affine decision procedure with the brute-force oracle.
    OracleSuite {
        /// Comma-separated atom alphabet.
        #[arg(long, default_value = "a,b")]
        atoms: String,
        /// Atom occurrences per type.
        #[arg(long, default_value_t = 4)]
        max_atoms: usize,
        /// Sample this many random pairs instead of the exhaustive universe.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        pool: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        /// Include every row in the JSON report.
        #[arg(long)]
        rows: bool,
    },
}

enum Failure {
    Parse(String),
    Budget(String),
    Verify(String),
    Io(String),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Disagreement(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Verify(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Budget(m) | Failure::Verify(m) | Failure::Io(m) | Failure::Disagreement(m) => m,
        }
    }
}

/// Output of one command: a human rendering and a structured value.
struct Outcome {
    text: String,
    value: Value,
}

fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Io(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn read_type(arg: &str) -> Result<SimpleType, Failure> {
    let text = read_arg(arg)?;
    parse_type(&text).map_err(|e| Failure::Parse(format!("type `{text}`: {e}")))
}

fn read_pair(p: &Pair) -> Result<(SimpleType, SimpleType), Failure> {
    Ok((read_type(&p.rho)?, read_type(&p.tau)?))
}

fn read_witness(arg: &str) -> Result<RetractWitness, Failure> {
    let path = arg.strip_prefix('@').unwrap_or(arg);
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    text.parse().map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core types serialize")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn transcript(v: &Verification) -> String {
    format!(
        "verification: ok\n  coder affine: {}\n  decoder affine: {}\n  long form of decoder applied to coder: {}\n",
        v.coder_affine, v.decoder_affine, v.composite
    )
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Affine {
            pair,
            witness,
            derivation,
            budget,
        } => {
            let (rho, tau) = read_pair(pair)?;
            let ev = affine_evidence(&rho, &tau, *budget)
                .map_err(|e| Failure::Budget(format!("{rho} <=1 {tau}: {e}")))?;
            let mut text = format!("{}\n", yes_no(ev.is_some()));
            let mut value = json!({ "retract": ev.is_some() });
            if let Some(ev) = ev {
                if *derivation {
                    text += &format!("CF derivation:\n{}LPS derivation:\n{}", ev.cf, ev.lps);
                    value["cf"] = to_value(&ev.cf);
                    value["lps"] = to_value(&ev.lps);
                }
                if *witness {
                    let v = verify_witness(&ev.witness)
                        .map_err(|e| Failure::Verify(format!("synthesized witness failed: {e}")))?;
                    text += &format!("{}{}", ev.witness, transcript(&v));
                    value["witness"] = to_value(&ev.witness);
                    value["verification"] = to_value(&v);
                }
            }
            Ok(Outcome { text, value })
        }
        Command::Iso { pair } => {
            let (rho, tau) = read_pair(pair)?;
            let b = iso(&rho, &tau);
            Ok(Outcome {
                text: format!("{b}\n"),
                value: json!({ "iso": b }),
            })
        }
        Command::Beta { pair } => {
            let (rho, tau) = read_pair(pair)?;
            let stripped = beta_retract(&rho, &tau);
            let mut text = format!("{}\n", yes_no(stripped.is_some()));
            if let Some(s) = &stripped {
                for t in s {
                    text += &format!("  stripped: {t}\n");
                }
            }
            Ok(Outcome {
                text,
                value: json!({ "retract": stripped.is_some(), "stripped": to_value(&stripped) }),
            })
        }
        Command::Embed { pair } => {
            let (rho, tau) = read_pair(pair)?;
            let terms = beta_embed(&rho, &tau);
            let mut text = format!("{}\n", yes_no(terms.is_some()));
            if let (Some(ts), Some(stripped)) = (&terms, beta_retract(&rho, &tau)) {
                for (m, t) in ts.iter().zip(&stripped) {
                    text += &format!("  x:{tau} |- {m} : {t}\n");
                }
            }
            Ok(Outcome {
                text,
                value: json!({ "embed": terms.is_some(), "inhabitants": to_value(&terms) }),
            })
        }
        Command::Classify { pair, witness, budget } => {
            let (rho, tau) = read_pair(pair)?;
            let claimed = witness.as_deref().map(read_witness).transpose()?;
            let verdict = classify_with_budget(&rho, &tau, claimed.as_ref(), *budget)
                .map_err(|e| Failure::Verify(e.to_string()))?;
            let mut text = format!("{}\n", verdict.name());
            match &verdict {
                Verdict::AffineRetract { witness, .. } => text += &witness.to_string(),
                Verdict::WitnessedRetract { affine, .. } => text += &format!("  claimed witness verifies, affine: {affine}\n"),
                Verdict::BetaRetract { stripped } => {
                    for t in stripped {
                        text += &format!("  stripped: {t}\n");
                    }
                }
                Verdict::RefutedNecessary { reason } => text += &reason.to_string(),
                Verdict::Unknown { affine_budget_exhausted } => {
                    let nc = if necessary_check(&rho, &tau).is_consistent() { "hold" } else { "fail" };
                    text += &format!(
                        "  no affine retraction{}; necessary conditions {nc}\n",
                        if *affine_budget_exhausted { " found within budget" } else { "" }
                    );
                }
            }
            Ok(Outcome {
                text,
                value: to_value(&verdict),
            })
        }
        Command::Verify { file } => {
            let w = read_witness(file)?;
            let v = verify_witness(&w).map_err(|e| Failure::Verify(format!("{}: {e}", file.trim_start_matches('@'))))?;
            Ok(Outcome {
                text: transcript(&v),
                value: to_value(&v),
            })
        }
        Command::Rank { ty } => {
            let t = read_type(ty)?;
            Ok(Outcome {
                text: format!("{}\n", t.rank()),
                value: json!({ "rank": t.rank() }),
            })
        }
        Command::Tree { ty } => {
            let t = tree(&read_type(ty)?);
            Ok(Outcome {
                text: t.to_string(),
                value: to_value(&t),
            })
        }
        Command::Paths { ty, nodes } => {
            let t = read_type(ty)?;
            let words = if *nodes { node_paths(&t) } else { paths(&t) };
            let text: String = words.iter().map(|w| format!("{w}\n")).collect();
            Ok(Outcome {
                text,
                value: to_value(&words),
            })
        }
        Command::Delayed { ty } => {
            let t = read_type(ty)?;
            let ds = delayed_arguments(&t);
            let text: String = ds.iter().map(|(s, d)| format!("{s} (delay {d})\n")).collect();
            let value = ds.iter().map(|(s, d)| json!({ "argument": s, "delay": d })).collect();
            Ok(Outcome { text, value })
        }
        Command::OracleSuite {
            atoms,
            max_atoms,
            random,
            seed,
            depth,
            pool,
            budget,
            rows,
        } => {
            let alphabet: Vec<&str> = atoms.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
            if alphabet.is_empty() {
                return Err(Failure::Parse("empty atom alphabet".into()));
            }
            let mut enum_budget = EnumBudget::default();
            enum_budget.max_term_depth = depth.unwrap_or(enum_budget.max_term_depth);
            enum_budget.env_pool_per_type = pool.unwrap_or(enum_budget.env_pool_per_type);
            enum_budget.max_pairs = budget.unwrap_or(enum_budget.max_pairs);
            let pairs: Vec<(SimpleType, SimpleType)> = match random {
                Some(n) => random_pairs(*seed, *n, *max_atoms, &alphabet),
                None => {
                    let u = canonical_universe(&alphabet, *max_atoms);
                    u.iter().flat_map(|r| u.iter().map(move |t| (r.clone(), t.clone()))).collect()
                }
            };
            let report = agreement_suite(&pairs, &enum_budget, *rows);
            let mut text = format!(
                "pairs: {}\ncf positive: {}\noracle positive: {}\nruled out by finite models: {}\ntruncated: {}\ndisagreements: {}\n",
                report.pairs,
                report.cf_positive,
                report.oracle_positive,
                report.model_refuted,
                report.truncated,
                report.disagreements.len()
            );
            for d in &report.disagreements {
                text += &format!("  {} <=1 {}: cf {:?}, oracle witness {}\n", d.rho, d.tau, d.cf, d.oracle_witness);
            }
            if !report.agreement() {
                return Err(Failure::Disagreement(text));
            }
            Ok(Outcome {
                text,
                value: to_value(&report),
            })
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Affine { .. } => "affine",
        Command::Iso { .. } => "iso",
        Command::Beta { .. } => "beta",
        Command::Embed { .. } => "embed",
        Command::Classify { .. } => "classify",
        Command::Verify { .. } => "verify",
        Command::Rank { .. } => "rank",
        Command::Tree { .. } => "tree",
        Command::Paths { .. } => "paths",
        Command::Delayed { .. } => "delayed",
        Command::OracleSuite { .. } => "oracle-suite",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(2).collect();
    let start = Instant::now();
    let result = run(&cli.command);
    let elapsed = start.elapsed();
    match result {
        Ok(out) => {
            if cli.json {
                let mut doc = json!({ "command": command_name(&cli.command), "args": args, "result": out.value });
                if cli.timing {
                    doc["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1e3);
                }
                println!("{}", serde_json::to_string_pretty(&doc).expect("json value"));
            } else {
                print!("{}", out.text);
                if cli.timing {
                    println!("time: {elapsed:.2?}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                let doc = json!({ "command": command_name(&cli.command), "args": args, "error": f.message(), "exit_code": f.code() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json value"));
            }
            eprint!("error: {}", f.message());
            if !f.message().ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(f.code())
        }
    }
}
