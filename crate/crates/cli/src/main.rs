//! Command-line front end for the cc-simulation toolkit.
//!
//! Verdict commands exit 0 for "yes" and 1 for "no"; parse and precondition
//! failures exit 2 with a diagnostic on stderr; normal-form rewriting that
//! exceeds the `CCREP_MAX_SNF_DISJUNCTS` budget exits 3. Verdicts and results
//! go to stdout, diagnostics to stderr, and all output is byte-deterministic
//! given identical inputs.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ccrep_core::bivariant::{
    bi_simulates, is_representation, reconstruct_bivariant, transform_t0, transform_t_lts,
    transform_t_term, translate_formula,
};
use ccrep_core::characteristic::char_formula;
use ccrep_core::logic::{enumerate_formulae, enumerate_terms, satisfies};
use ccrep_core::lts::{transitions, Lts};
use ccrep_core::normal_form::{to_strong_normal_form_with_stats, DEFAULT_MAX_DISJUNCTS};
use ccrep_core::representation::represent;
use ccrep_core::simulation::{simulates, simulation_witness};
use ccrep_core::{Error, Formula, ProcessTerm, ReconstructError, Signature};

#[derive(Parser)]
#[command(
    name = "ccrep",
    version,
    about = "Covariant-contravariant simulation toolkit"
)]
struct Cli {
    /// Signature file (lines `r: ...`, `l: ...`, optional `bi: ...`)
    #[arg(long, global = true, value_name = "FILE")]
    sig: Option<PathBuf>,

    /// Emit structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term (or formula) and print its canonical form
    Parse {
        input: String,
        /// Treat the input as a formula
        #[arg(long)]
        formula: bool,
    },
    /// Print the reachable transition graph of a term
    Lts { term: String },
    /// Decide whether the first term is cc-simulated by the second
    Sim {
        left: String,
        right: String,
        /// Also print the witnessing relation
        #[arg(long)]
        witness: bool,
    },
    /// Model-check a formula against a term
    Check {
        term: String,
        formula: String,
        /// Print the evaluation tree
        #[arg(long)]
        explain: bool,
    },
    /// Print the characteristic formula of a term
    Charform { term: String },
    /// Rewrite a formula into strong normal form
    Snf {
        formula: String,
        /// Print disjunct count, modal depth and box completions
        #[arg(long)]
        stats: bool,
    },
    /// Print the representation antichain of a formula
    Represent { formula: String },
    /// Decide primality of a formula
    Prime { formula: String },
    /// Decide consistency of a formula
    Consistent { formula: String },
    /// Decide whether the first formula entails the second
    Entails { left: String, right: String },
    /// Decide logical equivalence of two formulae
    Equiv { left: String, right: String },
    /// Decide cc-simulation with bivariant actions
    Bisim {
        left: String,
        right: String,
        /// Apply both clauses to bivariant actions (the default behaviour)
        #[arg(long)]
        bi: bool,
    },
    /// Split bivariant actions: terms map to terms, LTS documents to LTS documents
    Encode { input: String },
    /// Composite encoding with the absorbing state u; always prints an LTS document
    Encode0 { input: String },
    /// Translate a formula along the bivariant splitting
    Translate { formula: String },
    /// Reconstruct a term over the original signature from its encoding
    Decode { term: String },
    /// Check whether a term over the split signature is an encoding image
    Isrep { term: String },
    /// List a bounded family of terms or formulae
    Enumerate {
        kind: EnumKind,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, default_value_t = 2)]
        max_width: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Terms,
    Formulae,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn new(message: impl Into<String>, code: u8) -> Self {
        Failure {
            message: message.into(),
            code,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooManyDisjuncts { .. } => 3,
            _ => 2,
        };
        Failure::new(e.to_string(), code)
    }
}

impl From<ccrep_core::ParseError> for Failure {
    fn from(e: ccrep_core::ParseError) -> Self {
        Failure::new(e.to_string(), 2)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ccrep: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_signature(cli: &Cli) -> Result<Signature, Failure> {
    let path = cli
        .sig
        .as_ref()
        .ok_or_else(|| Failure::new("missing required option `--sig FILE`", 2))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display()), 2))?;
    Ok(Signature::parse(&text)?)
}

/// Inline input, or the contents of a file when prefixed with `@`.
fn resolve(raw: &str) -> Result<String, Failure> {
    match raw.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::new(format!("cannot read {path}: {e}"), 2)),
        None => Ok(raw.to_string()),
    }
}

fn looks_like_lts(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn parse_term_arg(raw: &str, sig: &Signature) -> Result<ProcessTerm, Failure> {
    Ok(ProcessTerm::parse(&resolve(raw)?, sig)?)
}

fn parse_formula_arg(raw: &str, sig: &Signature) -> Result<Formula, Failure> {
    Ok(Formula::parse(&resolve(raw)?, sig)?)
}

fn snf_budget() -> Result<usize, Failure> {
    match std::env::var("CCREP_MAX_SNF_DISJUNCTS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(format!("invalid CCREP_MAX_SNF_DISJUNCTS value `{v}`"), 2)),
        Err(_) => Ok(DEFAULT_MAX_DISJUNCTS),
    }
}

fn verdict_code(yes: bool) -> u8 {
    u8::from(!yes)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let sig = load_signature(&cli)?;
    let json = cli.json;
    let limit = snf_budget()?;
    match &cli.command {
        Command::Parse { input, formula } => {
            let (canonical, kind) = if *formula {
                (parse_formula_arg(input, &sig)?.to_string(), "formula")
            } else {
                (parse_term_arg(input, &sig)?.to_string(), "term")
            };
            if json {
                println!("{}", json!({ "canonical": canonical, "kind": kind }));
            } else {
                println!("{canonical}");
            }
            Ok(0)
        }
        Command::Lts { term } => {
            let p = parse_term_arg(term, &sig)?;
            let lts = Lts::from_term(&p, &sig)?;
            println!("{}", lts.to_json());
            Ok(0)
        }
        Command::Sim {
            left,
            right,
            witness,
        } => {
            let p = parse_term_arg(left, &sig)?;
            let q = parse_term_arg(right, &sig)?;
            if *witness {
                let w = simulation_witness(&p, &q, &sig)?;
                let yes = w.is_some();
                let pairs: Vec<_> = w
                    .iter()
                    .flat_map(|w| w.pairs().iter())
                    .map(|(l, r)| json!([l, r]))
                    .collect();
                if json {
                    println!("{}", json!({ "verdict": yes, "witness": pairs }));
                } else {
                    println!("{}", if yes { "yes" } else { "no" });
                    if yes {
                        println!("{}", serde_json::Value::Array(pairs));
                    }
                }
                Ok(verdict_code(yes))
            } else {
                let yes = simulates(&p, &q, &sig)?;
                print_verdict(json, yes);
                Ok(verdict_code(yes))
            }
        }
        Command::Check {
            term,
            formula,
            explain,
        } => {
            let p = parse_term_arg(term, &sig)?;
            let f = parse_formula_arg(formula, &sig)?;
            let yes = satisfies(&p, &f, &sig)?;
            if *explain {
                let mut lines = Vec::new();
                explain_eval(&p, &f, &sig, 0, &mut lines);
                if json {
                    println!("{}", json!({ "verdict": yes, "trace": lines }));
                } else {
                    for line in &lines {
                        println!("{line}");
                    }
                    println!("{}", if yes { "yes" } else { "no" });
                }
            } else {
                print_verdict(json, yes);
            }
            Ok(verdict_code(yes))
        }
        Command::Charform { term } => {
            let p = parse_term_arg(term, &sig)?;
            let f = char_formula(&p, &sig)?;
            if json {
                println!("{}", json!({ "formula": f.to_string() }));
            } else {
                println!("{f}");
            }
            Ok(0)
        }
        Command::Snf { formula, stats } => {
            let f = parse_formula_arg(formula, &sig)?;
            let (snf, snf_stats) = to_strong_normal_form_with_stats(&f, &sig, limit)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "formula": snf.to_formula().to_string(),
                        "disjuncts": snf.disjuncts().len(),
                        "modal_depth": snf.modal_depth(),
                        "box_completions": snf_stats.box_completions,
                    })
                );
            } else {
                println!("{}", snf.to_formula());
                if *stats {
                    println!("disjuncts: {}", snf.disjuncts().len());
                    println!("modal depth: {}", snf.modal_depth());
                    println!("box completions: {}", snf_stats.box_completions);
                }
            }
            Ok(0)
        }
        Command::Represent { formula } => {
            let f = parse_formula_arg(formula, &sig)?;
            let rep = represent(&f, &sig, limit)?;
            if json {
                let members: Vec<String> = rep.members().iter().map(|p| p.to_string()).collect();
                println!("{}", json!({ "members": members }));
            } else {
                for p in rep.members() {
                    println!("{p}");
                }
            }
            Ok(0)
        }
        Command::Prime { formula } => {
            let f = parse_formula_arg(formula, &sig)?;
            let rep = represent(&f, &sig, limit)?;
            let prime = rep.len() <= 1;
            let consistent = !rep.is_empty();
            let members: Vec<String> = rep.members().iter().map(|p| p.to_string()).collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": prime,
                        "consistent": consistent,
                        "representable": prime && consistent,
                        "antichain": members,
                    })
                );
            } else if !prime {
                println!("not prime: antichain {{{}}}", members.join(", "));
            } else {
                println!("prime: yes");
                if consistent {
                    println!("representable by a single process: yes");
                    println!("witness: {}", members[0]);
                } else {
                    println!("representable by a single process: no");
                }
            }
            Ok(verdict_code(prime))
        }
        Command::Consistent { formula } => {
            let f = parse_formula_arg(formula, &sig)?;
            let rep = represent(&f, &sig, limit)?;
            let yes = !rep.is_empty();
            if json {
                let witness = rep.members().first().map(|p| p.to_string());
                println!("{}", json!({ "verdict": yes, "witness": witness }));
            } else if yes {
                println!("yes");
                println!("witness: {}", rep.members()[0]);
            } else {
                println!("no");
            }
            Ok(verdict_code(yes))
        }
        Command::Entails { left, right } => {
            let f = parse_formula_arg(left, &sig)?;
            let g = parse_formula_arg(right, &sig)?;
            let counter = entail_counterexample(&f, &g, &sig, limit)?;
            let yes = counter.is_none();
            if json {
                let counter = counter.map(|p| p.to_string());
                println!("{}", json!({ "verdict": yes, "counterexample": counter }));
            } else if let Some(p) = counter {
                println!("no");
                println!("counterexample: {p}");
            } else {
                println!("yes");
            }
            Ok(verdict_code(yes))
        }
        Command::Equiv { left, right } => {
            let f = parse_formula_arg(left, &sig)?;
            let g = parse_formula_arg(right, &sig)?;
            let fwd = entail_counterexample(&f, &g, &sig, limit)?;
            let bwd = entail_counterexample(&g, &f, &sig, limit)?;
            let yes = fwd.is_none() && bwd.is_none();
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": yes,
                        "left_only": fwd.map(|p| p.to_string()),
                        "right_only": bwd.map(|p| p.to_string()),
                    })
                );
            } else if yes {
                println!("yes");
            } else {
                println!("no");
                if let Some(p) = fwd {
                    println!("counterexample: {p} satisfies the left formula only");
                }
                if let Some(p) = bwd {
                    println!("counterexample: {p} satisfies the right formula only");
                }
            }
            Ok(verdict_code(yes))
        }
        Command::Bisim { left, right, bi: _ } => {
            let p = parse_term_arg(left, &sig)?;
            let q = parse_term_arg(right, &sig)?;
            let yes = bi_simulates(&p, &q, &sig)?;
            print_verdict(json, yes);
            Ok(verdict_code(yes))
        }
        Command::Encode { input } => {
            let text = resolve(input)?;
            if looks_like_lts(&text) {
                let lts = Lts::from_json(&text, &sig)?;
                println!("{}", transform_t_lts(&lts)?.to_json());
            } else {
                let p = ProcessTerm::parse(&text, &sig)?;
                let encoded = transform_t_term(&p, &sig)?;
                if json {
                    println!("{}", json!({ "term": encoded.to_string() }));
                } else {
                    println!("{encoded}");
                }
            }
            Ok(0)
        }
        Command::Encode0 { input } => {
            let text = resolve(input)?;
            let lts = if looks_like_lts(&text) {
                Lts::from_json(&text, &sig)?
            } else {
                Lts::from_term(&ProcessTerm::parse(&text, &sig)?, &sig)?
            };
            println!("{}", transform_t0(&lts)?.to_json());
            Ok(0)
        }
        Command::Translate { formula } => {
            let f = parse_formula_arg(formula, &sig)?;
            let translated = translate_formula(&f, &sig)?;
            if json {
                println!("{}", json!({ "formula": translated.to_string() }));
            } else {
                println!("{translated}");
            }
            Ok(0)
        }
        Command::Decode { term } => {
            let abar = sig.split_bivariant();
            let p = ProcessTerm::parse(&resolve(term)?, &abar)?;
            match reconstruct_bivariant(&p, &sig) {
                Ok(t) => {
                    if json {
                        println!("{}", json!({ "verdict": true, "term": t.to_string() }));
                    } else {
                        println!("{t}");
                    }
                    Ok(0)
                }
                Err(ReconstructError::NotRepresentable { candidate, image }) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "verdict": false,
                                "candidate": candidate.to_string(),
                                "image": image.to_string(),
                            })
                        );
                    } else {
                        println!("not representable: candidate {candidate} re-encodes to {image}");
                    }
                    Ok(1)
                }
                Err(ReconstructError::Other(e)) => Err(e.into()),
            }
        }
        Command::Isrep { term } => {
            let abar = sig.split_bivariant();
            let p = ProcessTerm::parse(&resolve(term)?, &abar)?;
            let yes = is_representation(&p, &sig)?;
            print_verdict(json, yes);
            Ok(verdict_code(yes))
        }
        Command::Enumerate {
            kind,
            max_depth,
            max_width,
        } => {
            let items: Vec<String> = match kind {
                EnumKind::Terms => enumerate_terms(&sig, *max_depth, *max_width)
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
                EnumKind::Formulae => enumerate_formulae(&sig, *max_depth, *max_width)
                    .iter()
                    .map(|f| f.to_string())
                    .collect(),
            };
            if json {
                println!("{}", json!({ "items": items }));
            } else {
                for item in &items {
                    println!("{item}");
                }
            }
            Ok(0)
        }
    }
}

fn print_verdict(json: bool, yes: bool) {
    if json {
        println!("{}", json!({ "verdict": yes }));
    } else {
        println!("{}", if yes { "yes" } else { "no" });
    }
}

/// First member of `represent(f)` that fails `g`, if any. Sound and complete
/// because the models of `f` are the upward closure of its representation
/// and satisfaction is upward-closed.
fn entail_counterexample(
    f: &Formula,
    g: &Formula,
    sig: &Signature,
    limit: usize,
) -> Result<Option<ProcessTerm>, Failure> {
    g.validate(sig)?;
    for p in represent(f, sig, limit)?.members() {
        if !satisfies(p, g, sig)? {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

fn explain_eval(
    p: &ProcessTerm,
    f: &Formula,
    sig: &Signature,
    depth: usize,
    out: &mut Vec<String>,
) -> bool {
    let mut children = Vec::new();
    let verdict = match f {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::And(cs) => {
            let mut all = true;
            for c in cs {
                all &= explain_eval(p, c, sig, depth + 1, &mut children);
            }
            all
        }
        Formula::Or(cs) => {
            let mut any = false;
            for c in cs {
                any |= explain_eval(p, c, sig, depth + 1, &mut children);
            }
            any
        }
        Formula::Diamond(a, g) => {
            let mut any = false;
            for (b, p2) in transitions(p, sig) {
                if b == *a {
                    any |= explain_eval(&p2, g, sig, depth + 1, &mut children);
                }
            }
            any
        }
        Formula::Box(b, g) => {
            let mut all = true;
            for (c, p2) in transitions(p, sig) {
                if c == *b {
                    all &= explain_eval(&p2, g, sig, depth + 1, &mut children);
                }
            }
            all
        }
    };
    out.push(format!(
        "{}{} |= {} => {}",
        "  ".repeat(depth),
        p,
        f,
        if verdict { "yes" } else { "no" }
    ));
    out.append(&mut children);
    verdict
}
