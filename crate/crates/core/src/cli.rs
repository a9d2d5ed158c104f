//! Command-line front end.
//!
//! [`run`] does all the work and returns the exit code with the text to
//! print, so the binary only wires it to the process.

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::expand::{enumerate_terms, ExpandError};
use crate::grammar::{build_grammar_with_cap, enumerate_schemes, is_inhabited, GrammarError, DEFAULT_CAP};
use crate::ljplus::{check_proof, is_eta_long, term_height, NamedContext, ProofTerm};
use crate::syntax::{ensure_distinct_binders, parse_formula, Formula};
use crate::sysf::{is_positive_type, parse_type, phi, render_sysf_term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "posproof", about = "Enumerate the normal proofs of positive formulas")]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
    /// Read the input as a System F type
    #[arg(long, global = true)]
    pub sysf: bool,
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_height: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest grammar allowed, in nonterminals
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Report positivity and inhabitation
    Check { input: String },
    /// Print the scheme grammar
    Grammar { input: String },
    /// List schemes up to the height bound
    Schemes { input: String },
    /// List proof-terms up to the height bound
    Terms { input: String },
    /// Re-check the JSON output of `terms` read from stdin
    Verify,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Self { code, stdout: String::new(), stderr: stderr.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermsJson {
    pub goal: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub term: ProofTerm,
    pub height: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub positive: bool,
    pub inhabited: bool,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn read_input(input: &str, stdin: &str) -> String {
    if input == "-" {
        stdin.trim().to_string()
    } else {
        input.to_string()
    }
}

fn parse_goal(inv: &Invocation, text: &str) -> Result<Formula, Outcome> {
    let goal = if inv.sysf {
        let t = parse_type(text).map_err(|e| Outcome::fail(2, format!("error: {e}\n")))?;
        if !is_positive_type(&t) {
            return Err(Outcome::fail(2, format!("error: type is not positive: {t}\n")));
        }
        phi(&t)
    } else {
        parse_formula(text).map_err(|e| Outcome::fail(2, format!("error: {e}\n")))?
    };
    Ok(ensure_distinct_binders(&goal))
}

fn grammar_failure(e: GrammarError) -> Outcome {
    match e {
        GrammarError::NotPositive(_) => Outcome::fail(2, format!("error: {e}\n")),
        GrammarError::CapExceeded(_) => Outcome::fail(3, format!("error: {e}\n")),
    }
}

pub fn run(inv: &Invocation, stdin: &str) -> Outcome {
    let input = match &inv.command {
        Command::Verify => return verify(stdin),
        Command::Check { input }
        | Command::Grammar { input }
        | Command::Schemes { input }
        | Command::Terms { input } => read_input(input, stdin),
    };
    let goal = match parse_goal(inv, &input) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let max_height = inv.max_height as usize;
    if let Command::Check { .. } = inv.command {
        if !goal.is_positive() {
            let mut o = Outcome::fail(2, format!("error: goal is not positive: {goal}\n"));
            o.stdout = match inv.format {
                Format::Text => "positive: no\n".to_string(),
                Format::Json => to_json(&CheckJson { positive: false, inhabited: false }),
            };
            return o;
        }
    }
    let g = match build_grammar_with_cap(&goal, inv.cap) {
        Ok(g) => g,
        Err(e) => return grammar_failure(e),
    };
    match &inv.command {
        Command::Check { .. } => {
            let inhabited = is_inhabited(&g);
            let stdout = match inv.format {
                Format::Text => format!("positive: yes, inhabited: {}\n", yes(inhabited)),
                Format::Json => to_json(&CheckJson { positive: true, inhabited }),
            };
            Outcome { code: if inhabited { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Command::Grammar { .. } => Outcome::ok(match inv.format {
            Format::Text => g.to_text(),
            Format::Json => to_json(&g.to_json()),
        }),
        Command::Schemes { .. } => {
            let schemes = enumerate_schemes(&g, max_height);
            Outcome::ok(render_terms(inv, &goal, schemes, |t| t.to_string()))
        }
        Command::Terms { .. } => {
            let terms = match enumerate_terms(&goal, max_height) {
                Ok(t) => t,
                Err(ExpandError::Grammar(e)) => return grammar_failure(e),
                Err(e) => return Outcome::fail(3, format!("error: {e}\n")),
            };
            if inv.sysf {
                Outcome::ok(render_terms(inv, &goal, terms, render_sysf_term))
            } else {
                Outcome::ok(render_terms(inv, &goal, terms, |t| t.to_string()))
            }
        }
        Command::Verify => unreachable!("handled above"),
    }
}

fn render_terms(
    inv: &Invocation,
    goal: &Formula,
    terms: Vec<ProofTerm>,
    show: impl Fn(&ProofTerm) -> String,
) -> String {
    match inv.format {
        Format::Text => terms.iter().map(|t| format!("{}\n", show(t))).collect(),
        Format::Json => to_json(&TermsJson {
            goal: goal.to_string(),
            terms: terms.into_iter().map(|t| TermJson { height: term_height(&t), text: show(&t), term: t }).collect(),
        }),
    }
}

fn verify(stdin: &str) -> Outcome {
    let doc: TermsJson = match serde_json::from_str(stdin) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(2, format!("error: malformed terms document: {e}\n")),
    };
    let goal = match parse_formula(&doc.goal) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    let ctx = NamedContext::new();
    let mut bad = Vec::new();
    for t in &doc.terms {
        let ok = matches!(check_proof(&ctx, &t.term, &goal), Ok(true))
            && is_eta_long(&ctx, &t.term, &goal)
            && term_height(&t.term) == t.height;
        if !ok {
            bad.push(t.term.to_string());
        }
    }
    if bad.is_empty() {
        Outcome::ok(format!("verified {} terms\n", doc.terms.len()))
    } else {
        let mut o = Outcome::fail(1, bad.iter().map(|t| format!("rejected: {t}\n")).collect::<String>());
        o.stdout = format!("verified {} of {} terms\n", doc.terms.len() - bad.len(), doc.terms.len());
        o
    }
}
