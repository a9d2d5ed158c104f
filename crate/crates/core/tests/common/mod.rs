#![allow(dead_code)]

use posproof::ljplus::{oracle_enumerate, LJPlusSequent, ProofTerm};
use posproof::syntax::{ensure_distinct_binders, parse_formula, Formula};
use posproof::sysf::{parse_type, phi};

pub const FIG3: &str = "((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q";
pub const A1: &str = "forall X. ((forall Y. (Y -> X) -> Y -> X) -> X) -> X";
pub const A2: &str = "forall X. forall Y. (((Y -> X) -> Y -> X) -> X) -> X";

pub fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

pub fn ty(s: &str) -> Formula {
    phi(&parse_type(s).unwrap())
}

/// Positive formulas exercised by the end-to-end comparisons.
pub fn corpus() -> Vec<(&'static str, Formula)> {
    vec![
        ("identity", f("P -> P")),
        ("double negation shape", f("((P -> Q) -> Q) -> Q")),
        ("bracket example", f(FIG3)),
        ("sysf nested", ty(A1)),
        ("sysf prenex", ty(A2)),
        ("non-datatype", ty("forall X. X -> ((X -> X) -> X) -> X")),
        ("nat", ty("forall X. X -> (X -> X) -> X")),
        ("binary", ty("forall X. X -> (X -> X) -> (X -> X) -> X")),
        ("two projections", f("P -> P -> P")),
        ("quantified identity", f("forall x. P(x) -> P(x)")),
        ("composition", f("(P -> Q) -> (Q -> R) -> P -> R")),
        ("universal premise", f("((forall y. P(y) -> Q) -> Q) -> Q")),
        ("church booleans", ty("forall X. X -> X -> X")),
    ]
}

pub fn normalized(ts: &[ProofTerm]) -> Vec<String> {
    let mut v: Vec<String> = ts.iter().map(|t| t.alpha_normalize().to_string()).collect();
    v.sort();
    v.dedup();
    v
}

pub fn oracle(goal: &Formula, k: usize) -> Vec<String> {
    let goal = ensure_distinct_binders(goal);
    normalized(&oracle_enumerate(&LJPlusSequent::closed(goal), k))
}
