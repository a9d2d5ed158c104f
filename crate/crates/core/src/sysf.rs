//! Positive System F types as formulas.
//!
//! A type becomes a formula over the single unary predicate `eps`; the
//! normal inhabitants of the type are the proof-terms of the formula.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ljplus::ProofTerm;
use crate::syntax::{parse_formula, polarity, FoTerm, Formula, SyntaxError};

/// Name of the predicate standing for "is an element of".
pub const EPS: &str = "eps";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FType {
    TVar(String),
    Arrow(Box<FType>, Box<FType>),
    ForallT(String, Box<FType>),
}

impl FType {
    pub fn var(name: impl Into<String>) -> Self {
        FType::TVar(name.into())
    }

    pub fn arrow(a: FType, b: FType) -> Self {
        FType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, body: FType) -> Self {
        FType::ForallT(x.into(), Box::new(body))
    }
}

impl fmt::Display for FType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FType::TVar(x) => write!(f, "{x}"),
            FType::Arrow(a, b) => match **a {
                FType::TVar(_) => write!(f, "{a} -> {b}"),
                _ => write!(f, "({a}) -> {b}"),
            },
            FType::ForallT(x, body) => write!(f, "forall {x}. {body}"),
        }
    }
}

/// Read a type in formula syntax, with nullary atoms as type variables.
pub fn parse_type(text: &str) -> Result<FType, SyntaxError> {
    fn conv(f: &Formula) -> Result<FType, SyntaxError> {
        match f {
            Formula::Atom(x, args) if args.is_empty() => Ok(FType::var(x.clone())),
            Formula::Atom(..) => {
                Err(SyntaxError::Parse { offset: 0, message: format!("type variables take no arguments: {f}") })
            }
            Formula::Impl(a, b) => Ok(FType::arrow(conv(a)?, conv(b)?)),
            Formula::Forall(x, b) => Ok(FType::forall(x.clone(), conv(b)?)),
        }
    }
    conv(&parse_formula(text)?)
}

pub fn phi(t: &FType) -> Formula {
    match t {
        FType::TVar(x) => Formula::atom(EPS, vec![FoTerm::var(x.clone())]),
        FType::Arrow(a, b) => Formula::imp(phi(a), phi(b)),
        FType::ForallT(x, b) => Formula::forall(x.clone(), phi(b)),
    }
}

/// Inverse of [`phi`] on its image.
pub fn phi_inverse(f: &Formula) -> Option<FType> {
    match f {
        Formula::Atom(p, args) if p == EPS => match args.as_slice() {
            [FoTerm::Var(x)] => Some(FType::var(x.clone())),
            _ => None,
        },
        Formula::Atom(..) => None,
        Formula::Impl(a, b) => Some(FType::arrow(phi_inverse(a)?, phi_inverse(b)?)),
        Formula::Forall(x, b) => Some(FType::forall(x.clone(), phi_inverse(b)?)),
    }
}

pub fn is_positive_type(t: &FType) -> bool {
    polarity(&phi(t)).is_positive()
}

fn type_var(name: &str) -> String {
    let mut cs = name.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => name.to_string(),
    }
}

fn uppercase_vars(t: &FType) -> FType {
    match t {
        FType::TVar(x) => FType::var(type_var(x)),
        FType::Arrow(a, b) => FType::arrow(uppercase_vars(a), uppercase_vars(b)),
        FType::ForallT(x, b) => FType::forall(type_var(x), uppercase_vars(b)),
    }
}

/// Print a proof-term of `phi(T)` as a System F term: term binders
/// become type abstractions, annotations are read back as types.
pub fn render_sysf_term(t: &ProofTerm) -> String {
    let mut out = String::new();
    render(&t.alpha_normalize(), &mut out);
    out
}

fn render(t: &ProofTerm, out: &mut String) {
    match t {
        ProofTerm::LamTm { var, body } => {
            out.push_str(&format!("λ{} ", type_var(var)));
            render(body, out);
        }
        ProofTerm::LamPf { pvar, annot, body } => {
            let ty = match phi_inverse(annot) {
                Some(ty) => uppercase_vars(&ty).to_string(),
                None => annot.to_string(),
            };
            let ty = if ty.contains(' ') { format!("({ty})") } else { ty };
            out.push_str(&format!("λ{pvar}:{ty}. "));
            render(body, out);
        }
        ProofTerm::Spine { head, args } if args.is_empty() => out.push_str(head),
        ProofTerm::Spine { head, args } => {
            out.push('(');
            out.push_str(head);
            for (k, a) in args.iter().enumerate() {
                out.push(' ');
                let wrap = k + 1 < args.len() && !matches!(a, ProofTerm::Spine { .. });
                if wrap {
                    out.push('(');
                }
                render(a, out);
                if wrap {
                    out.push(')');
                }
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::enumerate_terms;
    use crate::syntax::Polarity;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&FType::var("X")).to_string(), "eps(X)");
        let id = parse_type("forall X. X -> X").unwrap();
        assert_eq!(phi(&id).to_string(), "forall X. eps(X) -> eps(X)");
        let a2 = parse_type("forall X. forall Y. (((Y -> X) -> Y -> X) -> X) -> X").unwrap();
        let expected =
            parse_formula("forall X. forall Y. (((eps(Y) -> eps(X)) -> eps(Y) -> eps(X)) -> eps(X)) -> eps(X)")
                .unwrap();
        assert_eq!(phi(&a2), expected);
        assert_eq!(phi_inverse(&phi(&a2)), Some(a2));
    }

    #[test]
    fn positivity_of_types() {
        assert!(is_positive_type(&parse_type("forall X. X -> (X -> X) -> X").unwrap()));
        assert!(is_positive_type(&parse_type("forall X. X -> ((X -> X) -> X) -> X").unwrap()));
        let neg = parse_type("(forall X. X) -> Y").unwrap();
        assert!(!is_positive_type(&neg));
        assert_eq!(polarity(&phi(&neg)), Polarity::NegativeOnly);
        assert!(parse_type("P(x)").is_err());
    }

    #[test]
    fn identity_renders() {
        let t = ProofTerm::lam_tm("x", ProofTerm::lam_pf("p", parse_formula("eps(x)").unwrap(), ProofTerm::var("p")));
        assert_eq!(render_sysf_term(&t), "λX λa:X. a");
    }

    #[test]
    fn church_numerals_render() {
        let nat = phi(&parse_type("forall X. X -> (X -> X) -> X").unwrap());
        let terms: Vec<String> = enumerate_terms(&nat, 6).unwrap().iter().map(render_sysf_term).collect();
        assert_eq!(
            terms,
            ["λX λa:X. λb:(X -> X). (b (b a))", "λX λa:X. λb:(X -> X). (b a)", "λX λa:X. λb:(X -> X). a"]
        );
    }
}
