//! Enumeration of the normal proofs of positive formulas of minimal
//! predicate logic.
//!
//! The pipeline builds the regular search space of the bracket calculus
//! ([`ljb`]), reads off a context-free grammar of proof schemes
//! ([`grammar`]) and expands every scheme into the finite set of
//! beta-normal eta-long proof-terms it stands for ([`expand`]). The plain
//! sequent calculus in [`ljplus`] provides an independent checker and a
//! brute-force enumerator to compare against. [`sysf`] translates positive
//! System F types into formulas so the same machinery enumerates their
//! normal inhabitants.

pub mod cli;
pub mod expand;
pub mod grammar;
pub mod ljb;
pub mod ljplus;
pub mod syntax;
pub mod sysf;

pub use expand::{enumerate_terms, flatten, func_f, func_g, func_h, Duplication, Flattening, Session};
pub use grammar::{build_grammar, enumerate_schemes, is_inhabited, Grammar, Scheme};
pub use ljb::{normalize, CleaningTrace, LJBContext, LJBSequent};
pub use ljplus::{check_proof, oracle_enumerate, term_height, LJPlusSequent, NamedContext, ProofTerm};
pub use syntax::{parse_formula, polarity, FoTerm, Formula, Polarity};
pub use sysf::{phi, render_sysf_term, FType};
