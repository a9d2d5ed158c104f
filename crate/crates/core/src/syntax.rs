//! First-order terms and formulas of minimal predicate logic (`->` and
//! `forall` only), together with parsing, printing, polarity analysis,
//! variable renaming and alpha-equivalence of sequents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A first-order term: a variable or a function symbol applied to terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FoTerm {
    Var(String),
    App(String, Vec<FoTerm>),
}

/// A formula built from atoms, implication and universal quantification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Atom(String, Vec<FoTerm>),
    Impl(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    PositiveOnly,
    NegativeOnly,
    Both,
    Neither,
}

impl Polarity {
    pub fn is_positive(self) -> bool {
        matches!(self, Polarity::PositiveOnly | Polarity::Both)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Polarity::NegativeOnly | Polarity::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("formula is not negative: {0}")]
    NotNegative(String),
    #[error("renaming is not injective on {0}")]
    NotInjective(String),
    #[error("renaming touches avoided name {0}")]
    Avoided(String),
}

impl FoTerm {
    pub fn var(name: impl Into<String>) -> Self {
        FoTerm::Var(name.into())
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            FoTerm::Var(x) => {
                out.insert(x.clone());
            }
            FoTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn rename(&self, map: &BTreeMap<String, String>) -> FoTerm {
        match self {
            FoTerm::Var(x) => FoTerm::Var(map.get(x).cloned().unwrap_or_else(|| x.clone())),
            FoTerm::App(f, args) => FoTerm::App(f.clone(), args.iter().map(|a| a.rename(map)).collect()),
        }
    }
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<FoTerm>) -> Self {
        Formula::Atom(pred.into(), args)
    }

    /// Atom with no arguments.
    pub fn prop(pred: impl Into<String>) -> Self {
        Formula::Atom(pred.into(), Vec::new())
    }

    pub fn imp(lhs: Formula, rhs: Formula) -> Self {
        Formula::Impl(Box::new(lhs), Box::new(rhs))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|a| a.collect_vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Impl(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name bound by a quantifier anywhere in the formula.
    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_binders(&mut |x| {
            out.insert(x.to_string());
        });
        out
    }

    fn walk_binders(&self, f: &mut impl FnMut(&str)) {
        match self {
            Formula::Atom(..) => {}
            Formula::Impl(a, b) => {
                a.walk_binders(f);
                b.walk_binders(f);
            }
            Formula::Forall(x, a) => {
                f(x);
                a.walk_binders(f);
            }
        }
    }

    /// All variable names occurring in the formula, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = self.bound_vars();
        self.collect_all_term_vars(&mut out);
        out
    }

    fn collect_all_term_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::Impl(a, b) => {
                a.collect_all_term_vars(out);
                b.collect_all_term_vars(out);
            }
            Formula::Forall(_, a) => a.collect_all_term_vars(out),
        }
    }

    /// Capture-avoiding renaming of free variables.
    pub fn rename_free(&self, map: &BTreeMap<String, String>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.rename(map)).collect()),
            Formula::Impl(a, b) => Formula::imp(a.rename_free(map), b.rename_free(map)),
            Formula::Forall(x, body) => {
                let mut inner = map.clone();
                inner.remove(x);
                let body_free = body.free_vars();
                let captures = inner.iter().any(|(from, to)| to == x && body_free.contains(from));
                if captures {
                    let mut avoid = body.all_vars();
                    avoid.extend(inner.values().cloned());
                    avoid.extend(inner.keys().cloned());
                    let fresh = fresh_name(x, &avoid);
                    inner.insert(x.clone(), fresh.clone());
                    Formula::forall(fresh, body.rename_free(&inner))
                } else {
                    Formula::forall(x.clone(), body.rename_free(&inner))
                }
            }
        }
    }

    /// Substitute a single variable for a variable.
    pub fn rename_var(&self, from: &str, to: &str) -> Formula {
        if from == to {
            return self.clone();
        }
        let mut map = BTreeMap::new();
        map.insert(from.to_string(), to.to_string());
        self.rename_free(&map)
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Atom(..) => true,
            Formula::Impl(a, b) => a.is_negative() && b.is_positive(),
            Formula::Forall(_, a) => a.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Formula::Atom(..) => true,
            Formula::Impl(a, b) => a.is_positive() && b.is_negative(),
            Formula::Forall(..) => false,
        }
    }

    /// Size as the number of connectives, quantifiers and atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Impl(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, a) => 1 + a.size(),
        }
    }

    /// Head atom of a negative formula `A1 -> ... -> An -> P`.
    pub fn head(&self) -> &Formula {
        match self {
            Formula::Impl(_, b) => b.head(),
            other => other,
        }
    }
}

pub fn polarity(f: &Formula) -> Polarity {
    match (f.is_positive(), f.is_negative()) {
        (true, true) => Polarity::Both,
        (true, false) => Polarity::PositiveOnly,
        (false, true) => Polarity::NegativeOnly,
        (false, false) => Polarity::Neither,
    }
}

/// Split a negative formula into its positive arguments and atomic head.
pub fn decompose_negative(f: &Formula) -> Result<(Vec<Formula>, Formula), SyntaxError> {
    if !f.is_negative() {
        return Err(SyntaxError::NotNegative(f.to_string()));
    }
    let mut args = Vec::new();
    let mut cur = f;
    while let Formula::Impl(a, b) = cur {
        args.push((**a).clone());
        cur = b;
    }
    Ok((args, cur.clone()))
}

/// Inverse of [`decompose_negative`].
pub fn fold_negative(args: &[Formula], head: Formula) -> Formula {
    args.iter().rev().fold(head, |acc, a| Formula::imp(a.clone(), acc))
}

/// `base` with the smallest positive numeric suffix not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    (1..).map(|k| format!("{base}{k}")).find(|n| !avoid.contains(n)).expect("unbounded suffix range")
}

fn is_barendregt(f: &Formula) -> bool {
    let free = f.free_vars();
    let mut seen = BTreeSet::new();
    let mut ok = true;
    f.walk_binders(&mut |x| {
        if free.contains(x) || !seen.insert(x.to_string()) {
            ok = false;
        }
    });
    ok
}

/// Rename binders so that they are pairwise distinct and distinct from the
/// free variables. Already-distinct formulas are returned unchanged;
/// otherwise every binder gets `base + k`, numbered left to right.
pub fn ensure_distinct_binders(f: &Formula) -> Formula {
    if is_barendregt(f) {
        return f.clone();
    }
    let mut used = f.all_vars();
    let mut counter = 0usize;
    rebind(f, &BTreeMap::new(), &mut used, &mut counter)
}

fn rebind(f: &Formula, env: &BTreeMap<String, String>, used: &mut BTreeSet<String>, counter: &mut usize) -> Formula {
    match f {
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.rename(env)).collect()),
        Formula::Impl(a, b) => {
            let a = rebind(a, env, used, counter);
            let b = rebind(b, env, used, counter);
            Formula::imp(a, b)
        }
        Formula::Forall(x, body) => {
            let fresh = loop {
                *counter += 1;
                let cand = format!("{x}{counter}");
                if !used.contains(&cand) {
                    break cand;
                }
            };
            used.insert(fresh.clone());
            let mut env = env.clone();
            env.insert(x.clone(), fresh.clone());
            Formula::forall(fresh, rebind(body, &env, used, counter))
        }
    }
}

/// A finite injective map between variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Renaming {
    map: BTreeMap<String, String>,
}

impl Renaming {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Build a renaming, rejecting non-injective maps and images that hit
    /// a name in `avoid`.
    pub fn new<I, A, B>(pairs: I, avoid: &BTreeSet<String>) -> Result<Self, SyntaxError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut map = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            if avoid.contains(&b) {
                return Err(SyntaxError::Avoided(b));
            }
            if !images.insert(b.clone()) || map.insert(a.clone(), b).is_some() {
                return Err(SyntaxError::NotInjective(a));
            }
        }
        Ok(Self { map })
    }

    pub fn get(&self, x: &str) -> Option<&str> {
        self.map.get(x).map(String::as_str)
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        f.rename_free(&self.map)
    }
}

/// An unnamed sequent `A1, ..., An |- B`; the context is a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub context: Vec<Formula>,
    pub goal: Formula,
}

#[derive(Clone, Default)]
struct Bijection {
    fwd: BTreeMap<String, String>,
    bwd: BTreeMap<String, String>,
}

impl Bijection {
    fn link(&mut self, x: &str, y: &str) -> bool {
        match (self.fwd.get(x), self.bwd.get(y)) {
            (Some(a), Some(b)) => a == y && b == x,
            (None, None) => {
                self.fwd.insert(x.to_string(), y.to_string());
                self.bwd.insert(y.to_string(), x.to_string());
                true
            }
            _ => false,
        }
    }
}

fn match_var(x: &str, y: &str, env: &[(String, String)], bij: &mut Bijection) -> bool {
    let lx = env.iter().rposition(|(l, _)| l == x);
    let ry = env.iter().rposition(|(_, r)| r == y);
    match (lx, ry) {
        (Some(i), Some(j)) => i == j,
        (None, None) => bij.link(x, y),
        _ => false,
    }
}

fn match_term(a: &FoTerm, b: &FoTerm, env: &[(String, String)], bij: &mut Bijection) -> bool {
    match (a, b) {
        (FoTerm::Var(x), FoTerm::Var(y)) => match_var(x, y, env, bij),
        (FoTerm::App(f, xs), FoTerm::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, env, bij))
        }
        _ => false,
    }
}

fn match_formula(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>, bij: &mut Bijection) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, env, bij))
        }
        (Formula::Impl(a1, a2), Formula::Impl(b1, b2)) => {
            match_formula(a1, b1, env, bij) && match_formula(a2, b2, env, bij)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1)) => {
            env.push((x.clone(), y.clone()));
            let ok = match_formula(a1, b1, env, bij);
            env.pop();
            ok
        }
        _ => false,
    }
}

/// Plain alpha-equivalence of formulas (free variables must coincide).
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    let mut bij = Bijection::default();
    if !match_formula(a, b, &mut Vec::new(), &mut bij) {
        return false;
    }
    bij.fwd.iter().all(|(x, y)| x == y)
}

fn match_contexts(left: &[Formula], right: &[Formula], used: &mut Vec<bool>, bij: &Bijection) -> Option<Bijection> {
    let Some((first, rest)) = left.split_first() else {
        return Some(bij.clone());
    };
    for j in 0..right.len() {
        if used[j] {
            continue;
        }
        let mut attempt = bij.clone();
        if match_formula(first, &right[j], &mut Vec::new(), &mut attempt) {
            used[j] = true;
            if let Some(done) = match_contexts(rest, right, used, &attempt) {
                return Some(done);
            }
            used[j] = false;
        }
    }
    None
}

/// Find an injective renaming of free term variables witnessing that two
/// sequents are alpha-equivalent, matching hypotheses as multisets.
pub fn alpha_match_sequent(s1: &Sequent, s2: &Sequent) -> Option<Renaming> {
    if s1.context.len() != s2.context.len() {
        return None;
    }
    let mut bij = Bijection::default();
    if !match_formula(&s1.goal, &s2.goal, &mut Vec::new(), &mut bij) {
        return None;
    }
    let mut used = vec![false; s2.context.len()];
    match_contexts(&s1.context, &s2.context, &mut used, &bij).map(|b| Renaming { map: b.fwd })
}

/// Alpha-equivalence of sequents: free variables count as bound by the
/// turnstile. Hypothesis names, if any, are irrelevant because proof
/// variables may be renamed as well.
pub fn alpha_eq_sequent(s1: &Sequent, s2: &Sequent) -> bool {
    alpha_match_sequent(s1, s2).is_some()
}

// ---------------------------------------------------------------------------
// Printing

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoTerm::Var(x) => write!(f, "{x}"),
            FoTerm::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) => {
                write!(f, "{p}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
            Formula::Impl(a, b) => {
                if a.is_atomic() {
                    write!(f, "{a} -> {b}")
                } else {
                    write!(f, "({a}) -> {b}")
                }
            }
            Formula::Forall(x, a) => write!(f, "forall {x}. {a}"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.context.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if self.context.is_empty() {
            write!(f, "|- {}", self.goal)
        } else {
            write!(f, " |- {}", self.goal)
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Forall,
    Arrow,
    LParen,
    RParen,
    Comma,
    Dot,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '∀' => Tok::Forall,
            '→' => Tok::Arrow,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => Tok::Arrow,
                    _ => {
                        return Err(SyntaxError::Parse { offset: pos, message: "expected '->'".into() });
                    }
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, if name == "forall" { Tok::Forall } else { Tok::Ident(name) }));
                continue;
            }
            other => {
                return Err(SyntaxError::Parse { offset: pos, message: format!("unexpected character '{other}'") });
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(x)) => {
                let x = x.clone();
                self.pos += 1;
                Ok(x)
            }
            _ => self.error("expected identifier"),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        if self.peek() == Some(&Tok::Forall) {
            self.pos += 1;
            let x = self.ident()?;
            self.expect(Tok::Dot, "'.'")?;
            let body = self.formula()?;
            return Ok(Formula::forall(x, body));
        }
        let lhs = self.primary()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => {
                let p = self.ident()?;
                let args = if self.peek() == Some(&Tok::LParen) { self.args()? } else { Vec::new() };
                Ok(Formula::Atom(p, args))
            }
            _ => self.error("expected formula"),
        }
    }

    fn args(&mut self) -> Result<Vec<FoTerm>, SyntaxError> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::RParen) => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return self.error("expected ',' or ')'"),
            }
        }
    }

    fn term(&mut self) -> Result<FoTerm, SyntaxError> {
        let name = self.ident()?;
        if self.peek() == Some(&Tok::LParen) {
            Ok(FoTerm::App(name, self.args()?))
        } else {
            Ok(FoTerm::Var(name))
        }
    }
}

/// Parse the concrete syntax: `forall x. A`, right-associative `->`,
/// atoms `P` or `P(t1, ..., tn)`.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_smallest_implication() {
        assert_eq!(f("P -> P"), Formula::imp(Formula::prop("P"), Formula::prop("P")));
    }

    #[test]
    fn parses_search_tree_example() {
        let a = f("((forall y. (P(y) -> Q) -> (P(y) -> Q)) -> Q) -> Q");
        let py = Formula::atom("P", vec![FoTerm::var("y")]);
        let q = Formula::prop("Q");
        let pyq = Formula::imp(py, q.clone());
        let b = Formula::forall("y", Formula::imp(pyq.clone(), pyq));
        assert_eq!(a, Formula::imp(Formula::imp(b, q.clone()), q));
    }

    #[test]
    fn truncated_input_reports_offset() {
        match parse_formula("P ->") {
            Err(SyntaxError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn arrow_is_right_associative_and_forall_extends_right() {
        assert_eq!(f("A -> B -> C"), f("A -> (B -> C)"));
        assert_eq!(f("forall x. P(x) -> Q"), Formula::forall("x", f("P(x) -> Q")));
    }

    #[test]
    fn printing_reparses() {
        for s in ["((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q", "forall x. forall y. R(f(x), y)", "(A -> B) -> C"]
        {
            let a = f(s);
            assert_eq!(f(&a.to_string()), a);
        }
    }

    #[test]
    fn polarity_examples() {
        assert_eq!(polarity(&f("Q")), Polarity::Both);
        assert_eq!(polarity(&f("forall x. P(x)")), Polarity::PositiveOnly);
        assert_eq!(polarity(&f("(forall x. P(x)) -> forall y. Q(y)")), Polarity::Neither);
        assert_eq!(polarity(&f("(P -> Q) -> Q")), Polarity::Both);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_negative(&f("P")).unwrap(), (vec![], f("P")));
        let (args, head) = decompose_negative(&f("(P(y) -> Q) -> P(y) -> Q")).unwrap();
        assert_eq!(args, vec![f("P(y) -> Q"), f("P(y)")]);
        assert_eq!(head, f("Q"));
        assert!(matches!(decompose_negative(&f("forall x. P(x)")), Err(SyntaxError::NotNegative(_))));
    }

    #[test]
    fn distinct_binder_examples() {
        let a = f("forall x. P(x)");
        assert_eq!(ensure_distinct_binders(&a), a);
        assert_eq!(
            ensure_distinct_binders(&f("(forall x. P(x)) -> forall x. Q(x)")),
            f("(forall x1. P(x1)) -> forall x2. Q(x2)")
        );
        assert_eq!(ensure_distinct_binders(&f("forall x. forall x. P(x)")), f("forall x1. forall x2. P(x2)"));
    }

    #[test]
    fn renaming_is_capture_avoiding() {
        let a = f("forall y. R(x, y)");
        let b = a.rename_var("x", "y");
        assert_eq!(b.free_vars(), ["y".to_string()].into_iter().collect());
        assert!(alpha_eq(&b, &f("forall z. R(y, z)")));
    }

    #[test]
    fn sequent_alpha_equivalence() {
        let s = |ctx: &[&str], g: &str| Sequent { context: ctx.iter().map(|c| f(c)).collect(), goal: f(g) };
        assert!(alpha_eq_sequent(&s(&["P(x)"], "P(x)"), &s(&["P(y)"], "P(y)")));
        assert!(!alpha_eq_sequent(&s(&["P(x)"], "P(x)"), &s(&["P(x)"], "P(y)")));
        assert!(alpha_eq_sequent(&s(&["P(x) -> Q", "P(x)"], "Q"), &s(&["P(z)", "P(z) -> Q"], "Q")));
        assert!(!alpha_eq_sequent(&s(&["P(x)", "P(y)"], "Q"), &s(&["P(x)", "P(x)"], "Q")));
    }

    #[test]
    fn renaming_rejects_non_injective() {
        assert!(Renaming::new([("x", "z"), ("y", "z")], &BTreeSet::new()).is_err());
        assert!(Renaming::new([("x", "z")], &["z".to_string()].into_iter().collect()).is_err());
    }
}
