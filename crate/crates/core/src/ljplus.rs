//! The cut-free calculus for positive sequents: named contexts,
//! beta-normal eta-long proof-terms, a derivation checker for the three
//! rules (left implication on atoms, right forall, right implication) and
//! a brute-force height-bounded enumerator used as an oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{decompose_negative, fresh_name, Formula};

/// Ordered list of `proof variable : formula` declarations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NamedContext {
    decls: Vec<(String, Formula)>,
}

impl NamedContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if a proof variable is declared twice.
    pub fn from_decls<I, S>(decls: I) -> Self
    where
        I: IntoIterator<Item = (S, Formula)>,
        S: Into<String>,
    {
        let mut ctx = Self::new();
        for (name, f) in decls {
            ctx.push(name, f);
        }
        ctx
    }

    pub fn push(&mut self, name: impl Into<String>, f: Formula) {
        let name = name.into();
        assert!(self.get(&name).is_none(), "proof variable {name} declared twice");
        self.decls.push((name, f));
    }

    pub fn with(&self, name: impl Into<String>, f: Formula) -> Self {
        let mut out = self.clone();
        out.push(name, f);
        out
    }

    pub fn get(&self, name: &str) -> Option<&Formula> {
        self.decls.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn decls(&self) -> &[(String, Formula)] {
        &self.decls
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.decls.iter().map(|(n, _)| n.as_str())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.decls.iter().map(|(_, f)| f)
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.formulas().flat_map(|f| f.free_vars()).collect()
    }

    fn without(&self, name: &str) -> Self {
        Self { decls: self.decls.iter().filter(|(n, _)| n != name).cloned().collect() }
    }
}

/// A sequent `ctx |- goal` with named hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LJPlusSequent {
    pub context: NamedContext,
    pub goal: Formula,
}

impl LJPlusSequent {
    pub fn new(context: NamedContext, goal: Formula) -> Self {
        Self { context, goal }
    }

    pub fn closed(goal: Formula) -> Self {
        Self::new(NamedContext::new(), goal)
    }

    /// Negative hypotheses and a positive goal.
    pub fn is_positive(&self) -> bool {
        self.goal.is_positive() && self.context.formulas().all(Formula::is_negative)
    }

    pub fn unnamed(&self) -> crate::syntax::Sequent {
        crate::syntax::Sequent { context: self.context.formulas().cloned().collect(), goal: self.goal.clone() }
    }
}

impl fmt::Display for LJPlusSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, a)) in self.context.decls().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{a}")?;
        }
        if !self.context.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "|- {}", self.goal)
    }
}

/// A beta-normal eta-long lambda-term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ProofTerm {
    /// `(h t1 ... tn)`: a hypothesis applied to all of its arguments.
    Spine { head: String, args: Vec<ProofTerm> },
    /// Abstraction over a term variable.
    LamTm { var: String, body: Box<ProofTerm> },
    /// Abstraction over a proof variable.
    LamPf { pvar: String, annot: Formula, body: Box<ProofTerm> },
}

impl ProofTerm {
    pub fn var(head: impl Into<String>) -> Self {
        ProofTerm::Spine { head: head.into(), args: Vec::new() }
    }

    pub fn app(head: impl Into<String>, args: Vec<ProofTerm>) -> Self {
        ProofTerm::Spine { head: head.into(), args }
    }

    pub fn lam_tm(var: impl Into<String>, body: ProofTerm) -> Self {
        ProofTerm::LamTm { var: var.into(), body: Box::new(body) }
    }

    pub fn lam_pf(pvar: impl Into<String>, annot: Formula, body: ProofTerm) -> Self {
        ProofTerm::LamPf { pvar: pvar.into(), annot, body: Box::new(body) }
    }

    /// Number of applications of a head variable along the whole term.
    pub fn count_heads(&self, head: &str) -> usize {
        match self {
            ProofTerm::Spine { head: h, args } => {
                usize::from(h == head) + args.iter().map(|a| a.count_heads(head)).sum::<usize>()
            }
            ProofTerm::LamTm { body, .. } | ProofTerm::LamPf { body, .. } => body.count_heads(head),
        }
    }

    /// Free proof variables.
    pub fn free_pvars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_pvars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_pvars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            ProofTerm::Spine { head, args } => {
                if !bound.contains(head) {
                    out.insert(head.clone());
                }
                args.iter().for_each(|a| a.collect_free_pvars(bound, out));
            }
            ProofTerm::LamTm { body, .. } => body.collect_free_pvars(bound, out),
            ProofTerm::LamPf { pvar, body, .. } => {
                bound.push(pvar.clone());
                body.collect_free_pvars(bound, out);
                bound.pop();
            }
        }
    }

    fn collect_free_tvars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            ProofTerm::Spine { args, .. } => args.iter().for_each(|a| a.collect_free_tvars(bound, out)),
            ProofTerm::LamTm { var, body } => {
                bound.push(var.clone());
                body.collect_free_tvars(bound, out);
                bound.pop();
            }
            ProofTerm::LamPf { annot, body, .. } => {
                out.extend(annot.free_vars().into_iter().filter(|v| !bound.contains(v)));
                body.collect_free_tvars(bound, out);
            }
        }
    }

    /// Canonical representative of the alpha-equivalence class: bound proof
    /// variables become `a, b, c, ...` in binding order, bound term
    /// variables keep their alphabetic root with a per-root counter, and
    /// quantifiers inside annotations are renumbered.
    pub fn alpha_normalize(&self) -> ProofTerm {
        let mut avoid = self.free_pvars();
        self.collect_free_tvars(&mut Vec::new(), &mut avoid);
        let mut st = CanonState { avoid, pv_count: 0, tv_roots: BTreeMap::new() };
        st.term(self, &BTreeMap::new(), &BTreeMap::new())
    }
}

struct CanonState {
    avoid: BTreeSet<String>,
    pv_count: usize,
    tv_roots: BTreeMap<String, usize>,
}

fn var_root(name: &str) -> &str {
    let root = name.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'' || c == '_');
    if root.is_empty() {
        "v"
    } else {
        root
    }
}

fn letter_name(k: usize) -> String {
    let letter = (b'a' + (k % 26) as u8) as char;
    if k < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", k / 26)
    }
}

impl CanonState {
    fn next_pv(&mut self) -> String {
        loop {
            let n = letter_name(self.pv_count);
            self.pv_count += 1;
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }

    fn next_tv(&mut self, old: &str) -> String {
        let root = var_root(old).to_string();
        loop {
            let k = self.tv_roots.entry(root.clone()).or_insert(0);
            let n = if *k == 0 { root.clone() } else { format!("{root}{k}") };
            *k += 1;
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }

    fn term(&mut self, t: &ProofTerm, pvs: &BTreeMap<String, String>, tvs: &BTreeMap<String, String>) -> ProofTerm {
        match t {
            ProofTerm::Spine { head, args } => ProofTerm::Spine {
                head: pvs.get(head).cloned().unwrap_or_else(|| head.clone()),
                args: args.iter().map(|a| self.term(a, pvs, tvs)).collect(),
            },
            ProofTerm::LamTm { var, body } => {
                let v = self.next_tv(var);
                let mut tvs = tvs.clone();
                tvs.insert(var.clone(), v.clone());
                ProofTerm::lam_tm(v, self.term(body, pvs, &tvs))
            }
            ProofTerm::LamPf { pvar, annot, body } => {
                let p = self.next_pv();
                let annot = canonical_binders(&annot.rename_free(tvs));
                let mut pvs = pvs.clone();
                pvs.insert(pvar.clone(), p.clone());
                ProofTerm::lam_pf(p, annot, self.term(body, &pvs, tvs))
            }
        }
    }
}

/// Rename the quantifiers of a formula to `root, root1, ...` in order,
/// avoiding its free variables.
pub fn canonical_binders(f: &Formula) -> Formula {
    fn go(
        f: &Formula,
        env: &BTreeMap<String, String>,
        avoid: &BTreeSet<String>,
        roots: &mut BTreeMap<String, usize>,
    ) -> Formula {
        match f {
            Formula::Atom(..) => f.rename_free(env),
            Formula::Impl(a, b) => {
                let a = go(a, env, avoid, roots);
                Formula::imp(a, go(b, env, avoid, roots))
            }
            Formula::Forall(x, body) => {
                let root = var_root(x).to_string();
                let name = loop {
                    let k = roots.entry(root.clone()).or_insert(0);
                    let n = if *k == 0 { root.clone() } else { format!("{root}{k}") };
                    *k += 1;
                    if !avoid.contains(&n) {
                        break n;
                    }
                };
                let mut env = env.clone();
                env.insert(x.clone(), name.clone());
                Formula::forall(name, go(body, &env, avoid, roots))
            }
        }
    }
    go(f, &BTreeMap::new(), &f.free_vars(), &mut BTreeMap::new())
}

/// 1 for a bare head; every constructor adds one level.
pub fn term_height(t: &ProofTerm) -> usize {
    match t {
        ProofTerm::Spine { args, .. } => 1 + args.iter().map(term_height).max().unwrap_or(0),
        ProofTerm::LamTm { body, .. } | ProofTerm::LamPf { body, .. } => 1 + term_height(body),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("ill-formed proof-term: {0}")]
    IllFormed(String),
}

/// Decide `ctx |- t : goal`. Constructor/goal mismatches and wrong arities
/// violate the eta-long shape and are reported as [`CheckError::IllFormed`];
/// everything else is a plain `false`.
pub fn check_proof(ctx: &NamedContext, t: &ProofTerm, goal: &Formula) -> Result<bool, CheckError> {
    match (t, goal) {
        (ProofTerm::Spine { head, args }, Formula::Atom(..)) => {
            let Some(ty) = ctx.get(head) else {
                return Ok(false);
            };
            let Ok((params, result)) = decompose_negative(ty) else {
                return Ok(false);
            };
            if params.len() != args.len() {
                return Err(CheckError::IllFormed(format!(
                    "head {head} takes {} arguments, got {}",
                    params.len(),
                    args.len()
                )));
            }
            let mut ok = result == *goal;
            for (a, p) in args.iter().zip(&params) {
                ok &= check_proof(ctx, a, p)?;
            }
            Ok(ok)
        }
        (ProofTerm::LamTm { var, body }, Formula::Forall(x, a)) => {
            if ctx.free_vars().contains(var) {
                return Ok(false);
            }
            if var != x && goal.free_vars().contains(var) {
                return Ok(false);
            }
            check_proof(ctx, body, &a.rename_var(x, var))
        }
        (ProofTerm::LamPf { pvar, annot, body }, Formula::Impl(a, b)) => {
            let ok_annot = crate::syntax::alpha_eq(annot, a);
            let inner = ctx.without(pvar).with(pvar.clone(), (**a).clone());
            Ok(check_proof(&inner, body, b)? && ok_annot)
        }
        (t, goal) => Err(CheckError::IllFormed(format!("{t} cannot have type {goal}"))),
    }
}

/// Eta-long shape predicate: the term never puts a constructor where the
/// expected type demands another one.
pub fn is_eta_long(ctx: &NamedContext, t: &ProofTerm, goal: &Formula) -> bool {
    check_proof(ctx, t, goal).is_ok()
}

/// All cartesian combinations, one element from each list.
pub(crate) fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

type MemoKey = (NamedContext, Formula, usize);

/// Direct backward search in the three-rule calculus. Independent of the
/// bracket calculus and the scheme grammar.
#[derive(Default)]
struct Oracle {
    memo: HashMap<MemoKey, Rc<Vec<ProofTerm>>>,
}

impl Oracle {
    fn search(&mut self, ctx: &NamedContext, goal: &Formula, height: usize) -> Rc<Vec<ProofTerm>> {
        if height == 0 {
            return Rc::new(Vec::new());
        }
        let key = (ctx.clone(), goal.clone(), height);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = match goal {
            Formula::Forall(x, a) => {
                let ctx_free = ctx.free_vars();
                let (var, body) = if ctx_free.contains(x) {
                    let mut avoid = ctx_free;
                    avoid.extend(goal.all_vars());
                    let z = fresh_name(x, &avoid);
                    let body = a.rename_var(x, &z);
                    (z, body)
                } else {
                    (x.clone(), (**a).clone())
                };
                self.search(ctx, &body, height - 1).iter().map(|t| ProofTerm::lam_tm(var.clone(), t.clone())).collect()
            }
            Formula::Impl(a, b) => {
                let taken: BTreeSet<String> = ctx.names().map(str::to_string).collect();
                let name = (ctx.len()..).map(|k| format!("p{k}")).find(|n| !taken.contains(n)).unwrap();
                let inner = ctx.with(name.clone(), (**a).clone());
                self.search(&inner, b, height - 1)
                    .iter()
                    .map(|t| ProofTerm::lam_pf(name.clone(), (**a).clone(), t.clone()))
                    .collect()
            }
            Formula::Atom(..) => {
                let mut out = Vec::new();
                for (name, ty) in ctx.decls() {
                    let Ok((params, head)) = decompose_negative(ty) else { continue };
                    if head != *goal {
                        continue;
                    }
                    if params.is_empty() {
                        out.push(ProofTerm::var(name.clone()));
                        continue;
                    }
                    let per_arg: Vec<Vec<ProofTerm>> =
                        params.iter().map(|p| self.search(ctx, p, height - 1).as_ref().clone()).collect();
                    for args in product(&per_arg) {
                        out.push(ProofTerm::app(name.clone(), args));
                    }
                }
                out
            }
        };
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// Every proof-term of `seq` of height at most `max_height`, sorted.
pub fn oracle_enumerate(seq: &LJPlusSequent, max_height: usize) -> Vec<ProofTerm> {
    let mut oracle = Oracle::default();
    let mut out = oracle.search(&seq.context, &seq.goal, max_height).as_ref().clone();
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Printing: `\a:T. body`, `\x. body`, `(h t1 ... tn)`

fn fmt_annot(f: &mut fmt::Formatter<'_>, a: &Formula) -> fmt::Result {
    if a.is_atomic() {
        write!(f, "{a}")
    } else {
        write!(f, "({a})")
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofTerm::Spine { head, args } if args.is_empty() => write!(f, "{head}"),
            ProofTerm::Spine { head, args } => {
                write!(f, "({head}")?;
                for a in args {
                    match a {
                        ProofTerm::Spine { .. } => write!(f, " {a}")?,
                        _ => write!(f, " ({a})")?,
                    }
                }
                write!(f, ")")
            }
            ProofTerm::LamTm { var, body } => write!(f, "\\{var}. {body}"),
            ProofTerm::LamPf { pvar, annot, body } => {
                write!(f, "\\{pvar}:")?;
                fmt_annot(f, annot)?;
                write!(f, ". {body}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn search_tree_goal() -> Formula {
        f("((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q")
    }

    fn search_tree_proof() -> ProofTerm {
        let inner = ProofTerm::lam_tm(
            "y",
            ProofTerm::lam_pf(
                "b",
                f("P(y) -> Q"),
                ProofTerm::lam_pf("g", f("P(y)"), ProofTerm::app("b", vec![ProofTerm::var("g")])),
            ),
        );
        ProofTerm::lam_pf("a", f("(forall y. (P(y) -> Q) -> P(y) -> Q) -> Q"), ProofTerm::app("a", vec![inner]))
    }

    #[test]
    fn check_examples() {
        let ctx = NamedContext::from_decls([("h0", f("Q"))]);
        assert_eq!(check_proof(&ctx, &ProofTerm::var("h0"), &f("Q")), Ok(true));
        assert_eq!(check_proof(&ctx, &ProofTerm::var("h0"), &f("P")), Ok(false));
        assert_eq!(check_proof(&NamedContext::new(), &search_tree_proof(), &search_tree_goal()), Ok(true));
    }

    #[test]
    fn shape_violations_are_distinct_errors() {
        let ctx = NamedContext::from_decls([("h0", f("P -> Q"))]);
        assert!(check_proof(&ctx, &ProofTerm::var("h0"), &f("Q")).is_err());
        assert!(check_proof(&ctx, &ProofTerm::var("h0"), &f("P -> Q")).is_err());
        assert!(check_proof(&ctx, &ProofTerm::lam_tm("x", ProofTerm::var("h0")), &f("Q")).is_err());
    }

    #[test]
    fn eigenvariable_condition() {
        let ctx = NamedContext::from_decls([("h0", f("P(x)"))]);
        let t = ProofTerm::lam_tm("x", ProofTerm::var("h0"));
        assert_eq!(check_proof(&ctx, &t, &f("forall x. P(x)")), Ok(false));
    }

    #[test]
    fn heights() {
        assert_eq!(term_height(&ProofTerm::var("a")), 1);
        assert_eq!(term_height(&ProofTerm::lam_pf("a", f("P"), ProofTerm::var("a"))), 2);
        assert_eq!(term_height(&search_tree_proof()), 7);
    }

    #[test]
    fn oracle_small_cases() {
        assert!(oracle_enumerate(&LJPlusSequent::closed(f("Q")), 5).is_empty());
        let id = oracle_enumerate(&LJPlusSequent::closed(f("P -> P")), 2);
        assert_eq!(id, vec![ProofTerm::lam_pf("p0", f("P"), ProofTerm::var("p0"))]);
        assert!(oracle_enumerate(&LJPlusSequent::closed(f("P -> P")), 1).is_empty());
        assert_eq!(oracle_enumerate(&LJPlusSequent::closed(f("P -> P -> P")), 3).len(), 2);
    }

    #[test]
    fn oracle_terms_check_and_are_monotone() {
        let seq = LJPlusSequent::closed(search_tree_goal());
        let mut prev: Vec<ProofTerm> = Vec::new();
        for h in 1..=11 {
            let now = oracle_enumerate(&seq, h);
            for t in &now {
                assert_eq!(check_proof(&seq.context, t, &seq.goal), Ok(true), "{t}");
                assert!(term_height(t) <= h);
            }
            assert!(prev.iter().all(|t| now.contains(t)));
            prev = now;
        }
        assert!(oracle_enumerate(&seq, 6).is_empty());
        assert_eq!(oracle_enumerate(&seq, 7).len(), 1);
        assert_eq!(oracle_enumerate(&seq, 10).len(), 1);
        assert_eq!(oracle_enumerate(&seq, 11).len(), 3);
    }

    #[test]
    fn alpha_normalize_identifies_variants() {
        let t1 = ProofTerm::lam_tm("y", ProofTerm::lam_pf("q", f("P(y)"), ProofTerm::var("q")));
        let t2 = ProofTerm::lam_tm("y7", ProofTerm::lam_pf("r", f("P(y7)"), ProofTerm::var("r")));
        assert_eq!(t1.alpha_normalize(), t2.alpha_normalize());
        assert_eq!(t1.alpha_normalize().to_string(), "\\y. \\a:P(y). a");
    }

    #[test]
    fn product_of_nothing_is_one_empty_tuple() {
        assert_eq!(product::<u8>(&[]), vec![Vec::<u8>::new()]);
        assert_eq!(product(&[vec![1, 2], vec![3]]).len(), 2);
    }
}
