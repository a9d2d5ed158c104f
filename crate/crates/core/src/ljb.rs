//! The sequent calculus with brackets.
//!
//! Contexts are multisets of items; an item is a formula or a bracket
//! `[G]_V` binding the variables `V` over a sub-context. Deduction rules
//! only ever see contexts in normal form with respect to the three
//! cleaning rules:
//!
//! ```text
//! [I, G]_V  -->  I, [G]_V      if FV(I) and V are disjoint   (Split)
//! [ ]_V     -->  (nothing)                                  (DropEmpty)
//! I I       -->  I                                          (Merge)
//! ```
//!
//! Normalization follows one fixed strategy and records every rewrite
//! step in a [`CleaningTrace`], which the proof expansion replays.
//!
//! Contexts are generic over their leaves so that the same code runs on
//! plain formulas and on formulas tagged with the hypothesis they stand
//! for.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expand::Session;
use crate::ljplus::ProofTerm;
use crate::syntax::{decompose_negative, Formula};

pub type VarSet = BTreeSet<String>;

/// Hard ceiling on rewrite steps in one normalization.
pub const STEP_CAP: usize = 1_000_000;

pub trait Leaf: Clone + fmt::Debug {
    fn formula(&self) -> &Formula;
}

impl Leaf for Formula {
    fn formula(&self) -> &Formula {
        self
    }
}

/// A formula carrying an identifier of the hypothesis it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tagged {
    pub formula: Formula,
    pub tag: usize,
}

impl Leaf for Tagged {
    fn formula(&self) -> &Formula {
        &self.formula
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item<L = Formula> {
    Fml(L),
    Bracket(VarSet, LJBContext<L>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LJBContext<L = Formula> {
    pub items: Vec<Item<L>>,
}

impl<L> Default for LJBContext<L> {
    fn default() -> Self {
        Self { items: Vec::new() }
    }
}

impl<L: Leaf> Item<L> {
    pub fn free_vars(&self) -> VarSet {
        match self {
            Item::Fml(l) => l.formula().free_vars(),
            Item::Bracket(binds, inner) => inner.free_vars().difference(binds).cloned().collect(),
        }
    }

    /// The item with leaf payloads dropped and every level sorted; two
    /// items are equal as multisets iff their keys are equal.
    pub fn key(&self) -> Item<Formula> {
        match self {
            Item::Fml(l) => Item::Fml(l.formula().clone()),
            Item::Bracket(binds, inner) => Item::Bracket(binds.clone(), inner.key()),
        }
    }

    fn leaves_into<'a>(&'a self, out: &mut Vec<&'a L>) {
        match self {
            Item::Fml(l) => out.push(l),
            Item::Bracket(_, inner) => inner.items.iter().for_each(|i| i.leaves_into(out)),
        }
    }

    /// Leaves in the order obtained by traversing the sorted key.
    fn canonical_leaves(&self) -> Vec<&L> {
        match self {
            Item::Fml(l) => vec![l],
            Item::Bracket(_, inner) => {
                let mut kids: Vec<&Item<L>> = inner.items.iter().collect();
                kids.sort_by_cached_key(|i| i.key());
                kids.into_iter().flat_map(|i| i.canonical_leaves()).collect()
            }
        }
    }
}

impl<L: Leaf> LJBContext<L> {
    pub fn new(items: Vec<Item<L>>) -> Self {
        Self { items }
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn free_vars(&self) -> VarSet {
        self.items.iter().flat_map(|i| i.free_vars()).collect()
    }

    pub fn key(&self) -> LJBContext<Formula> {
        let mut items: Vec<Item<Formula>> = self.items.iter().map(Item::key).collect();
        items.sort();
        LJBContext { items }
    }

    /// Formulas in left-to-right depth-first order.
    pub fn leaves(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.items.iter().for_each(|i| i.leaves_into(&mut out));
        out
    }

    /// The multiset of formulas obtained by erasing all brackets.
    pub fn erase(&self) -> Vec<Formula> {
        self.leaves().into_iter().map(|l| l.formula().clone()).collect()
    }

    /// Every variable name mentioned anywhere, including bracket binders.
    pub fn all_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        for i in &self.items {
            match i {
                Item::Fml(l) => out.extend(l.formula().all_vars()),
                Item::Bracket(binds, inner) => {
                    out.extend(binds.iter().cloned());
                    out.extend(inner.all_vars());
                }
            }
        }
        out
    }

    /// Sort every level by key. Normal contexts have no ties.
    pub fn sort_canonical(&mut self) {
        for i in &mut self.items {
            if let Item::Bracket(_, inner) = i {
                inner.sort_canonical();
            }
        }
        self.items.sort_by_cached_key(|i| i.key());
    }

    pub fn strip(&self) -> LJBContext<Formula> {
        LJBContext {
            items: self
                .items
                .iter()
                .map(|i| match i {
                    Item::Fml(l) => Item::Fml(l.formula().clone()),
                    Item::Bracket(b, inner) => Item::Bracket(b.clone(), inner.strip()),
                })
                .collect(),
        }
    }

    fn at_mut(&mut self, path: &[usize]) -> Result<&mut LJBContext<L>, TraceError> {
        let mut cur = self;
        for &i in path {
            cur = match cur.items.get_mut(i) {
                Some(Item::Bracket(_, inner)) => inner,
                _ => return Err(TraceError::BadPath(path.to_vec())),
            };
        }
        Ok(cur)
    }

    fn at(&self, path: &[usize]) -> Result<&LJBContext<L>, TraceError> {
        let mut cur = self;
        for &i in path {
            cur = match cur.items.get(i) {
                Some(Item::Bracket(_, inner)) => inner,
                _ => return Err(TraceError::BadPath(path.to_vec())),
            };
        }
        Ok(cur)
    }
}

impl LJBContext<Formula> {
    pub fn from_formulas(fs: impl IntoIterator<Item = Formula>) -> Self {
        Self { items: fs.into_iter().map(Item::Fml).collect() }
    }

    /// Tag every leaf with its depth-first index.
    pub fn tag_leaves(&self) -> LJBContext<Tagged> {
        fn go(ctx: &LJBContext<Formula>, next: &mut usize) -> LJBContext<Tagged> {
            LJBContext {
                items: ctx
                    .items
                    .iter()
                    .map(|i| match i {
                        Item::Fml(f) => {
                            *next += 1;
                            Item::Fml(Tagged { formula: f.clone(), tag: *next - 1 })
                        }
                        Item::Bracket(b, inner) => Item::Bracket(b.clone(), go(inner, next)),
                    })
                    .collect(),
            }
        }
        go(self, &mut 0)
    }
}

impl<L: Leaf> fmt::Display for LJBContext<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.items.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            match i {
                Item::Fml(l) => write!(f, "{}", l.formula())?,
                Item::Bracket(binds, inner) => {
                    let vs: Vec<&str> = binds.iter().map(String::as_str).collect();
                    write!(f, "[{inner}]_{{{}}}", vs.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// `context |- goal` in the bracket calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LJBSequent {
    pub context: LJBContext,
    pub goal: Formula,
}

impl LJBSequent {
    pub fn new(context: LJBContext, goal: Formula) -> Self {
        Self { context, goal }
    }

    /// `|- goal`.
    pub fn closed(goal: Formula) -> Self {
        Self::new(LJBContext::default(), goal)
    }
}

impl fmt::Display for LJBSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.context.is_empty() {
            write!(f, "|- {}", self.goal)
        } else {
            write!(f, "{} |- {}", self.context, self.goal)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CleaningRule {
    Split,
    DropEmpty,
    Merge,
}

/// One rewrite. Paths index through bracket items from the root context;
/// a `bracket` path ends at a bracket item, a `parent` path names the
/// context holding the items.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CleaningStep {
    /// Move item `index` of the bracket out to the end of the enclosing context.
    Split {
        bracket: Vec<usize>,
        index: usize,
    },
    DropEmpty {
        bracket: Vec<usize>,
    },
    /// Remove item `removed` of the context, an exact copy of item `kept`.
    Merge {
        parent: Vec<usize>,
        kept: usize,
        removed: usize,
    },
}

impl CleaningStep {
    pub fn rule(&self) -> CleaningRule {
        match self {
            CleaningStep::Split { .. } => CleaningRule::Split,
            CleaningStep::DropEmpty { .. } => CleaningRule::DropEmpty,
            CleaningStep::Merge { .. } => CleaningRule::Merge,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleaningTrace {
    pub steps: Vec<CleaningStep>,
}

impl CleaningTrace {
    pub fn rules(&self) -> Vec<CleaningRule> {
        self.steps.iter().map(CleaningStep::rule).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("path {0:?} does not address a bracket")]
    BadPath(Vec<usize>),
    #[error("step {0:?} is not a redex of the current context")]
    NotARedex(CleaningStep),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LjbError {
    #[error("goal is not a universal formula: {0}")]
    GoalNotForall(Formula),
    #[error("goal is not an implication: {0}")]
    GoalNotImpl(Formula),
}

fn split_parent(path: &[usize]) -> Result<(&[usize], usize), TraceError> {
    match path.split_last() {
        Some((&last, parent)) => Ok((parent, last)),
        None => Err(TraceError::BadPath(path.to_vec())),
    }
}

/// Apply a single recorded step in place.
pub fn apply_step<L: Leaf>(ctx: &mut LJBContext<L>, step: &CleaningStep) -> Result<(), TraceError> {
    let bad = || TraceError::NotARedex(step.clone());
    match step {
        CleaningStep::Split { bracket, index } => {
            let (parent, b) = split_parent(bracket)?;
            let parent = ctx.at_mut(parent)?;
            let moved = match parent.items.get_mut(b) {
                Some(Item::Bracket(binds, inner)) => {
                    let item = inner.items.get(*index).ok_or_else(bad)?;
                    if !item.free_vars().is_disjoint(binds) {
                        return Err(bad());
                    }
                    inner.items.remove(*index)
                }
                _ => return Err(bad()),
            };
            parent.items.push(moved);
        }
        CleaningStep::DropEmpty { bracket } => {
            let (parent, b) = split_parent(bracket)?;
            let parent = ctx.at_mut(parent)?;
            match parent.items.get(b) {
                Some(Item::Bracket(_, inner)) if inner.is_empty() => {
                    parent.items.remove(b);
                }
                _ => return Err(bad()),
            }
        }
        CleaningStep::Merge { parent, kept, removed } => {
            let parent = ctx.at_mut(parent)?;
            let (Some(a), Some(b)) = (parent.items.get(*kept), parent.items.get(*removed)) else {
                return Err(bad());
            };
            if kept == removed || a.key() != b.key() {
                return Err(bad());
            }
            parent.items.remove(*removed);
        }
    }
    Ok(())
}

/// Replay a trace and sort the result; equals the normal form when the
/// trace came from [`normalize`] on the same context.
pub fn replay<L: Leaf>(ctx: &LJBContext<L>, trace: &CleaningTrace) -> Result<LJBContext<L>, TraceError> {
    let mut out = ctx.clone();
    for step in &trace.steps {
        apply_step(&mut out, step)?;
    }
    out.sort_canonical();
    Ok(out)
}

/// For a Merge step about to be applied to `ctx`: pairs
/// `(leaf of removed copy, matching leaf of kept copy)`.
pub fn merge_alignment<'a, L: Leaf>(
    ctx: &'a LJBContext<L>,
    parent: &[usize],
    kept: usize,
    removed: usize,
) -> Result<Vec<(&'a L, &'a L)>, TraceError> {
    let p = ctx.at(parent)?;
    let k = p.items.get(kept).ok_or_else(|| TraceError::BadPath(parent.to_vec()))?;
    let r = p.items.get(removed).ok_or_else(|| TraceError::BadPath(parent.to_vec()))?;
    Ok(r.canonical_leaves().into_iter().zip(k.canonical_leaves()).collect())
}

struct Normalizer {
    trace: CleaningTrace,
}

impl Normalizer {
    fn record(&mut self, step: CleaningStep) {
        self.trace.steps.push(step);
        assert!(self.trace.steps.len() <= STEP_CAP, "cleaning exceeded {STEP_CAP} steps");
    }

    /// Merge the item at `idx` into the normalized region `v[from..]`
    /// (excluding `idx` itself); returns true if it was removed.
    fn merge_into<L: Leaf>(&mut self, v: &mut LJBContext<L>, path: &[usize], idx: usize, from: usize) -> bool {
        let key = v.items[idx].key();
        let hit = (from..v.items.len()).filter(|&k| k != idx).find(|&k| v.items[k].key() == key);
        if let Some(kept) = hit {
            self.record(CleaningStep::Merge { parent: path.to_vec(), kept, removed: idx });
            v.items.remove(idx);
            true
        } else {
            false
        }
    }

    /// Items are processed from last to first; everything to the right of
    /// the current item is already normal and duplicate-free.
    fn level<L: Leaf>(&mut self, v: &mut LJBContext<L>, path: &mut Vec<usize>) {
        let mut pending = v.items.len();
        while pending > 0 {
            pending -= 1;
            let i = pending;
            let placeholder = Item::Bracket(VarSet::new(), LJBContext::default());
            let (binds, mut inner) = match std::mem::replace(&mut v.items[i], placeholder) {
                Item::Bracket(binds, inner) => (binds, inner),
                fml => {
                    v.items[i] = fml;
                    self.merge_into(v, path, i, i + 1);
                    continue;
                }
            };
            path.push(i);
            self.level(&mut inner, path);
            let mut j = 0;
            while j < inner.items.len() {
                if inner.items[j].free_vars().is_disjoint(&binds) {
                    self.record(CleaningStep::Split { bracket: path.clone(), index: j });
                    v.items.push(inner.items.remove(j));
                    path.pop();
                    let last = v.items.len() - 1;
                    self.merge_into(v, path, last, i + 1);
                    path.push(i);
                } else {
                    j += 1;
                }
            }
            if inner.is_empty() {
                self.record(CleaningStep::DropEmpty { bracket: path.clone() });
                path.pop();
                v.items.remove(i);
                continue;
            }
            path.pop();
            v.items[i] = Item::Bracket(binds, inner);
            self.merge_into(v, path, i, i + 1);
        }
    }
}

/// Normal form of a context under the fixed strategy, sorted, together
/// with the steps performed.
pub fn normalize<L: Leaf>(ctx: &LJBContext<L>) -> (LJBContext<L>, CleaningTrace) {
    let mut out = ctx.clone();
    let mut n = Normalizer { trace: CleaningTrace::default() };
    n.level(&mut out, &mut Vec::new());
    out.sort_canonical();
    (out, n.trace)
}

/// No cleaning redex anywhere.
pub fn is_normal<L: Leaf>(ctx: &LJBContext<L>) -> bool {
    let keys: Vec<Item<Formula>> = ctx.items.iter().map(Item::key).collect();
    let distinct: BTreeSet<&Item<Formula>> = keys.iter().collect();
    distinct.len() == keys.len()
        && ctx.items.iter().all(|i| match i {
            Item::Fml(_) => true,
            Item::Bracket(binds, inner) => {
                !inner.is_empty() && inner.items.iter().all(|j| !j.free_vars().is_disjoint(binds)) && is_normal(inner)
            }
        })
}

/// One way to bring a hypothesis with the right head to the surface.
#[derive(Clone, Debug)]
pub struct Exposure<L = Formula> {
    pub occurrence: usize,
    /// Indices from the root down to the exposed formula.
    pub path: Vec<usize>,
    /// The context with brackets turned inside out along the path.
    pub restructured: LJBContext<L>,
    pub exposed: L,
}

/// Every occurrence of a hypothesis `A1 -> ... -> An -> goal` reachable
/// through brackets that do not bind a free variable of `goal`.
pub fn expose<L: Leaf>(ctx: &LJBContext<L>, goal: &Formula) -> Vec<Exposure<L>> {
    let mut out = Vec::new();
    let goal_free = goal.free_vars();
    expose_level(&ctx.items, goal, &goal_free, Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn expose_level<L: Leaf>(
    items: &[Item<L>],
    goal: &Formula,
    goal_free: &VarSet,
    outside: Vec<Item<L>>,
    path: &mut Vec<usize>,
    out: &mut Vec<Exposure<L>>,
) {
    for (j, item) in items.iter().enumerate() {
        let siblings = items.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, it)| it.clone());
        path.push(j);
        match item {
            Item::Fml(l) => {
                let matches = matches!(decompose_negative(l.formula()), Ok((_, ref head)) if head == goal);
                if matches {
                    let mut restructured: Vec<Item<L>> = outside.clone();
                    restructured.extend(siblings);
                    restructured.push(Item::Fml(l.clone()));
                    out.push(Exposure {
                        occurrence: out.len(),
                        path: path.clone(),
                        restructured: LJBContext::new(restructured),
                        exposed: l.clone(),
                    });
                }
            }
            Item::Bracket(binds, inner) => {
                if binds.is_disjoint(goal_free) {
                    let mut wrapped: Vec<Item<L>> = outside.clone();
                    wrapped.extend(siblings);
                    let next = vec![Item::Bracket(binds.clone(), LJBContext::new(wrapped))];
                    expose_level(&inner.items, goal, goal_free, next, path, out);
                }
            }
        }
        path.pop();
    }
}

/// `[G]_V` for the premise of the right forall rule, where `V` holds the
/// quantified variable and every variable bound inside the body.
pub fn forall_premise_context<L: Leaf>(ctx: &LJBContext<L>, var: &str, body: &Formula) -> LJBContext<L> {
    let mut binds = body.bound_vars();
    binds.insert(var.to_string());
    LJBContext::new(vec![Item::Bracket(binds, ctx.clone())])
}

/// `G, A` for the premise of the right implication rule.
pub fn impl_premise_context<L: Leaf>(ctx: &LJBContext<L>, hyp: L) -> LJBContext<L> {
    let mut out = ctx.clone();
    out.items.push(Item::Fml(hyp));
    out
}

pub fn apply_rforall(s: &LJBSequent) -> Result<LJBSequent, LjbError> {
    match &s.goal {
        Formula::Forall(x, body) => {
            let (ctx, _) = normalize(&forall_premise_context(&s.context, x, body));
            Ok(LJBSequent::new(ctx, (**body).clone()))
        }
        g => Err(LjbError::GoalNotForall(g.clone())),
    }
}

pub fn apply_rimpl(s: &LJBSequent) -> Result<LJBSequent, LjbError> {
    match &s.goal {
        Formula::Impl(a, b) => {
            let (ctx, _) = normalize(&impl_premise_context(&s.context, (**a).clone()));
            Ok(LJBSequent::new(ctx, (**b).clone()))
        }
        g => Err(LjbError::GoalNotImpl(g.clone())),
    }
}

/// Premises `G*↓ |- Ai` of the left rule for one exposure.
pub fn spine_premises(exposure: &Exposure) -> Vec<LJBSequent> {
    let (normal, _) = normalize(&exposure.restructured);
    let (args, _) = decompose_negative(&exposure.exposed).expect("exposed hypotheses are negative");
    args.into_iter().map(|a| LJBSequent::new(normal.clone(), a)).collect()
}

/// Whether `s |- pi : goal` is derivable with schemes: heads and proof
/// binders must be the canonical variables registered in `session`.
pub fn scheme_check(session: &Session, s: &LJBSequent, pi: &ProofTerm) -> bool {
    match (pi, &s.goal) {
        (ProofTerm::Spine { head, args }, Formula::Atom(..)) => {
            let Some(ty) = session.formula_of(head) else {
                return false;
            };
            let Ok((params, _)) = decompose_negative(ty) else {
                return false;
            };
            if params.len() != args.len() {
                return false;
            }
            expose(&s.context, &s.goal).iter().filter(|e| e.exposed == *ty).any(|e| {
                let (normal, _) = normalize(&e.restructured);
                params
                    .iter()
                    .zip(args)
                    .all(|(p, a)| scheme_check(session, &LJBSequent::new(normal.clone(), p.clone()), a))
            })
        }
        (ProofTerm::LamTm { var, body }, Formula::Forall(x, _)) => {
            var == x && apply_rforall(s).is_ok_and(|next| scheme_check(session, &next, body))
        }
        (ProofTerm::LamPf { pvar, annot, body }, Formula::Impl(a, _)) => {
            **a == *annot
                && session.formula_of(pvar) == Some(annot)
                && apply_rimpl(s).is_ok_and(|next| scheme_check(session, &next, body))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn fml(s: &str) -> Item {
        Item::Fml(f(s))
    }

    fn br(vars: &[&str], items: Vec<Item>) -> Item {
        Item::Bracket(vars.iter().map(|v| v.to_string()).collect(), LJBContext::new(items))
    }

    fn ctx(items: Vec<Item>) -> LJBContext {
        LJBContext::new(items)
    }

    const B: &str = "forall y. (P(y) -> Q) -> P(y) -> Q";

    fn bq() -> Formula {
        f(&format!("({B}) -> Q"))
    }

    #[test]
    fn drop_empty_bracket() {
        let (n, t) = normalize(&ctx(vec![br(&["x"], vec![]), fml("P")]));
        assert_eq!(n, ctx(vec![fml("P")]));
        assert_eq!(t.rules(), vec![CleaningRule::DropEmpty]);
    }

    #[test]
    fn merge_duplicate_brackets() {
        let item = || br(&["x"], vec![fml("P(x)"), fml("P(x) -> Q")]);
        let (n, t) = normalize(&ctx(vec![item(), item()]));
        assert_eq!(n.key(), ctx(vec![item()]).key());
        assert_eq!(t.rules(), vec![CleaningRule::Merge]);
    }

    #[test]
    fn split_free_item() {
        let (n, t) = normalize(&ctx(vec![br(&["x"], vec![fml("Q"), fml("P(x)")])]));
        assert_eq!(n, ctx(vec![fml("Q"), br(&["x"], vec![fml("P(x)")])]));
        assert_eq!(t.rules(), vec![CleaningRule::Split]);
    }

    #[test]
    fn nested_closed_bracket_splits_then_merges() {
        let inner = || br(&["y"], vec![fml("P(y) -> Q"), fml("P(y)")]);
        let g = ctx(vec![br(&["y"], vec![fml(&bq().to_string()), inner(), fml("P(y) -> Q"), fml("P(y)")])]);
        let (n, t) = normalize(&g);
        assert_eq!(n.key(), ctx(vec![Item::Fml(bq()), inner()]).key());
        assert!(is_normal(&n));
        assert_eq!(replay(&g, &t).unwrap(), n);
        assert!(normalize(&n).1.is_empty());
    }

    #[test]
    fn expose_through_bracket_flips_it() {
        let g = ctx(vec![fml("Q(x)"), br(&["x"], vec![fml("Q(x) -> P")])]);
        let es = expose(&g, &f("P"));
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].restructured.key(), ctx(vec![br(&["x"], vec![fml("Q(x)")]), fml("Q(x) -> P")]).key());
    }

    #[test]
    fn expose_finds_both_heads_and_nothing_else() {
        let g = LJBContext::from_formulas([bq(), f("P(y) -> Q"), f("P(y)")]);
        let es = expose(&g, &f("Q"));
        assert_eq!(es.len(), 2);
        assert_eq!(es[0].exposed, bq());
        assert_eq!(es[1].exposed, f("P(y) -> Q"));
        assert!(expose(&LJBContext::from_formulas([f("P(y)")]), &f("Q")).is_empty());
    }

    #[test]
    fn expose_respects_bound_head_variables() {
        let g = ctx(vec![br(&["y"], vec![fml("P(y) -> Q"), fml("P(y)")])]);
        assert_eq!(expose(&g, &f("Q")).len(), 1);
        assert!(expose(&g, &f("P(y)")).is_empty());
    }

    #[test]
    fn right_rules() {
        let s = LJBSequent::closed(f(&format!("(({B}) -> Q) -> Q")));
        let s1 = apply_rimpl(&s).unwrap();
        assert_eq!(s1, LJBSequent::new(LJBContext::from_formulas([bq()]), f("Q")));
        let s2 = apply_rforall(&LJBSequent::new(s1.context.clone(), f(B))).unwrap();
        assert_eq!(s2, LJBSequent::new(LJBContext::from_formulas([bq()]), f("(P(y) -> Q) -> P(y) -> Q")));

        let wide = LJBSequent::new(LJBContext::from_formulas([bq(), f("P(y) -> Q"), f("P(y)")]), f(B));
        let s3 = apply_rforall(&wide).unwrap();
        assert_eq!(s3.context.key(), ctx(vec![Item::Fml(bq()), br(&["y"], vec![fml("P(y) -> Q"), fml("P(y)")])]).key());

        let empty = apply_rforall(&LJBSequent::closed(f("forall x. P(x)"))).unwrap();
        assert_eq!(empty, LJBSequent::closed(f("P(x)")));

        let dup = apply_rimpl(&LJBSequent::new(LJBContext::from_formulas([f("A")]), f("A -> B"))).unwrap();
        assert_eq!(dup, LJBSequent::new(LJBContext::from_formulas([f("A")]), f("B")));
        assert!(matches!(apply_rimpl(&LJBSequent::closed(f("Q"))), Err(LjbError::GoalNotImpl(_))));
        assert!(matches!(apply_rforall(&LJBSequent::closed(f("Q"))), Err(LjbError::GoalNotForall(_))));
    }

    #[test]
    fn scheme_check_examples() {
        let mut session = Session::new();
        let cp = session.canonical_var(&f("P")).unwrap();
        let s = LJBSequent::new(LJBContext::from_formulas([f("P")]), f("P"));
        assert!(scheme_check(&session, &s, &ProofTerm::var(cp.clone())));
        let s = LJBSequent::new(LJBContext::from_formulas([f("P")]), f("Q"));
        assert!(!scheme_check(&session, &s, &ProofTerm::var(cp)));
    }

    #[test]
    fn display_uses_bracket_notation() {
        let g = ctx(vec![Item::Fml(bq()), br(&["y"], vec![fml("P(y) -> Q"), fml("P(y)")])]);
        assert_eq!(g.to_string(), format!("({B}) -> Q, [P(y) -> Q, P(y)]_{{y}}"));
    }
}
