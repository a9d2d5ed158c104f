//! From schemes to proof-terms.
//!
//! A scheme names hypotheses by formula, so one scheme stands for every
//! proof obtained by choosing, at each head, one of the hypotheses that
//! were merged into that formula. The expansion is driven by
//! [`lift`]: re-typing a proof against a target sequent in which each
//! source hypothesis corresponds to a set of candidate hypotheses.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{build_grammar, enumerate_schemes, GrammarError};
use crate::ljb::{
    apply_step, expose, forall_premise_context, impl_premise_context, merge_alignment, normalize, scheme_check,
    CleaningStep, CleaningTrace, Item, LJBContext, LJBSequent, Tagged, TraceError,
};
use crate::ljplus::{product, term_height, LJPlusSequent, NamedContext, ProofTerm};
use crate::syntax::{decompose_negative, ensure_distinct_binders, fresh_name, Formula, Renaming};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("canonical variables exist only for negative formulas: {0}")]
    NotNegative(Formula),
    #[error("trace does not connect the sequents: {0}")]
    InconsistentTrace(String),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

impl From<TraceError> for ExpandError {
    fn from(e: TraceError) -> Self {
        ExpandError::InconsistentTrace(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LiftStats {
    pub lifted: usize,
    pub height_violations: usize,
}

/// Canonical variables and fresh-name supply for one pipeline run.
#[derive(Clone, Debug, Default)]
pub struct Session {
    canon: HashMap<Formula, String>,
    formulas: Vec<Formula>,
    next_pv: usize,
    pub stats: LiftStats,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonical_var(&mut self, f: &Formula) -> Result<String, ExpandError> {
        if !f.is_negative() {
            return Err(ExpandError::NotNegative(f.clone()));
        }
        if let Some(v) = self.canon.get(f) {
            return Ok(v.clone());
        }
        let v = format!("c{}", self.formulas.len());
        self.canon.insert(f.clone(), v.clone());
        self.formulas.push(f.clone());
        Ok(v)
    }

    pub fn lookup(&self, f: &Formula) -> Option<&str> {
        self.canon.get(f).map(String::as_str)
    }

    pub fn formula_of(&self, name: &str) -> Option<&Formula> {
        let k: usize = name.strip_prefix('c')?.parse().ok()?;
        self.formulas.get(k).filter(|_| format!("c{k}") == name)
    }

    /// Registered formulas with their variables, in registration order.
    pub fn registry(&self) -> impl Iterator<Item = (String, &Formula)> {
        self.formulas.iter().enumerate().map(|(k, f)| (format!("c{k}"), f))
    }

    pub fn fresh_pv(&mut self) -> String {
        self.next_pv += 1;
        format!("p{}", self.next_pv - 1)
    }

    pub fn fresh_tv(&self, base: &str, avoid: &BTreeSet<String>) -> String {
        fresh_name(base, avoid)
    }
}

/// A flattening: erase brackets from a fresh alpha-variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flattening {
    pub source: LJBSequent,
    pub result: LJPlusSequent,
    /// Hypothesis name to the path of the formula it came from.
    pub item_map: BTreeMap<String, Vec<usize>>,
    /// `(bound, fresh)` for every bracket binder, in traversal order.
    pub var_renaming: Vec<(String, String)>,
}

impl Flattening {
    /// Name of the `k`-th hypothesis in traversal order.
    pub fn name(&self, k: usize) -> &str {
        &self.result.context.decls()[k].0
    }
}

pub fn flatten(seq: &LJBSequent) -> Flattening {
    let mut avoid = seq.context.all_vars();
    avoid.extend(seq.goal.all_vars());
    let mut st = FlattenState {
        avoid,
        counters: BTreeMap::new(),
        ctx: NamedContext::new(),
        item_map: BTreeMap::new(),
        var_renaming: Vec::new(),
    };
    st.go(&seq.context, &BTreeMap::new(), &mut Vec::new());
    Flattening {
        source: seq.clone(),
        result: LJPlusSequent::new(st.ctx, seq.goal.clone()),
        item_map: st.item_map,
        var_renaming: st.var_renaming,
    }
}

struct FlattenState {
    avoid: BTreeSet<String>,
    counters: BTreeMap<String, usize>,
    ctx: NamedContext,
    item_map: BTreeMap<String, Vec<usize>>,
    var_renaming: Vec<(String, String)>,
}

impl FlattenState {
    fn fresh(&mut self, base: &str) -> String {
        loop {
            let k = self.counters.entry(base.to_string()).or_insert(0);
            *k += 1;
            let name = format!("{base}{k}");
            if self.avoid.insert(name.clone()) {
                return name;
            }
        }
    }

    fn go(&mut self, ctx: &LJBContext, map: &BTreeMap<String, String>, path: &mut Vec<usize>) {
        for (i, item) in ctx.items.iter().enumerate() {
            path.push(i);
            match item {
                Item::Fml(f) => {
                    let name = format!("h{}", self.ctx.len());
                    self.item_map.insert(name.clone(), path.clone());
                    self.ctx.push(name, f.rename_free(map));
                }
                Item::Bracket(binds, inner) => {
                    let mut inner_map = map.clone();
                    for v in binds {
                        let fresh = self.fresh(v);
                        self.var_renaming.push((v.clone(), fresh.clone()));
                        inner_map.insert(v.clone(), fresh);
                    }
                    self.go(inner, &inner_map, path);
                }
            }
            path.pop();
        }
    }
}

/// Re-type `u` against `target`: every head `h` of `u` free in `u` is
/// replaced by one of `corr[h]`, in every way that typechecks. The shape
/// of `u` is kept, so heights are preserved.
pub fn lift(
    session: &mut Session,
    u: &ProofTerm,
    corr: &HashMap<String, Vec<String>>,
    target: &NamedContext,
    goal: &Formula,
) -> Vec<ProofTerm> {
    let out = lift_rec(session, u, corr, target, goal);
    let h = term_height(u);
    session.stats.lifted += out.len();
    session.stats.height_violations += out.iter().filter(|t| term_height(t) != h).count();
    out
}

fn lift_rec(
    session: &mut Session,
    u: &ProofTerm,
    corr: &HashMap<String, Vec<String>>,
    target: &NamedContext,
    goal: &Formula,
) -> Vec<ProofTerm> {
    match (u, goal) {
        (ProofTerm::Spine { head, args }, Formula::Atom(..)) => {
            let mut out = Vec::new();
            for cand in corr.get(head).into_iter().flatten() {
                let Some(ty) = target.get(cand) else { continue };
                let Ok((params, result)) = decompose_negative(ty) else { continue };
                if result != *goal || params.len() != args.len() {
                    continue;
                }
                let choices: Vec<Vec<ProofTerm>> =
                    args.iter().zip(&params).map(|(a, p)| lift_rec(session, a, corr, target, p)).collect();
                out.extend(product(&choices).into_iter().map(|ts| ProofTerm::app(cand.clone(), ts)));
            }
            out
        }
        (ProofTerm::LamTm { body, .. }, Formula::Forall(y, b)) => {
            let (z, b) = open_forall(session, target, y, b);
            lift_rec(session, body, corr, target, &b).into_iter().map(|t| ProofTerm::lam_tm(z.clone(), t)).collect()
        }
        (ProofTerm::LamPf { pvar, body, .. }, Formula::Impl(a, b)) => {
            let fresh = session.fresh_pv();
            let inner = target.with(fresh.clone(), (**a).clone());
            let mut corr = corr.clone();
            corr.insert(pvar.clone(), vec![fresh.clone()]);
            lift_rec(session, body, &corr, &inner, b)
                .into_iter()
                .map(|t| ProofTerm::lam_pf(fresh.clone(), (**a).clone(), t))
                .collect()
        }
        _ => Vec::new(),
    }
}

/// The eigenvariable and body for introducing `forall y. b` under `ctx`.
fn open_forall(session: &Session, ctx: &NamedContext, y: &str, b: &Formula) -> (String, Formula) {
    let free = ctx.free_vars();
    if !free.contains(y) {
        return (y.to_string(), b.clone());
    }
    let mut avoid = free;
    avoid.extend(b.all_vars());
    let z = session.fresh_tv(y, &avoid);
    let body = b.rename_var(y, &z);
    (z, body)
}

/// Which copies of each source hypothesis a partial duplication keeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplication {
    pub sigma1: Renaming,
    pub sigma2: Renaming,
    /// Per source hypothesis, the kept copies among `1` and `2`.
    pub copies: BTreeMap<String, BTreeSet<u8>>,
    pub goal_side: u8,
}

impl Duplication {
    /// Every hypothesis duplicated on both sides, goal on side 1.
    pub fn full(source: &LJPlusSequent, sigma1: Renaming, sigma2: Renaming) -> Self {
        let copies = source.context.names().map(|n| (n.to_string(), BTreeSet::from([1, 2]))).collect();
        Self { sigma1, sigma2, copies, goal_side: 1 }
    }

    pub fn copy_name(name: &str, side: u8) -> String {
        format!("{name}{side}")
    }

    fn sigma(&self, side: u8) -> &Renaming {
        if side == 1 {
            &self.sigma1
        } else {
            &self.sigma2
        }
    }

    /// The duplicated sequent: copy `i` of `g : C` is `gi : sigma_i C`.
    pub fn target(&self, source: &LJPlusSequent) -> LJPlusSequent {
        let mut ctx = NamedContext::new();
        for (name, f) in source.context.decls() {
            for &side in self.copies.get(name).into_iter().flatten() {
                ctx.push(Self::copy_name(name, side), self.sigma(side).apply(f));
            }
        }
        LJPlusSequent::new(ctx, self.sigma(self.goal_side).apply(&source.goal))
    }
}

/// Proofs of the duplicated sequent that collapse onto `u`.
pub fn func_f(
    session: &mut Session,
    u: &ProofTerm,
    source: &LJPlusSequent,
    target: &LJPlusSequent,
    d: &Duplication,
) -> Vec<ProofTerm> {
    let corr = source
        .context
        .names()
        .map(|n| {
            let copies = d.copies.get(n).into_iter().flatten();
            (n.to_string(), copies.map(|&s| Duplication::copy_name(n, s)).collect())
        })
        .collect();
    sorted(lift(session, u, &corr, &target.context, &target.goal))
}

/// Surviving tag to the tags merged into it, itself included.
pub type MergeClasses = BTreeMap<usize, Vec<usize>>;

/// Replay `trace` on a tagged context, recording for each surviving tag
/// the tags of every leaf merged into it.
pub fn merge_classes(
    start: &LJBContext<Tagged>,
    trace: &CleaningTrace,
) -> Result<(LJBContext<Tagged>, MergeClasses), TraceError> {
    let mut classes: MergeClasses = start.leaves().iter().map(|l| (l.tag, vec![l.tag])).collect();
    let mut cur = start.clone();
    for step in &trace.steps {
        if let CleaningStep::Merge { parent, kept, removed } = step {
            let pairs: Vec<(usize, usize)> =
                merge_alignment(&cur, parent, *kept, *removed)?.into_iter().map(|(r, k)| (r.tag, k.tag)).collect();
            for (r, k) in pairs {
                let moved = classes.remove(&r).unwrap_or_default();
                classes.entry(k).or_default().extend(moved);
            }
        }
        apply_step(&mut cur, step)?;
    }
    cur.sort_canonical();
    Ok((cur, classes))
}

/// Correspondence from the hypotheses of `flat` (a flattening of the
/// normal form) to target names, through the merge classes of `normal`.
fn class_corr(
    flat: &Flattening,
    normal: &LJBContext<Tagged>,
    classes: &MergeClasses,
    names: &[String],
) -> HashMap<String, Vec<String>> {
    normal
        .leaves()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let targets = classes.get(&l.tag).into_iter().flatten().map(|&t| names[t].clone()).collect();
            (flat.name(k).to_string(), targets)
        })
        .collect()
}

/// Lift a proof of the flattened normal form back along a cleaning trace
/// to a proof of the flattened source.
pub fn func_g(
    session: &mut Session,
    u: &ProofTerm,
    source: &LJBSequent,
    trace: &CleaningTrace,
    flat_source: &Flattening,
    flat_target: &Flattening,
) -> Result<Vec<ProofTerm>, ExpandError> {
    let (normal, classes) = merge_classes(&source.context.tag_leaves(), trace)?;
    if normal.strip() != flat_target.source.context {
        return Err(ExpandError::InconsistentTrace(format!(
            "trace ends at {} but the target flattens {}",
            normal, flat_target.source.context
        )));
    }
    let names: Vec<String> = flat_source.result.context.names().map(String::from).collect();
    let corr = class_corr(flat_target, &normal, &classes, &names);
    Ok(sorted(lift(session, u, &corr, &flat_source.result.context, &flat_source.result.goal)))
}

/// Normalize a tagged premise context, expand `pi` against it and lift
/// the results to `(ctx, goal)` whose hypothesis names are `names[tag]`.
fn expand_premise(
    session: &mut Session,
    pi: &ProofTerm,
    start: &LJBContext<Tagged>,
    premise_goal: &Formula,
    names: &[String],
    ctx: &NamedContext,
    goal: &Formula,
) -> Vec<ProofTerm> {
    let (_, trace) = normalize(start);
    let (normal, classes) = merge_classes(start, &trace).expect("trace of normalize replays");
    let premise = LJBSequent::new(normal.strip(), premise_goal.clone());
    let flat = flatten(&premise);
    let corr = class_corr(&flat, &normal, &classes, names);
    let mut out = Vec::new();
    for t in func_h(session, pi, &premise, &flat) {
        out.extend(lift(session, &t, &corr, ctx, goal));
    }
    out
}

/// All proofs of `flat.result` denoted by the scheme `pi` at `seq`.
pub fn func_h(session: &mut Session, pi: &ProofTerm, seq: &LJBSequent, flat: &Flattening) -> Vec<ProofTerm> {
    let names: Vec<String> = flat.result.context.names().map(String::from).collect();
    let tagged = seq.context.tag_leaves();
    let target = &flat.result;
    let mut out = Vec::new();
    match (pi, &seq.goal, &target.goal) {
        (ProofTerm::Spine { head, args }, Formula::Atom(..), _) => {
            let Some(f) = session.formula_of(head).cloned() else {
                return out;
            };
            let Ok((params, _)) = decompose_negative(&f) else {
                return out;
            };
            if params.len() != args.len() {
                return out;
            }
            for e in expose(&tagged, &seq.goal) {
                if e.exposed.formula != f {
                    continue;
                }
                let (normal, _) = normalize(&e.restructured);
                let normal = normal.strip();
                let fits = params
                    .iter()
                    .zip(args)
                    .all(|(p, a)| scheme_check(session, &LJBSequent::new(normal.clone(), p.clone()), a));
                if !fits {
                    continue;
                }
                let alpha = names[e.exposed.tag].clone();
                let (target_params, _) =
                    decompose_negative(target.context.get(&alpha).expect("flattening names every leaf"))
                        .expect("hypotheses are negative");
                let choices: Vec<Vec<ProofTerm>> = args
                    .iter()
                    .zip(params.iter().zip(&target_params))
                    .map(|(a, (p, tp))| expand_premise(session, a, &e.restructured, p, &names, &target.context, tp))
                    .collect();
                out.extend(product(&choices).into_iter().map(|ts| ProofTerm::app(alpha.clone(), ts)));
            }
        }
        (ProofTerm::LamTm { var, body }, Formula::Forall(x, b), Formula::Forall(ty, tb)) if var == x => {
            let start = forall_premise_context(&tagged, x, b);
            let (z, tb) = open_forall(session, &target.context, ty, tb);
            out = expand_premise(session, body, &start, b, &names, &target.context, &tb)
                .into_iter()
                .map(|t| ProofTerm::lam_tm(z.clone(), t))
                .collect();
        }
        (ProofTerm::LamPf { pvar, annot, body }, Formula::Impl(a, b), Formula::Impl(ta, tb))
            if **a == *annot && session.formula_of(pvar) == Some(annot) =>
        {
            let hyp = Tagged { formula: (**a).clone(), tag: names.len() };
            let start = impl_premise_context(&tagged, hyp);
            let fresh = session.fresh_pv();
            let ctx = target.context.with(fresh.clone(), (**ta).clone());
            let mut names = names;
            names.push(fresh.clone());
            out = expand_premise(session, body, &start, b, &names, &ctx, tb)
                .into_iter()
                .map(|t| ProofTerm::lam_pf(fresh.clone(), (**ta).clone(), t))
                .collect();
        }
        _ => {}
    }
    sorted(out)
}

fn sorted(ts: Vec<ProofTerm>) -> Vec<ProofTerm> {
    ts.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Every proof-term of `goal` up to `max_height`, alpha-normalized and
/// sorted by printed form.
pub fn enumerate_terms(goal: &Formula, max_height: usize) -> Result<Vec<ProofTerm>, ExpandError> {
    let goal = ensure_distinct_binders(goal);
    let mut grammar = build_grammar(&goal)?;
    let schemes = enumerate_schemes(&grammar, max_height);
    let start = LJBSequent::closed(goal);
    let flat = flatten(&start);
    let mut out = BTreeMap::new();
    for pi in &schemes {
        for t in func_h(&mut grammar.session, pi, &start, &flat) {
            if term_height(&t) <= max_height {
                let t = t.alpha_normalize();
                out.insert(t.to_string(), t);
            }
        }
    }
    Ok(out.into_values().collect())
}
