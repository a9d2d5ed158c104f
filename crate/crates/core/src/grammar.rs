//! The scheme grammar.
//!
//! Each normalized sequent reachable by backward search from `|- goal`
//! becomes a nonterminal, each applicable rule instance a production.
//! Normal contexts never mention more than finitely many formulas, so
//! the worklist saturates.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expand::{ExpandError, Session};
use crate::ljb::{apply_rforall, apply_rimpl, expose, spine_premises, LJBSequent};
use crate::ljplus::{product, ProofTerm};
use crate::syntax::{ensure_distinct_binders, Formula};

/// A proof-term whose proof variables are canonical variables.
pub type Scheme = ProofTerm;

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("goal is not positive: {0}")]
    NotPositive(Formula),
    #[error("more than {0} nonterminals")]
    CapExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nonterminal {
    pub id: usize,
    pub sequent: LJBSequent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductionShape {
    Spine { head: String, premises: Vec<usize>, occurrence: usize },
    Forall { var: String, premise: usize },
    Impl { var: String, annot: Formula, premise: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production {
    pub lhs: usize,
    pub shape: ProductionShape,
}

impl Production {
    pub fn premises(&self) -> Vec<usize> {
        match &self.shape {
            ProductionShape::Spine { premises, .. } => premises.clone(),
            ProductionShape::Forall { premise, .. } | ProductionShape::Impl { premise, .. } => vec![*premise],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Grammar {
    pub start: usize,
    pub nonterminals: Vec<Nonterminal>,
    pub productions: Vec<Production>,
    /// Canonical variables used by the productions.
    pub session: Session,
}

pub fn build_grammar(goal: &Formula) -> Result<Grammar, GrammarError> {
    build_grammar_with_cap(goal, DEFAULT_CAP)
}

pub fn build_grammar_with_cap(goal: &Formula, cap: usize) -> Result<Grammar, GrammarError> {
    if !goal.is_positive() {
        return Err(GrammarError::NotPositive(goal.clone()));
    }
    let goal = ensure_distinct_binders(goal);
    let mut b = Builder { index: HashMap::new(), nonterminals: Vec::new(), queue: VecDeque::new(), cap };
    let start = b.intern(LJBSequent::closed(goal))?;
    let mut session = Session::new();
    let mut productions = Vec::new();
    let canon = |session: &mut Session, f: &Formula| {
        session
            .canonical_var(f)
            .unwrap_or_else(|e: ExpandError| panic!("positive sequents have negative hypotheses: {e}"))
    };
    while let Some(id) = b.queue.pop_front() {
        let seq = b.nonterminals[id].sequent.clone();
        match &seq.goal {
            Formula::Atom(..) => {
                for e in expose(&seq.context, &seq.goal) {
                    let head = canon(&mut session, &e.exposed);
                    let premises =
                        spine_premises(&e).into_iter().map(|p| b.intern(p)).collect::<Result<Vec<_>, _>>()?;
                    productions.push(Production {
                        lhs: id,
                        shape: ProductionShape::Spine { head, premises, occurrence: e.occurrence },
                    });
                }
            }
            Formula::Forall(x, _) => {
                let next = apply_rforall(&seq).expect("goal is universal");
                let premise = b.intern(next)?;
                productions.push(Production { lhs: id, shape: ProductionShape::Forall { var: x.clone(), premise } });
            }
            Formula::Impl(a, _) => {
                let var = canon(&mut session, a);
                let next = apply_rimpl(&seq).expect("goal is an implication");
                let premise = b.intern(next)?;
                productions
                    .push(Production { lhs: id, shape: ProductionShape::Impl { var, annot: (**a).clone(), premise } });
            }
        }
    }
    Ok(Grammar { start, nonterminals: b.nonterminals, productions, session })
}

struct Builder {
    index: HashMap<LJBSequent, usize>,
    nonterminals: Vec<Nonterminal>,
    queue: VecDeque<usize>,
    cap: usize,
}

impl Builder {
    fn intern(&mut self, sequent: LJBSequent) -> Result<usize, GrammarError> {
        if let Some(&id) = self.index.get(&sequent) {
            return Ok(id);
        }
        if self.nonterminals.len() >= self.cap {
            return Err(GrammarError::CapExceeded(self.cap));
        }
        let id = self.nonterminals.len();
        self.index.insert(sequent.clone(), id);
        self.nonterminals.push(Nonterminal { id, sequent });
        self.queue.push_back(id);
        Ok(id)
    }
}

impl Grammar {
    pub fn productions_of(&self, nt: usize) -> impl Iterator<Item = &Production> {
        self.productions.iter().filter(move |p| p.lhs == nt)
    }

    /// Nonterminals deriving at least one finite scheme.
    pub fn productive(&self) -> BTreeSet<usize> {
        let mut done = BTreeSet::new();
        loop {
            let before = done.len();
            for p in &self.productions {
                if p.premises().iter().all(|q| done.contains(q)) {
                    done.insert(p.lhs);
                }
            }
            if done.len() == before {
                return done;
            }
        }
    }

    /// Keep the start and every target of a back edge in a depth-first
    /// walk; inline everything else.
    pub fn inlined(&self) -> InlinedGrammar {
        let mut kept = BTreeSet::from([self.start]);
        let mut state = vec![0u8; self.nonterminals.len()];
        self.back_edges(self.start, &mut state, &mut kept);
        let mut memo = HashMap::new();
        let rules = kept
            .iter()
            .map(|&k| {
                let mut alts: Vec<Template> = Vec::new();
                for p in self.productions_of(k) {
                    for t in self.expand_production(p, &kept, &mut memo) {
                        if !alts.contains(&t) {
                            alts.push(t);
                        }
                    }
                }
                (k, alts)
            })
            .collect();
        InlinedGrammar { start: self.start, rules }
    }

    fn back_edges(&self, nt: usize, state: &mut [u8], kept: &mut BTreeSet<usize>) {
        state[nt] = 1;
        for p in self.productions_of(nt) {
            for q in p.premises() {
                match state[q] {
                    0 => self.back_edges(q, state, kept),
                    1 => {
                        kept.insert(q);
                    }
                    _ => {}
                }
            }
        }
        state[nt] = 2;
    }

    fn expand_nt(&self, nt: usize, kept: &BTreeSet<usize>, memo: &mut HashMap<usize, Vec<Template>>) -> Vec<Template> {
        if kept.contains(&nt) {
            return vec![Template::Hole(nt)];
        }
        if let Some(v) = memo.get(&nt) {
            return v.clone();
        }
        let mut out: Vec<Template> = Vec::new();
        for p in self.productions_of(nt) {
            for t in self.expand_production(p, kept, memo) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        memo.insert(nt, out.clone());
        out
    }

    fn expand_production(
        &self,
        p: &Production,
        kept: &BTreeSet<usize>,
        memo: &mut HashMap<usize, Vec<Template>>,
    ) -> Vec<Template> {
        match &p.shape {
            ProductionShape::Spine { head, premises, .. } => {
                let choices: Vec<Vec<Template>> = premises.iter().map(|&q| self.expand_nt(q, kept, memo)).collect();
                product(&choices).into_iter().map(|args| Template::Spine { head: head.clone(), args }).collect()
            }
            ProductionShape::Forall { var, premise } => self
                .expand_nt(*premise, kept, memo)
                .into_iter()
                .map(|b| Template::LamTm { var: var.clone(), body: Box::new(b) })
                .collect(),
            ProductionShape::Impl { var, annot, premise } => self
                .expand_nt(*premise, kept, memo)
                .into_iter()
                .map(|b| Template::LamPf { pvar: var.clone(), annot: annot.clone(), body: Box::new(b) })
                .collect(),
        }
    }

    /// `S0 -> \c0:A. S1`, one production per line, then the meaning of
    /// every nonterminal and canonical variable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut lines: Vec<(usize, String, Option<usize>)> = Vec::new();
        for p in &self.productions {
            let rhs = match &p.shape {
                ProductionShape::Spine { head, premises, .. } if premises.is_empty() => head.clone(),
                ProductionShape::Spine { head, premises, .. } => {
                    let args: Vec<String> = premises.iter().map(|q| format!("S{q}")).collect();
                    format!("({head} {})", args.join(" "))
                }
                ProductionShape::Forall { var, premise } => format!("\\{var}. S{premise}"),
                ProductionShape::Impl { var, premise, .. } => format!("\\{var}. S{premise}"),
            };
            let occ = match &p.shape {
                ProductionShape::Spine { occurrence, .. } => Some(*occurrence),
                _ => None,
            };
            lines.push((p.lhs, rhs, occ));
        }
        for (lhs, rhs, occ) in &lines {
            let repeated = lines.iter().filter(|(l, r, _)| l == lhs && r == rhs).count() > 1;
            match occ {
                Some(k) if repeated => out.push_str(&format!("S{lhs} -> {rhs}  @{k}\n")),
                _ => out.push_str(&format!("S{lhs} -> {rhs}\n")),
            }
        }
        out.push_str("where\n");
        for nt in &self.nonterminals {
            out.push_str(&format!("  S{} : {}\n", nt.id, nt.sequent));
        }
        for (v, f) in self.session.registry() {
            out.push_str(&format!("  {v} : {f}\n"));
        }
        out
    }

    pub fn to_json(&self) -> GrammarJson {
        GrammarJson {
            start: self.start,
            nonterminals: self
                .nonterminals
                .iter()
                .map(|nt| NonterminalJson { id: nt.id, sequent: nt.sequent.to_string() })
                .collect(),
            productions: self
                .productions
                .iter()
                .map(|p| {
                    let (kind, head, var, annot, occurrence_id) = match &p.shape {
                        ProductionShape::Spine { head, occurrence, .. } => {
                            ("spine", Some(head.clone()), None, None, Some(*occurrence))
                        }
                        ProductionShape::Forall { var, .. } => ("forall", None, Some(var.clone()), None, None),
                        ProductionShape::Impl { var, annot, .. } => {
                            ("impl", None, Some(var.clone()), Some(annot.to_string()), None)
                        }
                    };
                    ProductionJson {
                        lhs: p.lhs,
                        kind: kind.to_string(),
                        head,
                        var,
                        annot,
                        premises: p.premises(),
                        occurrence_id,
                    }
                })
                .collect(),
            canonical: self.session.registry().map(|(v, f)| (v, f.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrammarJson {
    pub start: usize,
    pub nonterminals: Vec<NonterminalJson>,
    pub productions: Vec<ProductionJson>,
    #[serde(default)]
    pub canonical: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonterminalJson {
    pub id: usize,
    pub sequent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductionJson {
    pub lhs: usize,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annot: Option<String>,
    pub premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub occurrence_id: Option<usize>,
}

pub fn is_inhabited(g: &Grammar) -> bool {
    g.productive().contains(&g.start)
}

/// All schemes derivable from the start symbol with height at most
/// `max_height`, sorted.
pub fn enumerate_schemes(g: &Grammar, max_height: usize) -> Vec<Scheme> {
    let n = g.nonterminals.len();
    // upto[nt] = schemes of nt with height <= current bound
    let mut upto: Vec<BTreeSet<Scheme>> = vec![BTreeSet::new(); n];
    for _ in 0..max_height {
        let prev = upto.clone();
        for p in &g.productions {
            let new: Vec<Scheme> = match &p.shape {
                ProductionShape::Spine { head, premises, .. } => {
                    let choices: Vec<Vec<Scheme>> =
                        premises.iter().map(|q| prev[*q].iter().cloned().collect()).collect();
                    product(&choices).into_iter().map(|args| ProofTerm::app(head.clone(), args)).collect()
                }
                ProductionShape::Forall { var, premise } => {
                    prev[*premise].iter().map(|b| ProofTerm::lam_tm(var.clone(), b.clone())).collect()
                }
                ProductionShape::Impl { var, annot, premise } => {
                    prev[*premise].iter().map(|b| ProofTerm::lam_pf(var.clone(), annot.clone(), b.clone())).collect()
                }
            };
            upto[p.lhs].extend(new);
        }
    }
    upto.swap_remove(g.start).into_iter().collect()
}

/// A scheme with holes for nonterminals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Template {
    Hole(usize),
    Spine { head: String, args: Vec<Template> },
    LamTm { var: String, body: Box<Template> },
    LamPf { pvar: String, annot: Formula, body: Box<Template> },
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Template::Hole(k) => write!(f, "S{k}"),
            Template::Spine { head, args } if args.is_empty() => write!(f, "{head}"),
            Template::Spine { head, args } => {
                write!(f, "({head}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Template::LamTm { var, body } => write!(f, "\\{var}. {body}"),
            Template::LamPf { pvar, body, .. } => write!(f, "\\{pvar}. {body}"),
        }
    }
}

/// A grammar whose only nonterminals are the start symbol and the
/// nonterminals needed to close loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InlinedGrammar {
    pub start: usize,
    pub rules: Vec<(usize, Vec<Template>)>,
}

impl InlinedGrammar {
    pub fn production_count(&self) -> usize {
        self.rules.iter().map(|(_, alts)| alts.len()).sum()
    }

    /// Same contract as [`enumerate_schemes`].
    pub fn enumerate(&self, max_height: usize) -> Vec<Scheme> {
        let mut upto: BTreeMap<usize, BTreeSet<Scheme>> =
            self.rules.iter().map(|(k, _)| (*k, BTreeSet::new())).collect();
        // one round per height level of the deepest template suffices to
        // reach a fixpoint; iterate until nothing changes
        loop {
            let prev = upto.clone();
            for (k, alts) in &self.rules {
                for t in alts {
                    let new = instantiate(t, &prev, max_height);
                    upto.get_mut(k).expect("rule owner").extend(new);
                }
            }
            if upto == prev {
                break;
            }
        }
        upto.remove(&self.start).unwrap_or_default().into_iter().collect()
    }
}

/// Instances of `t` of height at most `budget`, filling holes from `fill`.
fn instantiate(t: &Template, fill: &BTreeMap<usize, BTreeSet<Scheme>>, budget: usize) -> Vec<Scheme> {
    if budget == 0 {
        return Vec::new();
    }
    match t {
        Template::Hole(k) => fill[k].iter().filter(|s| crate::ljplus::term_height(s) <= budget).cloned().collect(),
        Template::Spine { head, args } => {
            let choices: Vec<Vec<Scheme>> = args.iter().map(|a| instantiate(a, fill, budget - 1)).collect();
            product(&choices).into_iter().map(|args| ProofTerm::app(head.clone(), args)).collect()
        }
        Template::LamTm { var, body } => {
            instantiate(body, fill, budget - 1).into_iter().map(|b| ProofTerm::lam_tm(var.clone(), b)).collect()
        }
        Template::LamPf { pvar, annot, body } => instantiate(body, fill, budget - 1)
            .into_iter()
            .map(|b| ProofTerm::lam_pf(pvar.clone(), annot.clone(), b))
            .collect(),
    }
}

impl fmt::Display for InlinedGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, alts) in &self.rules {
            for t in alts {
                writeln!(f, "S{k} -> {t}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ljb::scheme_check;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn a() -> Formula {
        f("((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q")
    }

    #[test]
    fn identity_grammar() {
        let g = build_grammar(&f("P -> P")).unwrap();
        assert_eq!(g.nonterminals.len(), 2);
        assert_eq!(g.productions.len(), 2);
        assert!(is_inhabited(&g));
        let s: Vec<String> = enumerate_schemes(&g, 5).iter().map(|t| t.to_string()).collect();
        assert_eq!(s, ["\\c0:P. c0"]);
    }

    #[test]
    fn atomic_goal_is_empty() {
        let g = build_grammar(&f("Q")).unwrap();
        assert_eq!(g.nonterminals.len(), 1);
        assert!(g.productions.is_empty());
        assert!(!is_inhabited(&g));
        assert!(enumerate_schemes(&g, 10).is_empty());
    }

    #[test]
    fn rejects_non_positive_and_caps() {
        assert!(matches!(build_grammar(&f("(forall x. P(x)) -> Q")), Err(GrammarError::NotPositive(_))));
        assert_eq!(build_grammar_with_cap(&a(), 3).unwrap_err(), GrammarError::CapExceeded(3));
    }

    #[test]
    fn double_negation_shape_is_empty() {
        let g = build_grammar(&f("((P -> Q) -> Q) -> Q")).unwrap();
        assert!(!is_inhabited(&g));
    }

    #[test]
    fn example_grammar_inlines_to_four_productions() {
        let g = build_grammar(&a()).unwrap();
        assert!(is_inhabited(&g));
        let inl = g.inlined();
        assert_eq!(inl.rules.len(), 2);
        assert_eq!(inl.production_count(), 4);
        for h in 1..=14 {
            assert_eq!(inl.enumerate(h), enumerate_schemes(&g, h), "height {h}");
        }
    }

    #[test]
    fn example_schemes() {
        let g = build_grammar(&a()).unwrap();
        let s = enumerate_schemes(&g, 7);
        assert_eq!(s.len(), 1);
        let s: Vec<String> = s.iter().map(|t| t.to_string()).collect();
        let b = "forall y. (P(y) -> Q) -> P(y) -> Q";
        assert_eq!(s, [format!("\\c0:(({b}) -> Q). (c0 (\\y. \\c1:(P(y) -> Q). \\c2:P(y). (c1 c2)))")]);
        let eleven = enumerate_schemes(&g, 11);
        assert_eq!(eleven.len(), 2);
        let start = LJBSequent::closed(a());
        assert!(eleven.iter().all(|pi| scheme_check(&g.session, &start, pi)));
    }

    #[test]
    fn json_round_trips() {
        let g = build_grammar(&a()).unwrap();
        let j = g.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(serde_json::from_str::<GrammarJson>(&text).unwrap(), j);
        let text = g.to_text();
        assert!(text.contains("S0 -> \\c0. S1\n"));
        assert!(text.contains("S10 -> (c1 S11)  @0\n") && text.contains("S10 -> (c1 S11)  @2\n"));
    }

    #[test]
    fn build_is_deterministic() {
        let sizes: Vec<usize> = (0..3).map(|_| build_grammar(&a()).unwrap().nonterminals.len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] == w[1]));
    }
}
