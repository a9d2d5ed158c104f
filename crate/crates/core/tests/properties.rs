use std::collections::BTreeSet;

use posproof::expand::flatten;
use posproof::ljb::{is_normal, normalize, replay, Item, LJBContext, LJBSequent};
use posproof::syntax::{
    alpha_eq, alpha_eq_sequent, decompose_negative, ensure_distinct_binders, fold_negative, parse_formula, polarity,
    FoTerm, Formula, Polarity,
};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = FoTerm> {
    prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(FoTerm::var),
        prop::sample::select(vec!["x", "y"]).prop_map(|v| FoTerm::App("s".into(), vec![FoTerm::var(v)])),
    ]
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        prop::sample::select(vec!["P", "Q", "R"]).prop_map(Formula::prop),
        (prop::sample::select(vec!["P", "S"]), term()).prop_map(|(p, t)| Formula::atom(p, vec![t])),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (prop::sample::select(vec!["x", "y", "z"]), inner).prop_map(|(x, b)| Formula::forall(x, b)),
        ]
    })
}

fn context() -> impl Strategy<Value = LJBContext> {
    let leaf = formula().prop_map(Item::Fml);
    let item = leaf.prop_recursive(3, 30, 5, |inner| {
        (
            prop::collection::btree_set(prop::sample::select(vec!["x", "y", "z"]), 0..3),
            prop::collection::vec(inner, 0..5),
        )
            .prop_map(|(vs, items)| Item::Bracket(vs.into_iter().map(String::from).collect(), LJBContext::new(items)))
    });
    prop::collection::vec(item, 0..6).prop_map(|mut items| {
        // a few exact duplicates so that merges happen
        if let Some(first) = items.first().cloned() {
            items.push(first);
        }
        LJBContext::new(items)
    })
}

/// Rename every binder to a fresh name, leaving free variables alone.
fn rename_bound(f: &Formula, n: &mut usize) -> Formula {
    match f {
        Formula::Atom(..) => f.clone(),
        Formula::Impl(a, b) => Formula::imp(rename_bound(a, n), rename_bound(b, n)),
        Formula::Forall(x, b) => {
            *n += 1;
            let fresh = format!("w{n}");
            Formula::forall(fresh.clone(), rename_bound(&b.rename_var(x, &fresh), n))
        }
    }
}

fn is_pos(f: &Formula) -> bool {
    match f {
        Formula::Atom(..) => true,
        Formula::Impl(a, b) => is_neg(a) && is_pos(b),
        Formula::Forall(_, a) => is_pos(a),
    }
}

fn is_neg(f: &Formula) -> bool {
    match f {
        Formula::Atom(..) => true,
        Formula::Impl(a, b) => is_pos(a) && is_neg(b),
        Formula::Forall(..) => false,
    }
}

proptest! {
    #[test]
    fn display_parses_back(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn polarity_agrees_with_the_definition(f in formula()) {
        let expected = match (is_pos(&f), is_neg(&f)) {
            (true, true) => Polarity::Both,
            (true, false) => Polarity::PositiveOnly,
            (false, true) => Polarity::NegativeOnly,
            (false, false) => Polarity::Neither,
        };
        prop_assert_eq!(polarity(&f), expected);
    }

    #[test]
    fn negative_formulas_decompose_and_fold(f in formula()) {
        if is_neg(&f) {
            let (args, head) = decompose_negative(&f).unwrap();
            prop_assert!(head.is_atomic());
            prop_assert!(args.iter().all(is_pos));
            prop_assert_eq!(fold_negative(&args, head), f);
        } else {
            prop_assert!(decompose_negative(&f).is_err());
        }
    }

    #[test]
    fn alpha_eq_is_an_equivalence(f in formula(), g in formula()) {
        let mut n = 0;
        let v1 = rename_bound(&f, &mut n);
        let v2 = rename_bound(&v1, &mut n);
        prop_assert!(alpha_eq(&f, &f));
        prop_assert!(alpha_eq(&f, &v1) && alpha_eq(&v1, &f));
        prop_assert!(alpha_eq(&v1, &v2) && alpha_eq(&f, &v2));
        prop_assert_eq!(alpha_eq(&f, &g), alpha_eq(&g, &f));
    }

    #[test]
    fn distinct_binders_keep_the_meaning(f in formula()) {
        let g = ensure_distinct_binders(&f);
        prop_assert!(alpha_eq(&f, &g));
        prop_assert_eq!(g.free_vars(), f.free_vars());
        prop_assert_eq!(ensure_distinct_binders(&g), g);
    }

    #[test]
    fn cleaning_is_idempotent_and_replayable(ctx in context()) {
        let (normal, trace) = normalize(&ctx);
        prop_assert!(is_normal(&normal));
        let (again, t2) = normalize(&normal);
        prop_assert_eq!(&again, &normal);
        prop_assert!(t2.is_empty());
        prop_assert_eq!(replay(&ctx, &trace).unwrap(), normal.clone());
        let before: BTreeSet<Formula> = ctx.erase().into_iter().collect();
        let after: BTreeSet<Formula> = normal.erase().into_iter().collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn flattenings_of_permuted_contexts_agree(ctx in context(), goal in atom()) {
        let mut rev = ctx.clone();
        rev.items.reverse();
        let a = flatten(&LJBSequent::new(ctx, goal.clone())).result.unnamed();
        let b = flatten(&LJBSequent::new(rev, goal)).result.unnamed();
        prop_assert!(alpha_eq_sequent(&a, &b));
    }
}
