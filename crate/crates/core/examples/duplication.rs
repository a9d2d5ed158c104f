use std::collections::BTreeSet;

use posproof::expand::{func_f, Duplication, Session};
use posproof::ljplus::{LJPlusSequent, NamedContext, ProofTerm};
use posproof::syntax::{parse_formula, Renaming};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let src = LJPlusSequent::new(
        NamedContext::from_decls([("a", parse_formula("P(x) -> Q")?), ("b", parse_formula("P(x)")?)]),
        parse_formula("Q")?,
    );
    let u = ProofTerm::app("a", vec![ProofTerm::var("b")]);
    let to = |v: &str| Renaming::new([("x", v)], &BTreeSet::new());

    let same = Duplication::full(&src, Renaming::identity(), Renaming::identity());
    let apart = Duplication::full(&src, to("x1")?, to("x2")?);
    let mut sparse = apart.clone();
    sparse.copies.insert("a".into(), BTreeSet::from([1]));
    sparse.copies.insert("b".into(), BTreeSet::from([2]));

    let mut session = Session::new();
    for d in [&same, &apart, &sparse] {
        let tgt = d.target(&src);
        let out: Vec<String> = func_f(&mut session, &u, &src, &tgt, d).iter().map(|t| t.to_string()).collect();
        println!("{tgt}\n  {{{}}}", out.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
