use posproof::expand::{flatten, func_h};
use posproof::grammar::{build_grammar, enumerate_schemes};
use posproof::ljb::LJBSequent;
use posproof::ljplus::{check_proof, term_height, NamedContext};
use posproof::syntax::parse_formula;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let goal = parse_formula("((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q")?;
    let mut g = build_grammar(&goal)?;
    let start = LJBSequent::closed(goal.clone());
    let flat = flatten(&start);
    for pi in enumerate_schemes(&g, 15) {
        println!("{pi}");
        for t in func_h(&mut g.session, &pi, &start, &flat) {
            let ok = check_proof(&NamedContext::new(), &t, &goal)?;
            println!("  height {} {}: {}", term_height(&t), if ok { "ok" } else { "REJECTED" }, t.alpha_normalize());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
