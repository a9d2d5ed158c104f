use posproof::grammar::{build_grammar, enumerate_schemes, is_inhabited};
use posproof::syntax::parse_formula;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let goal = parse_formula("((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q")?;
    let g = build_grammar(&goal)?;
    print!("{}", g.to_text());
    println!("inhabited: {}", is_inhabited(&g));

    println!("\nwith only the looping nonterminals kept:");
    print!("{}", g.inlined());

    println!("\nschemes of height at most 15:");
    for pi in enumerate_schemes(&g, 15) {
        println!("  {pi}");
    }

    let empty = build_grammar(&parse_formula("((P -> Q) -> Q) -> Q")?)?;
    println!("\n((P -> Q) -> Q) -> Q inhabited: {}", is_inhabited(&empty));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
