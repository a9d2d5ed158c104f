use posproof::ljb::{expose, normalize, Item, LJBContext};
use posproof::syntax::parse_formula;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = |s: &str| parse_formula(s).map(Item::Fml);
    let bracket = |items: Vec<Item>| Item::Bracket(["y".to_string()].into(), LJBContext::new(items));

    // what the right forall rule leaves behind after two unfoldings
    let inner = bracket(vec![f("P(y) -> Q")?, f("P(y)")?]);
    let ctx = LJBContext::new(vec![bracket(vec![
        f("(forall y. (P(y) -> Q) -> P(y) -> Q) -> Q")?,
        inner,
        f("P(y) -> Q")?,
        f("P(y)")?,
    ])]);
    let (normal, trace) = normalize(&ctx);
    println!("context: {ctx}");
    for step in &trace.steps {
        println!("  {step:?}");
    }
    println!("normal:  {normal}");

    for e in expose(&normal, &parse_formula("Q")?) {
        println!("exposing {} gives {}", e.exposed, normalize(&e.restructured).0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
