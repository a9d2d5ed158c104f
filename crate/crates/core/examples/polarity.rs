use posproof::syntax::{decompose_negative, parse_formula, polarity};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in
        ["P -> P", "((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q", "(forall x. P(x)) -> Q", "P(x) -> Q(x) -> R"]
    {
        let f = parse_formula(text)?;
        println!("{f}");
        println!("  polarity: {:?}", polarity(&f));
        if let Ok((args, head)) = decompose_negative(&f) {
            let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
            println!("  as a hypothesis: head {head}, arguments [{}]", args.join("; "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
