use posproof::expand::enumerate_terms;
use posproof::ljplus::{oracle_enumerate, LJPlusSequent};
use posproof::syntax::parse_formula;

const DEFAULT: &str = "(P -> Q) -> (Q -> R) -> P -> R";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    compare(DEFAULT)
}

fn compare(text: &str) -> Result<(), Box<dyn std::error::Error>> {
    let goal = parse_formula(text)?;
    for k in 1..=10 {
        let ours: Vec<String> = enumerate_terms(&goal, k)?.iter().map(|t| t.to_string()).collect();
        let mut brute: Vec<String> = oracle_enumerate(&LJPlusSequent::closed(goal.clone()), k)
            .iter()
            .map(|t| t.alpha_normalize().to_string())
            .collect();
        brute.sort();
        brute.dedup();
        println!(
            "height {k:2}: {} terms, {}",
            ours.len(),
            if ours == brute { "same as brute force" } else { "DIFFERENT" }
        );
        if ours != brute {
            return Err(format!("mismatch at height {k}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| DEFAULT.into());
    compare(&text).unwrap();
}
