use posproof::expand::enumerate_terms;
use posproof::ljplus::term_height;
use posproof::sysf::{is_positive_type, parse_type, phi, render_sysf_term};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (text, height) in [
        ("forall X. X -> (X -> X) -> X", 6),
        ("forall X. ((forall Y. (Y -> X) -> Y -> X) -> X) -> X", 12),
        ("forall X. forall Y. (((Y -> X) -> Y -> X) -> X) -> X", 11),
        ("forall X. X -> ((X -> X) -> X) -> X", 7),
    ] {
        let t = parse_type(text)?;
        println!("{t}  (positive: {})", is_positive_type(&t));
        for term in enumerate_terms(&phi(&t), height)? {
            println!("  [{}] {}", term_height(&term), render_sysf_term(&term));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
