mod common;

use common::{ty, A1, A2};
use posproof::expand::enumerate_terms;
use posproof::ljplus::term_height;
use posproof::sysf::{parse_type, phi, phi_inverse, render_sysf_term};

/// Terms of `text` with the given height, rendered.
fn slice(text: &str, height: usize) -> Vec<String> {
    let mut v: Vec<String> = enumerate_terms(&ty(text), height)
        .unwrap()
        .iter()
        .filter(|t| term_height(t) == height)
        .map(render_sysf_term)
        .collect();
    v.sort();
    v
}

#[test]
fn nested_example_renders_as_printed() {
    // the printed pair, with ASCII binder names and annotations
    let ann = "λa:((forall Y. (Y -> X) -> Y -> X) -> X). ";
    let term = |body: &str| format!("λX {ann}(a λY λb:(Y -> X). λc:Y. (a λY1 λd:(Y1 -> X). λe:Y1. {body}))");
    assert_eq!(slice(A1, 12), [term("(b c)"), term("(d e)")]);
}

#[test]
fn prenex_example_renders_as_printed() {
    let ann = "λa:(((Y -> X) -> Y -> X) -> X). ";
    let term = |body: &str| format!("λX λY {ann}(a λb:(Y -> X). λc:Y. (a λd:(Y -> X). λe:Y. {body}))");
    assert_eq!(slice(A2, 11), [term("(b c)"), term("(b e)"), term("(d c)"), term("(d e)")]);
}

#[test]
fn rendered_terms_are_distinct() {
    for text in [A1, A2, "forall X. X -> (X -> X) -> X", "forall X. X -> ((X -> X) -> X) -> X"] {
        let terms = enumerate_terms(&ty(text), 12).unwrap();
        let mut rendered: Vec<String> = terms.iter().map(render_sysf_term).collect();
        let n = rendered.len();
        rendered.sort();
        rendered.dedup();
        assert_eq!(rendered.len(), n, "{text}");
    }
}

#[test]
fn phi_is_invertible_on_the_corpus() {
    for text in [A1, A2, "forall X. X -> (X -> X) -> (X -> X) -> X"] {
        let t = parse_type(text).unwrap();
        assert_eq!(phi_inverse(&phi(&t)), Some(t));
    }
}
