//! Parse formulas in each language and inspect them.

use unawareness::syntax::{is_definitely_two_valued, modal_depth, primitives};
use unawareness::{parse, LanguageTag};

fn main() {
    for (text, tag) in [
        ("A1 p", LanguageTag::k(1)),
        ("X1 (p & q) -> A1 q", LanguageTag::kxa(1)),
        ("K1 p ~> p", LanguageTag::knimp(1)),
        ("(p = 1/2) <~> K2 (p = 1/2)", LanguageTag::knimp(2)),
    ] {
        let f = parse(text, tag).expect("example formulas parse");
        let atoms: Vec<_> = primitives(&f).into_iter().map(|a| a.to_string()).collect();
        println!(
            "{text}\n  core: {f}\n  atoms: {atoms:?}, depth {}, two-valued: {}",
            modal_depth(&f),
            is_definitely_two_valued(&f)
        );
    }
    let err = parse("p ~> q", LanguageTag::k(1)).unwrap_err();
    println!("p ~> q in k: {err}");
}
