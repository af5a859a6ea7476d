//! Decide propositional formulas under the three-valued tables.

use unawareness::validity::{prop2_tautology, prop3_status};
use unawareness::{parse, LanguageTag};

fn main() {
    for text in [
        "p ~> p",
        "p | !p",
        "!(p & !p)",
        "p = 0 | p = 1/2 | p = 1",
        "(p ~> q) ~> (!q ~> !p)",
        "p & q",
    ] {
        let f = parse(text, LanguageTag::knimp(0)).unwrap();
        let status = prop3_status(&f).unwrap();
        println!(
            "{text:<28} {:<18} classical tautology: {}",
            status.verdict.name(),
            prop2_tautology(&f).unwrap()
        );
    }
}
