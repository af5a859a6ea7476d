//! Build a small HMS structure by hand and evaluate formulas in it.

use unawareness::semantics::eval_hms;
use unawareness::semantics::TruthValue::{True, Undefined};
use unawareness::structures::{state_set, HmsParts, HmsStructure, Vocab};
use unawareness::{parse, Atom, LanguageTag};

fn main() {
    // `s` lives in the space of {p}; it projects to `t`, which knows no atoms.
    // The agent at `s` only considers `t` possible, so is unaware of p.
    let m = HmsStructure::new(HmsParts {
        agents: 1,
        atoms: vec![Atom::new("p").unwrap()],
        states: vec!["s".into(), "t".into()],
        space: vec![Vocab(1), Vocab(0)],
        val: vec![vec![True], vec![Undefined]],
        poss: vec![vec![state_set(2, [1]), state_set(2, [1])]],
        cover: vec![vec![Some(1)], vec![None]],
    })
    .expect("well-formed structure");
    for text in [
        "p",
        "K1 p",
        "!K1 p",
        "A1 p",
        "!A1 p & !K1 !A1 p",
        "K1 p ~> p",
    ] {
        let f = parse(text, LanguageTag::knimp(1)).unwrap();
        let values: Vec<String> = (0..2)
            .map(|s| format!("{}={}", m.state_name(s), eval_hms(&m, s, &f).unwrap()))
            .collect();
        println!("{text:<22} {}", values.join("  "));
    }
}
