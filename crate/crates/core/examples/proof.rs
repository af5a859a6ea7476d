//! Check a short derivation and a corrupted copy of it.

use unawareness::proofcheck::{check_proof, ProofLine, ProofScript};

fn line(n: usize, formula: &str, by: &str, refs: &[usize]) -> ProofLine {
    ProofLine {
        n,
        formula: formula.into(),
        by: by.into(),
        refs: refs.to_vec(),
        hint: None,
    }
}

fn main() {
    let script = ProofScript {
        system: "AXK+T45_1".into(),
        lines: vec![
            line(1, "p ~> p", "Prop'", &[]),
            line(2, "K1 (p ~> p)", "Gen", &[1]),
            line(3, "K1 (p ~> p) ~> (q ~> K1 (p ~> p))", "Prop'", &[]),
            line(4, "q ~> K1 (p ~> p)", "MP'", &[2, 3]),
        ],
    };
    println!("{}", serde_json::to_string_pretty(&script).unwrap());
    println!("verdict: {}", check_proof(&script).unwrap());
    let mut bad = script.clone();
    bad.lines[1].by = "T'".into();
    bad.lines[1].refs.clear();
    println!("with line 2 cited as T': {}", check_proof(&bad).unwrap());
}
