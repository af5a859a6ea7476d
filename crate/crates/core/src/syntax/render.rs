//! Rendering back into the concrete grammar with as few parentheses as the
//! precedence rules allow.

use super::Formula;
use std::fmt;

// Binding strength of the grammar levels: `imp` < `or` < `and` < `eq` < `unary`.
const IMP: u8 = 0;
const AND: u8 = 2;
const EQ: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::NImp(..) => IMP,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Top => out.write_str("top"),
        Formula::Prop(a) => write!(out, "{a}"),
        Formula::Not(a) => {
            out.write_str("!")?;
            write_at(a, UNARY, out)
        }
        Formula::Know(i, a) => {
            write!(out, "K{i} ")?;
            write_at(a, UNARY, out)
        }
        Formula::Aware(i, a) => {
            write!(out, "A{i} ")?;
            write_at(a, UNARY, out)
        }
        Formula::XKnow(i, a) => {
            write!(out, "X{i} ")?;
            write_at(a, UNARY, out)
        }
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" & ")?;
            write_at(b, EQ, out)
        }
        Formula::NImp(a, b) => {
            // Right-associative: only the left operand needs lifting.
            write_at(a, IMP + 1, out)?;
            out.write_str(" ~> ")?;
            write_at(b, IMP, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, LanguageTag};
    use super::*;

    #[test]
    fn minimal_parentheses() {
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        assert_eq!(Formula::know(1, p.clone()).to_string(), "K1 p");
        assert_eq!(Formula::nimp(p.clone(), q.clone()).to_string(), "p ~> q");
        assert_eq!(
            Formula::nimp(Formula::nimp(p.clone(), q.clone()), p.clone()).to_string(),
            "(p ~> q) ~> p"
        );
        assert_eq!(
            Formula::nimp(p.clone(), Formula::nimp(q.clone(), p.clone())).to_string(),
            "p ~> q ~> p"
        );
        assert_eq!(
            Formula::and(p.clone(), Formula::and(q.clone(), p.clone())).to_string(),
            "p & (q & p)"
        );
        assert_eq!(
            Formula::and(Formula::and(p.clone(), q.clone()), p.clone()).to_string(),
            "p & q & p"
        );
        assert_eq!(
            Formula::not(Formula::and(p.clone(), q.clone())).to_string(),
            "!(p & q)"
        );
        assert_eq!(
            Formula::know(2, Formula::not(Formula::Top)).to_string(),
            "K2 !top"
        );
    }

    #[test]
    fn round_trip_on_sugared_input() {
        let tag = LanguageTag::knimp(2);
        for text in [
            "K1 p = 1/2 <~> p = 1/2",
            "((p = 0 | p = 1) & K1 (p = 1)) ~> K1 p = 1",
            "A1 (p & q) -> A2 !q",
            "K1 p ~> p | K1 (p = 1/2)",
        ] {
            let f = parse(text, tag).unwrap();
            assert_eq!(parse(&f.to_string(), tag).unwrap(), f, "{text}");
        }
    }
}
