//! Look for countermodels under the different validity notions.

use unawareness::structures::ClassSpec;
use unawareness::validity::{search_countermodel, SearchBounds, StructureKind, ValidityMode};
use unawareness::{parse, LanguageTag};

fn main() {
    let queries = [
        (
            "K1 p -> p",
            StructureKind::Kripke,
            ClassSpec::NONE,
            ValidityMode::Classical,
        ),
        (
            "K1 p -> p",
            StructureKind::Kripke,
            ClassSpec::PARTITIONAL,
            ValidityMode::Classical,
        ),
        (
            "K1 p ~> p",
            StructureKind::Hms,
            ClassSpec::NONE,
            ValidityMode::Strong,
        ),
        (
            "K1 p -> p",
            StructureKind::Hms,
            ClassSpec::PARTITIONAL,
            ValidityMode::Weak,
        ),
        (
            "K1 p -> p",
            StructureKind::Hms,
            ClassSpec::PARTITIONAL,
            ValidityMode::Strong,
        ),
        (
            "!K1 p -> K1 !K1 p",
            StructureKind::Gsm,
            ClassSpec::PARTITIONAL,
            ValidityMode::Objective,
        ),
        (
            "A1 p -> K1 A1 p",
            StructureKind::Awareness,
            ClassSpec::NONE,
            ValidityMode::Classical,
        ),
    ];
    for (text, kind, class, mode) in queries {
        let tag = if kind == StructureKind::Awareness {
            LanguageTag::kxa(1)
        } else {
            LanguageTag::knimp(1)
        };
        let f = parse(text, tag).unwrap();
        let found =
            search_countermodel(&f, kind, class, mode, &SearchBounds::default_for(kind)).unwrap();
        match found {
            Some(c) => println!(
                "{text} on {kind} {{{class}}} ({mode}): fails at {} with value {} ({} points)",
                c.state_name,
                c.value,
                c.model.point_names().len()
            ),
            None => println!("{text} on {kind} {{{class}}} ({mode}): none within bounds"),
        }
    }
}
