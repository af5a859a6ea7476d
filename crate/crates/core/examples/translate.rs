//! Translate an HMS structure into an awareness structure and back, and
//! check that the two agree on small formulas.

use unawareness::structures::{validate_awareness, validate_hms, ClassSpec};
use unawareness::translate::{awareness_to_hms, check_agreement_up_to, hms_to_awareness};
use unawareness::validity::{enumerate_structures, Model, SearchBounds, StructureKind};

fn main() {
    let bounds = SearchBounds::default_for(StructureKind::Hms).randomized(3, 5);
    for m in enumerate_structures(StructureKind::Hms, &bounds, ClassSpec::NONE).unwrap() {
        let Model::Hms(h) = m else { unreachable!() };
        let class = validate_hms(&h)
            .class()
            .expect("generated structures are well formed");
        let there = hms_to_awareness(&h, class).unwrap();
        let report = validate_awareness(&there.structure).unwrap();
        let agree = check_agreement_up_to(&h, &there.structure, &there.pairs, 6, 2).unwrap();
        println!(
            "HMS with {} states in H^{{{class}}} -> awareness structure: pg {}, pd {}, {} formula groups agree: {}",
            h.num_states(),
            report.pg,
            report.pd,
            agree.checked,
            agree.all_agree
        );
        if report.pd {
            // The way back uses the class the awareness structure is in,
            // which may be smaller: Euclidean need not survive.
            let k = report.kripke;
            let own = ClassSpec::new(k.reflexive, k.transitive, k.euclidean);
            let back = awareness_to_hms(&there.structure, own).unwrap();
            println!(
                "  and back from {{{own}}}: {} states, in H^{{{own}}}: {}",
                back.structure.num_states(),
                validate_hms(&back.structure).in_class(own)
            );
        }
    }
}
