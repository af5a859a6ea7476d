//! Soundness sweeps: every axiom instance over every small structure of
//! the matching class.

use unawareness::proofcheck::{soundness_sweep, System};
use unawareness::structures::ClassSpec;
use unawareness::validity::SearchBounds;

fn main() {
    for (name, class) in [
        ("S5_1", ClassSpec::PARTITIONAL),
        ("AXK+T_1", ClassSpec::new(true, false, false)),
        ("Un_1", ClassSpec::PARTITIONAL),
        ("U", ClassSpec::PARTITIONAL),
        // Reflexivity on a class that does not guarantee it.
        ("AXK+T_1", ClassSpec::NONE),
    ] {
        let system = System::named(name).unwrap();
        let target = system.sweep_target().unwrap();
        let bounds = SearchBounds::default_for(target.kind).with_states(2);
        let r = soundness_sweep(&system, class, target.mode, &bounds).unwrap();
        print!(
            "{name} on {} {{{class}}} ({}): {} structures, {} checks, {} violations",
            r.kind, r.mode, r.structures, r.checks, r.violation_count
        );
        match r.violations.first() {
            Some(v) => println!(
                "; e.g. {} instance {} is {} at {}",
                v.axiom, v.instance, v.value, v.state_name
            ),
            None => println!(),
        }
    }
}
