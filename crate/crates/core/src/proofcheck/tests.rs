use super::*;
use crate::validity::SearchBounds;

fn knimp(text: &str) -> Formula {
    parse(text, LanguageTag::knimp(2)).unwrap()
}

fn script(system: &str, lines: &[(&str, &str, &[usize])]) -> ProofScript {
    ProofScript {
        system: system.into(),
        lines: lines
            .iter()
            .enumerate()
            .map(|(k, (formula, by, refs))| ProofLine {
                n: k + 1,
                formula: formula.to_string(),
                by: by.to_string(),
                refs: refs.to_vec(),
                hint: None,
            })
            .collect(),
    }
}

fn u_n_script() -> ProofScript {
    script(
        "Un",
        &[
            ("K1 (p & q) -> (K1 p & K1 q)", "M", &[]),
            ("(K1 p & K1 q) -> K1 (p & q)", "C", &[]),
            (
                "(K1 (p & q) -> (K1 p & K1 q)) -> (((K1 p & K1 q) -> K1 (p & q)) -> (K1 (p & q) <-> (K1 p & K1 q)))",
                "Prop",
                &[],
            ),
            ("((K1 p & K1 q) -> K1 (p & q)) -> (K1 (p & q) <-> (K1 p & K1 q))", "MP", &[1, 3]),
            ("K1 (p & q) <-> (K1 p & K1 q)", "MP", &[2, 4]),
        ],
    )
}

#[test]
fn schema_examples() {
    let s5 = System::named("S5").unwrap();
    let m = match_axiom(
        s5.axiom("K").unwrap(),
        &knimp("K1 p & K1 (p -> q) -> K1 q"),
        None,
    );
    let Match::Instance(sub) = m else {
        panic!("{m:?}")
    };
    assert_eq!(
        sub.formulas,
        vec![("phi".into(), knimp("p")), ("psi".into(), knimp("q"))]
    );
    assert_eq!(sub.agents, vec![("i".into(), 1)]);

    let axk = System::named("AXK").unwrap();
    assert!(axk
        .axiom("B1")
        .unwrap()
        .matches(&knimp("(K1 p = 1/2) <~> (p = 1/2)"), None)
        .is_instance());
    let conf1 = axk.axiom("Conf1").unwrap();
    let bad = conf1.matches(&knimp("((p ~> q) = 1/2) ~> K1 ((p ~> q) = 1/2)"), None);
    let Match::Mismatch(reason) = bad else {
        panic!("Conf1 must reject ~>")
    };
    assert!(reason.contains("~>"), "{reason}");
    assert!(conf1
        .matches(&knimp("((p & q) = 1/2) ~> K2 ((p & q) = 1/2)"), None)
        .is_instance());
}

#[test]
fn two_valued_side_condition() {
    let ax3 = System::named("AX3").unwrap();
    let p2 = ax3.axiom("P2").unwrap();
    assert!(p2
        .matches(&knimp("(p = 1) ~> ((q = 1) ~> (p = 1))"), None)
        .is_instance());
    assert!(!p2.matches(&knimp("p ~> (q ~> p)"), None).is_instance());
    let p11 = ax3.axiom("P11").unwrap();
    assert!(p11
        .matches(
            &knimp("(p = 0 | p = 1/2 | p = 1) & !((p = 1) & (p = 1/2))"),
            None
        )
        .is_instance());
    assert!(!p11
        .matches(
            &knimp("(p = 0 | p = 1/2 | p = 1) & !((p = 1) & (p = 1))"),
            None
        )
        .is_instance());
}

#[test]
fn proof_examples() {
    let ok = script(
        "S5_1",
        &[("p -> p", "Prop", &[]), ("K1 (p -> p)", "Gen", &[1])],
    );
    assert_eq!(check_proof(&ok).unwrap(), Verdict::Ok);
    let bad = script("K_1", &[("K1 p -> p", "Prop", &[])]);
    assert!(matches!(
        check_proof(&bad).unwrap(),
        Verdict::Bad { line: 1, .. }
    ));
    let p2 = script("AX3", &[("(p=1) ~> ((q=1) ~> (p=1))", "P2", &[])]);
    assert_eq!(check_proof(&p2).unwrap(), Verdict::Ok);
    assert_eq!(check_proof(&u_n_script()).unwrap(), Verdict::Ok);
}

#[test]
fn errors_are_not_verdicts() {
    let unknown = script("S6", &[("p -> p", "Prop", &[])]);
    assert!(matches!(
        check_proof(&unknown),
        Err(ProofError::UnknownSystem(_))
    ));
    let axiom = script("S5", &[("p -> p", "B1", &[])]);
    assert!(matches!(
        check_proof(&axiom),
        Err(ProofError::UnknownJustification { line: 1, .. })
    ));
    let forward = script(
        "S5",
        &[("K1 (p -> p)", "Gen", &[2]), ("p -> p", "Prop", &[])],
    );
    assert!(matches!(
        check_proof(&forward),
        Err(ProofError::BadReferences { line: 1, .. })
    ));
    let arity = script(
        "S5",
        &[("p -> p", "Prop", &[]), ("K1 (p -> p)", "Gen", &[1, 1])],
    );
    assert!(matches!(
        check_proof(&arity),
        Err(ProofError::BadReferences { line: 2, .. })
    ));
}

#[test]
fn agent_suffix_bounds_the_language() {
    let two = script(
        "S5_1",
        &[("p -> p", "Prop", &[]), ("K2 (p -> p)", "Gen", &[1])],
    );
    assert!(matches!(
        check_proof(&two).unwrap(),
        Verdict::Bad { line: 2, .. }
    ));
    assert!(System::named("U_2").is_err());
    assert!(System::named("AXK+T45_3").is_ok());
    assert!(System::named("AXK+54").is_err());
}

#[test]
fn every_wrong_justification_rejects_its_line() {
    for s in [
        u_n_script(),
        script(
            "S5_1",
            &[("p -> p", "Prop", &[]), ("K1 (p -> p)", "Gen", &[1])],
        ),
    ] {
        let system = System::named(&s.system).unwrap();
        for k in 0..s.lines.len() {
            let mut alternatives: Vec<(String, Vec<usize>)> = system
                .axioms()
                .iter()
                .map(|a| (a.name.to_string(), vec![]))
                .collect();
            let earlier: Vec<usize> = (1..=k).collect();
            for rule in system.rules() {
                if rule.premises() == 1 {
                    alternatives
                        .extend(earlier.iter().map(|&a| (rule.name().to_string(), vec![a])));
                } else {
                    for &a in &earlier {
                        alternatives.extend(
                            earlier
                                .iter()
                                .map(|&b| (rule.name().to_string(), vec![a, b])),
                        );
                    }
                }
            }
            let line = &s.lines[k];
            for (by, refs) in alternatives {
                // Modus ponens cites its two premises in either order.
                let (mut a, mut b) = (refs.clone(), line.refs.clone());
                a.sort();
                b.sort();
                if by == line.by && a == b {
                    continue;
                }
                let mut corrupt = s.clone();
                corrupt.lines[k].by = by.clone();
                corrupt.lines[k].refs = refs.clone();
                let v = check_proof(&corrupt).unwrap();
                assert!(
                    matches!(v, Verdict::Bad { line, .. } if line == k + 1),
                    "{} line {} by {by} {refs:?}: {v}",
                    s.system,
                    k + 1
                );
            }
        }
    }
}

#[test]
fn prefixes_of_accepted_proofs_are_accepted() {
    let s = u_n_script();
    for len in 0..=s.lines.len() {
        let prefix = ProofScript {
            lines: s.lines[..len].to_vec(),
            ..s.clone()
        };
        assert_eq!(check_proof(&prefix).unwrap(), Verdict::Ok);
    }
}

#[test]
fn rules_of_the_other_systems() {
    let r1 = script("AX3", &[("(p ~> p) = 1", "Prop'", &[])]);
    assert!(System::named("AX3").unwrap().axiom("Prop'").is_none());
    assert!(check_proof(&r1).is_err());
    let r1 = script(
        "AX3",
        &[
            (
                "(p = 0 | p = 1/2 | p = 1) & !((p = 0) & (p = 1))",
                "P11",
                &[],
            ),
            ("top", "P0", &[]),
            ("top = 1", "P0", &[]),
        ],
    );
    assert!(matches!(
        check_proof(&r1).unwrap(),
        Verdict::Bad { line: 3, .. }
    ));
    let re = script(
        "U",
        &[
            ("(p & q) <-> (q & p)", "Prop", &[]),
            ("K1 (p & q) <-> K1 (q & p)", "RE_sa", &[1]),
        ],
    );
    assert_eq!(check_proof(&re).unwrap(), Verdict::Ok);
    let re_bad = script(
        "U",
        &[
            ("p <-> (p & (q | !q))", "Prop", &[]),
            ("K1 p <-> K1 (p & (q | !q))", "RE_sa", &[1]),
        ],
    );
    // Equivalent sides with different atoms.
    assert!(matches!(
        check_proof(&re_bad).unwrap(),
        Verdict::Bad { line: 2, .. }
    ));
    let mp = script(
        "AXK",
        &[
            ("p ~> p", "Prop'", &[]),
            ("K1 (p ~> p)", "Gen", &[1]),
            ("K1 (p ~> p) ~> (q ~> K1 (p ~> p))", "Prop'", &[]),
            ("q ~> K1 (p ~> p)", "MP'", &[2, 3]),
        ],
    );
    assert_eq!(check_proof(&mp).unwrap(), Verdict::Ok);
}

#[test]
fn nonreflexive_kripke_refutes_t() {
    let t_only = System::named("S5_1").unwrap().restricted(&["T"]).unwrap();
    let b = SearchBounds::default_for(StructureKind::Kripke).with_states(2);
    let report = soundness_sweep(&t_only, ClassSpec::NONE, ValidityMode::Classical, &b).unwrap();
    assert!(!report.is_sound());
    let v = &report.violations[0];
    assert_eq!(v.axiom, "T");
    assert!(!crate::validity::valid_in(&v.model, &v.instance, ValidityMode::Classical).unwrap());
}

#[test]
fn small_sweeps_find_nothing() {
    let b = SearchBounds::default_for(StructureKind::Kripke).with_states(2);
    let s5 = System::named("S5_1").unwrap();
    let r = soundness_sweep(&s5, ClassSpec::PARTITIONAL, ValidityMode::Classical, &b).unwrap();
    assert!(r.is_sound(), "{:?}", r.violations);
    assert!(r.structures > 0 && r.checks > 0);
    let hms = SearchBounds::default_for(StructureKind::Hms).with_atoms(1);
    let axk = System::named("AXK+T45_1").unwrap();
    let r = soundness_sweep(&axk, ClassSpec::PARTITIONAL, ValidityMode::Strong, &hms).unwrap();
    assert!(r.is_sound(), "{:?}", r.violations);
    assert!(matches!(
        soundness_sweep(&axk, ClassSpec::PARTITIONAL, ValidityMode::Weak, &hms),
        Err(ProofError::IncompatibleSweep { .. })
    ));
    let ax3 = System::named("AX3").unwrap();
    assert!(soundness_sweep(&ax3, ClassSpec::NONE, ValidityMode::Strong, &hms).is_err());
}

#[test]
fn dropping_conf1_side_condition_would_be_unsound() {
    // The ~> instance Conf1 excludes fails strongly somewhere.
    let f = knimp("((p ~> q) = 1/2) ~> K1 ((p ~> q) = 1/2)");
    let b = SearchBounds::default_for(StructureKind::Hms);
    let c = crate::validity::search_countermodel(
        &f,
        StructureKind::Hms,
        ClassSpec::NONE,
        ValidityMode::Strong,
        &b,
    )
    .unwrap();
    assert!(c.is_some());
}

#[test]
fn instances_meet_the_side_conditions() {
    let ax3 = System::named("AX3").unwrap();
    let fs = [knimp("p"), knimp("p = 1"), knimp("p ~> q")];
    let p2 = ax3.axiom("P2").unwrap().instances(&fs, 0);
    assert_eq!(p2.len(), 1);
    assert_eq!(p2[0], knimp("(p = 1) ~> ((p = 1) ~> (p = 1))"));
    let k = System::named("AXK").unwrap();
    let inst = k.axiom("Conf1").unwrap().instances(&fs, 2);
    // Only `p` is ↪-free; `p = 1` abbreviates a ↪ formula.
    assert_eq!(inst.len(), 2);
}
