use super::*;
use crate::structures::validate_hms;
use crate::syntax::{parse, FormulaEnumerator, LanguageTag, Operators};

fn knimp(text: &str) -> Formula {
    parse(text, LanguageTag::knimp(2)).unwrap()
}

fn corpus(kind: StructureKind, class: ClassSpec) -> Vec<Model> {
    enumerate_structures(kind, &SearchBounds::default_for(kind), class)
        .unwrap()
        .collect()
}

#[test]
fn t_is_weakly_but_not_strongly_valid_on_partitional_hms() {
    let t = knimp("K1 p -> p");
    let models = corpus(StructureKind::Hms, ClassSpec::PARTITIONAL);
    assert!(!models.is_empty());
    for m in &models {
        assert!(valid_in(m, &t, ValidityMode::Weak).unwrap());
        assert!(valid_in(m, &Formula::Top, ValidityMode::Strong).unwrap());
    }
    // Every structure has an S_∅ state where p, and so the formula, is ½.
    assert!(models
        .iter()
        .all(|m| !valid_in(m, &t, ValidityMode::Strong).unwrap()));
}

#[test]
fn modes_and_kinds() {
    let m = corpus(StructureKind::Kripke, ClassSpec::PARTITIONAL).remove(0);
    assert_eq!(
        valid_in(&m, &Formula::Top, ValidityMode::Objective),
        Err(ValidityError::IncompatibleMode {
            mode: ValidityMode::Objective,
            kind: StructureKind::Kripke
        })
    );
    assert!(valid_in(&m, &Formula::Top, ValidityMode::Classical).unwrap());
    let h = corpus(StructureKind::Hms, ClassSpec::NONE).remove(0);
    assert!(valid_in(&h, &Formula::Top, ValidityMode::Classical).is_err());
    assert_eq!("weak".parse::<ValidityMode>(), Ok(ValidityMode::Weak));
    assert!("strict".parse::<ValidityMode>().is_err());
}

#[test]
fn nonstandard_t_has_a_strong_countermodel() {
    let f = knimp("K1 p ~> p");
    let b = SearchBounds::default_for(StructureKind::Hms);
    let c = search_countermodel(
        &f,
        StructureKind::Hms,
        ClassSpec::NONE,
        ValidityMode::Strong,
        &b,
    )
    .unwrap()
    .expect("a countermodel exists");
    let Model::Hms(m) = &c.model else {
        panic!("wrong kind")
    };
    assert!(validate_hms(m).in_class(ClassSpec::NONE));
    assert_eq!(c.value, TruthValue::False);
    assert_eq!(hms_values(m, &f).unwrap()[c.state], TruthValue::False);
    // At the witness p is false while K₁p holds, so every possibility is a
    // p-state of S_{p}.
    let s = c.state;
    assert!(m.val(s, 0).is_false());
    for t in m.poss(1, s).ones() {
        assert_eq!(m.space_of(t), crate::structures::Vocab(1));
        assert!(m.val(t, 0).is_true());
    }
}

#[test]
fn two_p_states_refute_nonstandard_t() {
    use crate::structures::{state_set, HmsParts, HmsStructure, Vocab};
    // S_{p} = {s, t}, S_∅ = {e}; 𝒦₁(s) = {t}, 𝒦₁(t) = {t}, 𝒦₁(e) = {e};
    // p false at s and true at t.
    let m = HmsStructure::new(HmsParts {
        agents: 1,
        atoms: vec![crate::syntax::Atom::new("p").unwrap()],
        states: vec!["e".into(), "s".into(), "t".into()],
        space: vec![Vocab(0), Vocab(1), Vocab(1)],
        val: vec![
            vec![TruthValue::Undefined],
            vec![TruthValue::False],
            vec![TruthValue::True],
        ],
        poss: vec![vec![
            state_set(3, [0]),
            state_set(3, [2]),
            state_set(3, [2]),
        ]],
        cover: vec![vec![None], vec![Some(0)], vec![Some(0)]],
    })
    .unwrap();
    assert!(validate_hms(&m).in_class(ClassSpec::NONE));
    let values = hms_values(&m, &knimp("K1 p ~> p")).unwrap();
    assert_eq!(
        values,
        [TruthValue::True, TruthValue::False, TruthValue::True]
    );
    let model = Model::Hms(m);
    assert_eq!(
        failing_points(&model, &knimp("K1 p ~> p"), ValidityMode::Strong).unwrap(),
        [1]
    );
}

#[test]
fn no_countermodels_where_none_exist() {
    let t = knimp("K1 p -> p");
    let kripke = SearchBounds::default_for(StructureKind::Kripke);
    let reflexive = ClassSpec::new(true, false, false);
    assert_eq!(
        search_countermodel(
            &t,
            StructureKind::Kripke,
            reflexive,
            ValidityMode::Classical,
            &kripke
        )
        .unwrap(),
        None
    );
    let found = search_countermodel(
        &t,
        StructureKind::Kripke,
        ClassSpec::NONE,
        ValidityMode::Classical,
        &kripke,
    )
    .unwrap()
    .unwrap();
    assert_eq!(found.value, TruthValue::False);
    for kind in StructureKind::ALL {
        for mode in ValidityMode::ALL.into_iter().filter(|m| m.applies_to(kind)) {
            let b = SearchBounds::default_for(kind);
            assert_eq!(
                search_countermodel(&Formula::Top, kind, ClassSpec::NONE, mode, &b).unwrap(),
                None
            );
        }
    }
}

#[test]
fn formulas_beyond_the_bounds_have_no_countermodel_within_them() {
    let f = knimp("K2 p -> p");
    let b = SearchBounds::default_for(StructureKind::Kripke);
    assert_eq!(
        search_countermodel(
            &f,
            StructureKind::Kripke,
            ClassSpec::NONE,
            ValidityMode::Classical,
            &b
        )
        .unwrap(),
        None
    );
    let found = search_countermodel(
        &f,
        StructureKind::Kripke,
        ClassSpec::NONE,
        ValidityMode::Classical,
        &b.with_agents(2),
    )
    .unwrap();
    assert!(found.is_some());
    assert!(matches!(
        search_countermodel(
            &knimp("p ~> p"),
            StructureKind::Kripke,
            ClassSpec::NONE,
            ValidityMode::Classical,
            &b
        ),
        Err(ValidityError::Eval(EvalError::Unsupported(_)))
    ));
}

#[test]
fn search_is_deterministic_across_seeds_and_runs() {
    let f = knimp("K1 p -> K1 K1 p");
    let b = SearchBounds::default_for(StructureKind::Hms).randomized(42, 50);
    let first = search_countermodel(
        &f,
        StructureKind::Hms,
        ClassSpec::NONE,
        ValidityMode::Weak,
        &b,
    )
    .unwrap();
    let second = search_countermodel(
        &f,
        StructureKind::Hms,
        ClassSpec::NONE,
        ValidityMode::Weak,
        &b,
    )
    .unwrap();
    assert_eq!(first, second);
}

/// The bitmask frames used by search agree with the per-kind evaluators.
#[test]
fn frames_agree_with_kind_evaluators() {
    let formulas = |ops: Operators| {
        FormulaEnumerator::new(enumerate::default_atoms(2), 1, ops, 5)
            .with_max_depth(2)
            .all()
    };
    let k = formulas(Operators::k());
    let kn = formulas(Operators::knimp());
    let kxa = formulas(Operators {
        aware: true,
        xknow: true,
        ..Operators::k()
    });
    let cases: [(StructureKind, &Vec<Formula>); 4] = [
        (StructureKind::Hms, &kn),
        (StructureKind::Gsm, &k),
        (StructureKind::Awareness, &kxa),
        (StructureKind::Kripke, &k),
    ];
    for (kind, fs) in cases {
        let b = SearchBounds::default_for(kind).randomized(9, 40);
        for m in enumerate_structures(kind, &b, ClassSpec::NONE).unwrap() {
            let frame = m.frame().unwrap();
            for f in fs.iter() {
                let ext = frame.eval(f).unwrap();
                let values = point_values(&m, f).unwrap();
                for (s, v) in values.iter().enumerate() {
                    assert_eq!(ext.value(s), *v, "{kind} {f} at {s}");
                }
            }
        }
    }
}
