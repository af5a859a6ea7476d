//! Translations between HMS structures and awareness structures, and a
//! harness that checks `(M, s) ⊨ φ` against `(M′, s′) ⊨ φ_X` on
//! corresponding points.

use crate::semantics::{awareness_values, hms_values, EvalError, Ext, Frame, TruthValue};
use crate::structures::{
    state_set, validate_awareness, validate_hms, AwarenessReport, AwarenessSet, AwarenessStructure,
    ClassSpec, HmsParts, HmsStructure, KripkeStructure, StateSet, StructureError, Vocab,
};
use crate::syntax::{primitives, to_explicit, Formula};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("structure is not in the class {class}")]
    NotInClass { class: ClassSpec },
    #[error("awareness is not generated by primitive propositions")]
    NotPg,
    #[error("agents do not know what they are aware of, which class {class} requires")]
    NotKa { class: ClassSpec },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A point of the HMS structure paired with a point of the awareness
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    pub hms: usize,
    pub awareness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translated<T> {
    pub structure: T,
    pub pairs: Vec<Pair>,
}

/// HMS to awareness. States are kept; undefined atoms become false; each
/// agent satisfying generalized reflexivity gets its own state added to
/// every possibility set; awareness is generated by the vocabulary of the
/// space the possibilities live in (or of the state's own space when there
/// are none).
pub fn hms_to_awareness(
    m: &HmsStructure,
    class: ClassSpec,
) -> Result<Translated<AwarenessStructure>, TranslateError> {
    let report = validate_hms(m);
    if !report.in_class(class) {
        return Err(TranslateError::NotInClass { class });
    }
    let n = m.num_states();
    let k = m.atoms().len();
    let mut poss = Vec::with_capacity(m.agents());
    let mut awareness = Vec::with_capacity(m.agents());
    for i in 1..=m.agents() {
        let reflexive = agent_gen_reflexive(m, i);
        let mut per_poss = Vec::with_capacity(n);
        let mut per_aware = Vec::with_capacity(n);
        for s in 0..n {
            let ks = m.poss(i, s);
            let mut ks2 = ks.clone();
            if reflexive {
                ks2.insert(s);
            }
            per_poss.push(ks2);
            let vocab = m.common_space(ks).unwrap_or(m.space_of(s));
            per_aware.push(AwarenessSet::Generated(vocab.to_atoms(m.atoms())));
        }
        poss.push(per_poss);
        awareness.push(per_aware);
    }
    let frame = KripkeStructure {
        agents: m.agents(),
        atoms: m.atoms().to_vec(),
        states: (0..n).map(|s| m.state_name(s).to_string()).collect(),
        poss,
        val: (0..n)
            .map(|s| (0..k).map(|a| m.val(s, a) == TruthValue::True).collect())
            .collect(),
    };
    Ok(Translated {
        structure: AwarenessStructure { frame, awareness },
        pairs: (0..n)
            .map(|s| Pair {
                hms: s,
                awareness: s,
            })
            .collect(),
    })
}

fn agent_gen_reflexive(m: &HmsStructure, agent: usize) -> bool {
    (0..m.num_states()).all(|s| m.up(m.poss(agent, s)).contains(s))
}

/// Name of the state `(s, Ψ)`.
pub fn product_state_name(state: &str, vocab: Vocab, atoms: &[crate::syntax::Atom]) -> String {
    let names: Vec<&str> = vocab.members().map(|a| atoms[a].name()).collect();
    format!("{state}{{{}}}", names.join(","))
}

/// Awareness to HMS over the awareness structure's atoms. The point
/// `(s, Ψ)` has index `Ψ · |Σ| + s`.
pub fn awareness_to_hms(
    m: &AwarenessStructure,
    class: ClassSpec,
) -> Result<Translated<HmsStructure>, TranslateError> {
    let report = validate_awareness(m)?;
    check_awareness_precondition(&report, class)?;
    let atoms = &m.frame.atoms;
    let n = m.num_states();
    let k = atoms.len();
    let vocabs: Vec<Vec<Vocab>> = m
        .awareness
        .iter()
        .map(|per| {
            per.iter()
                .map(|a| {
                    Vocab::from_atoms(atoms, &a.atom_component())
                        .expect("atoms checked by validation")
                })
                .collect()
        })
        .collect();
    let total = n << k;
    let index = |s: usize, v: Vocab| v.index() * n + s;
    let mut parts = HmsParts {
        agents: m.agents(),
        atoms: atoms.clone(),
        states: Vec::with_capacity(total),
        space: Vec::with_capacity(total),
        val: Vec::with_capacity(total),
        poss: vec![Vec::with_capacity(total); m.agents()],
        cover: Vec::with_capacity(total),
    };
    for v in Vocab::all(k) {
        for s in 0..n {
            parts
                .states
                .push(product_state_name(&m.frame.states[s], v, atoms));
            parts.space.push(v);
            parts.val.push(
                (0..k)
                    .map(|a| {
                        if v.contains(a) {
                            TruthValue::from_bool(m.frame.val[s][a])
                        } else {
                            TruthValue::Undefined
                        }
                    })
                    .collect(),
            );
            parts.cover.push(
                (0..k)
                    .map(|a| v.contains(a).then(|| index(s, v.without(a))))
                    .collect(),
            );
            for i in 0..m.agents() {
                let target = v.intersect(vocabs[i][s]);
                let set: StateSet =
                    state_set(total, m.frame.poss[i][s].ones().map(|t| index(t, target)));
                parts.poss[i].push(set);
            }
        }
    }
    let structure = HmsStructure::new(parts)?;
    let pairs = Vocab::all(k)
        .flat_map(|v| {
            (0..n).map(move |s| Pair {
                hms: index(s, v),
                awareness: s,
            })
        })
        .collect();
    Ok(Translated { structure, pairs })
}

fn check_awareness_precondition(
    report: &AwarenessReport,
    class: ClassSpec,
) -> Result<(), TranslateError> {
    if !report.kripke.in_class(class) {
        return Err(TranslateError::NotInClass { class });
    }
    if !report.pg {
        return Err(TranslateError::NotPg);
    }
    if class.has_t_or_e() && !report.ka {
        return Err(TranslateError::NotKa { class });
    }
    Ok(())
}

/// One evaluated `(point pair, formula)` triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub pair: Pair,
    pub formula: Formula,
    pub hms_true: bool,
    pub awareness_true: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationReport {
    pub checked: usize,
    /// Pairs skipped because the formula mentions atoms outside the HMS
    /// point's vocabulary.
    pub skipped: usize,
    pub disagreements: Vec<Verdict>,
    pub all_agree: bool,
}

/// Checks `(M, h) ⊨ φ` iff `(M′, a) ⊨ φ_X` for every pair `(h, a)` and
/// every `φ ∈ L^K` whose atoms lie in the vocabulary of `h`'s space.
pub fn check_agreement(
    hms: &HmsStructure,
    awareness: &AwarenessStructure,
    pairs: &[Pair],
    formulas: &[Formula],
) -> Result<TranslationReport, EvalError> {
    let mut report = TranslationReport {
        checked: 0,
        skipped: 0,
        disagreements: Vec::new(),
        all_agree: true,
    };
    for f in formulas {
        let explicit = to_explicit(f).map_err(|e| EvalError::Unsupported(e.found))?;
        let hv = hms_values(hms, f)?;
        let av = awareness_values(awareness, &explicit)?;
        let vocab = Vocab::from_atoms(hms.atoms(), &primitives(f))
            .ok_or_else(|| EvalError::UnknownAtom(f.to_string()))?;
        for &pair in pairs {
            if !vocab.is_subset(hms.space_of(pair.hms)) {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            let (h, a) = (hv[pair.hms].is_true(), av[pair.awareness]);
            if h != a {
                report.disagreements.push(Verdict {
                    pair,
                    formula: f.clone(),
                    hms_true: h,
                    awareness_true: a,
                });
            }
        }
    }
    report.all_agree = report.disagreements.is_empty();
    Ok(report)
}

#[derive(Clone, Copy)]
enum Node {
    Top,
    Atom(usize),
    Not(u32),
    And(u32, u32),
    Know(usize, u32),
}

fn rebuild(nodes: &[Node], atoms: &[crate::syntax::Atom], id: u32) -> Formula {
    let f = |x: u32| Box::new(rebuild(nodes, atoms, x));
    match nodes[id as usize] {
        Node::Top => Formula::Top,
        Node::Atom(a) => Formula::Prop(atoms[a].clone()),
        Node::Not(x) => Formula::Not(f(x)),
        Node::And(x, y) => Formula::And(f(x), f(y)),
        Node::Know(i, x) => Formula::Know(i, f(x)),
    }
}

/// [`check_agreement`] for every `φ ∈ L^K` with at most `max_size` nodes
/// and modal depth at most `max_depth`.
///
/// Formulas are grouped by their extension in both structures and their
/// atoms; every connective respects that grouping, so checking one formula
/// per group is exact. `checked` and `skipped` count groups, not formulas.
pub fn check_agreement_up_to(
    hms: &HmsStructure,
    awareness: &AwarenessStructure,
    pairs: &[Pair],
    max_size: usize,
    max_depth: usize,
) -> Result<TranslationReport, EvalError> {
    let hf = Frame::from_hms(hms)?;
    let af = Frame::from_awareness(awareness)?;
    let atoms = hms.atoms();
    if awareness.frame.atoms != atoms {
        return Err(EvalError::UnknownAtom(
            "the two structures have different atoms".into(),
        ));
    }
    // Per class: the node, both extensions, the atoms and the modal depth.
    let mut nodes: Vec<Node> = Vec::new();
    let mut classes: Vec<(Ext, Ext, Vocab, u8)> = Vec::new();
    let mut seen: HashMap<(Ext, Ext, Vocab), Vec<u8>> = HashMap::new();
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); max_size + 1];
    for size in 1..=max_size {
        let mut fresh: Vec<(Node, (Ext, Ext, Vocab, u8))> = Vec::new();
        if size == 1 {
            fresh.push((Node::Top, (hf.top(), af.top(), Vocab::EMPTY, 0)));
            for a in 0..atoms.len() {
                fresh.push((
                    Node::Atom(a),
                    (hf.atom(a), af.atom(a), Vocab::EMPTY.with(a), 0),
                ));
            }
        } else {
            for &x in &by_size[size - 1] {
                let (h, w, v, d) = classes[x as usize];
                fresh.push((Node::Not(x), (h.not(), w.not(), v, d)));
                if (d as usize) < max_depth {
                    for i in 1..=hms.agents() {
                        fresh.push((
                            Node::Know(i, x),
                            (hf.know(i, h), af.explicit(i, w, v), v, d + 1),
                        ));
                    }
                }
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                if left > right {
                    break;
                }
                for &x in &by_size[left] {
                    let (hx, wx, vx, dx) = classes[x as usize];
                    for &y in &by_size[right] {
                        if left == right && y < x {
                            continue;
                        }
                        let (hy, wy, vy, dy) = classes[y as usize];
                        fresh.push((
                            Node::And(x, y),
                            (hx.and(hy), wx.and(wy), vx.union(vy), dx.max(dy)),
                        ));
                    }
                }
            }
        }
        for (node, c) in fresh {
            let depths = seen.entry((c.0, c.1, c.2)).or_default();
            if depths.iter().any(|&old| old <= c.3) {
                continue;
            }
            depths.push(c.3);
            by_size[size].push(nodes.len() as u32);
            nodes.push(node);
            classes.push(c);
        }
    }
    let mut report = TranslationReport {
        checked: 0,
        skipped: 0,
        disagreements: Vec::new(),
        all_agree: true,
    };
    for (id, &(h, w, v, _)) in classes.iter().enumerate() {
        for &pair in pairs {
            if !v.is_subset(hms.space_of(pair.hms)) {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            let (ht, wt) = (
                h.value(pair.hms).is_true(),
                w.value(pair.awareness).is_true(),
            );
            if ht != wt {
                report.disagreements.push(Verdict {
                    pair,
                    formula: rebuild(&nodes, atoms, id as u32),
                    hms_true: ht,
                    awareness_true: wt,
                });
            }
        }
    }
    report.all_agree = report.disagreements.is_empty();
    Ok(report)
}
