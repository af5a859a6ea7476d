//! Events as pairs of state sets on an HMS structure.
//!
//! A formula determines the pair of the states where it is true and the
//! states where it is false. Negation, conjunction and knowledge act on such
//! pairs directly, and the results agree with the extensions of `¬φ`,
//! `φ ∧ ψ` and `Kᵢφ`.

use crate::semantics::{extension, EvalError, Extension};
use crate::structures::{state_set, HmsStructure, StateSet, Vocab};
use crate::syntax::{is_implication_free, primitives, Formula};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("the two components of an event must be disjoint")]
    Overlap,
    #[error("agent {agent} is outside 1..={agents}")]
    UnknownAgent { agent: usize, agents: usize },
    #[error("state {state} is not in the space of the given vocabulary")]
    OutsideSpace { state: String },
}

/// `(E, E′)`: truths and falsities, over the states of one structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventPair {
    pub truths: StateSet,
    pub falsities: StateSet,
}

impl EventPair {
    pub fn new(truths: StateSet, falsities: StateSet) -> Result<EventPair, EventError> {
        if truths.intersection(&falsities).next().is_some() {
            return Err(EventError::Overlap);
        }
        Ok(EventPair { truths, falsities })
    }

    /// `(Σ, ∅)` on `n` states.
    pub fn everything(n: usize) -> EventPair {
        EventPair {
            truths: state_set(n, 0..n),
            falsities: StateSet::with_capacity(n),
        }
    }

    /// The pair of `φ` on `m`.
    pub fn of(m: &HmsStructure, f: &Formula) -> Result<EventPair, EvalError> {
        Ok(extension(m, f)?.into())
    }

    /// `E ∪ E′`
    pub fn domain(&self) -> StateSet {
        &self.truths | &self.falsities
    }
}

impl From<Extension> for EventPair {
    fn from(e: Extension) -> EventPair {
        EventPair {
            truths: e.truths,
            falsities: e.falsities,
        }
    }
}

/// `~(E, E′) = (E′, E)`
pub fn neg_event(e: &EventPair) -> EventPair {
    EventPair {
        truths: e.falsities.clone(),
        falsities: e.truths.clone(),
    }
}

/// `(E, E′) ⊓ (F, F′) = (E ∩ F, (E ∩ F′) ∪ (E′ ∩ F) ∪ (E′ ∩ F′))`
pub fn conj_event(e: &EventPair, f: &EventPair) -> EventPair {
    let truths = &e.truths & &f.truths;
    let mut falsities = &e.truths & &f.falsities;
    falsities.union_with(&(&e.falsities & &f.truths));
    falsities.union_with(&(&e.falsities & &f.falsities));
    EventPair { truths, falsities }
}

/// `𝖪ᵢ(E, E′) = ({s : 𝒦ᵢ(s) ⊆ E} ∩ (E ∪ E′), (E ∪ E′) ∖ {s : 𝒦ᵢ(s) ⊆ E})`
pub fn know_event(m: &HmsStructure, agent: usize, e: &EventPair) -> Result<EventPair, EventError> {
    if !(1..=m.agents()).contains(&agent) {
        return Err(EventError::UnknownAgent {
            agent,
            agents: m.agents(),
        });
    }
    let n = m.num_states();
    let boxed = state_set(n, (0..n).filter(|&s| m.poss(agent, s).is_subset(&e.truths)));
    let domain = e.domain();
    let truths = &boxed & &domain;
    let mut falsities = domain;
    falsities.difference_with(&boxed);
    Ok(EventPair { truths, falsities })
}

/// The sets compared for one instance of the union lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionLemmaReport {
    pub alpha: Vocab,
    pub beta: Vocab,
    /// `E ∩ F` is empty.
    pub vacuous: bool,
    /// `(E ∩ F′) ∪ (E′ ∩ F) ∪ (E′ ∩ F′)`
    pub union: StateSet,
    /// `S_γ↑ ∖ (E ∩ F)`, or `S_γ↑` when `E ∩ F` is empty, for `γ = α ∪ β`.
    pub expected: StateSet,
    pub holds: bool,
}

fn within(m: &HmsStructure, set: &StateSet, v: Vocab) -> Result<(), EventError> {
    match set.ones().find(|&s| m.space_of(s) != v) {
        Some(s) => Err(EventError::OutsideSpace {
            state: m.state_name(s).to_string(),
        }),
        None => Ok(()),
    }
}

/// Checks, for `B ⊆ S_α` and `C ⊆ S_β`, that the falsity component of
/// `(B↑, (S_α∖B)↑) ⊓ (C↑, (S_β∖C)↑)` is the complement of `B↑ ∩ C↑` in
/// `S_γ↑`.
pub fn verify_union_lemma(
    m: &HmsStructure,
    alpha: Vocab,
    b: &StateSet,
    beta: Vocab,
    c: &StateSet,
) -> Result<UnionLemmaReport, EventError> {
    within(m, b, alpha)?;
    within(m, c, beta)?;
    let rest = |space: Vocab, set: &StateSet| {
        let mut r = m.space_set(space).clone();
        r.difference_with(set);
        r
    };
    let e = EventPair {
        truths: m.up(b),
        falsities: m.up(&rest(alpha, b)),
    };
    let f = EventPair {
        truths: m.up(c),
        falsities: m.up(&rest(beta, c)),
    };
    let conj = conj_event(&e, &f);
    let gamma = alpha.union(beta);
    let mut expected = m.up(m.space_set(gamma));
    let vacuous = conj.truths.is_clear();
    expected.difference_with(&conj.truths);
    Ok(UnionLemmaReport {
        alpha,
        beta,
        vacuous,
        holds: conj.falsities == expected,
        union: conj.falsities,
        expected,
    })
}

/// Every `B ⊆ S_α`, as state sets.
fn subsets_of_space(m: &HmsStructure, v: Vocab) -> Vec<StateSet> {
    let states = m.space(v);
    (0u64..1 << states.len())
        .map(|mask| {
            state_set(
                m.num_states(),
                states
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &s)| s),
            )
        })
        .collect()
}

/// The union lemma for every `α`, `β`, `B ⊆ S_α` and `C ⊆ S_β`.
pub fn union_lemma_exhaustive(m: &HmsStructure) -> Vec<UnionLemmaReport> {
    let vocabs: Vec<Vocab> = Vocab::all(m.atoms().len()).collect();
    let mut out = Vec::new();
    for &alpha in &vocabs {
        let bs = subsets_of_space(m, alpha);
        for &beta in &vocabs {
            let cs = subsets_of_space(m, beta);
            for b in &bs {
                for c in &cs {
                    out.push(
                        verify_union_lemma(m, alpha, b, beta, c).expect("subsets of one space"),
                    );
                }
            }
        }
    }
    out
}

/// The union lemma for one random `α`, `β`, `B ⊆ S_α` and `C ⊆ S_β`.
pub fn union_lemma_sample<R: Rng>(m: &HmsStructure, rng: &mut R) -> UnionLemmaReport {
    let count = 1u32 << m.atoms().len();
    let (alpha, beta) = (
        Vocab(rng.gen_range(0..count)),
        Vocab(rng.gen_range(0..count)),
    );
    let mut pick = |v: Vocab| {
        let mut set = StateSet::with_capacity(m.num_states());
        set.extend(m.space(v).iter().copied().filter(|_| rng.gen_bool(0.5)));
        set
    };
    let (b, c) = (pick(alpha), pick(beta));
    verify_union_lemma(m, alpha, &b, beta, &c).expect("subsets of one space")
}

/// Which identity an [`AlgebraViolation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraLaw {
    /// `~(φ) = (¬φ)`
    Negation,
    /// `(φ) ⊓ (ψ) = (φ ∧ ψ)`
    Conjunction,
    /// `𝖪ᵢ(φ) = (Kᵢφ)`
    Knowledge,
    /// `E ∪ E′ = S_Ψ↑` for ↪-free `φ` with primitives `Ψ`.
    EventDomain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraViolation {
    pub law: AlgebraLaw,
    pub formula: Formula,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgebraReport {
    pub checks: u64,
    pub violations: Vec<AlgebraViolation>,
}

/// Compares the event operations with the extensions of the matching
/// formulas: negation, knowledge and the event domain for each of
/// `formulas`, conjunction for each pair drawn from `pair_formulas`.
pub fn check_algebra(
    m: &HmsStructure,
    formulas: &[Formula],
    pair_formulas: &[Formula],
) -> Result<AlgebraReport, EvalError> {
    let mut report = AlgebraReport::default();
    let mut check = |law, formula: &Formula, ok: bool| {
        report.checks += 1;
        if !ok {
            report.violations.push(AlgebraViolation {
                law,
                formula: formula.clone(),
            });
        }
    };
    for f in formulas {
        let e = EventPair::of(m, f)?;
        let not = Formula::not(f.clone());
        check(
            AlgebraLaw::Negation,
            &not,
            neg_event(&e) == EventPair::of(m, &not)?,
        );
        for i in 1..=m.agents() {
            let k = Formula::know(i, f.clone());
            let algebra = know_event(m, i, &e).expect("agent in range");
            check(AlgebraLaw::Knowledge, &k, algebra == EventPair::of(m, &k)?);
        }
        if is_implication_free(f) {
            let prims = Vocab::from_atoms(m.atoms(), &primitives(f))
                .ok_or_else(|| EvalError::UnknownAtom(f.to_string()))?;
            check(
                AlgebraLaw::EventDomain,
                f,
                e.domain() == m.up(m.space_set(prims)),
            );
        }
    }
    let events = pair_formulas
        .iter()
        .map(|f| EventPair::of(m, f))
        .collect::<Result<Vec<_>, _>>()?;
    for (x, f) in pair_formulas.iter().enumerate() {
        for (y, g) in pair_formulas.iter().enumerate().skip(x) {
            let and = Formula::and(f.clone(), g.clone());
            check(
                AlgebraLaw::Conjunction,
                &and,
                conj_event(&events[x], &events[y]) == EventPair::of(m, &and)?,
            );
        }
    }
    Ok(report)
}
