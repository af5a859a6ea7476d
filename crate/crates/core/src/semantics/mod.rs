//! Truth evaluation for the four structure kinds.
//!
//! Kripke and awareness structures are two-valued. HMS structures use the
//! three-valued clauses with `↪`; [`hms_values`] evaluates them by the
//! induced truth tables and [`clauses`] by literal recursion on the truth
//! and falsity clauses. Generalized standard models are two-valued at
//! objective states and three-valued at subjective ones.

pub mod clauses;
mod frame;
mod truth;

pub use clauses::{clause_value, sat, sat_neg, Assignment, ClauseModel};
pub use frame::{Ext, Frame, MAX_FRAME_STATES};
pub use truth::TruthValue;

use crate::structures::{
    state_set, AwarenessStructure, Gsm, HmsStructure, KripkeStructure, StateSet, Vocab,
};
use crate::syntax::{primitives, Formula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("unknown atom {0}")]
    UnknownAtom(String),
    #[error("agent {agent} is out of range (structure has {agents} agents)")]
    AgentOutOfRange { agent: usize, agents: usize },
    #[error("operator {0} is not interpreted in this kind of structure")]
    Unsupported(&'static str),
    #[error("structure has more than {0} states")]
    TooLarge(usize),
}

pub(crate) fn check_agent(agent: usize, agents: usize) -> Result<(), EvalError> {
    if agent == 0 || agent > agents {
        Err(EvalError::AgentOutOfRange { agent, agents })
    } else {
        Ok(())
    }
}

fn check_agents(f: &Formula, agents: usize) -> Result<(), EvalError> {
    let mut result = Ok(());
    f.visit(&mut |g| {
        if let Formula::Know(i, _) | Formula::Aware(i, _) | Formula::XKnow(i, _) = g {
            if result.is_ok() {
                result = check_agent(*i, agents);
            }
        }
    });
    result
}

fn check_state(s: usize, n: usize) -> Result<(), EvalError> {
    if s < n {
        Ok(())
    } else {
        Err(EvalError::UnknownState(format!("#{s}")))
    }
}

/// The set of states where `φ` is true and the set where it is false.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Extension {
    pub truths: StateSet,
    pub falsities: StateSet,
}

impl Extension {
    pub fn from_values(values: &[TruthValue]) -> Self {
        let n = values.len();
        Extension {
            truths: state_set(n, (0..n).filter(|&s| values[s].is_true())),
            falsities: state_set(n, (0..n).filter(|&s| values[s].is_false())),
        }
    }

    /// States where the formula is defined.
    pub fn domain(&self) -> StateSet {
        let mut d = self.truths.clone();
        d.union_with(&self.falsities);
        d
    }
}

// ---------------------------------------------------------------- Kripke

/// Truth of `φ ∈ L^K` at every state.
pub fn kripke_values(m: &KripkeStructure, f: &Formula) -> Result<Vec<bool>, EvalError> {
    check_agents(f, m.agents)?;
    kripke_rec(m, f)
}

fn kripke_rec(m: &KripkeStructure, f: &Formula) -> Result<Vec<bool>, EvalError> {
    let n = m.num_states();
    Ok(match f {
        Formula::Top => vec![true; n],
        Formula::Prop(p) => {
            let a = m
                .atom_index(p)
                .ok_or_else(|| EvalError::UnknownAtom(p.to_string()))?;
            m.val.iter().map(|row| row[a]).collect()
        }
        Formula::Not(a) => kripke_rec(m, a)?.into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => {
            let (va, vb) = (kripke_rec(m, a)?, kripke_rec(m, b)?);
            va.iter().zip(&vb).map(|(x, y)| *x && *y).collect()
        }
        Formula::Know(i, a) => {
            let va = kripke_rec(m, a)?;
            (0..n)
                .map(|s| m.poss(*i, s).ones().all(|t| va[t]))
                .collect()
        }
        Formula::NImp(..) => return Err(EvalError::Unsupported("~>")),
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}

pub fn eval_kripke(m: &KripkeStructure, s: usize, f: &Formula) -> Result<bool, EvalError> {
    check_state(s, m.num_states())?;
    Ok(kripke_values(m, f)?[s])
}

// ------------------------------------------------------------- awareness

/// Truth of `φ ∈ L^{K,X,A}` at every state.
pub fn awareness_values(m: &AwarenessStructure, f: &Formula) -> Result<Vec<bool>, EvalError> {
    check_agents(f, m.agents())?;
    awareness_rec(m, f)
}

fn awareness_rec(m: &AwarenessStructure, f: &Formula) -> Result<Vec<bool>, EvalError> {
    let n = m.num_states();
    let aware = |i: usize, a: &Formula| -> Vec<bool> {
        (0..n).map(|s| m.awareness(i, s).contains(a)).collect()
    };
    Ok(match f {
        Formula::Top => vec![true; n],
        Formula::Prop(p) => {
            let a = m
                .frame
                .atom_index(p)
                .ok_or_else(|| EvalError::UnknownAtom(p.to_string()))?;
            m.frame.val.iter().map(|row| row[a]).collect()
        }
        Formula::Not(a) => awareness_rec(m, a)?.into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => {
            let (va, vb) = (awareness_rec(m, a)?, awareness_rec(m, b)?);
            va.iter().zip(&vb).map(|(x, y)| *x && *y).collect()
        }
        Formula::Know(i, a) => {
            let va = awareness_rec(m, a)?;
            (0..n)
                .map(|s| m.frame.poss(*i, s).ones().all(|t| va[t]))
                .collect()
        }
        Formula::Aware(i, a) => aware(*i, a),
        Formula::XKnow(i, a) => {
            let va = awareness_rec(m, a)?;
            let aw = aware(*i, a);
            (0..n)
                .map(|s| aw[s] && m.frame.poss(*i, s).ones().all(|t| va[t]))
                .collect()
        }
        Formula::NImp(..) => return Err(EvalError::Unsupported("~>")),
    })
}

pub fn eval_awareness(m: &AwarenessStructure, s: usize, f: &Formula) -> Result<bool, EvalError> {
    check_state(s, m.num_states())?;
    Ok(awareness_values(m, f)?[s])
}

// ------------------------------------------------------------------- HMS

/// Values of `φ ∈ L^{K,↪}` at every state, computed bottom-up with the
/// connective tables.
pub fn hms_values(m: &HmsStructure, f: &Formula) -> Result<Vec<TruthValue>, EvalError> {
    check_agents(f, m.agents())?;
    hms_rec(m, f)
}

fn hms_rec(m: &HmsStructure, f: &Formula) -> Result<Vec<TruthValue>, EvalError> {
    let n = m.num_states();
    Ok(match f {
        Formula::Top => vec![TruthValue::True; n],
        Formula::Prop(p) => {
            let a = m
                .atom_index(p)
                .ok_or_else(|| EvalError::UnknownAtom(p.to_string()))?;
            (0..n).map(|s| m.val(s, a)).collect()
        }
        Formula::Not(a) => hms_rec(m, a)?.into_iter().map(TruthValue::not).collect(),
        Formula::And(a, b) => {
            let (va, vb) = (hms_rec(m, a)?, hms_rec(m, b)?);
            va.iter().zip(&vb).map(|(x, y)| x.and(*y)).collect()
        }
        Formula::NImp(a, b) => {
            let (va, vb) = (hms_rec(m, a)?, hms_rec(m, b)?);
            va.iter().zip(&vb).map(|(x, y)| x.nimp(*y)).collect()
        }
        Formula::Know(i, a) => {
            let va = hms_rec(m, a)?;
            (0..n)
                .map(|s| {
                    if !va[s].is_defined() {
                        TruthValue::Undefined
                    } else {
                        TruthValue::from_bool(m.poss(*i, s).ones().all(|t| va[t].is_true()))
                    }
                })
                .collect()
        }
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}

pub fn eval_hms(m: &HmsStructure, s: usize, f: &Formula) -> Result<TruthValue, EvalError> {
    check_state(s, m.num_states())?;
    Ok(hms_values(m, f)?[s])
}

pub fn extension(m: &HmsStructure, f: &Formula) -> Result<Extension, EvalError> {
    Ok(Extension::from_values(&hms_values(m, f)?))
}

/// The subjective-state reading of an HMS structure for `↪`-free formulas:
/// `½` unless every atom of `φ` is in the vocabulary of the state's space,
/// and two-valued clauses otherwise.
pub fn eval_hms_subjective(
    m: &HmsStructure,
    s: usize,
    f: &Formula,
) -> Result<TruthValue, EvalError> {
    check_state(s, m.num_states())?;
    check_agents(f, m.agents())?;
    subjective_rec(m, s, f)
}

fn subjective_rec(m: &HmsStructure, s: usize, f: &Formula) -> Result<TruthValue, EvalError> {
    let vocab = Vocab::from_atoms(m.atoms(), &primitives(f))
        .ok_or_else(|| EvalError::UnknownAtom(format!("{}", f)))?;
    if !vocab.is_subset(m.space_of(s)) {
        return Ok(TruthValue::Undefined);
    }
    Ok(match f {
        Formula::Top => TruthValue::True,
        Formula::Prop(p) => m.val(s, m.atom_index(p).unwrap()),
        Formula::Not(a) => subjective_rec(m, s, a)?.not(),
        Formula::And(a, b) => TruthValue::from_bool(
            subjective_rec(m, s, a)?.is_true() && subjective_rec(m, s, b)?.is_true(),
        ),
        Formula::Know(i, a) => {
            let mut all = true;
            for t in m.poss(*i, s).ones() {
                all &= subjective_rec(m, t, a)?.is_true();
            }
            TruthValue::from_bool(all)
        }
        Formula::NImp(..) => return Err(EvalError::Unsupported("~>")),
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}

// ------------------------------------------------------------------- GSM

/// A point of a generalized standard model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GsmPoint {
    Objective(usize),
    Subjective(usize),
}

/// Single-agent `L^K` evaluation. Objective points are two-valued.
/// Subjective points in `S_Ψ` give `½` to formulas with atoms outside `Ψ`
/// and use the extended `𝒦` and `π` otherwise; off `ρ(S)` the extended
/// correspondence is taken to be empty.
pub fn eval_gsm(m: &Gsm, point: GsmPoint, f: &Formula) -> Result<TruthValue, EvalError> {
    match point {
        GsmPoint::Objective(s) => check_state(s, m.objective.len())?,
        GsmPoint::Subjective(t) => check_state(t, m.subjective.len())?,
    }
    check_agents(f, 1)?;
    gsm_rec(m, point, f)
}

fn gsm_rec(m: &Gsm, point: GsmPoint, f: &Formula) -> Result<TruthValue, EvalError> {
    let atom = |p: &crate::syntax::Atom| {
        m.atom_index(p)
            .ok_or_else(|| EvalError::UnknownAtom(p.to_string()))
    };
    if let GsmPoint::Subjective(t) = point {
        let mut inside = true;
        for p in primitives(f) {
            inside &= m.space[t].contains(atom(&p)?);
        }
        if !inside {
            return Ok(TruthValue::Undefined);
        }
    }
    Ok(match f {
        Formula::Top => TruthValue::True,
        Formula::Prop(p) => match point {
            GsmPoint::Objective(s) => TruthValue::from_bool(m.val[s][atom(p)?]),
            GsmPoint::Subjective(t) => m.subjective_val(t, atom(p)?),
        },
        Formula::Not(a) => TruthValue::from_bool(!gsm_rec(m, point, a)?.is_true()),
        Formula::And(a, b) => TruthValue::from_bool(
            gsm_rec(m, point, a)?.is_true() && gsm_rec(m, point, b)?.is_true(),
        ),
        Formula::Know(_, a) => {
            let empty = StateSet::with_capacity(m.subjective.len());
            let successors = match point {
                GsmPoint::Objective(s) => &m.poss[s],
                GsmPoint::Subjective(t) => m.subjective_poss(t).unwrap_or(&empty),
            };
            let mut all = true;
            for u in successors.ones() {
                all &= gsm_rec(m, GsmPoint::Subjective(u), a)?.is_true();
            }
            TruthValue::from_bool(all)
        }
        Formula::NImp(..) => return Err(EvalError::Unsupported("~>")),
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}

// ----------------------------------------------------------- assignments

/// Table-driven value of a modal-free formula under an assignment.
pub fn eval_assignment(assignment: &Assignment, f: &Formula) -> Result<TruthValue, EvalError> {
    Ok(match f {
        Formula::Top => TruthValue::True,
        Formula::Prop(p) => assignment.atom_value(0, p)?,
        Formula::Not(a) => eval_assignment(assignment, a)?.not(),
        Formula::And(a, b) => eval_assignment(assignment, a)?.and(eval_assignment(assignment, b)?),
        Formula::NImp(a, b) => {
            eval_assignment(assignment, a)?.nimp(eval_assignment(assignment, b)?)
        }
        Formula::Know(i, _) => {
            return Err(EvalError::AgentOutOfRange {
                agent: *i,
                agents: 0,
            })
        }
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}
