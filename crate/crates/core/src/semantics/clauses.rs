//! Direct recursion on the truth and falsity clauses of the three-valued
//! semantics. Slow and literal; the reference the table evaluators are
//! tested against.

use super::{EvalError, TruthValue};
use crate::structures::HmsStructure;
use crate::syntax::{Atom, Formula};
use std::collections::BTreeMap;

/// What the clauses need from a model: atomic values and successors.
pub trait ClauseModel {
    fn atom_value(&self, s: usize, atom: &Atom) -> Result<TruthValue, EvalError>;
    fn successors(&self, agent: usize, s: usize) -> Result<Vec<usize>, EvalError>;
}

impl ClauseModel for HmsStructure {
    fn atom_value(&self, s: usize, atom: &Atom) -> Result<TruthValue, EvalError> {
        let a = self
            .atom_index(atom)
            .ok_or_else(|| EvalError::UnknownAtom(atom.to_string()))?;
        Ok(self.val(s, a))
    }

    fn successors(&self, agent: usize, s: usize) -> Result<Vec<usize>, EvalError> {
        super::check_agent(agent, self.agents())?;
        Ok(self.poss(agent, s).ones().collect())
    }
}

/// A single point: an assignment of truth values to atoms, with no agents.
pub type Assignment = BTreeMap<Atom, TruthValue>;

impl ClauseModel for Assignment {
    fn atom_value(&self, _: usize, atom: &Atom) -> Result<TruthValue, EvalError> {
        self.get(atom)
            .copied()
            .ok_or_else(|| EvalError::UnknownAtom(atom.to_string()))
    }

    fn successors(&self, agent: usize, _: usize) -> Result<Vec<usize>, EvalError> {
        Err(EvalError::AgentOutOfRange { agent, agents: 0 })
    }
}

/// `(M, s) ⊨ φ`
pub fn sat<M: ClauseModel + ?Sized>(m: &M, s: usize, f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Prop(p) => m.atom_value(s, p)? == TruthValue::True,
        Formula::Not(a) => sat_neg(m, s, a)?,
        Formula::And(a, b) => sat(m, s, a)? && sat(m, s, b)?,
        Formula::NImp(a, b) => {
            (sat(m, s, a)? && sat(m, s, b)?)
                || !defined(m, s, a)?
                || (sat_neg(m, s, a)? && defined(m, s, b)?)
        }
        Formula::Know(i, a) => {
            defined(m, s, a)? && {
                let mut all = true;
                for t in m.successors(*i, s)? {
                    all &= sat(m, t, a)?;
                }
                all
            }
        }
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}

/// `(M, s) ⊨ ¬φ`
pub fn sat_neg<M: ClauseModel + ?Sized>(m: &M, s: usize, f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Top => false,
        Formula::Prop(p) => m.atom_value(s, p)? == TruthValue::False,
        Formula::Not(a) => sat(m, s, a)?,
        Formula::And(a, b) => {
            let (ta, fa) = (sat(m, s, a)?, sat_neg(m, s, a)?);
            let (tb, fb) = (sat(m, s, b)?, sat_neg(m, s, b)?);
            (fa && tb) || (ta && fb) || (fa && fb)
        }
        Formula::NImp(a, b) => sat(m, s, a)? && sat_neg(m, s, b)?,
        Formula::Know(..) => !sat(m, s, f)? && defined(m, s, f.children()[0])?,
        Formula::Aware(..) => return Err(EvalError::Unsupported("A")),
        Formula::XKnow(..) => return Err(EvalError::Unsupported("X")),
    })
}

fn defined<M: ClauseModel + ?Sized>(m: &M, s: usize, f: &Formula) -> Result<bool, EvalError> {
    Ok(sat(m, s, f)? || sat_neg(m, s, f)?)
}

/// `1` if `⊨ φ`, `0` if `⊨ ¬φ`, `½` otherwise.
pub fn clause_value<M: ClauseModel + ?Sized>(
    m: &M,
    s: usize,
    f: &Formula,
) -> Result<TruthValue, EvalError> {
    let t = sat(m, s, f)?;
    let n = sat_neg(m, s, f)?;
    debug_assert!(!(t && n), "a formula is both true and false");
    Ok(match (t, n) {
        (true, _) => TruthValue::True,
        (false, true) => TruthValue::False,
        (false, false) => TruthValue::Undefined,
    })
}
