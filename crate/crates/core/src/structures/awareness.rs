use super::kripke::KripkeReport;
use super::{check_len, KripkeStructure, StructureError};
use crate::syntax::{primitives, Atom, AtomSet, Formula, FormulaEnumerator, Operators};
use std::collections::BTreeSet;

/// Size bound of the finite test language used to judge whether an explicit
/// awareness set is generated by primitive propositions.
pub const PG_TEST_SIZE: usize = 3;

/// What an agent is aware of at a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AwarenessSet {
    /// Exactly the formulas whose atoms all lie in the given vocabulary.
    Generated(AtomSet),
    /// Exactly the listed formulas.
    Explicit(BTreeSet<Formula>),
}

impl AwarenessSet {
    pub fn contains(&self, formula: &Formula) -> bool {
        match self {
            AwarenessSet::Generated(vocab) => primitives(formula).is_subset(vocab),
            AwarenessSet::Explicit(set) => set.contains(formula),
        }
    }

    /// `𝒜ᵢ(s) ∩ Φ`: the atoms the agent is aware of.
    pub fn atom_component(&self) -> AtomSet {
        match self {
            AwarenessSet::Generated(vocab) => vocab.clone(),
            AwarenessSet::Explicit(set) => set
                .iter()
                .filter_map(|f| match f {
                    Formula::Prop(a) => Some(a.clone()),
                    _ => None,
                })
                .collect(),
        }
    }

    /// Whether membership agrees with "all atoms are in the atom component"
    /// on every formula of `test_language` and on every listed formula.
    pub fn is_generated_on(&self, test_language: &[Formula]) -> bool {
        match self {
            AwarenessSet::Generated(_) => true,
            AwarenessSet::Explicit(set) => {
                let atoms = self.atom_component();
                set.iter()
                    .chain(test_language)
                    .all(|f| set.contains(f) == primitives(f).is_subset(&atoms))
            }
        }
    }
}

/// A Kripke frame together with awareness sets `𝒜ᵢ(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwarenessStructure {
    pub frame: KripkeStructure,
    /// `awareness[i - 1][s]` is `𝒜ᵢ(s)`.
    pub awareness: Vec<Vec<AwarenessSet>>,
}

impl AwarenessStructure {
    pub fn agents(&self) -> usize {
        self.frame.agents
    }

    pub fn num_states(&self) -> usize {
        self.frame.num_states()
    }

    pub fn awareness(&self, agent: usize, state: usize) -> &AwarenessSet {
        &self.awareness[agent - 1][state]
    }

    pub fn check_well_formed(&self) -> Result<(), StructureError> {
        self.frame.check_well_formed()?;
        check_len(
            "awareness functions",
            self.frame.agents,
            self.awareness.len(),
        )?;
        for per_agent in &self.awareness {
            check_len("awareness sets", self.frame.num_states(), per_agent.len())?;
            for set in per_agent {
                let atoms = match set {
                    AwarenessSet::Generated(v) => v.clone(),
                    AwarenessSet::Explicit(fs) => fs.iter().flat_map(primitives).collect(),
                };
                if let Some(a) = atoms.iter().find(|a| self.frame.atom_index(a).is_none()) {
                    return Err(StructureError::UnknownAtom(a.to_string()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AwarenessReport {
    /// Awareness is generated by primitive propositions.
    pub pg: bool,
    /// Agents know what they are aware of.
    pub ka: bool,
    /// Propositionally determined: `pg ∧ ka`.
    pub pd: bool,
    pub kripke: KripkeReport,
}

/// The finite language over which explicit awareness sets are checked for
/// being generated: modal depth ≤ 1, at most `size` nodes.
pub(crate) fn pg_test_language(atoms: &[Atom], agents: usize, size: usize) -> Vec<Formula> {
    let ops = Operators {
        aware: true,
        xknow: true,
        ..Operators::k()
    };
    FormulaEnumerator::new(atoms.to_vec(), agents, ops, size)
        .with_max_depth(1)
        .all()
}

pub fn validate_awareness(m: &AwarenessStructure) -> Result<AwarenessReport, StructureError> {
    m.check_well_formed()?;
    let explicit = m
        .awareness
        .iter()
        .flatten()
        .any(|a| matches!(a, AwarenessSet::Explicit(_)));
    let test_language = if explicit {
        pg_test_language(&m.frame.atoms, m.agents(), PG_TEST_SIZE)
    } else {
        Vec::new()
    };
    let pg = m
        .awareness
        .iter()
        .flatten()
        .all(|a| a.is_generated_on(&test_language));
    let mut ka = true;
    for (i, per_agent) in m.frame.poss.iter().enumerate() {
        for (s, ks) in per_agent.iter().enumerate() {
            for t in ks.ones() {
                ka &= m.awareness[i][s] == m.awareness[i][t];
            }
        }
    }
    Ok(AwarenessReport {
        pg,
        ka,
        pd: pg && ka,
        kripke: KripkeReport::of(&m.frame.poss),
    })
}
