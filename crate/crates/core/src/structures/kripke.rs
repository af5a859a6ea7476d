use super::{check_len, check_names, ClassSpec, StateSet, StructureError};
use crate::syntax::Atom;

/// A Kripke structure `(Σ, π, 𝒦₁, …, 𝒦ₙ)` with possibility correspondences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeStructure {
    pub agents: usize,
    /// `Φ`, sorted.
    pub atoms: Vec<Atom>,
    pub states: Vec<String>,
    /// `poss[i - 1][s]` is `𝒦ᵢ(s)`.
    pub poss: Vec<Vec<StateSet>>,
    /// `val[s][a]` is `π(s, atoms[a])`.
    pub val: Vec<Vec<bool>>,
}

impl KripkeStructure {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// `𝒦ᵢ(s)` for a 1-based agent.
    pub fn poss(&self, agent: usize, state: usize) -> &StateSet {
        &self.poss[agent - 1][state]
    }

    pub fn atom_index(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// Checks that every map is total and every referenced state exists.
    pub fn check_well_formed(&self) -> Result<(), StructureError> {
        let n = self.num_states();
        if n == 0 {
            return Err(StructureError::NoStates);
        }
        if self.agents == 0 {
            return Err(StructureError::NoAgents);
        }
        check_names(&self.states)?;
        if !self.atoms.windows(2).all(|w| w[0] < w[1]) {
            return Err(StructureError::Invalid(
                "atoms must be sorted and distinct".into(),
            ));
        }
        check_len("possibility correspondences", self.agents, self.poss.len())?;
        for per_agent in &self.poss {
            check_len("possibility sets", n, per_agent.len())?;
            for set in per_agent {
                if set.len() != n {
                    return Err(StructureError::Invalid(
                        "possibility set refers to a missing state".into(),
                    ));
                }
            }
        }
        check_len("valuation rows", n, self.val.len())?;
        for row in &self.val {
            check_len("valuation entries", self.atoms.len(), row.len())?;
        }
        Ok(())
    }
}

/// Relational properties of the possibility correspondences, each quantified
/// over all agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KripkeReport {
    pub reflexive: bool,
    pub transitive: bool,
    pub euclidean: bool,
}

impl KripkeReport {
    pub fn partitional(&self) -> bool {
        self.reflexive && self.transitive && self.euclidean
    }

    pub fn in_class(&self, class: ClassSpec) -> bool {
        class.admits(self.reflexive, self.transitive, self.euclidean)
    }

    pub(crate) fn of(poss: &[Vec<StateSet>]) -> KripkeReport {
        let mut report = KripkeReport {
            reflexive: true,
            transitive: true,
            euclidean: true,
        };
        for per_agent in poss {
            for (s, ks) in per_agent.iter().enumerate() {
                report.reflexive &= ks.contains(s);
                for t in ks.ones() {
                    let kt = &per_agent[t];
                    report.transitive &= kt.is_subset(ks);
                    report.euclidean &= ks.is_subset(kt);
                }
            }
        }
        report
    }
}

pub fn validate_kripke(m: &KripkeStructure) -> Result<KripkeReport, StructureError> {
    m.check_well_formed()?;
    Ok(KripkeReport::of(&m.poss))
}

#[cfg(test)]
mod tests {
    use super::super::state_set;
    use super::*;

    fn two_states(ks: &[usize], kt: &[usize]) -> KripkeStructure {
        KripkeStructure {
            agents: 1,
            atoms: vec![Atom::new("p").unwrap()],
            states: vec!["s".into(), "t".into()],
            poss: vec![vec![
                state_set(2, ks.iter().copied()),
                state_set(2, kt.iter().copied()),
            ]],
            val: vec![vec![true], vec![false]],
        }
    }

    #[test]
    fn singleton_reflexive_is_partitional() {
        let m = KripkeStructure {
            agents: 1,
            atoms: vec![],
            states: vec!["s".into()],
            poss: vec![vec![state_set(1, [0])]],
            val: vec![vec![]],
        };
        let r = validate_kripke(&m).unwrap();
        assert!(r.reflexive && r.transitive && r.euclidean && r.partitional());
    }

    #[test]
    fn serial_but_not_reflexive() {
        let r = validate_kripke(&two_states(&[1], &[1])).unwrap();
        assert!(!r.reflexive);
        assert!(r.transitive);
        assert!(r.euclidean);
    }

    #[test]
    fn transitive_not_euclidean() {
        let r = validate_kripke(&two_states(&[0, 1], &[1])).unwrap();
        assert!(r.transitive);
        assert!(!r.euclidean);
        assert!(r.in_class(ClassSpec::new(true, true, false)));
        assert!(!r.in_class(ClassSpec::PARTITIONAL));
    }

    #[test]
    fn malformed_structures_are_rejected() {
        let mut m = two_states(&[0], &[1]);
        m.poss[0][1] = state_set(3, [2]);
        assert!(validate_kripke(&m).is_err());
        let mut m = two_states(&[0], &[1]);
        m.states[1] = "s".into();
        assert_eq!(
            validate_kripke(&m),
            Err(StructureError::DuplicateState("s".into()))
        );
        let mut m = two_states(&[0], &[1]);
        m.val.pop();
        assert!(validate_kripke(&m).is_err());
    }
}
