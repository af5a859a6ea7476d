use super::kripke::KripkeReport;
use super::{check_len, check_names, ClassSpec, StateSet, StructureError, Vocab};
use crate::semantics::TruthValue;
use crate::syntax::Atom;

/// A single-agent generalized standard model `(S, Σ, π, 𝒦, ρ)`.
///
/// Objective and subjective states are indexed separately. `𝒦` and `π` are
/// given on objective states only and extended to `ρ(S)` on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gsm {
    /// `Φ`, sorted.
    pub atoms: Vec<Atom>,
    pub objective: Vec<String>,
    pub subjective: Vec<String>,
    /// The vocabulary of each subjective state's space.
    pub space: Vec<Vocab>,
    /// `val[s][a]` for objective `s`.
    pub val: Vec<Vec<bool>>,
    /// `𝒦(s)` for objective `s`, as a set of subjective states.
    pub poss: Vec<StateSet>,
    /// `ρ(s)` for objective `s`.
    pub proj: Vec<usize>,
}

impl Gsm {
    pub fn atom_index(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    /// Some objective state projecting to subjective `t`.
    pub fn preimage(&self, t: usize) -> Option<usize> {
        self.proj.iter().position(|&u| u == t)
    }

    /// The extended correspondence on subjective states; `None` outside
    /// `ρ(S)`.
    pub fn subjective_poss(&self, t: usize) -> Option<&StateSet> {
        self.preimage(t).map(|s| &self.poss[s])
    }

    /// The extended valuation on subjective states: `½` off the space's
    /// vocabulary, and otherwise the value at any preimage.
    pub fn subjective_val(&self, t: usize, atom: usize) -> TruthValue {
        if !self.space[t].contains(atom) {
            return TruthValue::Undefined;
        }
        match self.preimage(t) {
            Some(s) => TruthValue::from_bool(self.val[s][atom]),
            None => TruthValue::Undefined,
        }
    }

    pub fn check_well_formed(&self) -> Result<(), StructureError> {
        let n = self.objective.len();
        let m = self.subjective.len();
        if n == 0 {
            return Err(StructureError::NoStates);
        }
        let mut all_names = self.objective.clone();
        all_names.extend(self.subjective.iter().cloned());
        check_names(&all_names)?;
        if !self.atoms.windows(2).all(|w| w[0] < w[1]) {
            return Err(StructureError::Invalid(
                "atoms must be sorted and distinct".into(),
            ));
        }
        check_len("subjective space assignments", m, self.space.len())?;
        check_len("valuation rows", n, self.val.len())?;
        check_len("possibility sets", n, self.poss.len())?;
        check_len("projections", n, self.proj.len())?;
        let full = Vocab::full(self.atoms.len());
        if self.space.iter().any(|v| !v.is_subset(full)) {
            return Err(StructureError::Invalid(
                "subjective space outside the atom set".into(),
            ));
        }
        for s in 0..n {
            check_len("valuation entries", self.atoms.len(), self.val[s].len())?;
            if self.poss[s].len() != m {
                return Err(StructureError::Invalid(
                    "possibility set refers to a missing state".into(),
                ));
            }
            if self.proj[s] >= m {
                return Err(StructureError::UnknownState(format!(
                    "projection of {}",
                    self.objective[s]
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GsmReport {
    /// Objective states with a common image agree on that space's atoms.
    pub cond_1a: bool,
    /// Objective states with a common image have the same possibilities.
    pub cond_1b: bool,
    /// Possibilities stay inside the space of the image.
    pub cond_2: bool,
    /// Properties of the extended correspondence on `ρ(S)`.
    pub kripke: KripkeReport,
}

impl GsmReport {
    pub fn conditions(&self) -> bool {
        self.cond_1a && self.cond_1b && self.cond_2
    }

    pub fn in_class(&self, class: ClassSpec) -> bool {
        self.conditions() && self.kripke.in_class(class)
    }
}

pub fn validate_gsm(m: &Gsm) -> Result<GsmReport, StructureError> {
    m.check_well_formed()?;
    let n = m.objective.len();
    let mut cond_1a = true;
    let mut cond_1b = true;
    let mut cond_2 = true;
    for s in 0..n {
        let image = m.proj[s];
        cond_2 &= m.poss[s].ones().all(|t| m.space[t] == m.space[image]);
        for t in s + 1..n {
            if m.proj[t] == image {
                cond_1a &= m.space[image].members().all(|a| m.val[s][a] == m.val[t][a]);
                cond_1b &= m.poss[s] == m.poss[t];
            }
        }
    }
    let reached: Vec<usize> = (0..m.subjective.len())
        .filter(|&t| m.preimage(t).is_some())
        .collect();
    for s in 0..n {
        if let Some(t) = m.poss[s].ones().find(|&t| m.preimage(t).is_none()) {
            return Err(StructureError::Invalid(format!(
                "possibility set of {} reaches {}, which is not the image of any objective state",
                m.objective[s], m.subjective[t]
            )));
        }
    }
    // Relational properties over ρ(S), read through the extension.
    let mut kripke = KripkeReport {
        reflexive: true,
        transitive: true,
        euclidean: true,
    };
    for &u in &reached {
        let ku = m.subjective_poss(u).unwrap();
        kripke.reflexive &= ku.contains(u);
        for v in ku.ones() {
            let kv = m.subjective_poss(v).unwrap();
            kripke.transitive &= kv.is_subset(ku);
            kripke.euclidean &= ku.is_subset(kv);
        }
    }
    Ok(GsmReport {
        cond_1a,
        cond_1b,
        cond_2,
        kripke,
    })
}
