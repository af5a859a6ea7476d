use super::{check_len, check_names, ClassSpec, StateSet, StructureError, Vocab};
use crate::semantics::TruthValue;
use crate::syntax::Atom;
use std::fmt;

/// The largest atom count an HMS structure may have; the projection table
/// has `2^|Φ|` columns.
pub const MAX_HMS_ATOMS: usize = 12;

const NO_STATE: u32 = u32::MAX;

/// Raw data of an HMS structure. Projections are given only between
/// covering spaces: `cover[s][a]` is the image of `s ∈ S_Ψ` in `S_{Ψ∖{a}}`,
/// present exactly when `a ∈ Ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HmsParts {
    pub agents: usize,
    /// `Φ`, sorted.
    pub atoms: Vec<Atom>,
    pub states: Vec<String>,
    /// The vocabulary of each state's space.
    pub space: Vec<Vocab>,
    /// `val[s][a]`
    pub val: Vec<Vec<TruthValue>>,
    /// `poss[i - 1][s]`
    pub poss: Vec<Vec<StateSet>>,
    pub cover: Vec<Vec<Option<usize>>>,
}

/// An HMS structure over the powerset lattice of its atoms.
///
/// Construction checks only shape: dimensions, names, and that every cover
/// map lands in the right space. The value discipline, surjectivity and
/// commutation of projections are reported by [`validate_hms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HmsStructure {
    parts: HmsParts,
    /// States of each space, indexed by `Vocab::index`.
    spaces: Vec<Vec<usize>>,
    space_sets: Vec<StateSet>,
    /// `proj[s][Ψ]` is `ρ_{space(s),Ψ}(s)` for `Ψ ⊆ space(s)`.
    proj: Vec<Vec<u32>>,
}

impl HmsStructure {
    pub fn new(parts: HmsParts) -> Result<Self, StructureError> {
        let n = parts.states.len();
        if n == 0 {
            return Err(StructureError::NoStates);
        }
        if parts.agents == 0 {
            return Err(StructureError::NoAgents);
        }
        check_names(&parts.states)?;
        let k = parts.atoms.len();
        if k > MAX_HMS_ATOMS {
            return Err(StructureError::Invalid(format!(
                "HMS structures support at most {MAX_HMS_ATOMS} atoms"
            )));
        }
        if !parts.atoms.windows(2).all(|w| w[0] < w[1]) {
            return Err(StructureError::Invalid(
                "atoms must be sorted and distinct".into(),
            ));
        }
        check_len("space assignments", n, parts.space.len())?;
        check_len("valuation rows", n, parts.val.len())?;
        check_len(
            "possibility correspondences",
            parts.agents,
            parts.poss.len(),
        )?;
        check_len("projection rows", n, parts.cover.len())?;
        let full = Vocab::full(k);
        for s in 0..n {
            if !parts.space[s].is_subset(full) {
                return Err(StructureError::Invalid(format!(
                    "state {} lies in a space outside the atom set",
                    parts.states[s]
                )));
            }
            check_len("valuation entries", k, parts.val[s].len())?;
            check_len("projection entries", k, parts.cover[s].len())?;
            for a in 0..k {
                let inside = parts.space[s].contains(a);
                match parts.cover[s][a] {
                    None if inside => {
                        return Err(StructureError::Invalid(format!(
                            "missing projection of {} dropping {}",
                            parts.states[s], parts.atoms[a]
                        )))
                    }
                    Some(_) if !inside => {
                        return Err(StructureError::Invalid(format!(
                            "projection of {} drops {}, which is not in its space",
                            parts.states[s], parts.atoms[a]
                        )))
                    }
                    Some(t) if t >= n || parts.space[t] != parts.space[s].without(a) => {
                        return Err(StructureError::Invalid(format!(
                            "projection of {} dropping {} leaves the covered space",
                            parts.states[s], parts.atoms[a]
                        )))
                    }
                    _ => {}
                }
            }
        }
        for per_agent in &parts.poss {
            check_len("possibility sets", n, per_agent.len())?;
            if per_agent.iter().any(|set| set.len() != n) {
                return Err(StructureError::Invalid(
                    "possibility set refers to a missing state".into(),
                ));
            }
        }

        let mut spaces = vec![Vec::new(); 1 << k];
        for (s, v) in parts.space.iter().enumerate() {
            spaces[v.index()].push(s);
        }
        let space_sets = spaces
            .iter()
            .map(|members| super::state_set(n, members.iter().copied()))
            .collect();

        // Fill projections from larger spaces downwards along the lowest
        // missing atom; commutation is checked separately.
        let mut proj = vec![vec![NO_STATE; 1 << k]; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&s| parts.space[s].len());
        for &s in &order {
            let own = parts.space[s];
            for v in own.subsets() {
                proj[s][v.index()] = if v == own {
                    s as u32
                } else {
                    let a = own.members().find(|&a| !v.contains(a)).unwrap();
                    let t = parts.cover[s][a].unwrap();
                    proj[t][v.index()]
                };
            }
        }
        Ok(HmsStructure {
            parts,
            spaces,
            space_sets,
            proj,
        })
    }

    pub fn parts(&self) -> &HmsParts {
        &self.parts
    }

    pub fn into_parts(self) -> HmsParts {
        self.parts
    }

    pub fn agents(&self) -> usize {
        self.parts.agents
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.parts.atoms
    }

    pub fn num_states(&self) -> usize {
        self.parts.states.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.parts.states[s]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.parts.states.iter().position(|n| n == name)
    }

    pub fn atom_index(&self, atom: &Atom) -> Option<usize> {
        self.parts.atoms.binary_search(atom).ok()
    }

    pub fn space_of(&self, s: usize) -> Vocab {
        self.parts.space[s]
    }

    /// `S_Ψ`
    pub fn space(&self, v: Vocab) -> &[usize] {
        &self.spaces[v.index()]
    }

    pub fn space_set(&self, v: Vocab) -> &StateSet {
        &self.space_sets[v.index()]
    }

    pub fn full_vocab(&self) -> Vocab {
        Vocab::full(self.parts.atoms.len())
    }

    pub fn val(&self, s: usize, atom: usize) -> TruthValue {
        self.parts.val[s][atom]
    }

    /// `𝒦ᵢ(s)` for a 1-based agent.
    pub fn poss(&self, agent: usize, s: usize) -> &StateSet {
        &self.parts.poss[agent - 1][s]
    }

    /// `ρ_{space(s),Ψ}(s)`, or `None` unless `Ψ ⊆ space(s)`.
    pub fn project(&self, s: usize, v: Vocab) -> Option<usize> {
        match self.proj[s][v.index()] {
            NO_STATE => None,
            t => Some(t as usize),
        }
    }

    /// The image of a set of states under projection to `Ψ`; states whose
    /// space does not contain `Ψ` are skipped.
    pub fn project_set(&self, set: &StateSet, v: Vocab) -> StateSet {
        super::state_set(
            self.num_states(),
            set.ones().filter_map(|s| self.project(s, v)),
        )
    }

    /// The space containing every state of `set`, if there is one.
    pub fn common_space(&self, set: &StateSet) -> Option<Vocab> {
        let mut it = set.ones().map(|s| self.space_of(s));
        let first = it.next()?;
        it.all(|v| v == first).then_some(first)
    }

    /// `B↑`, taken space by space when `B` meets several spaces.
    pub fn up(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::with_capacity(self.num_states());
        for s in 0..self.num_states() {
            let own = self.space_of(s);
            if own.subsets().any(|v| {
                let t = self.proj[s][v.index()];
                t != NO_STATE && set.contains(t as usize)
            }) {
                out.insert(s);
            }
        }
        out
    }
}

/// `B↑ = ⋃_{Ψ′ ⊇ Ψ} ρ⁻¹_{Ψ′,Ψ}(B)` for `B ⊆ S_Ψ`.
pub fn up_closure(m: &HmsStructure, set: &StateSet, v: Vocab) -> Result<StateSet, StructureError> {
    if let Some(s) = set.ones().find(|&s| m.space_of(s) != v) {
        return Err(StructureError::Invalid(format!(
            "state {} is not in the space of the given vocabulary",
            m.state_name(s)
        )));
    }
    Ok(m.up(set))
}

/// A failure of the structural invariants, as opposed to the class
/// conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralViolation {
    /// A value is undefined on an atom of the state's space, or defined
    /// outside it.
    ValueDiscipline {
        state: String,
        atom: String,
    },
    EmptySpace {
        space: String,
    },
    NotOnto {
        from: String,
        to: String,
    },
    /// The two ways of dropping a pair of atoms disagree.
    NotCommuting {
        state: String,
        first: String,
        second: String,
    },
    /// A projection changes the value of an atom that survives it.
    ValuationIncoherent {
        state: String,
        atom: String,
    },
}

impl fmt::Display for StructuralViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralViolation::ValueDiscipline { state, atom } => {
                write!(
                    f,
                    "value of {atom} at {state} violates the value discipline"
                )
            }
            StructuralViolation::EmptySpace { space } => write!(f, "space {space} is empty"),
            StructuralViolation::NotOnto { from, to } => {
                write!(f, "projection from {from} to {to} is not onto")
            }
            StructuralViolation::NotCommuting {
                state,
                first,
                second,
            } => {
                write!(
                    f,
                    "dropping {first} then {second} from {state} differs from the other order"
                )
            }
            StructuralViolation::ValuationIncoherent { state, atom } => {
                write!(f, "projecting {state} changes the value of {atom}")
            }
        }
    }
}

/// Per-condition verdicts; each class condition is quantified over all
/// agents and states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HmsReport {
    pub structural: Vec<StructuralViolation>,
    pub confinedness: bool,
    pub gen_reflexivity: bool,
    pub stationarity_a: bool,
    pub stationarity_b: bool,
    pub proj_knowledge: bool,
    pub proj_ignorance: bool,
}

impl HmsReport {
    pub fn well_formed(&self) -> bool {
        self.structural.is_empty()
    }

    /// Membership in `H_n^C`.
    pub fn in_class(&self, class: ClassSpec) -> bool {
        self.well_formed()
            && self.confinedness
            && self.proj_knowledge
            && self.proj_ignorance
            && class.admits(
                self.gen_reflexivity,
                self.stationarity_a,
                self.stationarity_b,
            )
    }

    /// The largest class the structure belongs to, if any.
    pub fn class(&self) -> Option<ClassSpec> {
        (self.well_formed() && self.confinedness && self.proj_knowledge && self.proj_ignorance)
            .then(|| {
                ClassSpec::new(
                    self.gen_reflexivity,
                    self.stationarity_a,
                    self.stationarity_b,
                )
            })
    }
}

fn vocab_name(m: &HmsStructure, v: Vocab) -> String {
    let names: Vec<&str> = v.members().map(|a| m.atoms()[a].name()).collect();
    format!("{{{}}}", names.join(","))
}

fn structural_violations(m: &HmsStructure) -> Vec<StructuralViolation> {
    let mut out = Vec::new();
    let atoms = m.atoms();
    let n = m.num_states();
    for s in 0..n {
        let own = m.space_of(s);
        for (a, atom) in atoms.iter().enumerate() {
            if m.val(s, a).is_defined() != own.contains(a) {
                out.push(StructuralViolation::ValueDiscipline {
                    state: m.state_name(s).into(),
                    atom: atom.to_string(),
                });
            }
        }
    }
    for v in Vocab::all(atoms.len()) {
        if m.space(v).is_empty() {
            out.push(StructuralViolation::EmptySpace {
                space: vocab_name(m, v),
            });
        }
    }
    for s in 0..n {
        let own = m.space_of(s);
        let members: Vec<usize> = own.members().collect();
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                let ab = m.parts.cover[m.parts.cover[s][a].unwrap()][b];
                let ba = m.parts.cover[m.parts.cover[s][b].unwrap()][a];
                if ab != ba {
                    out.push(StructuralViolation::NotCommuting {
                        state: m.state_name(s).into(),
                        first: atoms[a].to_string(),
                        second: atoms[b].to_string(),
                    });
                }
            }
            let t = m.parts.cover[s][a].unwrap();
            for b in members.iter().copied().filter(|&b| b != a) {
                if m.val(t, b) != m.val(s, b) {
                    out.push(StructuralViolation::ValuationIncoherent {
                        state: m.state_name(s).into(),
                        atom: atoms[b].to_string(),
                    });
                }
            }
        }
    }
    for upper in Vocab::all(atoms.len()) {
        for a in upper.members() {
            let lower = upper.without(a);
            let image: Vec<usize> = m
                .space(upper)
                .iter()
                .map(|&s| m.parts.cover[s][a].unwrap())
                .collect();
            if !m.space(upper).is_empty() && m.space(lower).iter().any(|t| !image.contains(t)) {
                out.push(StructuralViolation::NotOnto {
                    from: vocab_name(m, upper),
                    to: vocab_name(m, lower),
                });
            }
        }
    }
    out
}

pub fn validate_hms(m: &HmsStructure) -> HmsReport {
    let structural = structural_violations(m);
    let mut report = HmsReport {
        structural,
        confinedness: true,
        gen_reflexivity: true,
        stationarity_a: true,
        stationarity_b: true,
        proj_knowledge: true,
        proj_ignorance: true,
    };
    let n = m.num_states();
    for i in 1..=m.agents() {
        let ups: Vec<StateSet> = (0..n).map(|s| m.up(m.poss(i, s))).collect();
        for s in 0..n {
            let ks = m.poss(i, s);
            let own = m.space_of(s);
            let confined_in = |v: Vocab| ks.is_subset(m.space_set(v));
            report.confinedness &= own.subsets().any(confined_in);
            report.gen_reflexivity &= ups[s].contains(s);
            for t in ks.ones() {
                let kt = m.poss(i, t);
                report.stationarity_a &= kt.is_subset(ks);
                report.stationarity_b &= ks.is_subset(kt);
            }
            for v2 in own.subsets().filter(|&v| confined_in(v)) {
                for v1 in v2.subsets() {
                    let lhs = m.project_set(ks, v1);
                    let rhs = m.poss(i, m.project(s, v1).unwrap());
                    report.proj_knowledge &= &lhs == rhs;
                }
            }
            for v in own.subsets() {
                report.proj_ignorance &= ups[s].is_subset(&ups[m.project(s, v).unwrap()]);
            }
        }
    }
    report
}
