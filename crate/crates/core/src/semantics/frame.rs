use super::{check_agent, EvalError, TruthValue};
use crate::structures::{
    AwarenessSet, AwarenessStructure, Gsm, HmsStructure, KripkeStructure, Vocab,
};
use crate::syntax::{primitives, Atom, Formula};

pub const MAX_FRAME_STATES: usize = 64;

/// Truth and falsity sets as bitmasks over at most 64 states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ext {
    pub t: u64,
    pub f: u64,
}

impl Ext {
    pub fn defined(self) -> u64 {
        self.t | self.f
    }

    pub fn value(self, s: usize) -> TruthValue {
        if self.t >> s & 1 == 1 {
            TruthValue::True
        } else if self.f >> s & 1 == 1 {
            TruthValue::False
        } else {
            TruthValue::Undefined
        }
    }

    pub fn not(self) -> Ext {
        Ext {
            t: self.f,
            f: self.t,
        }
    }

    pub fn and(self, other: Ext) -> Ext {
        let t = self.t & other.t;
        Ext {
            t,
            f: self.defined() & other.defined() & !t,
        }
    }

    /// `↪`; `all` is the mask of every state.
    pub fn nimp(self, other: Ext, all: u64) -> Ext {
        Ext {
            t: (all & !self.defined()) | (self.t & other.t) | (self.f & other.defined()),
            f: self.t & other.f,
        }
    }
}

/// Any structure with at most 64 states, compiled to bitmasks. Every kind
/// shares the three-valued connective tables; two-valued kinds simply never
/// produce `½`.
///
/// States carrying an awareness vocabulary read `Xᵢ` and `Aᵢ` through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    atoms: Vec<Atom>,
    n: usize,
    agents: usize,
    atom_ext: Vec<Ext>,
    /// `poss[i - 1][s]`
    poss: Vec<Vec<u64>>,
    /// `aware[i - 1][s]`: the atoms agent `i` is aware of at `s`.
    aware: Vec<Vec<Option<Vocab>>>,
}

fn mask(set: impl Iterator<Item = usize>) -> u64 {
    set.fold(0, |m, s| m | 1 << s)
}

fn fits(n: usize) -> Result<(), EvalError> {
    if n > MAX_FRAME_STATES {
        Err(EvalError::TooLarge(MAX_FRAME_STATES))
    } else {
        Ok(())
    }
}

impl Frame {
    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn poss(&self, agent: usize, s: usize) -> u64 {
        self.poss[agent - 1][s]
    }

    pub fn from_hms(m: &HmsStructure) -> Result<Frame, EvalError> {
        let n = m.num_states();
        fits(n)?;
        let atom_ext = (0..m.atoms().len())
            .map(|a| Ext {
                t: mask((0..n).filter(|&s| m.val(s, a).is_true())),
                f: mask((0..n).filter(|&s| m.val(s, a).is_false())),
            })
            .collect();
        Ok(Frame {
            atoms: m.atoms().to_vec(),
            n,
            agents: m.agents(),
            atom_ext,
            poss: (1..=m.agents())
                .map(|i| (0..n).map(|s| mask(m.poss(i, s).ones())).collect())
                .collect(),
            aware: vec![vec![None; n]; m.agents()],
        })
    }

    pub fn from_kripke(m: &KripkeStructure) -> Result<Frame, EvalError> {
        let n = m.num_states();
        fits(n)?;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let atom_ext = (0..m.atoms.len())
            .map(|a| {
                let t = mask((0..n).filter(|&s| m.val[s][a]));
                Ext { t, f: all & !t }
            })
            .collect();
        Ok(Frame {
            atoms: m.atoms.clone(),
            n,
            agents: m.agents,
            atom_ext,
            poss: m
                .poss
                .iter()
                .map(|per| per.iter().map(|k| mask(k.ones())).collect())
                .collect(),
            aware: vec![vec![None; n]; m.agents],
        })
    }

    /// Requires every awareness set to be generated by atoms.
    pub fn from_awareness(m: &AwarenessStructure) -> Result<Frame, EvalError> {
        let mut frame = Frame::from_kripke(&m.frame)?;
        for (i, per_agent) in m.awareness.iter().enumerate() {
            for (s, set) in per_agent.iter().enumerate() {
                match set {
                    AwarenessSet::Generated(atoms) => {
                        frame.aware[i][s] = Vocab::from_atoms(&m.frame.atoms, atoms);
                        if frame.aware[i][s].is_none() {
                            return Err(EvalError::UnknownAtom(format!("{atoms:?}")));
                        }
                    }
                    AwarenessSet::Explicit(_) => {
                        return Err(EvalError::Unsupported("explicit awareness set"))
                    }
                }
            }
        }
        Ok(frame)
    }

    /// Objective states first, then subjective states. Subjective states off
    /// `ρ(S)` get no possibilities.
    pub fn from_gsm(m: &Gsm) -> Result<Frame, EvalError> {
        let (no, ns) = (m.objective.len(), m.subjective.len());
        let n = no + ns;
        fits(n)?;
        let atom_ext = (0..m.atoms.len())
            .map(|a| {
                let value = |s: usize| {
                    if s < no {
                        TruthValue::from_bool(m.val[s][a])
                    } else {
                        m.subjective_val(s - no, a)
                    }
                };
                Ext {
                    t: mask((0..n).filter(|&s| value(s).is_true())),
                    f: mask((0..n).filter(|&s| value(s).is_false())),
                }
            })
            .collect();
        let poss = (0..n)
            .map(|s| {
                let set = if s < no {
                    Some(&m.poss[s])
                } else {
                    m.subjective_poss(s - no)
                };
                set.map_or(0, |k| mask(k.ones()) << no)
            })
            .collect();
        Ok(Frame {
            atoms: m.atoms.clone(),
            n,
            agents: 1,
            atom_ext,
            poss: vec![poss],
            aware: vec![vec![None; n]],
        })
    }

    /// Side-by-side copy of two frames over the same atoms and agents; the
    /// states of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Frame) -> Result<Frame, EvalError> {
        if self.atoms != other.atoms || self.agents != other.agents {
            return Err(EvalError::Unsupported(
                "union of frames with different signatures",
            ));
        }
        let n = self.n + other.n;
        fits(n)?;
        let shift = self.n;
        Ok(Frame {
            atoms: self.atoms.clone(),
            n,
            agents: self.agents,
            atom_ext: self
                .atom_ext
                .iter()
                .zip(&other.atom_ext)
                .map(|(a, b)| Ext {
                    t: a.t | b.t << shift,
                    f: a.f | b.f << shift,
                })
                .collect(),
            poss: self
                .poss
                .iter()
                .zip(&other.poss)
                .map(|(a, b)| {
                    a.iter()
                        .copied()
                        .chain(b.iter().map(|k| k << shift))
                        .collect()
                })
                .collect(),
            aware: self
                .aware
                .iter()
                .zip(&other.aware)
                .map(|(a, b)| a.iter().chain(b).copied().collect())
                .collect(),
        })
    }

    pub fn top(&self) -> Ext {
        Ext {
            t: self.all(),
            f: 0,
        }
    }

    pub fn atom(&self, a: usize) -> Ext {
        self.atom_ext[a]
    }

    pub fn nimp(&self, a: Ext, b: Ext) -> Ext {
        a.nimp(b, self.all())
    }

    /// States whose possibilities all lie inside `set`.
    pub fn boxed(&self, agent: usize, set: u64) -> u64 {
        mask((0..self.n).filter(|&s| self.poss[agent - 1][s] & !set == 0))
    }

    /// `Kᵢ`
    pub fn know(&self, agent: usize, x: Ext) -> Ext {
        let d = x.defined();
        let t = self.boxed(agent, x.t) & d;
        Ext { t, f: d & !t }
    }

    /// States with an awareness vocabulary for `agent` that covers `prims`,
    /// and states with one that does not.
    fn aware_masks(&self, agent: usize, prims: Vocab) -> (u64, u64) {
        let mut yes = 0;
        let mut no = 0;
        for (s, v) in self.aware[agent - 1].iter().enumerate() {
            match v {
                Some(v) if prims.is_subset(*v) => yes |= 1 << s,
                Some(_) => no |= 1 << s,
                None => {}
            }
        }
        (yes, no)
    }

    /// `Aᵢφ` for a formula with atoms `prims`; undefined at states without
    /// an awareness vocabulary.
    pub fn aware(&self, agent: usize, prims: Vocab) -> Ext {
        let (t, f) = self.aware_masks(agent, prims);
        Ext { t, f }
    }

    /// `Xᵢ` at states with an awareness vocabulary and `Kᵢ` elsewhere.
    pub fn explicit(&self, agent: usize, x: Ext, prims: Vocab) -> Ext {
        let k = self.know(agent, x);
        let (_, unaware) = self.aware_masks(agent, prims);
        let t = k.t & !unaware;
        Ext {
            t,
            f: k.defined() & !t,
        }
    }

    pub fn vocab_of(&self, f: &Formula) -> Result<Vocab, EvalError> {
        let prims = primitives(f);
        Vocab::from_atoms(&self.atoms, &prims).ok_or_else(|| {
            let missing = prims.iter().find(|a| !self.atoms.contains(a)).unwrap();
            EvalError::UnknownAtom(missing.to_string())
        })
    }

    pub fn eval(&self, f: &Formula) -> Result<Ext, EvalError> {
        Ok(match f {
            Formula::Top => self.top(),
            Formula::Prop(p) => {
                let a = self
                    .atoms
                    .binary_search(p)
                    .map_err(|_| EvalError::UnknownAtom(p.to_string()))?;
                self.atom(a)
            }
            Formula::Not(a) => self.eval(a)?.not(),
            Formula::And(a, b) => self.eval(a)?.and(self.eval(b)?),
            Formula::NImp(a, b) => self.nimp(self.eval(a)?, self.eval(b)?),
            Formula::Know(i, a) => {
                check_agent(*i, self.agents)?;
                self.know(*i, self.eval(a)?)
            }
            Formula::Aware(i, a) => {
                check_agent(*i, self.agents)?;
                self.aware(*i, self.vocab_of(a)?)
            }
            Formula::XKnow(i, a) => {
                check_agent(*i, self.agents)?;
                self.explicit(*i, self.eval(a)?, self.vocab_of(a)?)
            }
        })
    }
}
