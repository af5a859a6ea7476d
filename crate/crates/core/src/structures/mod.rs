//! The four structure kinds and their validators.
//!
//! States are indexed by `usize` within a structure and carry a display name
//! used by the file formats. Sets of states are [`StateSet`] bitsets sized to
//! the structure.

mod awareness;
mod gsm;
mod hms;
mod kripke;

pub use awareness::{
    validate_awareness, AwarenessReport, AwarenessSet, AwarenessStructure, PG_TEST_SIZE,
};
pub use gsm::{validate_gsm, Gsm, GsmReport};
pub use hms::{up_closure, validate_hms, HmsParts, HmsReport, HmsStructure, StructuralViolation};
pub use kripke::{validate_kripke, KripkeReport, KripkeStructure};

use crate::syntax::{Atom, AtomSet};
use fixedbitset::FixedBitSet;
use std::fmt;
use std::str::FromStr;

pub type StateSet = FixedBitSet;

/// Builds a state set of capacity `n` from indices.
pub fn state_set(n: usize, items: impl IntoIterator<Item = usize>) -> StateSet {
    let mut set = FixedBitSet::with_capacity(n);
    for i in items {
        set.insert(i);
    }
    set
}

/// A vocabulary `Ψ ⊆ Φ`, as a bitmask over the structure's sorted atom list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vocab(pub u32);

impl Vocab {
    pub const EMPTY: Vocab = Vocab(0);

    pub fn full(atom_count: usize) -> Vocab {
        Vocab(((1u64 << atom_count) - 1) as u32)
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }

    pub fn is_subset(self, other: Vocab) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, atom: usize) -> Vocab {
        Vocab(self.0 | (1 << atom))
    }

    pub fn without(self, atom: usize) -> Vocab {
        Vocab(self.0 & !(1 << atom))
    }

    pub fn union(self, other: Vocab) -> Vocab {
        Vocab(self.0 | other.0)
    }

    pub fn intersect(self, other: Vocab) -> Vocab {
        Vocab(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Atom indices in increasing order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every vocabulary over `atom_count` atoms, ordered by bitmask.
    pub fn all(atom_count: usize) -> impl Iterator<Item = Vocab> {
        (0..(1u32 << atom_count)).map(Vocab)
    }

    /// Every subset of `self`.
    pub fn subsets(self) -> impl Iterator<Item = Vocab> {
        (0..=self.0).map(Vocab).filter(move |v| v.is_subset(self))
    }

    pub fn from_atoms(atoms: &[Atom], set: &AtomSet) -> Option<Vocab> {
        let mut v = Vocab::EMPTY;
        for a in set {
            v = v.with(atoms.iter().position(|b| b == a)?);
        }
        Some(v)
    }

    pub fn to_atoms(self, atoms: &[Atom]) -> AtomSet {
        self.members().map(|i| atoms[i].clone()).collect()
    }
}

/// A class restriction `C ⊆ {r, t, e}`: reflexive, transitive and Euclidean
/// for relational structures, generalized reflexivity and the two parts of
/// stationarity for HMS structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassSpec {
    pub r: bool,
    pub t: bool,
    pub e: bool,
}

impl ClassSpec {
    pub const NONE: ClassSpec = ClassSpec {
        r: false,
        t: false,
        e: false,
    };
    pub const PARTITIONAL: ClassSpec = ClassSpec {
        r: true,
        t: true,
        e: true,
    };

    pub fn new(r: bool, t: bool, e: bool) -> Self {
        ClassSpec { r, t, e }
    }

    pub fn is_partitional(self) -> bool {
        self.r && self.t && self.e
    }

    /// `C ∩ {t, e} ≠ ∅`
    pub fn has_t_or_e(self) -> bool {
        self.t || self.e
    }

    /// Every subset of `{r, t, e}`.
    pub fn all() -> impl Iterator<Item = ClassSpec> {
        (0..8u8).map(|b| ClassSpec::new(b & 1 != 0, b & 2 != 0, b & 4 != 0))
    }

    /// Whether the flags of a structure meet this restriction.
    pub fn admits(self, r: bool, t: bool, e: bool) -> bool {
        (!self.r || r) && (!self.t || t) && (!self.e || e)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r {
            f.write_str("r")?;
        }
        if self.t {
            f.write_str("t")?;
        }
        if self.e {
            f.write_str("e")?;
        }
        Ok(())
    }
}

impl FromStr for ClassSpec {
    type Err = String;

    /// Accepts any combination of `r`, `t`, `e`, optionally separated by
    /// commas or spaces; the empty string is the unrestricted class.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut spec = ClassSpec::NONE;
        for c in s.chars() {
            match c {
                'r' => spec.r = true,
                't' => spec.t = true,
                'e' => spec.e = true,
                ',' | ' ' => {}
                other => {
                    return Err(format!(
                        "unknown class letter {other:?} (expected r, t or e)"
                    ))
                }
            }
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("structure has no states")]
    NoStates,
    #[error("duplicate state name {0:?}")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("agent count must be at least 1")]
    NoAgents,
    #[error("{what}: expected {expected} entries, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn check_len(
    what: &'static str,
    expected: usize,
    found: usize,
) -> Result<(), StructureError> {
    if expected == found {
        Ok(())
    } else {
        Err(StructureError::Dimension {
            what,
            expected,
            found,
        })
    }
}

pub(crate) fn check_names(names: &[String]) -> Result<(), StructureError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(StructureError::DuplicateState(n.clone()));
        }
    }
    Ok(())
}
