//! Validity notions, propositional decision and countermodel search.
//!
//! A formula is weakly valid in a structure when it is false nowhere,
//! strongly valid when it is true everywhere, objectively valid in a GSM
//! when it is true at every objective state, and classically valid in a
//! two-valued structure when it is true everywhere.

pub mod classes;
pub mod enumerate;
mod model;
mod prop;

pub use enumerate::{enumerate_structures, shards, EnumerateError, Sampling, SearchBounds, Shard};
pub use model::{Model, StructureKind};
pub use prop::{
    fresh_atom, prop2_tautology, prop3_status, skeletonize, Prop3Status, Prop3Verdict, Skeleton,
    SkeletonMode,
};

use crate::semantics::{
    awareness_values, eval_gsm, hms_values, kripke_values, EvalError, GsmPoint, TruthValue,
};
use crate::structures::{ClassSpec, StructureError};
use crate::syntax::{primitives, Atom, Formula};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidityMode {
    Weak,
    Strong,
    Objective,
    Classical,
}

impl ValidityMode {
    pub const ALL: [ValidityMode; 4] = [
        ValidityMode::Weak,
        ValidityMode::Strong,
        ValidityMode::Objective,
        ValidityMode::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ValidityMode::Weak => "weak",
            ValidityMode::Strong => "strong",
            ValidityMode::Objective => "objective",
            ValidityMode::Classical => "classical",
        }
    }

    /// Objective validity is for GSMs and classical validity for the
    /// two-valued kinds; weak and strong validity apply everywhere.
    pub fn applies_to(self, kind: StructureKind) -> bool {
        match self {
            ValidityMode::Weak | ValidityMode::Strong => true,
            ValidityMode::Objective => kind == StructureKind::Gsm,
            ValidityMode::Classical => matches!(
                kind,
                StructureKind::Kripke | StructureKind::Awareness | StructureKind::AwarenessPd
            ),
        }
    }

    /// Whether a point with value `v` refutes validity.
    pub fn fails(self, v: TruthValue) -> bool {
        match self {
            ValidityMode::Weak => v.is_false(),
            _ => !v.is_true(),
        }
    }
}

impl fmt::Display for ValidityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ValidityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ValidityMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown validity mode `{s}` (expected weak, strong, objective or classical)"
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidityError {
    #[error("{mode} validity does not apply to {kind} structures")]
    IncompatibleMode {
        mode: ValidityMode,
        kind: StructureKind,
    },
    #[error("the formula contains a modal operator")]
    Modal,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

fn check_mode(mode: ValidityMode, kind: StructureKind) -> Result<(), ValidityError> {
    if mode.applies_to(kind) {
        Ok(())
    } else {
        Err(ValidityError::IncompatibleMode { mode, kind })
    }
}

/// The value of `f` at every point of `m`, in [`Model::point_names`] order.
pub fn point_values(m: &Model, f: &Formula) -> Result<Vec<TruthValue>, ValidityError> {
    let two = |v: Vec<bool>| v.into_iter().map(TruthValue::from_bool).collect();
    Ok(match m {
        Model::Kripke(k) => two(kripke_values(k, f)?),
        Model::Awareness(a) => two(awareness_values(a, f)?),
        Model::Hms(h) => hms_values(h, f)?,
        Model::Gsm(g) => {
            let objective = (0..g.objective.len()).map(GsmPoint::Objective);
            let subjective = (0..g.subjective.len()).map(GsmPoint::Subjective);
            objective
                .chain(subjective)
                .map(|p| eval_gsm(g, p, f))
                .collect::<Result<_, _>>()?
        }
    })
}

/// The points of `m` at which `f` fails under `mode`.
pub fn failing_points(
    m: &Model,
    f: &Formula,
    mode: ValidityMode,
) -> Result<Vec<usize>, ValidityError> {
    check_mode(mode, m.kind())?;
    let values = point_values(m, f)?;
    let judged = m.objective_points();
    Ok((0..values.len())
        .filter(|&s| judged >> s & 1 == 1 && mode.fails(values[s]))
        .collect())
}

pub fn valid_in(m: &Model, f: &Formula, mode: ValidityMode) -> Result<bool, ValidityError> {
    Ok(failing_points(m, f, mode)?.is_empty())
}

/// A structure and a point at which a formula fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Countermodel {
    pub model: Model,
    pub state: usize,
    pub state_name: String,
    pub value: TruthValue,
}

/// The first enumerated point refuting `f` under `mode`, or `None` when
/// there is none within the bounds.
///
/// Structures are built over exactly the atoms of `f` (one default atom if
/// it has none) and as many agents as `f` mentions; formulas needing more
/// atoms or agents than the bounds allow have no countermodel within them.
pub fn search_countermodel(
    f: &Formula,
    kind: StructureKind,
    class: ClassSpec,
    mode: ValidityMode,
    bounds: &SearchBounds,
) -> Result<Option<Countermodel>, ValidityError> {
    check_mode(mode, kind)?;
    if let Some(op) = kind.unsupported_in(f) {
        return Err(EvalError::Unsupported(op).into());
    }
    let mut atoms: Vec<Atom> = primitives(f).into_iter().collect();
    if atoms.is_empty() {
        atoms = enumerate::default_atoms(1);
    }
    let agents = f.max_agent().max(1);
    if atoms.len() > bounds.atoms
        || agents > bounds.agents
        || (kind == StructureKind::Gsm && agents > 1)
    {
        return Ok(None);
    }
    let b = SearchBounds { agents, ..*bounds };
    let shards = enumerate::shards_over(kind, &b, class, atoms)?;
    let found = shards.par_iter().find_map_first(|shard| {
        shard.models().into_iter().find_map(|m| {
            let frame = m.frame().ok()?;
            let ext = frame.eval(f).ok()?;
            let judged = m.objective_points();
            (0..frame.num_states())
                .find(|&s| judged >> s & 1 == 1 && mode.fails(ext.value(s)))
                .map(|s| (m, s, ext.value(s)))
        })
    });
    Ok(found.map(|(model, state, value)| Countermodel {
        state_name: model.point_names()[state].clone(),
        model,
        state,
        value,
    }))
}

#[cfg(test)]
mod tests;
