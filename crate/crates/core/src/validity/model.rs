use crate::semantics::{EvalError, Frame};
use crate::structures::{
    validate_awareness, validate_gsm, validate_hms, validate_kripke, AwarenessStructure, ClassSpec,
    Gsm, HmsStructure, KripkeStructure, StructureError,
};
use crate::syntax::Formula;
use std::fmt;
use std::str::FromStr;

/// The four families of structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    Kripke,
    /// Awareness structures with awareness generated by primitive
    /// propositions.
    Awareness,
    /// Awareness structures that are also propositionally determined.
    AwarenessPd,
    Hms,
    Gsm,
}

impl StructureKind {
    pub const ALL: [StructureKind; 5] = [
        StructureKind::Kripke,
        StructureKind::Awareness,
        StructureKind::AwarenessPd,
        StructureKind::Hms,
        StructureKind::Gsm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Kripke => "kripke",
            StructureKind::Awareness => "awareness",
            StructureKind::AwarenessPd => "awareness-pd",
            StructureKind::Hms => "hms",
            StructureKind::Gsm => "gsm",
        }
    }

    /// The operator, if any, that evaluation on this kind rejects.
    pub fn unsupported_in(self, f: &Formula) -> Option<&'static str> {
        let mut bad = None;
        f.visit(&mut |g| {
            let hit = match g {
                Formula::NImp(..) if self != StructureKind::Hms => Some("~>"),
                Formula::Aware(..) if !self.is_awareness() => Some("A"),
                Formula::XKnow(..) if !self.is_awareness() => Some("X"),
                _ => None,
            };
            bad = bad.or(hit);
        });
        bad
    }

    pub fn is_awareness(self) -> bool {
        matches!(self, StructureKind::Awareness | StructureKind::AwarenessPd)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        StructureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown structure kind `{s}` (expected kripke, awareness, awareness-pd, hms or gsm)"))
    }
}

/// A structure of any kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Kripke(KripkeStructure),
    Awareness(AwarenessStructure),
    Hms(HmsStructure),
    Gsm(Gsm),
}

impl Model {
    /// `Awareness` for every awareness structure; use [`Model::in_class`]
    /// to test the pd restriction.
    pub fn kind(&self) -> StructureKind {
        match self {
            Model::Kripke(_) => StructureKind::Kripke,
            Model::Awareness(_) => StructureKind::Awareness,
            Model::Hms(_) => StructureKind::Hms,
            Model::Gsm(_) => StructureKind::Gsm,
        }
    }

    pub fn agents(&self) -> usize {
        match self {
            Model::Kripke(m) => m.agents,
            Model::Awareness(m) => m.agents(),
            Model::Hms(m) => m.agents(),
            Model::Gsm(_) => 1,
        }
    }

    /// Compiled for bitmask evaluation. GSM points list objective states
    /// before subjective ones.
    pub fn frame(&self) -> Result<Frame, EvalError> {
        match self {
            Model::Kripke(m) => Frame::from_kripke(m),
            Model::Awareness(m) => Frame::from_awareness(m),
            Model::Hms(m) => Frame::from_hms(m),
            Model::Gsm(m) => Frame::from_gsm(m),
        }
    }

    /// Names of the evaluation points, in frame order.
    pub fn point_names(&self) -> Vec<String> {
        match self {
            Model::Kripke(m) => m.states.clone(),
            Model::Awareness(m) => m.frame.states.clone(),
            Model::Hms(m) => (0..m.num_states())
                .map(|s| m.state_name(s).to_string())
                .collect(),
            Model::Gsm(m) => m.objective.iter().chain(&m.subjective).cloned().collect(),
        }
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.point_names().iter().position(|n| n == name)
    }

    /// The points at which objective validity is judged: objective states
    /// of a GSM, every point otherwise.
    pub fn objective_points(&self) -> u64 {
        let n = match self {
            Model::Gsm(m) => m.objective.len(),
            _ => self.point_names().len(),
        };
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// Whether the structure is well formed and belongs to the class; for
    /// awareness structures `pd` additionally requires propositional
    /// determination, and pg is always required.
    pub fn in_class(&self, class: ClassSpec, pd: bool) -> Result<bool, StructureError> {
        Ok(match self {
            Model::Kripke(m) => validate_kripke(m)?.in_class(class),
            Model::Awareness(m) => {
                let r = validate_awareness(m)?;
                r.kripke.in_class(class) && r.pg && (!pd || r.ka)
            }
            Model::Hms(m) => validate_hms(m).in_class(class),
            Model::Gsm(m) => validate_gsm(m)?.in_class(class),
        })
    }
}
