//! Axiom systems, schema matching and Hilbert-style proof checking.
//!
//! Every system is a list of axiom schemas plus inference rules. Formulas
//! are compared after desugaring, so a line matches a schema exactly when
//! their core syntax trees unify.

mod schema;
mod sweep;

pub use schema::{AxiomSchema, Match, SideCondition, Substitution};
pub use sweep::{soundness_sweep, SweepReport, Violation, SWEEP_MAX_SIZE};

use crate::structures::ClassSpec;
use crate::syntax::{parse, primitives, Agent, Formula, Language, LanguageTag, Level};
use crate::validity::{SkeletonMode, StructureKind, ValidityError, ValidityMode};
use schema::Pat;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// From `φ` and `φ ⇒ ψ` infer `ψ`.
    Mp,
    /// From `φ` and `φ ↪ ψ` infer `ψ`.
    MpNimp,
    /// From `φ` infer `Kᵢφ`.
    Gen,
    /// From `φ ⇔ ψ` infer `Kᵢφ ⇔ Kᵢψ` when both sides have the same atoms.
    ReSa,
    /// From `φ = 1` infer `φ`.
    R1,
}

impl Rule {
    pub const ALL: [Rule; 5] = [Rule::Mp, Rule::MpNimp, Rule::Gen, Rule::ReSa, Rule::R1];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Mp => "MP",
            Rule::MpNimp => "MP'",
            Rule::Gen => "Gen",
            Rule::ReSa => "RE_sa",
            Rule::R1 => "R1",
        }
    }

    pub fn premises(self) -> usize {
        match self {
            Rule::Mp | Rule::MpNimp => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts `′` for `'`.
fn normalize_name(name: &str) -> String {
    name.trim().replace('′', "'")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    /// `K` plus any of T, 4, 5.
    Kripke { t: bool, four: bool, five: bool },
    /// Single-agent awareness logic of generalized standard models.
    U,
    /// Its multi-agent extension.
    Un,
    /// The same axioms read with explicit knowledge.
    UnExplicit,
    /// Propositional three-valued logic with `↪`.
    Ax3,
    /// Knowledge with `↪` plus any of T′, 4′, 5′.
    Nimp { t: bool, four: bool, five: bool },
}

/// The registered system names. A suffix `_n` bounds the number of agents,
/// as in `S5_1`.
pub const SYSTEM_NAMES: [&str; 22] = [
    "K", "KT", "K4", "K5", "KT4", "KT5", "K45", "KT45", "S5", "U", "Un", "S5K", "S5X", "AX3",
    "AXK", "AXK+T", "AXK+4", "AXK+5", "AXK+T4", "AXK+T5", "AXK+45", "AXK+T45",
];

/// Where a system's soundness is swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepTarget {
    pub kind: StructureKind,
    pub class: ClassSpec,
    pub mode: ValidityMode,
}

/// A registered axiom system.
#[derive(Debug, Clone)]
pub struct System {
    pub name: String,
    family: Family,
    /// Most agents a formula may mention; `None` for any number.
    pub max_agents: Option<usize>,
    axioms: Vec<AxiomSchema>,
    rules: Vec<Rule>,
}

fn letters(rest: &str) -> Option<(bool, bool, bool)> {
    let order = ['T', '4', '5'];
    let mut last = 0;
    let mut seen = [false; 3];
    for c in rest.chars() {
        let at = order.iter().position(|&o| o == c)?;
        if at < last || seen[at] {
            return None;
        }
        seen[at] = true;
        last = at;
    }
    Some((seen[0], seen[1], seen[2]))
}

fn kripke_axioms(t: bool, four: bool, five: bool) -> Vec<AxiomSchema> {
    let k = Language::K;
    let mut out = vec![
        AxiomSchema::tautology("Prop", SkeletonMode::Boolean),
        AxiomSchema::new(
            "K",
            k,
            SideCondition::None,
            &["(K1 phi & K1 (phi -> psi)) -> K1 psi"],
        ),
    ];
    if t {
        out.push(AxiomSchema::new(
            "T",
            k,
            SideCondition::None,
            &["K1 phi -> phi"],
        ));
    }
    if four {
        out.push(AxiomSchema::new(
            "4",
            k,
            SideCondition::None,
            &["K1 phi -> K1 K1 phi"],
        ));
    }
    if five {
        out.push(AxiomSchema::new(
            "5",
            k,
            SideCondition::None,
            &["!K1 phi -> K1 !K1 phi"],
        ));
    }
    out
}

fn u_axioms(multi: bool) -> Vec<AxiomSchema> {
    let k = Language::K;
    let none = SideCondition::None;
    let mut out = vec![
        AxiomSchema::tautology("Prop", SkeletonMode::Boolean),
        AxiomSchema::new("T", k, none, &["K1 phi -> phi"]),
        AxiomSchema::new("4", k, none, &["K1 phi -> K1 K1 phi"]),
        AxiomSchema::new("M", k, none, &["K1 (phi & psi) -> (K1 phi & K1 psi)"]),
        AxiomSchema::new("C", k, none, &["(K1 phi & K1 psi) -> K1 (phi & psi)"]),
        AxiomSchema::new("A", k, none, &["A1 phi <-> A1 !phi"]),
        AxiomSchema::new("AM", k, none, &["A1 (phi & psi) -> (A1 phi & A1 psi)"]),
        AxiomSchema::new("N", k, none, &["K1 top"]),
    ];
    if multi {
        out.push(AxiomSchema::new("AK", k, none, &["A1 K2 phi <-> A1 phi"]));
    }
    out
}

fn nimp_axioms(t: bool, four: bool, five: bool) -> Vec<AxiomSchema> {
    let l = Language::Knimp;
    let none = SideCondition::None;
    let mut out = vec![
        AxiomSchema::tautology("Prop'", SkeletonMode::Nimp),
        AxiomSchema::new("K'", l, none, &["(K1 phi & K1 (phi ~> psi)) ~> K1 psi"]),
    ];
    if t {
        out.push(AxiomSchema::from_pats(
            "T'",
            "K1 phi ~> phi | (K1 (p = 1/2) | ... for every atom p of phi)".into(),
            SideCondition::UndefinedAtoms(0),
            vec![Pat::NImp(
                Box::new(Pat::Know(0, Box::new(Pat::Var(0)))),
                Box::new(Pat::UndefinedAtoms(0, 0)),
            )],
        ));
    }
    if four {
        out.push(AxiomSchema::new("4'", l, none, &["K1 phi ~> K1 K1 phi"]));
    }
    if five {
        out.push(AxiomSchema::new(
            "5'",
            l,
            none,
            &["!K1 !K1 phi ~> (K1 phi | K1 (phi = 1/2))"],
        ));
    }
    out.extend([
        AxiomSchema::new(
            "Conf1",
            l,
            SideCondition::ImplicationFree(0),
            &["(phi = 1/2) ~> K1 (phi = 1/2)"],
        ),
        AxiomSchema::new(
            "Conf2",
            l,
            none,
            &["!K1 (phi = 1/2) ~> K1 ((phi | !phi) = 1)"],
        ),
        AxiomSchema::new("B1", l, none, &["(K1 phi = 1/2) <~> (phi = 1/2)"]),
        AxiomSchema::new(
            "B2",
            l,
            none,
            &["((phi = 0 | phi = 1) & K1 (phi = 1)) ~> (K1 phi = 1)"],
        ),
    ]);
    out
}

fn ax3_axioms() -> Vec<AxiomSchema> {
    let l = Language::Knimp;
    let none = SideCondition::None;
    let d2 = SideCondition::DefinitelyTwoValued;
    let levels = ["0", "1/2", "1"];
    let p11: Vec<String> = levels
        .iter()
        .flat_map(|i| levels.iter().map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| format!("(phi = 0 | phi = 1/2 | phi = 1) & !((phi = {i}) & (phi = {j}))"))
        .collect();
    let p11: Vec<&str> = p11.iter().map(String::as_str).collect();
    vec![
        AxiomSchema::new("P0", l, none, &["top"]),
        AxiomSchema::new("P1", l, d2, &["(phi & psi) <~> !(phi ~> !psi)"]),
        AxiomSchema::new("P2", l, d2, &["phi ~> (psi ~> phi)"]),
        AxiomSchema::new("P3", l, d2, &["(phi ~> (psi ~> chi)) ~> ((phi ~> psi) ~> (phi ~> chi))"]),
        AxiomSchema::new("P4", l, d2, &["(phi ~> psi) ~> ((phi ~> !psi) ~> !phi)"]),
        AxiomSchema::new("P5", l, none, &["((phi & psi) = 1) <~> ((phi = 1) & (psi = 1))"]),
        AxiomSchema::new(
            "P6",
            l,
            none,
            &["((phi & psi) = 0) <~> ((phi = 0 & !(psi = 1/2)) | (!(phi = 1/2) & psi = 0))"],
        ),
        AxiomSchema::new("P7", l, none, &["(phi = 1) <~> ((!phi) = 0)"]),
        AxiomSchema::new("P8", l, none, &["(phi = 0) <~> ((!phi) = 1)"]),
        AxiomSchema::new(
            "P9",
            l,
            none,
            &["((phi ~> psi) = 1) <~> ((phi = 0 & !(psi = 1/2)) | (phi = 1/2) | (phi = 1 & psi = 1))"],
        ),
        AxiomSchema::new("P10", l, none, &["((phi ~> psi) = 0) <~> (phi = 1 & psi = 0)"]),
        AxiomSchema::new("P11", l, none, &p11),
    ]
}

impl System {
    /// Looks up a registered system, optionally suffixed `_n`.
    pub fn named(name: &str) -> Result<System, ProofError> {
        let unknown = || ProofError::UnknownSystem(name.to_string());
        let (base, max_agents) = match name.rsplit_once('_') {
            Some((base, n)) if !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()) => {
                let n: usize = n.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                (base, Some(n))
            }
            _ => (name, None),
        };
        if !SYSTEM_NAMES.contains(&base) {
            return Err(unknown());
        }
        let family = match base {
            "S5" => Family::Kripke {
                t: true,
                four: true,
                five: true,
            },
            "U" => Family::U,
            "Un" | "S5K" => Family::Un,
            "S5X" => Family::UnExplicit,
            "AX3" => Family::Ax3,
            _ => {
                let (prefix, rest) = match base.strip_prefix("AXK") {
                    Some(rest) => (true, rest.strip_prefix('+').unwrap_or(rest)),
                    None => (false, &base[1..]),
                };
                let (t, four, five) = letters(rest).ok_or_else(unknown)?;
                if prefix {
                    Family::Nimp { t, four, five }
                } else {
                    Family::Kripke { t, four, five }
                }
            }
        };
        let max_agents = match family {
            Family::U => match max_agents {
                Some(n) if n > 1 => return Err(unknown()),
                _ => Some(1),
            },
            Family::Ax3 => Some(0),
            _ => max_agents,
        };
        let (axioms, rules) = match family {
            Family::Kripke { t, four, five } => {
                (kripke_axioms(t, four, five), vec![Rule::Mp, Rule::Gen])
            }
            Family::U => (u_axioms(false), vec![Rule::Mp, Rule::ReSa]),
            Family::Un => (u_axioms(true), vec![Rule::Mp, Rule::ReSa]),
            Family::UnExplicit => (
                u_axioms(true).iter().map(AxiomSchema::explicit).collect(),
                vec![Rule::Mp, Rule::ReSa],
            ),
            Family::Ax3 => (ax3_axioms(), vec![Rule::R1, Rule::MpNimp]),
            Family::Nimp { t, four, five } => {
                (nimp_axioms(t, four, five), vec![Rule::MpNimp, Rule::Gen])
            }
        };
        Ok(System {
            name: name.to_string(),
            family,
            max_agents,
            axioms,
            rules,
        })
    }

    pub fn axioms(&self) -> &[AxiomSchema] {
        &self.axioms
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomSchema> {
        let name = normalize_name(name);
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<Rule> {
        let name = normalize_name(name);
        self.rules.iter().copied().find(|r| r.name() == name)
    }

    /// The language lines are parsed in.
    pub fn language(&self) -> LanguageTag {
        let lang = match self.family {
            Family::Kripke { .. } | Family::U | Family::Un => Language::K,
            Family::UnExplicit => Language::Kxa,
            Family::Ax3 | Family::Nimp { .. } => Language::Knimp,
        };
        LanguageTag::new(lang, self.max_agents.unwrap_or(64))
    }

    /// The same system with only the named axioms; rules are kept.
    pub fn restricted(&self, names: &[&str]) -> Result<System, ProofError> {
        let mut axioms = Vec::new();
        for name in names {
            let a = self
                .axiom(name)
                .ok_or_else(|| ProofError::UnknownJustification {
                    line: 0,
                    name: name.to_string(),
                    system: self.name.clone(),
                })?;
            axioms.push(a.clone());
        }
        Ok(System {
            axioms,
            ..self.clone()
        })
    }

    /// The structures, class and validity notion the system is sound for;
    /// `None` for the propositional system.
    pub fn sweep_target(&self) -> Option<SweepTarget> {
        let (kind, class, mode) = match self.family {
            Family::Kripke { t, four, five } => (
                StructureKind::Kripke,
                ClassSpec::new(t, four, five),
                ValidityMode::Classical,
            ),
            Family::U => (
                StructureKind::Gsm,
                ClassSpec::PARTITIONAL,
                ValidityMode::Objective,
            ),
            Family::Un => (
                StructureKind::Hms,
                ClassSpec::PARTITIONAL,
                ValidityMode::Weak,
            ),
            Family::UnExplicit => (
                StructureKind::AwarenessPd,
                ClassSpec::PARTITIONAL,
                ValidityMode::Classical,
            ),
            Family::Nimp { t, four, five } => (
                StructureKind::Hms,
                ClassSpec::new(t, four, five),
                ValidityMode::Strong,
            ),
            Family::Ax3 => return None,
        };
        Some(SweepTarget { kind, class, mode })
    }

    pub(crate) fn is_explicit(&self) -> bool {
        self.family == Family::UnExplicit
    }

    fn agent_ok(&self, i: Agent) -> bool {
        self.max_agents.is_none_or(|n| (1..=n).contains(&i))
    }

    fn check_rule(&self, rule: Rule, f: &Formula, premises: &[&Formula]) -> Result<(), String> {
        let ok = match rule {
            Rule::Mp => {
                let (a, b) = (premises[0], premises[1]);
                *b == Formula::implies(a.clone(), f.clone())
                    || *a == Formula::implies(b.clone(), f.clone())
            }
            Rule::MpNimp => {
                let (a, b) = (premises[0], premises[1]);
                *b == Formula::nimp(a.clone(), f.clone())
                    || *a == Formula::nimp(b.clone(), f.clone())
            }
            Rule::Gen => match f {
                Formula::Know(i, body) if !self.is_explicit() => {
                    body.as_ref() == premises[0] && self.agent_ok(*i)
                }
                Formula::XKnow(i, body) if self.is_explicit() => {
                    body.as_ref() == premises[0] && self.agent_ok(*i)
                }
                _ => false,
            },
            Rule::ReSa => return self.check_re_sa(f, premises[0]),
            Rule::R1 => *premises[0] == Formula::eq(f.clone(), Level::One),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("does not follow by {rule} from the cited lines"))
        }
    }

    fn check_re_sa(&self, f: &Formula, premise: &Formula) -> Result<(), String> {
        let iff = AxiomSchema::new("RE_sa", Language::K, SideCondition::None, &["phi <-> psi"]);
        let Match::Instance(s) = iff.matches(premise, None) else {
            return Err("RE_sa needs a premise of the form phi <-> psi".into());
        };
        let (a, b) = (&s.formulas[0].1, &s.formulas[1].1);
        if primitives(a) != primitives(b) {
            return Err(format!("RE_sa: {a} and {b} do not have the same atoms"));
        }
        let wrap = |i: Agent, g: &Formula| {
            if self.is_explicit() {
                Formula::xknow(i, g.clone())
            } else {
                Formula::know(i, g.clone())
            }
        };
        let agents = self.max_agents.unwrap_or_else(|| f.max_agent().max(1));
        if (1..=agents).any(|i| *f == Formula::iff(wrap(i, a), wrap(i, b))) {
            Ok(())
        } else {
            Err("does not follow by RE_sa from the cited line".into())
        }
    }
}

/// Matches `f` against `schema`; see [`AxiomSchema::matches`].
pub fn match_axiom(schema: &AxiomSchema, f: &Formula, hint: Option<&Formula>) -> Match {
    schema.matches(f, hint)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofLine {
    pub n: usize,
    pub formula: String,
    /// An axiom or rule name.
    pub by: String,
    #[serde(default)]
    pub refs: Vec<usize>,
    /// For `Prop` and `Prop'`: a propositional formula whose atoms stand
    /// for subformulas of the line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hint: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofScript {
    pub system: String,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// The first line that fails its justification.
    Bad {
        line: usize,
        reason: String,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("ok"),
            Verdict::Bad { line, reason } => write!(f, "bad line {line}: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProofError {
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
    #[error("line {line}: `{name}` is not an axiom or rule of {system}")]
    UnknownJustification {
        line: usize,
        name: String,
        system: String,
    },
    #[error("line {line}: {reason}")]
    BadReferences { line: usize, reason: String },
    #[error("{mode} validity on {kind} structures is not where {system} is sound")]
    IncompatibleSweep {
        system: String,
        kind: StructureKind,
        mode: ValidityMode,
    },
    #[error(transparent)]
    Validity(#[from] ValidityError),
}

/// Checks every line against its justification.
pub fn check_proof(script: &ProofScript) -> Result<Verdict, ProofError> {
    let system = System::named(&script.system)?;
    let tag = system.language();
    let mut proved: HashMap<usize, Formula> = HashMap::new();
    let mut last = 0;
    for line in &script.lines {
        let n = line.n;
        if n <= last {
            return Err(ProofError::BadReferences {
                line: n,
                reason: "line numbers must be positive and increasing".into(),
            });
        }
        last = n;
        let justification = match (system.axiom(&line.by), system.rule(&line.by)) {
            (Some(a), _) => Ok(a),
            (None, Some(r)) => Err(r),
            (None, None) => {
                return Err(ProofError::UnknownJustification {
                    line: n,
                    name: line.by.clone(),
                    system: system.name.clone(),
                })
            }
        };
        let f = match parse(&line.formula, tag) {
            Ok(f) => f,
            Err(e) => {
                return Ok(Verdict::Bad {
                    line: n,
                    reason: format!("not a formula of {}: {e}", system.name),
                })
            }
        };
        let outcome = match justification {
            Ok(axiom) => {
                if !line.refs.is_empty() {
                    return Err(ProofError::BadReferences {
                        line: n,
                        reason: format!("axiom {} takes no references", axiom.name),
                    });
                }
                let hint = match &line.hint {
                    None => None,
                    Some(h) => match parse(h, LanguageTag::knimp(0)) {
                        Ok(h) => Some(h),
                        Err(e) => {
                            return Err(ProofError::BadReferences {
                                line: n,
                                reason: format!("unreadable hint: {e}"),
                            })
                        }
                    },
                };
                match axiom.matches(&f, hint.as_ref()) {
                    Match::Instance(_) => Ok(()),
                    Match::Mismatch(reason) => Err(reason),
                }
            }
            Err(rule) => {
                if line.refs.len() != rule.premises() {
                    return Err(ProofError::BadReferences {
                        line: n,
                        reason: format!(
                            "{rule} cites {} lines, not {}",
                            rule.premises(),
                            line.refs.len()
                        ),
                    });
                }
                let mut premises = Vec::new();
                for r in &line.refs {
                    match proved.get(r) {
                        Some(p) => premises.push(p),
                        None => {
                            return Err(ProofError::BadReferences {
                                line: n,
                                reason: format!("line {r} is not an earlier line"),
                            })
                        }
                    }
                }
                system.check_rule(rule, &f, &premises)
            }
        };
        if let Err(reason) = outcome {
            return Ok(Verdict::Bad { line: n, reason });
        }
        proved.insert(n, f);
    }
    Ok(Verdict::Ok)
}

#[cfg(test)]
mod tests;
