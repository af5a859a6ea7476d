//! JSON model files.
//!
//! Every structure kind shares `kind`, `agents` and `atoms`; the rest of the
//! payload is keyed by state name. Output goes through `serde_json::Value`,
//! whose maps are ordered, so keys come out sorted and files are
//! byte-stable.

use crate::semantics::TruthValue;
use crate::structures::{
    AwarenessSet, AwarenessStructure, Gsm, HmsParts, HmsStructure, KripkeStructure, StateSet,
    StructureError, Vocab,
};
use crate::syntax::{parse, Atom, LanguageTag};
use crate::validity::Model;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Structure(StructureError::Invalid(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub atoms: Vec<String>,
    pub states: Vec<String>,
}

/// `ρ` from the space `from_space` to the space without `drop`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    pub from_space: Vec<String>,
    pub drop: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AwarenessEntry {
    /// Every formula over these atoms.
    Generated(Vec<String>),
    /// Exactly these formulas, in the awareness language.
    Explicit(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeFile {
    pub agents: usize,
    pub atoms: Vec<String>,
    pub states: Vec<String>,
    /// The atoms true at each state; absent states make every atom false.
    #[serde(default)]
    pub val: BTreeMap<String, Vec<String>>,
    /// One map per agent, from a state to its possibilities.
    pub poss: Vec<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwarenessFile {
    #[serde(flatten)]
    pub frame: KripkeFile,
    /// One map per agent.
    pub awareness: Vec<BTreeMap<String, AwarenessEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmsFile {
    pub agents: usize,
    pub atoms: Vec<String>,
    pub spaces: Vec<Space>,
    /// Defined values; atoms left out are `1/2`.
    #[serde(default)]
    pub val: BTreeMap<String, BTreeMap<String, TruthValue>>,
    pub poss: Vec<BTreeMap<String, Vec<String>>>,
    /// One entry per space and atom of it.
    #[serde(default)]
    pub proj: Vec<Projection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsmFile {
    pub agents: usize,
    pub atoms: Vec<String>,
    pub objective: Vec<String>,
    pub subjective: Vec<String>,
    /// The space of each subjective state.
    pub spaces: Vec<Space>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<String>>,
    pub poss: BTreeMap<String, Vec<String>>,
    pub proj: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelBody {
    Kripke(KripkeFile),
    Awareness(AwarenessFile),
    Hms(HmsFile),
    Gsm(GsmFile),
}

/// The point and formula a search witness refutes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub formula: String,
    pub mode: String,
    pub state: String,
    pub value: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(flatten)]
    pub body: ModelBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn sorted_atoms(names: &[String]) -> Result<Vec<Atom>, FormatError> {
    let mut atoms = names
        .iter()
        .map(|n| Atom::new(n).map_err(|_| invalid(format!("invalid atom name {n:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    atoms.sort();
    if atoms.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("duplicate atom"));
    }
    Ok(atoms)
}

struct Names<'a> {
    states: HashMap<&'a str, usize>,
    atoms: &'a [Atom],
}

impl<'a> Names<'a> {
    fn new(states: &'a [String], atoms: &'a [Atom]) -> Result<Self, FormatError> {
        let mut map = HashMap::new();
        for (k, s) in states.iter().enumerate() {
            if map.insert(s.as_str(), k).is_some() {
                return Err(StructureError::DuplicateState(s.clone()).into());
            }
        }
        Ok(Names { states: map, atoms })
    }

    fn state(&self, name: &str) -> Result<usize, FormatError> {
        self.states
            .get(name)
            .copied()
            .ok_or_else(|| StructureError::UnknownState(name.into()).into())
    }

    fn set(&self, names: &[String]) -> Result<StateSet, FormatError> {
        let mut set = StateSet::with_capacity(self.states.len());
        for n in names {
            set.insert(self.state(n)?);
        }
        Ok(set)
    }

    fn atom(&self, name: &str) -> Result<usize, FormatError> {
        self.atoms
            .iter()
            .position(|a| a.name() == name)
            .ok_or_else(|| StructureError::UnknownAtom(name.into()).into())
    }

    fn vocab(&self, names: &[String]) -> Result<Vocab, FormatError> {
        names
            .iter()
            .try_fold(Vocab::EMPTY, |v, n| Ok(v.with(self.atom(n)?)))
    }

    /// Per-agent possibility maps; unlisted states have no possibilities.
    fn poss(
        &self,
        agents: usize,
        poss: &[BTreeMap<String, Vec<String>>],
    ) -> Result<Vec<Vec<StateSet>>, FormatError> {
        if poss.len() != agents {
            return Err(StructureError::Dimension {
                what: "possibility maps",
                expected: agents,
                found: poss.len(),
            }
            .into());
        }
        poss.iter()
            .map(|map| {
                let mut out = vec![StateSet::with_capacity(self.states.len()); self.states.len()];
                for (s, targets) in map {
                    out[self.state(s)?] = self.set(targets)?;
                }
                Ok(out)
            })
            .collect()
    }

    fn true_atoms(
        &self,
        n: usize,
        val: &BTreeMap<String, Vec<String>>,
    ) -> Result<Vec<Vec<bool>>, FormatError> {
        let mut out = vec![vec![false; self.atoms.len()]; n];
        for (s, atoms) in val {
            let s = self.state(s)?;
            for a in atoms {
                out[s][self.atom(a)?] = true;
            }
        }
        Ok(out)
    }
}

fn kripke_from(file: &KripkeFile) -> Result<KripkeStructure, FormatError> {
    let atoms = sorted_atoms(&file.atoms)?;
    let names = Names::new(&file.states, &atoms)?;
    let m = KripkeStructure {
        agents: file.agents,
        poss: names.poss(file.agents, &file.poss)?,
        val: names.true_atoms(file.states.len(), &file.val)?,
        states: file.states.clone(),
        atoms: atoms.clone(),
    };
    m.check_well_formed()?;
    Ok(m)
}

fn awareness_from(file: &AwarenessFile) -> Result<AwarenessStructure, FormatError> {
    let frame = kripke_from(&file.frame)?;
    let names = Names::new(&frame.states, &frame.atoms)?;
    if file.awareness.len() != frame.agents {
        return Err(StructureError::Dimension {
            what: "awareness maps",
            expected: frame.agents,
            found: file.awareness.len(),
        }
        .into());
    }
    let tag = LanguageTag::kxa(frame.agents);
    let mut awareness = Vec::with_capacity(frame.agents);
    for (i, map) in file.awareness.iter().enumerate() {
        let mut per: Vec<Option<AwarenessSet>> = vec![None; frame.states.len()];
        for (s, entry) in map {
            let set = match entry {
                AwarenessEntry::Generated(atoms) => AwarenessSet::Generated(
                    atoms
                        .iter()
                        .map(|a| Ok(frame.atoms[names.atom(a)?].clone()))
                        .collect::<Result<_, FormatError>>()?,
                ),
                AwarenessEntry::Explicit(formulas) => AwarenessSet::Explicit(
                    formulas
                        .iter()
                        .map(|t| {
                            parse(t, tag)
                                .map_err(|e| invalid(format!("awareness formula {t:?}: {e}")))
                        })
                        .collect::<Result<_, _>>()?,
                ),
            };
            per[names.state(s)?] = Some(set);
        }
        let per = per
            .into_iter()
            .enumerate()
            .map(|(s, a)| {
                a.ok_or_else(|| {
                    invalid(format!(
                        "agent {} has no awareness set at {}",
                        i + 1,
                        frame.states[s]
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        awareness.push(per);
    }
    let m = AwarenessStructure { frame, awareness };
    m.check_well_formed()?;
    Ok(m)
}

/// States in listing order across spaces, with the vocabulary of each.
fn spaced_states(
    spaces: &[Space],
    names: &[Atom],
) -> Result<(Vec<String>, Vec<Vocab>), FormatError> {
    let lookup = Names {
        states: HashMap::new(),
        atoms: names,
    };
    let mut states = Vec::new();
    let mut vocab = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for sp in spaces {
        let v = lookup.vocab(&sp.atoms)?;
        if !seen.insert(v) {
            return Err(invalid(format!(
                "space {{{}}} listed twice",
                sp.atoms.join(",")
            )));
        }
        for s in &sp.states {
            states.push(s.clone());
            vocab.push(v);
        }
    }
    Ok((states, vocab))
}

fn hms_from(file: &HmsFile) -> Result<HmsStructure, FormatError> {
    let atoms = sorted_atoms(&file.atoms)?;
    let (states, space) = spaced_states(&file.spaces, &atoms)?;
    let names = Names::new(&states, &atoms)?;
    let n = states.len();
    let mut val = vec![vec![TruthValue::Undefined; atoms.len()]; n];
    for (s, values) in &file.val {
        let s = names.state(s)?;
        for (a, v) in values {
            val[s][names.atom(a)?] = *v;
        }
    }
    let mut cover = vec![vec![None; atoms.len()]; n];
    for p in &file.proj {
        let from = names.vocab(&p.from_space)?;
        let a = names.atom(&p.drop)?;
        if !from.contains(a) {
            return Err(invalid(format!(
                "projection drops {} from a space without it",
                p.drop
            )));
        }
        for (s, t) in &p.map {
            let (s, t) = (names.state(s)?, names.state(t)?);
            if space[s] != from {
                return Err(invalid(format!(
                    "{} is not in the space {{{}}}",
                    states[s],
                    p.from_space.join(",")
                )));
            }
            cover[s][a] = Some(t);
        }
    }
    for s in 0..n {
        if let Some(a) = space[s].members().find(|&a| cover[s][a].is_none()) {
            return Err(invalid(format!(
                "no projection of {} dropping {}",
                states[s], atoms[a]
            )));
        }
    }
    let parts = HmsParts {
        agents: file.agents,
        poss: names.poss(file.agents, &file.poss)?,
        atoms: atoms.clone(),
        states,
        space,
        val,
        cover,
    };
    Ok(HmsStructure::new(parts)?)
}

fn gsm_from(file: &GsmFile) -> Result<Gsm, FormatError> {
    if file.agents != 1 {
        return Err(invalid(
            "generalized standard models have exactly one agent",
        ));
    }
    let atoms = sorted_atoms(&file.atoms)?;
    let objective = Names::new(&file.objective, &atoms)?;
    let (listed, vocab) = spaced_states(&file.spaces, &atoms)?;
    let subjective = file.subjective.clone();
    let sub = Names::new(&subjective, &atoms)?;
    let mut space = vec![None; subjective.len()];
    for (t, v) in listed.iter().zip(vocab) {
        if space[sub.state(t)?].replace(v).is_some() {
            return Err(invalid(format!("{t} is in two spaces")));
        }
    }
    let space = space
        .into_iter()
        .enumerate()
        .map(|(t, v)| v.ok_or_else(|| invalid(format!("{} is in no space", subjective[t]))))
        .collect::<Result<Vec<_>, _>>()?;
    let n = file.objective.len();
    let mut poss = vec![StateSet::with_capacity(subjective.len()); n];
    for (s, targets) in &file.poss {
        poss[objective.state(s)?] = sub.set(targets)?;
    }
    let mut proj = vec![None; n];
    for (s, t) in &file.proj {
        proj[objective.state(s)?] = Some(sub.state(t)?);
    }
    let proj = proj
        .into_iter()
        .enumerate()
        .map(|(s, t)| t.ok_or_else(|| invalid(format!("no projection of {}", file.objective[s]))))
        .collect::<Result<_, _>>()?;
    let m = Gsm {
        val: objective.true_atoms(n, &file.val)?,
        atoms,
        objective: file.objective.clone(),
        subjective,
        space,
        poss,
        proj,
    };
    m.check_well_formed()?;
    Ok(m)
}

impl ModelFile {
    /// Builds the structure; shape errors are reported here, semantic
    /// conditions by validation.
    pub fn to_model(&self) -> Result<Model, FormatError> {
        Ok(match &self.body {
            ModelBody::Kripke(f) => Model::Kripke(kripke_from(f)?),
            ModelBody::Awareness(f) => Model::Awareness(awareness_from(f)?),
            ModelBody::Hms(f) => Model::Hms(hms_from(f)?),
            ModelBody::Gsm(f) => Model::Gsm(gsm_from(f)?),
        })
    }

    pub fn from_model(m: &Model, witness: Option<Witness>) -> ModelFile {
        let body = match m {
            Model::Kripke(k) => ModelBody::Kripke(kripke_file(k)),
            Model::Awareness(a) => ModelBody::Awareness(AwarenessFile {
                frame: kripke_file(&a.frame),
                awareness: a
                    .awareness
                    .iter()
                    .map(|per| {
                        per.iter()
                            .enumerate()
                            .map(|(s, set)| {
                                let entry = match set {
                                    AwarenessSet::Generated(atoms) => AwarenessEntry::Generated(
                                        atoms.iter().map(|x| x.to_string()).collect(),
                                    ),
                                    AwarenessSet::Explicit(fs) => AwarenessEntry::Explicit(
                                        fs.iter().map(|f| f.to_string()).collect(),
                                    ),
                                };
                                (a.frame.states[s].clone(), entry)
                            })
                            .collect()
                    })
                    .collect(),
            }),
            Model::Hms(h) => ModelBody::Hms(hms_file(h)),
            Model::Gsm(g) => ModelBody::Gsm(gsm_file(g)),
        };
        ModelFile { body, witness }
    }

    pub fn parse(text: &str) -> Result<ModelFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("model files serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
        out.push('\n');
        out
    }
}

fn names(atoms: &[Atom], v: Vocab) -> Vec<String> {
    v.members().map(|a| atoms[a].to_string()).collect()
}

fn poss_maps(states: &[String], poss: &[Vec<StateSet>]) -> Vec<BTreeMap<String, Vec<String>>> {
    poss.iter()
        .map(|per| {
            per.iter()
                .enumerate()
                .map(|(s, set)| {
                    (
                        states[s].clone(),
                        set.ones().map(|t| states[t].clone()).collect(),
                    )
                })
                .collect()
        })
        .collect()
}

fn kripke_file(m: &KripkeStructure) -> KripkeFile {
    KripkeFile {
        agents: m.agents,
        atoms: m.atoms.iter().map(|a| a.to_string()).collect(),
        val: m
            .states
            .iter()
            .zip(&m.val)
            .map(|(s, row)| {
                let on = m
                    .atoms
                    .iter()
                    .zip(row)
                    .filter(|(_, &b)| b)
                    .map(|(a, _)| a.to_string())
                    .collect();
                (s.clone(), on)
            })
            .collect(),
        poss: poss_maps(&m.states, &m.poss),
        states: m.states.clone(),
    }
}

fn hms_file(m: &HmsStructure) -> HmsFile {
    let atoms = m.atoms();
    let states: Vec<String> = (0..m.num_states())
        .map(|s| m.state_name(s).to_string())
        .collect();
    let vocabs: Vec<Vocab> = Vocab::all(atoms.len())
        .filter(|&v| !m.space(v).is_empty())
        .collect();
    let mut proj = Vec::new();
    for &v in &vocabs {
        for a in v.members() {
            proj.push(Projection {
                from_space: names(atoms, v),
                drop: atoms[a].to_string(),
                map: m
                    .space(v)
                    .iter()
                    .map(|&s| {
                        let t = m
                            .project(s, v.without(a))
                            .expect("projection to a subspace");
                        (states[s].clone(), states[t].clone())
                    })
                    .collect(),
            });
        }
    }
    HmsFile {
        agents: m.agents(),
        atoms: atoms.iter().map(|a| a.to_string()).collect(),
        spaces: vocabs
            .iter()
            .map(|&v| Space {
                atoms: names(atoms, v),
                states: m.space(v).iter().map(|&s| states[s].clone()).collect(),
            })
            .collect(),
        val: (0..m.num_states())
            .map(|s| {
                let defined = (0..atoms.len())
                    .filter(|&a| m.val(s, a).is_defined())
                    .map(|a| (atoms[a].to_string(), m.val(s, a)))
                    .collect();
                (states[s].clone(), defined)
            })
            .collect(),
        poss: poss_maps(
            &states,
            &(1..=m.agents())
                .map(|i| (0..m.num_states()).map(|s| m.poss(i, s).clone()).collect())
                .collect::<Vec<_>>(),
        ),
        proj,
    }
}

fn gsm_file(m: &Gsm) -> GsmFile {
    let vocabs: Vec<Vocab> = Vocab::all(m.atoms.len())
        .filter(|v| m.space.contains(v))
        .collect();
    GsmFile {
        agents: 1,
        atoms: m.atoms.iter().map(|a| a.to_string()).collect(),
        spaces: vocabs
            .iter()
            .map(|&v| Space {
                atoms: names(&m.atoms, v),
                states: (0..m.subjective.len())
                    .filter(|&t| m.space[t] == v)
                    .map(|t| m.subjective[t].clone())
                    .collect(),
            })
            .collect(),
        val: m
            .objective
            .iter()
            .zip(&m.val)
            .map(|(s, row)| {
                let on = m
                    .atoms
                    .iter()
                    .zip(row)
                    .filter(|(_, &b)| b)
                    .map(|(a, _)| a.to_string())
                    .collect();
                (s.clone(), on)
            })
            .collect(),
        poss: m
            .objective
            .iter()
            .zip(&m.poss)
            .map(|(s, set)| {
                (
                    s.clone(),
                    set.ones().map(|t| m.subjective[t].clone()).collect(),
                )
            })
            .collect(),
        proj: m
            .objective
            .iter()
            .zip(&m.proj)
            .map(|(s, &t)| (s.clone(), m.subjective[t].clone()))
            .collect(),
        objective: m.objective.clone(),
        subjective: m.subjective.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::ClassSpec;
    use crate::validity::{enumerate_structures, SearchBounds, StructureKind};

    const TWO_STATE: &str = r#"{
      "kind": "hms", "agents": 1, "atoms": ["p"],
      "spaces": [{"atoms": ["p"], "states": ["s"]}, {"atoms": [], "states": ["t"]}],
      "val": {"s": {"p": "1"}},
      "poss": [{"s": ["s"], "t": ["t"]}],
      "proj": [{"from_space": ["p"], "drop": "p", "map": {"s": "t"}}]
    }"#;

    #[test]
    fn reads_a_hand_written_hms() {
        let m = ModelFile::parse(TWO_STATE).unwrap().to_model().unwrap();
        let Model::Hms(h) = &m else { panic!() };
        assert_eq!(h.val(1, 0), TruthValue::Undefined);
        assert_eq!(h.project(0, Vocab::EMPTY), Some(1));
    }

    #[test]
    fn output_is_sorted_and_round_trips() {
        for kind in StructureKind::ALL {
            let b = SearchBounds::default_for(kind).randomized(11, 10);
            for m in enumerate_structures(kind, &b, ClassSpec::NONE).unwrap() {
                let text = ModelFile::from_model(&m, None).to_json();
                let back = ModelFile::parse(&text).unwrap();
                assert_eq!(back.to_model().unwrap(), m, "{text}");
                assert_eq!(back.to_json(), text);
            }
        }
        let text = ModelFile::parse(TWO_STATE).unwrap().to_json();
        let agents = text.find("\"agents\"").unwrap();
        assert!(
            agents < text.find("\"atoms\"").unwrap()
                && text.find("\"atoms\"").unwrap() < text.find("\"kind\"").unwrap()
        );
        assert!(text.contains("\"p\": \"1\""));
    }

    #[test]
    fn shape_errors() {
        let bad = TWO_STATE.replace(r#""map": {"s": "t"}"#, r#""map": {"t": "t"}"#);
        assert!(ModelFile::parse(&bad).unwrap().to_model().is_err());
        let bad = TWO_STATE.replace(
            r#""poss": [{"s": ["s"], "t": ["t"]}]"#,
            r#""poss": [{"s": ["u"]}]"#,
        );
        assert!(matches!(
            ModelFile::parse(&bad).unwrap().to_model(),
            Err(FormatError::Structure(StructureError::UnknownState(_)))
        ));
        assert!(matches!(
            ModelFile::parse("{\"kind\": \"hms\"}"),
            Err(FormatError::Json(_))
        ));
        let gsm = r#"{"kind": "gsm", "agents": 2, "atoms": [], "objective": ["o"], "subjective": ["x"],
            "spaces": [{"atoms": [], "states": ["x"]}], "poss": {}, "proj": {"o": "x"}}"#;
        assert!(ModelFile::parse(gsm).unwrap().to_model().is_err());
    }

    #[test]
    fn witness_rides_along() {
        let mut file = ModelFile::parse(TWO_STATE).unwrap();
        file.witness = Some(Witness {
            formula: "K1 p ~> p".into(),
            mode: "strong".into(),
            state: "s".into(),
            value: TruthValue::False,
        });
        let text = file.to_json();
        assert!(text.contains("\"value\": \"0\""));
        assert_eq!(ModelFile::parse(&text).unwrap(), file);
    }
}
