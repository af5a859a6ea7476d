//! Axiom schemas: templates over formula and agent metavariables.

use crate::semantics::{Ext, Frame};
use crate::structures::Vocab;
use crate::syntax::{parse, primitives, Agent, Formula, Language, LanguageTag, Level};
use crate::validity::{prop2_tautology, prop3_status, skeletonize, Prop3Verdict, SkeletonMode};
use std::fmt;

/// Formula metavariables as written in templates.
pub(crate) const FORMULA_VARS: [&str; 3] = ["phi", "psi", "chi"];
/// Agent metavariables; templates write them as agents 1 and 2.
pub(crate) const AGENT_VARS: [&str; 2] = ["i", "j"];

/// A compiled template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Pat {
    Top,
    Var(usize),
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    NImp(Box<Pat>, Box<Pat>),
    Know(usize, Box<Pat>),
    XKnow(usize, Box<Pat>),
    Aware(usize, Box<Pat>),
    /// `φ ∨ ⋁_{p ∈ prims φ} Kᵢ(p = ½)` for variable `φ` and agent variable
    /// `i`; just `φ` when `φ` has no atoms.
    UndefinedAtoms(usize, usize),
}

impl Pat {
    /// Reads atoms `phi`, `psi`, `chi` as formula variables and agents 1, 2
    /// as agent variables.
    pub(crate) fn compile(template: &Formula) -> Pat {
        let b = |f: &Formula| Box::new(Pat::compile(f));
        match template {
            Formula::Top => Pat::Top,
            Formula::Prop(a) => Pat::Var(
                FORMULA_VARS
                    .iter()
                    .position(|v| *v == a.name())
                    .unwrap_or_else(|| panic!("template atom {a} is not a metavariable")),
            ),
            Formula::Not(a) => Pat::Not(b(a)),
            Formula::And(x, y) => Pat::And(b(x), b(y)),
            Formula::NImp(x, y) => Pat::NImp(b(x), b(y)),
            Formula::Know(i, a) => Pat::Know(i - 1, b(a)),
            Formula::XKnow(i, a) => Pat::XKnow(i - 1, b(a)),
            Formula::Aware(i, a) => Pat::Aware(i - 1, b(a)),
        }
    }

    /// Every `Kᵢ` becomes `Xᵢ`.
    pub(crate) fn explicit(&self) -> Pat {
        let b = |p: &Pat| Box::new(p.explicit());
        match self {
            Pat::Top | Pat::Var(_) | Pat::UndefinedAtoms(..) => self.clone(),
            Pat::Not(a) => Pat::Not(b(a)),
            Pat::And(x, y) => Pat::And(b(x), b(y)),
            Pat::NImp(x, y) => Pat::NImp(b(x), b(y)),
            Pat::Know(i, a) | Pat::XKnow(i, a) => Pat::XKnow(*i, b(a)),
            Pat::Aware(i, a) => Pat::Aware(*i, b(a)),
        }
    }

    fn visit(&self, f: &mut impl FnMut(&Pat)) {
        f(self);
        match self {
            Pat::Top | Pat::Var(_) | Pat::UndefinedAtoms(..) => {}
            Pat::Not(a) | Pat::Know(_, a) | Pat::XKnow(_, a) | Pat::Aware(_, a) => a.visit(f),
            Pat::And(x, y) | Pat::NImp(x, y) => {
                x.visit(f);
                y.visit(f);
            }
        }
    }

    /// Number of formula and agent variables used, as one past the highest
    /// index.
    pub(crate) fn arity(&self) -> (usize, usize) {
        let (mut vars, mut agents) = (0, 0);
        self.visit(&mut |p| match p {
            Pat::Var(v) => vars = vars.max(v + 1),
            Pat::Know(i, _) | Pat::XKnow(i, _) | Pat::Aware(i, _) => agents = agents.max(i + 1),
            Pat::UndefinedAtoms(v, i) => {
                vars = vars.max(v + 1);
                agents = agents.max(i + 1);
            }
            _ => {}
        });
        (vars, agents)
    }

    pub(crate) fn instantiate(&self, vars: &[Formula], agents: &[Agent]) -> Formula {
        let go = |p: &Pat| self::Pat::instantiate(p, vars, agents);
        match self {
            Pat::Top => Formula::Top,
            Pat::Var(v) => vars[*v].clone(),
            Pat::Not(a) => Formula::not(go(a)),
            Pat::And(x, y) => Formula::and(go(x), go(y)),
            Pat::NImp(x, y) => Formula::nimp(go(x), go(y)),
            Pat::Know(i, a) => Formula::know(agents[*i], go(a)),
            Pat::XKnow(i, a) => Formula::xknow(agents[*i], go(a)),
            Pat::Aware(i, a) => Formula::aware(agents[*i], go(a)),
            Pat::UndefinedAtoms(v, i) => undefined_atoms(&vars[*v], agents[*i]),
        }
    }

    /// Extension and atoms of an instance on `frame`, given those of the
    /// bound formulas.
    pub(crate) fn eval(
        &self,
        frame: &Frame,
        vars: &[(Ext, Vocab)],
        agents: &[Agent],
    ) -> (Ext, Vocab) {
        let go = |p: &Pat| p.eval(frame, vars, agents);
        match self {
            Pat::Top => (frame.top(), Vocab::EMPTY),
            Pat::Var(v) => vars[*v],
            Pat::Not(a) => {
                let (e, p) = go(a);
                (e.not(), p)
            }
            Pat::And(x, y) => {
                let ((ex, px), (ey, py)) = (go(x), go(y));
                (ex.and(ey), px.union(py))
            }
            Pat::NImp(x, y) => {
                let ((ex, px), (ey, py)) = (go(x), go(y));
                (frame.nimp(ex, ey), px.union(py))
            }
            Pat::Know(i, a) => {
                let (e, p) = go(a);
                (frame.know(agents[*i], e), p)
            }
            Pat::XKnow(i, a) => {
                let (e, p) = go(a);
                (frame.explicit(agents[*i], e, p), p)
            }
            Pat::Aware(i, a) => {
                let (_, p) = go(a);
                (frame.aware(agents[*i], p), p)
            }
            Pat::UndefinedAtoms(v, i) => {
                let (mut e, p) = vars[*v];
                let bottom = frame.top().not();
                for a in (0..frame.atoms().len()).filter(|&a| p.contains(a)) {
                    let atom = frame.atom(a);
                    let half = frame.nimp(atom, bottom).and(frame.nimp(atom.not(), bottom));
                    e = or(e, frame.know(agents[*i], half));
                }
                (e, p)
            }
        }
    }
}

fn or(a: Ext, b: Ext) -> Ext {
    a.not().and(b.not()).not()
}

/// `φ ∨ ⋁_{p ∈ prims φ} Kᵢ(p = ½)`, left nested with atoms in order.
pub(crate) fn undefined_atoms(f: &Formula, i: Agent) -> Formula {
    let extra = primitives(f)
        .into_iter()
        .map(|p| Formula::know(i, Formula::eq(Formula::Prop(p), Level::Half)));
    Formula::disjunction(std::iter::once(f.clone()).chain(extra)).expect("nonempty")
}

/// Disjuncts of `f` under any bracketing of `¬(¬a ∧ ¬b)`.
fn disjuncts(f: &Formula, out: &mut Vec<Formula>) {
    if let Formula::Not(inner) = f {
        if let Formula::And(x, y) = inner.as_ref() {
            if let (Formula::Not(a), Formula::Not(b)) = (x.as_ref(), y.as_ref()) {
                disjuncts(a, out);
                disjuncts(b, out);
                return;
            }
        }
    }
    out.push(f.clone());
}

fn same_multiset(mut a: Vec<Formula>, mut b: Vec<Formula>) -> bool {
    let key = |f: &Formula| f.to_string();
    a.sort_by_key(key);
    b.sort_by_key(key);
    a == b
}

/// Metavariable bindings found by matching.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substitution {
    pub formulas: Vec<(String, Formula)>,
    pub agents: Vec<(String, Agent)>,
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .formulas
            .iter()
            .map(|(v, g)| format!("{v} := {g}"))
            .chain(self.agents.iter().map(|(v, i)| format!("{v} := {i}")))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Default)]
struct Binding {
    vars: Vec<Option<Formula>>,
    agents: Vec<Option<Agent>>,
}

impl Binding {
    fn new(vars: usize, agents: usize) -> Binding {
        Binding {
            vars: vec![None; vars],
            agents: vec![None; agents],
        }
    }

    fn agent(&mut self, i: usize, actual: Agent) -> bool {
        match self.agents[i] {
            Some(a) => a == actual,
            None => {
                self.agents[i] = Some(actual);
                true
            }
        }
    }

    fn unify(&mut self, pat: &Pat, f: &Formula) -> bool {
        match (pat, f) {
            (Pat::Top, Formula::Top) => true,
            (Pat::Var(v), _) => match &self.vars[*v] {
                Some(g) => g == f,
                None => {
                    self.vars[*v] = Some(f.clone());
                    true
                }
            },
            (Pat::Not(p), Formula::Not(a)) => self.unify(p, a),
            (Pat::And(p, q), Formula::And(a, b)) | (Pat::NImp(p, q), Formula::NImp(a, b)) => {
                self.unify(p, a) && self.unify(q, b)
            }
            (Pat::Know(i, p), Formula::Know(j, a))
            | (Pat::XKnow(i, p), Formula::XKnow(j, a))
            | (Pat::Aware(i, p), Formula::Aware(j, a)) => self.agent(*i, *j) && self.unify(p, a),
            (Pat::UndefinedAtoms(v, i), _) => {
                let (Some(phi), Some(agent)) = (&self.vars[*v], self.agents[*i]) else {
                    return false;
                };
                let mut want = Vec::new();
                disjuncts(&undefined_atoms(phi, agent), &mut want);
                let mut got = Vec::new();
                disjuncts(f, &mut got);
                same_multiset(want, got)
            }
            _ => false,
        }
    }

    fn into_substitution(self) -> Substitution {
        Substitution {
            formulas: self
                .vars
                .into_iter()
                .enumerate()
                .filter_map(|(v, f)| Some((FORMULA_VARS[v].to_string(), f?)))
                .collect(),
            agents: self
                .agents
                .into_iter()
                .enumerate()
                .filter_map(|(i, a)| Some((AGENT_VARS[i].to_string(), a?)))
                .collect(),
        }
    }
}

/// Restrictions an instance must meet beyond matching the template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    None,
    /// Every bound formula is definitely two-valued.
    DefinitelyTwoValued,
    /// The named formula variable is bound to a `↪`-free formula.
    ImplicationFree(usize),
    /// A substitution instance of a two-valued tautology.
    PropTautology,
    /// A substitution instance of a strongly valid `↪` formula.
    Prop3Valid,
    /// The disjunction ranges over exactly the atoms of the variable.
    UndefinedAtoms(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Body {
    /// Any of the alternatives.
    Templates(Vec<Pat>),
    Tautology(SkeletonMode),
}

/// A named axiom schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: &'static str,
    /// The template as written, over `phi`, `psi`, `chi` and agents `1`
    /// (`i`) and `2` (`j`).
    pub statement: String,
    pub side: SideCondition,
    pub(crate) body: Body,
}

/// The outcome of matching a formula against a schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Match {
    Instance(Substitution),
    Mismatch(String),
}

impl Match {
    pub fn is_instance(&self) -> bool {
        matches!(self, Match::Instance(_))
    }
}

impl AxiomSchema {
    /// Schemas from template text; every alternative shares `side`.
    pub(crate) fn new(
        name: &'static str,
        lang: Language,
        side: SideCondition,
        templates: &[&str],
    ) -> AxiomSchema {
        let pats = templates
            .iter()
            .map(|t| {
                let f = parse(t, LanguageTag::new(lang, 2))
                    .unwrap_or_else(|e| panic!("template {t}: {e}"));
                Pat::compile(&f)
            })
            .collect();
        AxiomSchema {
            name,
            statement: templates.join("  /  "),
            side,
            body: Body::Templates(pats),
        }
    }

    pub(crate) fn from_pats(
        name: &'static str,
        statement: String,
        side: SideCondition,
        pats: Vec<Pat>,
    ) -> AxiomSchema {
        AxiomSchema {
            name,
            statement,
            side,
            body: Body::Templates(pats),
        }
    }

    pub(crate) fn tautology(name: &'static str, mode: SkeletonMode) -> AxiomSchema {
        let (statement, side) = match mode {
            SkeletonMode::Boolean => (
                "substitution instances of two-valued tautologies",
                SideCondition::PropTautology,
            ),
            SkeletonMode::Nimp => (
                "substitution instances of strongly valid ~> formulas",
                SideCondition::Prop3Valid,
            ),
        };
        AxiomSchema {
            name,
            statement: statement.to_string(),
            side,
            body: Body::Tautology(mode),
        }
    }

    /// Every `Kᵢ` in the templates becomes `Xᵢ`.
    pub(crate) fn explicit(&self) -> AxiomSchema {
        let body = match &self.body {
            Body::Templates(pats) => Body::Templates(pats.iter().map(Pat::explicit).collect()),
            b => b.clone(),
        };
        AxiomSchema {
            statement: self.statement.replace('K', "X"),
            body,
            ..self.clone()
        }
    }

    /// Whether `f` is an instance. `hint` applies to the tautology schemas
    /// only: a propositional formula whose atoms stand for subformulas of
    /// `f`. Without one the coarsest skeleton is used, which is a
    /// tautology whenever any abstraction of `f` is.
    pub fn matches(&self, f: &Formula, hint: Option<&Formula>) -> Match {
        match &self.body {
            Body::Templates(pats) => {
                let mut last = None;
                for pat in pats {
                    let (vars, agents) = pat.arity();
                    let mut b = Binding::new(vars, agents);
                    if !b.unify(pat, f) {
                        continue;
                    }
                    match self.check_side(&b) {
                        Ok(()) => return Match::Instance(b.into_substitution()),
                        Err(reason) => last = Some(reason),
                    }
                }
                Match::Mismatch(last.unwrap_or_else(|| {
                    format!("not an instance of {}: {}", self.name, self.statement)
                }))
            }
            Body::Tautology(mode) => self.match_tautology(*mode, f, hint),
        }
    }

    /// Every instance with formula variables drawn from `formulas` and
    /// agent variables from `1..=agents` that meets the side condition.
    pub fn instances(&self, formulas: &[Formula], agents: usize) -> Vec<Formula> {
        let pats = match &self.body {
            Body::Templates(p) => p.as_slice(),
            Body::Tautology(mode) => super::sweep::skeletons(*mode),
        };
        let mut out = Vec::new();
        for pat in pats {
            let (vars, agent_vars) = pat.arity();
            let tuples = |k: usize, n: usize| -> Vec<Vec<usize>> {
                (0..n.pow(k as u32))
                    .map(|mut code| {
                        (0..k)
                            .map(|_| {
                                let x = code % n;
                                code /= n;
                                x
                            })
                            .collect()
                    })
                    .collect()
            };
            for pick in tuples(vars, formulas.len()) {
                let bound: Vec<Formula> = pick.iter().map(|&x| formulas[x].clone()).collect();
                for who in tuples(agent_vars, agents) {
                    let who: Vec<Agent> = who.iter().map(|&i| i + 1).collect();
                    let f = pat.instantiate(&bound, &who);
                    if self.matches(&f, None).is_instance() {
                        out.push(f);
                    }
                }
            }
        }
        out
    }

    fn check_side(&self, b: &Binding) -> Result<(), String> {
        match self.side {
            SideCondition::DefinitelyTwoValued => {
                for (v, f) in b.vars.iter().enumerate() {
                    if let Some(f) = f {
                        if !crate::syntax::is_definitely_two_valued(f) {
                            return Err(format!(
                                "{}: {} := {f} is not definitely two-valued",
                                self.name, FORMULA_VARS[v]
                            ));
                        }
                    }
                }
                Ok(())
            }
            SideCondition::ImplicationFree(v) => match &b.vars[v] {
                Some(f) if !crate::syntax::is_implication_free(f) => Err(format!(
                    "{}: {} := {f} contains ~>",
                    self.name, FORMULA_VARS[v]
                )),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    fn match_tautology(&self, mode: SkeletonMode, f: &Formula, hint: Option<&Formula>) -> Match {
        let (skeleton, substitution) = match hint {
            None => {
                let s = skeletonize(f, mode);
                let formulas = s
                    .map
                    .iter()
                    .map(|(a, g)| (a.to_string(), g.clone()))
                    .collect();
                (
                    s.formula,
                    Substitution {
                        formulas,
                        agents: Vec::new(),
                    },
                )
            }
            Some(h) => {
                if mode == SkeletonMode::Boolean && !crate::syntax::is_implication_free(h) {
                    return Match::Mismatch(format!("{}: the hint {h} contains ~>", self.name));
                }
                match match_hint(h, f) {
                    Some(s) => (h.clone(), s),
                    None => {
                        return Match::Mismatch(format!(
                            "{}: the formula is not an instance of the hint {h}",
                            self.name
                        ))
                    }
                }
            }
        };
        let verdict = match mode {
            SkeletonMode::Boolean => prop2_tautology(&skeleton).map(|ok| ok.then_some(())),
            SkeletonMode::Nimp => prop3_status(&skeleton)
                .map(|s| (s.verdict == Prop3Verdict::StronglyValid).then_some(())),
        };
        match verdict {
            Ok(Some(())) => Match::Instance(substitution),
            Ok(None) => Match::Mismatch(match mode {
                SkeletonMode::Boolean => {
                    format!("{}: skeleton {skeleton} is not a tautology", self.name)
                }
                SkeletonMode::Nimp => {
                    format!("{}: skeleton {skeleton} is not strongly valid", self.name)
                }
            }),
            Err(_) => Match::Mismatch(format!(
                "{}: the hint {skeleton} contains a modal operator",
                self.name
            )),
        }
    }
}

/// Binds every atom of the propositional `hint` to a subformula of `f`.
fn match_hint(hint: &Formula, f: &Formula) -> Option<Substitution> {
    fn go(h: &Formula, f: &Formula, map: &mut Vec<(String, Formula)>) -> bool {
        match (h, f) {
            (Formula::Prop(a), _) => match map.iter().find(|(x, _)| x == a.name()) {
                Some((_, g)) => g == f,
                None => {
                    map.push((a.to_string(), f.clone()));
                    true
                }
            },
            (Formula::Top, Formula::Top) => true,
            (Formula::Not(x), Formula::Not(y)) => go(x, y, map),
            (Formula::And(x1, x2), Formula::And(y1, y2))
            | (Formula::NImp(x1, x2), Formula::NImp(y1, y2)) => go(x1, y1, map) && go(x2, y2, map),
            _ => false,
        }
    }
    let mut formulas = Vec::new();
    go(hint, f, &mut formulas).then_some(Substitution {
        formulas,
        agents: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::Frame;
    use crate::structures::{state_set, KripkeStructure};
    use crate::syntax::Atom;

    fn knimp(text: &str) -> Formula {
        parse(text, LanguageTag::knimp(2)).unwrap()
    }

    #[test]
    fn compile_and_instantiate_round_trip() {
        let t = knimp("(K1 phi & K1 (phi -> psi)) -> K2 psi");
        let pat = Pat::compile(&t);
        assert_eq!(pat.arity(), (2, 2));
        let inst = pat.instantiate(&[knimp("p"), knimp("q")], &[1, 2]);
        assert_eq!(inst, knimp("(K1 p & K1 (p -> q)) -> K2 q"));
    }

    #[test]
    fn undefined_atoms_accepts_any_bracketing() {
        let s = AxiomSchema::from_pats(
            "T'",
            String::new(),
            SideCondition::UndefinedAtoms(0),
            vec![Pat::NImp(
                Box::new(Pat::Know(0, Box::new(Pat::Var(0)))),
                Box::new(Pat::UndefinedAtoms(0, 0)),
            )],
        );
        let ok = [
            "K1 (p & q) ~> (p & q) | K1 (p = 1/2) | K1 (q = 1/2)",
            "K1 (p & q) ~> (p & q) | (K1 (q = 1/2) | K1 (p = 1/2))",
            "K1 top ~> top",
        ];
        for text in ok {
            assert!(s.matches(&knimp(text), None).is_instance(), "{text}");
        }
        let bad = [
            "K1 (p & q) ~> (p & q) | K1 (p = 1/2)",
            "K1 p ~> p | K1 (p = 1/2) | K1 (q = 1/2)",
            "K1 p ~> p | K2 (p = 1/2)",
        ];
        for text in bad {
            assert!(!s.matches(&knimp(text), None).is_instance(), "{text}");
        }
    }

    #[test]
    fn bitmask_evaluation_agrees_with_instances() {
        let m = KripkeStructure {
            agents: 2,
            atoms: vec![Atom::new("p").unwrap(), Atom::new("q").unwrap()],
            states: vec!["a".into(), "b".into()],
            poss: vec![
                vec![state_set(2, [0, 1]), state_set(2, [1])],
                vec![state_set(2, [0]), state_set(2, [0])],
            ],
            val: vec![vec![true, false], vec![false, true]],
        };
        let frame = Frame::from_kripke(&m).unwrap();
        let pat = Pat::compile(&parse("A1 K2 phi <-> !K1 (phi & psi)", LanguageTag::k(2)).unwrap());
        let vars = [knimp("p | K1 q"), knimp("!q")];
        let bound: Vec<(Ext, Vocab)> = vars
            .iter()
            .map(|f| (frame.eval(f).unwrap(), frame.vocab_of(f).unwrap()))
            .collect();
        for agents in [[1, 1], [1, 2], [2, 1], [2, 2]] {
            let inst = pat.instantiate(&vars, &agents);
            assert_eq!(
                pat.eval(&frame, &bound, &agents).0,
                frame.eval(&inst).unwrap()
            );
        }
    }

    #[test]
    fn hints_bind_atoms_consistently() {
        let s = AxiomSchema::tautology("Prop", SkeletonMode::Boolean);
        let f = knimp("K1 p -> K1 p");
        assert!(s.matches(&f, Some(&knimp("a -> a"))).is_instance());
        assert!(!s.matches(&f, Some(&knimp("a -> b"))).is_instance());
        assert!(!s.matches(&f, Some(&knimp("a"))).is_instance());
        assert!(s.matches(&f, None).is_instance());
        assert!(!s.matches(&knimp("K1 p -> p"), None).is_instance());
    }
}
