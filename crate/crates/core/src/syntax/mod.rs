//! Formula syntax: the AST, the concrete grammar, abbreviations and the
//! syntactic predicates the rest of the crate relies on.
//!
//! Abbreviations (`|`, `->`, `<->`, `<~>`, `= k`, and `A<i>` outside the
//! awareness language) are expanded when a formula is built, so the AST only
//! ever holds the core connectives. Two formulas are equal iff their core
//! trees are equal.

mod enumerate;
mod parser;
mod render;

pub use enumerate::{FormulaEnumerator, Operators};
pub use parser::{parse, ParseError, ParseErrorKind};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A primitive proposition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Creates an atom, checking the identifier rules of the grammar.
    pub fn new(name: &str) -> Result<Atom, InvalidAtom> {
        if is_valid_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid atom name {0:?}")]
pub struct InvalidAtom(pub String);

/// Letters, digits and underscores, starting with a letter; `top` and the
/// modal operator spellings (`K`, `A` or `X` followed by digits) are reserved.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !first.is_ascii_alphabetic() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    {
        return false;
    }
    if name == "top" {
        return false;
    }
    // `K1p` lexes as `K1 p`, so no atom may start with an operator prefix.
    let starts_with_operator =
        matches!(first, 'K' | 'A' | 'X') && name[1..].starts_with(|c: char| c.is_ascii_digit());
    !starts_with_operator
}

/// Sets of atoms, ordered by name.
pub type AtomSet = BTreeSet<Atom>;

/// Builds an [`AtomSet`] from names. Panics on invalid names; intended for
/// tests and examples.
pub fn atoms<'a>(names: impl IntoIterator<Item = &'a str>) -> AtomSet {
    names
        .into_iter()
        .map(|n| Atom::new(n).expect("valid atom name"))
        .collect()
}

/// Agents are numbered from 1.
pub type Agent = usize;

/// Core formula AST.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Prop(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Know(Agent, Box<Formula>),
    /// The nonstandard implication `φ ↪ ψ`.
    NImp(Box<Formula>, Box<Formula>),
    Aware(Agent, Box<Formula>),
    /// Explicit knowledge `Xᵢ φ`.
    XKnow(Agent, Box<Formula>),
}

/// The three formula languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    /// `¬ ∧ Kᵢ` over atoms and `⊤`.
    K,
    /// `K` plus the awareness operators `Aᵢ` and `Xᵢ`.
    Kxa,
    /// `K` plus the nonstandard implication `↪`.
    Knimp,
}

impl Language {
    pub fn name(self) -> &'static str {
        match self {
            Language::K => "k",
            Language::Kxa => "kxa",
            Language::Knimp => "knimp",
        }
    }
}

impl std::str::FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(Language::K),
            "kxa" => Ok(Language::Kxa),
            "knimp" => Ok(Language::Knimp),
            other => Err(format!(
                "unknown language {other:?} (expected k, kxa or knimp)"
            )),
        }
    }
}

/// A language together with the number of agents formulas may mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LanguageTag {
    pub lang: Language,
    pub agents: usize,
}

impl LanguageTag {
    pub fn new(lang: Language, agents: usize) -> Self {
        LanguageTag { lang, agents }
    }

    pub fn k(agents: usize) -> Self {
        Self::new(Language::K, agents)
    }

    pub fn kxa(agents: usize) -> Self {
        Self::new(Language::Kxa, agents)
    }

    pub fn knimp(agents: usize) -> Self {
        Self::new(Language::Knimp, agents)
    }

    /// Whether `φ` only uses node kinds and agents this tag allows.
    pub fn admits(&self, formula: &Formula) -> bool {
        let mut ok = true;
        formula.visit(&mut |f| {
            let allowed = match f {
                Formula::Top | Formula::Prop(_) | Formula::Not(_) | Formula::And(..) => true,
                Formula::Know(i, _) => (1..=self.agents).contains(i),
                Formula::NImp(..) => self.lang == Language::Knimp,
                Formula::Aware(i, _) | Formula::XKnow(i, _) => {
                    self.lang == Language::Kxa && (1..=self.agents).contains(i)
                }
            };
            ok &= allowed;
        });
        ok
    }
}

/// The value named by an `= k` abbreviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Zero,
    Half,
    One,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Zero => "0",
            Level::Half => "1/2",
            Level::One => "1",
        })
    }
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(Atom::new(name).expect("valid atom name"))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn know(i: Agent, f: Formula) -> Formula {
        Formula::Know(i, Box::new(f))
    }

    pub fn nimp(a: Formula, b: Formula) -> Formula {
        Formula::NImp(Box::new(a), Box::new(b))
    }

    pub fn aware(i: Agent, f: Formula) -> Formula {
        Formula::Aware(i, Box::new(f))
    }

    pub fn xknow(i: Agent, f: Formula) -> Formula {
        Formula::XKnow(i, Box::new(f))
    }

    /// `φ ∨ ψ` as `¬(¬φ ∧ ¬ψ)`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `φ ⇒ ψ` as `¬φ ∨ ψ`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// `φ ⇔ ψ` as `(φ ⇒ ψ) ∧ (ψ ⇒ φ)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// `φ ⇌ ψ` as `(φ ↪ ψ) ∧ (ψ ↪ φ)`.
    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::nimp(a.clone(), b.clone()), Formula::nimp(b, a))
    }

    /// `¬⊤`
    pub fn bottom() -> Formula {
        Formula::not(Formula::Top)
    }

    /// `φ = k`:
    /// `φ=1` is `¬(φ ↪ ¬⊤)`, `φ=0` is `¬(¬φ ↪ ¬⊤)` and
    /// `φ=½` is `(φ ↪ ¬⊤) ∧ (¬φ ↪ ¬⊤)`.
    pub fn eq(f: Formula, level: Level) -> Formula {
        match level {
            Level::One => Formula::not(Formula::nimp(f, Formula::bottom())),
            Level::Zero => Formula::not(Formula::nimp(Formula::not(f), Formula::bottom())),
            Level::Half => Formula::and(
                Formula::nimp(f.clone(), Formula::bottom()),
                Formula::nimp(Formula::not(f), Formula::bottom()),
            ),
        }
    }

    /// `Aᵢφ` as `Kᵢφ ∨ Kᵢ¬Kᵢφ`, the definition used in subjective and HMS
    /// semantics.
    pub fn aware_abbrev(i: Agent, f: Formula) -> Formula {
        let kf = Formula::know(i, f);
        Formula::or(kf.clone(), Formula::know(i, Formula::not(kf)))
    }

    /// Left-nested disjunction of a nonempty list.
    pub fn disjunction(mut items: impl Iterator<Item = Formula>) -> Option<Formula> {
        let first = items.next()?;
        Some(items.fold(first, Formula::or))
    }

    /// Left-nested conjunction of a nonempty list.
    pub fn conjunction(mut items: impl Iterator<Item = Formula>) -> Option<Formula> {
        let first = items.next()?;
        Some(items.fold(first, Formula::and))
    }

    /// Direct subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Top | Formula::Prop(_) => vec![],
            Formula::Not(a) | Formula::Know(_, a) | Formula::Aware(_, a) | Formula::XKnow(_, a) => {
                vec![a]
            }
            Formula::And(a, b) | Formula::NImp(a, b) => vec![a, b],
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for child in self.children() {
            child.visit(f);
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    /// The largest agent index mentioned, 0 if none.
    pub fn max_agent(&self) -> Agent {
        let mut max = 0;
        self.visit(&mut |f| {
            if let Formula::Know(i, _) | Formula::Aware(i, _) | Formula::XKnow(i, _) = f {
                max = max.max(*i);
            }
        });
        max
    }

    /// If this formula is exactly the expansion of `ψ = k`, returns `(ψ, k)`.
    /// The three shapes cannot overlap, so the answer is unique.
    pub fn as_level(&self) -> Option<(&Formula, Level)> {
        fn is_bottom(f: &Formula) -> bool {
            matches!(f, Formula::Not(inner) if **inner == Formula::Top)
        }
        match self {
            Formula::Not(inner) => match &**inner {
                Formula::NImp(lhs, rhs) if is_bottom(rhs) => match &**lhs {
                    // `¬(¬ψ ↪ ¬⊤)` is also `(¬ψ) = 1`; the `= 0` reading wins.
                    Formula::Not(body) => Some((body, Level::Zero)),
                    body => Some((body, Level::One)),
                },
                _ => None,
            },
            Formula::And(a, b) => match (&**a, &**b) {
                (Formula::NImp(l1, r1), Formula::NImp(l2, r2))
                    if is_bottom(r1) && is_bottom(r2) =>
                {
                    match &**l2 {
                        Formula::Not(body) if **body == **l1 => Some((l1, Level::Half)),
                        _ => None,
                    }
                }
                _ => None,
            },
            _ => None,
        }
    }
}

/// The atoms occurring in `φ`.
pub fn primitives(formula: &Formula) -> AtomSet {
    let mut out = AtomSet::new();
    formula.visit(&mut |f| {
        if let Formula::Prop(a) = f {
            out.insert(a.clone());
        }
    });
    out
}

/// Whether every atom of `φ` lies in `allowed`.
pub fn in_language(formula: &Formula, allowed: &AtomSet) -> bool {
    let mut ok = true;
    formula.visit(&mut |f| {
        if let Formula::Prop(a) = f {
            ok &= allowed.contains(a);
        }
    });
    ok
}

/// Error returned when a translation meets a node it does not handle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula is not in language {expected}: found {found}")]
pub struct WrongLanguage {
    pub expected: &'static str,
    pub found: &'static str,
}

/// Replaces every `Kᵢ` by `Xᵢ`. Only defined on the `K` language.
pub fn to_explicit(formula: &Formula) -> Result<Formula, WrongLanguage> {
    let wrong = |found| WrongLanguage {
        expected: "k",
        found,
    };
    Ok(match formula {
        Formula::Top => Formula::Top,
        Formula::Prop(a) => Formula::Prop(a.clone()),
        Formula::Not(a) => Formula::not(to_explicit(a)?),
        Formula::And(a, b) => Formula::and(to_explicit(a)?, to_explicit(b)?),
        Formula::Know(i, a) => Formula::xknow(*i, to_explicit(a)?),
        Formula::NImp(..) => return Err(wrong("~>")),
        Formula::Aware(..) => return Err(wrong("A")),
        Formula::XKnow(..) => return Err(wrong("X")),
    })
}

/// Nesting depth of `Kᵢ`, `Xᵢ` and `Aᵢ` nodes.
pub fn modal_depth(formula: &Formula) -> usize {
    match formula {
        Formula::Top | Formula::Prop(_) => 0,
        Formula::Not(a) => modal_depth(a),
        Formula::And(a, b) | Formula::NImp(a, b) => modal_depth(a).max(modal_depth(b)),
        Formula::Know(_, a) | Formula::Aware(_, a) | Formula::XKnow(_, a) => 1 + modal_depth(a),
    }
}

/// No `↪` node occurs.
pub fn is_implication_free(formula: &Formula) -> bool {
    let mut ok = true;
    formula.visit(&mut |f| ok &= !matches!(f, Formula::NImp(..)));
    ok
}

/// Membership in the definitely two-valued formulas: the least set holding
/// `⊤` and every `φ = k`, closed under `¬`, `∧`, `φ′ ↪ ·` and `Kᵢ`.
pub fn is_definitely_two_valued(formula: &Formula) -> bool {
    if formula.as_level().is_some() {
        return true;
    }
    match formula {
        Formula::Top => true,
        Formula::Not(a) | Formula::Know(_, a) => is_definitely_two_valued(a),
        Formula::And(a, b) => is_definitely_two_valued(a) && is_definitely_two_valued(b),
        Formula::NImp(_, b) => is_definitely_two_valued(b),
        Formula::Prop(_) | Formula::Aware(..) | Formula::XKnow(..) => false,
    }
}

/// A Boolean (`¬`, `∧`) combination of leaves `ψ = k` with `ψ`
/// implication-free.
pub fn is_simple(formula: &Formula) -> bool {
    // Reading `¬(¬ψ ↪ ¬⊤)` as `(¬ψ) = 1` instead gives the same verdict.
    if let Some((body, _)) = formula.as_level() {
        if is_implication_free(body) {
            return true;
        }
    }
    match formula {
        Formula::Not(a) => is_simple(a),
        Formula::And(a, b) => is_simple(a) && is_simple(b),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::prop("p")
    }
    fn q() -> Formula {
        Formula::prop("q")
    }

    #[test]
    fn atom_names() {
        assert!(Atom::new("p").is_ok());
        assert!(Atom::new("p_1").is_ok());
        assert!(Atom::new("Kx").is_ok());
        assert!(Atom::new("K1").is_err());
        assert!(Atom::new("X12a").is_err());
        assert!(Atom::new("top").is_err());
        assert!(Atom::new("1p").is_err());
        assert!(Atom::new("").is_err());
    }

    #[test]
    fn primitives_examples() {
        let f = Formula::know(1, Formula::and(p(), Formula::not(q())));
        assert_eq!(primitives(&f), atoms(["p", "q"]));
        assert!(primitives(&Formula::Top).is_empty());
        let g = Formula::or(p(), Formula::and(p(), q()));
        assert_eq!(primitives(&g), atoms(["p", "q"]));
    }

    #[test]
    fn primitives_of_awareness_abbreviation() {
        let f = Formula::and(p(), Formula::know(2, q()));
        assert_eq!(
            primitives(&Formula::aware_abbrev(1, f.clone())),
            primitives(&f)
        );
    }

    #[test]
    fn explicit_translation() {
        assert_eq!(
            to_explicit(&Formula::know(1, p())).unwrap(),
            Formula::xknow(1, p())
        );
        let f = Formula::not(Formula::know(1, Formula::not(Formula::know(2, p()))));
        let expected = Formula::not(Formula::xknow(1, Formula::not(Formula::xknow(2, p()))));
        assert_eq!(to_explicit(&f).unwrap(), expected);
        let g = Formula::and(p(), q());
        assert_eq!(to_explicit(&g).unwrap(), g);
        assert!(to_explicit(&Formula::nimp(p(), p())).is_err());
        assert!(to_explicit(&Formula::aware(1, p())).is_err());
    }

    #[test]
    fn language_membership() {
        assert!(in_language(&Formula::know(1, p()), &atoms(["p", "q"])));
        assert!(!in_language(&Formula::and(p(), q()), &atoms(["p"])));
        assert!(in_language(&Formula::Top, &AtomSet::new()));
    }

    #[test]
    fn definitely_two_valued() {
        assert!(is_definitely_two_valued(&Formula::Top));
        assert!(is_definitely_two_valued(&Formula::eq(p(), Level::Half)));
        assert!(is_definitely_two_valued(&Formula::eq(p(), Level::Zero)));
        assert!(!is_definitely_two_valued(&p()));
        assert!(!is_definitely_two_valued(&Formula::not(p())));
        assert!(!is_definitely_two_valued(&Formula::and(p(), Formula::Top)));
        assert!(is_definitely_two_valued(&Formula::nimp(p(), Formula::Top)));
        assert!(!is_definitely_two_valued(&Formula::nimp(Formula::Top, p())));
        assert!(is_definitely_two_valued(&Formula::know(
            1,
            Formula::eq(q(), Level::One)
        )));
    }

    #[test]
    fn level_shapes_are_recognised() {
        for level in [Level::Zero, Level::Half, Level::One] {
            let f = Formula::eq(Formula::know(1, p()), level);
            assert_eq!(f.as_level(), Some((&Formula::know(1, p()), level)));
        }
        assert_eq!(p().as_level(), None);
        assert_eq!(Formula::nimp(p(), q()).as_level(), None);
    }

    #[test]
    fn simple_formulas() {
        let leaf1 = Formula::eq(p(), Level::One);
        let leaf0 = Formula::eq(q(), Level::Zero);
        assert!(is_simple(&Formula::and(leaf1.clone(), Formula::not(leaf0))));
        assert!(is_simple(&Formula::eq(Formula::know(1, p()), Level::One)));
        assert!(!is_simple(&Formula::nimp(p(), q())));
        assert!(!is_simple(&Formula::eq(
            Formula::nimp(p(), q()),
            Level::Half
        )));
        assert!(!is_simple(&Formula::Top));
        assert!(!is_simple(&Formula::and(leaf1, p())));
    }

    #[test]
    fn depth() {
        assert_eq!(modal_depth(&Formula::and(p(), q())), 0);
        assert_eq!(modal_depth(&Formula::know(1, Formula::know(2, p()))), 2);
        // K₁p ∨ K₁¬K₁p: the deepest branch is K₁¬K₁p.
        assert_eq!(modal_depth(&Formula::aware_abbrev(1, p())), 2);
    }

    #[test]
    fn implication_free() {
        assert!(is_implication_free(&Formula::know(1, p())));
        assert!(!is_implication_free(&Formula::eq(p(), Level::One)));
    }

    #[test]
    fn language_tags() {
        let f = Formula::nimp(p(), Formula::know(2, p()));
        assert!(LanguageTag::knimp(2).admits(&f));
        assert!(!LanguageTag::knimp(1).admits(&f));
        assert!(!LanguageTag::k(2).admits(&f));
        assert!(LanguageTag::kxa(1).admits(&Formula::aware(1, p())));
        assert!(!LanguageTag::knimp(1).admits(&Formula::aware(1, p())));
    }
}
