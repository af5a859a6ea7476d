//! Propositional decision by truth tables, and skeletons of modal formulas.

use super::ValidityError;
use crate::semantics::{eval_assignment, Assignment, TruthValue};
use crate::syntax::{primitives, Atom, Formula};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prop3Verdict {
    /// Value 1 under every assignment.
    StronglyValid,
    /// Never 0, but `½` somewhere.
    WeaklyValidOnly,
    /// 0 somewhere.
    Falsifiable,
}

impl Prop3Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Prop3Verdict::StronglyValid => "strongly_valid",
            Prop3Verdict::WeaklyValidOnly => "weakly_valid_only",
            Prop3Verdict::Falsifiable => "falsifiable",
        }
    }
}

impl fmt::Display for Prop3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The full three-valued truth table of a propositional formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop3Status {
    pub atoms: Vec<Atom>,
    /// One row per assignment, atoms in the order of `atoms`, the first atom
    /// varying slowest.
    pub rows: Vec<(Vec<TruthValue>, TruthValue)>,
    pub verdict: Prop3Verdict,
}

fn reject_modal(f: &Formula) -> Result<(), ValidityError> {
    let mut modal = false;
    f.visit(&mut |g| {
        modal |= matches!(
            g,
            Formula::Know(..) | Formula::Aware(..) | Formula::XKnow(..)
        )
    });
    if modal {
        Err(ValidityError::Modal)
    } else {
        Ok(())
    }
}

/// Every assignment of `values` to `atoms`, first atom slowest.
fn assignments<'a>(
    atoms: &'a [Atom],
    values: &'a [TruthValue],
) -> impl Iterator<Item = Vec<TruthValue>> + 'a {
    let total = values.len().pow(atoms.len() as u32);
    (0..total).map(move |mut code| {
        let mut row = vec![values[0]; atoms.len()];
        for slot in row.iter_mut().rev() {
            *slot = values[code % values.len()];
            code /= values.len();
        }
        row
    })
}

type Rows = Vec<(Vec<TruthValue>, TruthValue)>;

fn table(f: &Formula, values: &[TruthValue]) -> Result<(Vec<Atom>, Rows), ValidityError> {
    reject_modal(f)?;
    let atoms: Vec<Atom> = primitives(f).into_iter().collect();
    let rows = assignments(&atoms, values)
        .map(|row| {
            let a: Assignment = atoms.iter().cloned().zip(row.iter().copied()).collect();
            let v = eval_assignment(&a, f)
                .expect("modal-free formulas evaluate under a full assignment");
            (row, v)
        })
        .collect();
    Ok((atoms, rows))
}

/// Evaluates a modal-free formula under every assignment of `0`, `½`, `1`
/// to its atoms.
pub fn prop3_status(f: &Formula) -> Result<Prop3Status, ValidityError> {
    let (atoms, rows) = table(f, &TruthValue::ALL)?;
    let verdict = if rows.iter().all(|(_, v)| v.is_true()) {
        Prop3Verdict::StronglyValid
    } else if rows.iter().any(|(_, v)| v.is_false()) {
        Prop3Verdict::Falsifiable
    } else {
        Prop3Verdict::WeaklyValidOnly
    };
    Ok(Prop3Status {
        atoms,
        rows,
        verdict,
    })
}

/// Two-valued tautology check; `↪` reads as material implication on
/// defined values.
pub fn prop2_tautology(f: &Formula) -> Result<bool, ValidityError> {
    let (_, rows) = table(f, &[TruthValue::False, TruthValue::True])?;
    Ok(rows.iter().all(|(_, v)| v.is_true()))
}

/// Which connectives a skeleton keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletonMode {
    /// `⊤ ¬ ∧`
    Boolean,
    /// `⊤ ¬ ∧ ↪`
    Nimp,
}

/// A propositional formula over fresh atoms together with what each atom
/// stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub formula: Formula,
    /// Fresh atoms in order of first occurrence, left to right.
    pub map: Vec<(Atom, Formula)>,
}

impl Skeleton {
    pub fn substitute(&self) -> Formula {
        fn go(f: &Formula, map: &[(Atom, Formula)]) -> Formula {
            match f {
                Formula::Prop(a) => map
                    .iter()
                    .find(|(x, _)| x == a)
                    .map_or_else(|| f.clone(), |(_, g)| g.clone()),
                Formula::Top => Formula::Top,
                Formula::Not(a) => Formula::not(go(a, map)),
                Formula::And(a, b) => Formula::and(go(a, map), go(b, map)),
                Formula::NImp(a, b) => Formula::nimp(go(a, map), go(b, map)),
                _ => unreachable!("skeletons hold no modal nodes"),
            }
        }
        go(&self.formula, &self.map)
    }
}

/// `a`, ..., `z`, then `a1`, `b1`, ...
pub fn fresh_atom(index: usize) -> Atom {
    let letter = (b'a' + (index % 26) as u8) as char;
    let name = match index / 26 {
        0 => letter.to_string(),
        round => format!("{letter}{round}"),
    };
    Atom::new(&name).expect("fresh atom names are valid")
}

/// Replaces every maximal subformula whose root is not a kept connective by
/// a fresh atom; equal subformulas share an atom.
pub fn skeletonize(f: &Formula, mode: SkeletonMode) -> Skeleton {
    fn go(f: &Formula, mode: SkeletonMode, map: &mut Vec<(Atom, Formula)>) -> Formula {
        match f {
            Formula::Top => Formula::Top,
            Formula::Not(a) => Formula::not(go(a, mode, map)),
            Formula::And(a, b) => {
                let a = go(a, mode, map);
                Formula::and(a, go(b, mode, map))
            }
            Formula::NImp(a, b) if mode == SkeletonMode::Nimp => {
                let a = go(a, mode, map);
                Formula::nimp(a, go(b, mode, map))
            }
            _ => {
                let atom = match map.iter().find(|(_, g)| g == f) {
                    Some((a, _)) => a.clone(),
                    None => {
                        let a = fresh_atom(map.len());
                        map.push((a.clone(), f.clone()));
                        a
                    }
                };
                Formula::Prop(atom)
            }
        }
    }
    let mut map = Vec::new();
    let formula = go(f, mode, &mut map);
    Skeleton { formula, map }
}
