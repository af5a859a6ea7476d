//! Soundness sweeps: every schema instance over small formulas, on every
//! enumerated structure of the system's class.

use super::schema::{Body, Pat, SideCondition};
use super::{AxiomSchema, ProofError, System};
use crate::semantics::{eval_assignment, Assignment, Ext, Frame, TruthValue};
use crate::structures::{ClassSpec, Vocab};
use crate::syntax::{Atom, Formula, FormulaEnumerator, Operators};
use crate::validity::classes::{ClassOps, Classes};
use crate::validity::{
    enumerate::default_atoms, enumerate::shards_over, prop2_tautology, prop3_status, Model,
    Prop3Verdict, SearchBounds, SkeletonMode, StructureKind, ValidityMode,
};
use rayon::prelude::*;
use std::collections::HashSet;
use std::sync::OnceLock;

/// Largest formula bound to a metavariable.
pub const SWEEP_MAX_SIZE: usize = 5;

/// Largest tautology skeleton instantiated for `Prop` and `Prop'`.
const SKELETON_MAX_SIZE: usize = 7;

/// An axiom instance failing somewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: String,
    pub instance: Formula,
    pub model: Model,
    pub state: usize,
    pub state_name: String,
    pub value: TruthValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub system: String,
    pub kind: StructureKind,
    pub class: ClassSpec,
    pub mode: ValidityMode,
    pub structures: usize,
    /// Instances evaluated, one per schema alternative, binding and
    /// structure.
    pub checks: u64,
    pub violation_count: u64,
    /// The first violation of each failing axiom.
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn is_sound(&self) -> bool {
        self.violation_count == 0
    }
}

/// Tautologies over `phi` and `psi`, one per three-valued truth table;
/// instances depend on the table alone since connectives act pointwise.
pub(crate) fn skeletons(mode: SkeletonMode) -> &'static [Pat] {
    static BOOLEAN: OnceLock<Vec<Pat>> = OnceLock::new();
    static NIMP: OnceLock<Vec<Pat>> = OnceLock::new();
    let build = || {
        let atoms: Vec<Atom> = ["phi", "psi"]
            .iter()
            .map(|a| Atom::new(a).unwrap())
            .collect();
        let ops = match mode {
            SkeletonMode::Boolean => Operators::propositional(),
            SkeletonMode::Nimp => Operators::propositional_nimp(),
        };
        let rows: Vec<Assignment> = TruthValue::ALL
            .iter()
            .flat_map(|&a| TruthValue::ALL.iter().map(move |&b| (a, b)))
            .map(|(a, b)| {
                [(atoms[0].clone(), a), (atoms[1].clone(), b)]
                    .into_iter()
                    .collect()
            })
            .collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for f in FormulaEnumerator::new(atoms.clone(), 0, ops, SKELETON_MAX_SIZE).all() {
            let valid = match mode {
                SkeletonMode::Boolean => prop2_tautology(&f).unwrap_or(false),
                SkeletonMode::Nimp => {
                    prop3_status(&f).is_ok_and(|s| s.verdict == Prop3Verdict::StronglyValid)
                }
            };
            if !valid {
                continue;
            }
            let table: Vec<TruthValue> = rows
                .iter()
                .map(|r| eval_assignment(r, &f).unwrap())
                .collect();
            if seen.insert(table) {
                out.push(Pat::compile(&f));
            }
        }
        out
    };
    match mode {
        SkeletonMode::Boolean => BOOLEAN.get_or_init(build),
        SkeletonMode::Nimp => NIMP.get_or_init(build),
    }
}

fn patterns(axiom: &AxiomSchema) -> &[Pat] {
    match &axiom.body {
        Body::Templates(p) => p,
        Body::Tautology(mode) => skeletons(*mode),
    }
}

fn class_ops(system: &System, kind: StructureKind) -> ClassOps {
    let nimp = system.language().lang == crate::syntax::Language::Knimp;
    if system.is_explicit() {
        ClassOps {
            nimp: false,
            know: false,
            xknow: true,
            aware: false,
        }
    } else if nimp && kind == StructureKind::Hms {
        ClassOps::KNIMP
    } else {
        ClassOps::K
    }
}

struct Partial {
    structures: usize,
    checks: u64,
    violation_count: u64,
    violations: Vec<Violation>,
}

fn sweep_model(system: &System, m: Model, ops: ClassOps, mode: ValidityMode) -> Partial {
    let mut out = Partial {
        structures: 1,
        checks: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    let frame: Frame = m.frame().expect("enumerated structures compile");
    let depth = SWEEP_MAX_SIZE;
    let all = Classes::build(&frame, ops, SWEEP_MAX_SIZE, depth);
    let free = ops.nimp.then(|| {
        Classes::build(
            &frame,
            ClassOps { nimp: false, ..ops },
            SWEEP_MAX_SIZE,
            depth,
        )
    });
    let judged = m.objective_points();
    let agents = frame.agents();
    for axiom in system.axioms() {
        let mut reported = false;
        for pat in patterns(axiom) {
            let (vars, agent_vars) = pat.arity();
            let domain = |v: usize| match (axiom.side, &free) {
                (SideCondition::ImplicationFree(x), Some(f)) if x == v => f,
                _ => &all,
            };
            let sizes: Vec<usize> = (0..vars).map(|v| domain(v).len()).collect();
            let mut pick = vec![0usize; vars];
            let mut who = vec![1usize; agent_vars];
            let mut bound: Vec<(Ext, Vocab)> = vec![(Ext::default(), Vocab::EMPTY); vars];
            'tuples: loop {
                for v in 0..vars {
                    let c = domain(v);
                    bound[v] = (c.ext(pick[v]), c.prims(pick[v]));
                }
                loop {
                    let (e, _) = pat.eval(&frame, &bound, &who);
                    out.checks += 1;
                    let bad = judged
                        & match mode {
                            ValidityMode::Weak => e.f,
                            _ => !e.t,
                        };
                    if bad != 0 {
                        out.violation_count += 1;
                        if !reported {
                            reported = true;
                            let formulas: Vec<Formula> =
                                (0..vars).map(|v| domain(v).formula(pick[v])).collect();
                            let state = bad.trailing_zeros() as usize;
                            out.violations.push(Violation {
                                axiom: axiom.name.to_string(),
                                instance: pat.instantiate(&formulas, &who),
                                state_name: m.point_names()[state].clone(),
                                value: e.value(state),
                                state,
                                model: m.clone(),
                            });
                        }
                    }
                    if !advance(&mut who, agents, 1) {
                        break;
                    }
                }
                for v in 0..vars {
                    pick[v] += 1;
                    if pick[v] < sizes[v] {
                        continue 'tuples;
                    }
                    pick[v] = 0;
                }
                break;
            }
        }
    }
    out
}

/// Next tuple over `low..=high` in odometer order; false after the last.
fn advance(tuple: &mut [usize], high: usize, low: usize) -> bool {
    for x in tuple.iter_mut() {
        *x += 1;
        if *x <= high {
            return true;
        }
        *x = low;
    }
    false
}

/// Checks every axiom instance with metavariables bound to formulas of
/// size at most [`SWEEP_MAX_SIZE`] over the bounds' atoms, on every
/// structure of `class` within `bounds`.
///
/// Formulas are taken up to equivalence on each structure, which leaves
/// instance values unchanged.
pub fn soundness_sweep(
    system: &System,
    class: ClassSpec,
    mode: ValidityMode,
    bounds: &SearchBounds,
) -> Result<SweepReport, ProofError> {
    let target = system.sweep_target();
    let Some(target) = target.filter(|t| t.mode == mode) else {
        return Err(ProofError::IncompatibleSweep {
            system: system.name.clone(),
            kind: target.map_or(StructureKind::Hms, |t| t.kind),
            mode,
        });
    };
    let mut b = *bounds;
    if let Some(n) = system.max_agents {
        b.agents = b.agents.min(n);
    }
    let ops = class_ops(system, target.kind);
    let shards = shards_over(target.kind, &b, class, default_atoms(b.atoms))
        .map_err(crate::validity::ValidityError::from)?;
    let parts: Vec<Partial> = shards
        .par_iter()
        .flat_map_iter(|shard| shard.models())
        .map(|m| sweep_model(system, m, ops, mode))
        .collect();
    let mut report = SweepReport {
        system: system.name.clone(),
        kind: target.kind,
        class,
        mode,
        structures: 0,
        checks: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for p in parts {
        report.structures += p.structures;
        report.checks += p.checks;
        report.violation_count += p.violation_count;
        for v in p.violations {
            if report.violations.iter().all(|w| w.axiom != v.axiom) {
                report.violations.push(v);
            }
        }
    }
    Ok(report)
}
