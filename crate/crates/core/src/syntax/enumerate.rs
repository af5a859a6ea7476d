use super::{modal_depth, Atom, Formula};

/// Which connectives an enumeration may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Operators {
    pub top: bool,
    pub not: bool,
    pub and: bool,
    pub know: bool,
    pub nimp: bool,
    pub aware: bool,
    pub xknow: bool,
}

impl Operators {
    /// `⊤ ¬ ∧ Kᵢ`
    pub fn k() -> Self {
        Operators {
            top: true,
            not: true,
            and: true,
            know: true,
            nimp: false,
            aware: false,
            xknow: false,
        }
    }

    /// `⊤ ¬ ∧ Kᵢ ↪`
    pub fn knimp() -> Self {
        Operators {
            nimp: true,
            ..Self::k()
        }
    }

    /// `⊤ ¬ ∧ ↪`
    pub fn propositional_nimp() -> Self {
        Operators {
            know: false,
            ..Self::knimp()
        }
    }

    /// `⊤ ¬ ∧`
    pub fn propositional() -> Self {
        Operators {
            know: false,
            ..Self::k()
        }
    }
}

/// Enumerates every formula up to a node count, smallest first.
#[derive(Debug, Clone)]
pub struct FormulaEnumerator {
    pub atoms: Vec<Atom>,
    pub agents: usize,
    pub operators: Operators,
    pub max_size: usize,
    pub max_depth: Option<usize>,
}

impl FormulaEnumerator {
    pub fn new(atoms: Vec<Atom>, agents: usize, operators: Operators, max_size: usize) -> Self {
        FormulaEnumerator {
            atoms,
            agents,
            operators,
            max_size,
            max_depth: None,
        }
    }

    pub fn with_max_depth(mut self, depth: usize) -> Self {
        self.max_depth = Some(depth);
        self
    }

    /// Formulas grouped by size: entry `n` holds every formula with `n` nodes
    /// (entry 0 is empty).
    pub fn by_size(&self) -> Vec<Vec<Formula>> {
        let ops = self.operators;
        let depth_ok = |f: &Formula| self.max_depth.is_none_or(|d| modal_depth(f) <= d);
        let mut levels: Vec<Vec<Formula>> = vec![Vec::new(); self.max_size + 1];
        if self.max_size == 0 {
            return levels;
        }
        if ops.top {
            levels[1].push(Formula::Top);
        }
        levels[1].extend(self.atoms.iter().cloned().map(Formula::Prop));
        for size in 2..=self.max_size {
            let mut current = Vec::new();
            for f in &levels[size - 1] {
                if ops.not {
                    current.push(Formula::not(f.clone()));
                }
                for i in 1..=self.agents {
                    if ops.know {
                        current.push(Formula::know(i, f.clone()));
                    }
                    if ops.aware {
                        current.push(Formula::aware(i, f.clone()));
                    }
                    if ops.xknow {
                        current.push(Formula::xknow(i, f.clone()));
                    }
                }
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                for a in &levels[left] {
                    for b in &levels[right] {
                        if ops.and {
                            current.push(Formula::and(a.clone(), b.clone()));
                        }
                        if ops.nimp {
                            current.push(Formula::nimp(a.clone(), b.clone()));
                        }
                    }
                }
            }
            current.retain(|f| depth_ok(f));
            levels[size] = current;
        }
        levels
    }

    /// All formulas, smallest first.
    pub fn all(&self) -> Vec<Formula> {
        self.by_size().into_iter().flatten().collect()
    }
}
