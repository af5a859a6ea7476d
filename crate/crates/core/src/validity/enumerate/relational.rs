//! Kripke and awareness structures over a fixed number of states.

use super::hms::ones;
use super::permutations;
use crate::structures::{
    state_set, AwarenessSet, AwarenessStructure, ClassSpec, KripkeStructure, Vocab,
};
use crate::syntax::Atom;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every relation on `n` states, as one successor mask per state, whose
/// properties meet `class`.
pub(crate) fn relations(n: usize, class: ClassSpec) -> Vec<Vec<u64>> {
    let subsets = 1u64 << n;
    let mut out = Vec::new();
    let mut rel = vec![0u64; n];
    loop {
        if meets(&rel, class) {
            out.push(rel.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            rel[i] += 1;
            if rel[i] < subsets {
                break;
            }
            rel[i] = 0;
            i += 1;
        }
    }
}

pub(crate) fn meets(rel: &[u64], class: ClassSpec) -> bool {
    (0..rel.len()).all(|s| {
        (!class.r || rel[s] >> s & 1 == 1)
            && ones(rel[s])
                .all(|t| (!class.t || rel[t] & !rel[s] == 0) && (!class.e || rel[s] & !rel[t] == 0))
    })
}

/// Masks plus values, relabelable as a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Relational {
    pub n: usize,
    /// `poss[agent][s]`
    pub poss: Vec<Vec<u64>>,
    /// Bit `a` of `val[s]` is the value of atom `a` at `s`.
    pub val: Vec<u32>,
    /// `aware[agent][s]`, empty for plain Kripke structures.
    pub aware: Vec<Vec<Vocab>>,
}

impl Relational {
    fn permuted(&self, perm: &[usize]) -> Relational {
        let move_mask = |m: u64| ones(m).fold(0u64, |acc, s| acc | 1 << perm[s]);
        let mut out = self.clone();
        for (i, per) in self.poss.iter().enumerate() {
            for s in 0..self.n {
                out.poss[i][perm[s]] = move_mask(per[s]);
            }
        }
        for s in 0..self.n {
            out.val[perm[s]] = self.val[s];
        }
        for (i, per) in self.aware.iter().enumerate() {
            for s in 0..self.n {
                out.aware[i][perm[s]] = per[s];
            }
        }
        out
    }

    fn encode(&self) -> Vec<u64> {
        let mut code: Vec<u64> = self.poss.iter().flatten().copied().collect();
        code.extend(self.val.iter().map(|&v| u64::from(v)));
        code.extend(self.aware.iter().flatten().map(|v| u64::from(v.0)));
        code
    }

    fn is_canonical(&self, perms: &[Vec<usize>]) -> bool {
        let own = self.encode();
        perms.iter().all(|p| self.permuted(p).encode() >= own)
    }

    fn knows_awareness(&self) -> bool {
        self.aware
            .iter()
            .zip(&self.poss)
            .all(|(aware, poss)| (0..self.n).all(|s| ones(poss[s]).all(|t| aware[t] == aware[s])))
    }

    pub fn kripke(&self, atoms: &[Atom]) -> KripkeStructure {
        KripkeStructure {
            agents: self.poss.len(),
            atoms: atoms.to_vec(),
            states: (0..self.n).map(|s| format!("w{s}")).collect(),
            poss: self
                .poss
                .iter()
                .map(|per| per.iter().map(|&m| state_set(self.n, ones(m))).collect())
                .collect(),
            val: self
                .val
                .iter()
                .map(|&v| (0..atoms.len()).map(|a| v >> a & 1 == 1).collect())
                .collect(),
        }
    }

    pub fn awareness(&self, atoms: &[Atom]) -> AwarenessStructure {
        AwarenessStructure {
            frame: self.kripke(atoms),
            awareness: self
                .aware
                .iter()
                .map(|per| {
                    per.iter()
                        .map(|v| AwarenessSet::Generated(v.to_atoms(atoms)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Shape of a relational enumeration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Shape {
    pub n: usize,
    pub agents: usize,
    pub atoms: usize,
    pub class: ClassSpec,
    /// `None` for Kripke structures; otherwise whether agents must know
    /// what they are aware of.
    pub awareness: Option<bool>,
}

impl Shape {
    /// Relations for one agent meeting the class.
    pub fn relations(&self) -> Vec<Vec<u64>> {
        relations(self.n, self.class)
    }

    /// Candidates before filtering, for refusing oversized requests.
    pub fn raw_count(&self) -> f64 {
        let rel = 2f64.powi((self.n * self.n) as i32);
        let val = 2f64.powi((self.n * self.atoms) as i32);
        let aware = match self.awareness {
            None => 1.0,
            Some(_) => 2f64.powi((self.n * self.atoms) as i32),
        };
        (rel * aware).powi(self.agents as i32) * val
    }

    /// Every structure of this shape, one per relabeling class, whose first
    /// agent's relation is `rels[first]`.
    pub fn shard(&self, rels: &[Vec<u64>], first: usize) -> Vec<Relational> {
        let perms = permutations(self.n);
        let vocabs = 1u32 << self.atoms;
        let aware_slots = if self.awareness.is_some() {
            self.n * self.agents
        } else {
            0
        };
        let mut out = Vec::new();
        let mut pick = vec![0usize; self.agents];
        pick[0] = first;
        loop {
            let poss: Vec<Vec<u64>> = pick.iter().map(|&i| rels[i].clone()).collect();
            for val in 0..1u32 << (self.n * self.atoms) {
                let val: Vec<u32> = (0..self.n)
                    .map(|s| val >> (s * self.atoms) & ((1 << self.atoms) - 1))
                    .collect();
                let total = (vocabs as u64).pow(aware_slots as u32);
                for code in 0..total {
                    let mut c = code;
                    let aware: Vec<Vec<Vocab>> = if self.awareness.is_some() {
                        (0..self.agents)
                            .map(|_| {
                                (0..self.n)
                                    .map(|_| {
                                        let v = Vocab((c % u64::from(vocabs)) as u32);
                                        c /= u64::from(vocabs);
                                        v
                                    })
                                    .collect()
                            })
                            .collect()
                    } else {
                        Vec::new()
                    };
                    let r = Relational {
                        n: self.n,
                        poss: poss.clone(),
                        val: val.clone(),
                        aware,
                    };
                    if self.awareness == Some(true) && !r.knows_awareness() {
                        continue;
                    }
                    if r.is_canonical(&perms) {
                        out.push(r);
                    }
                }
            }
            // Odometer over the remaining agents.
            let mut i = 1;
            loop {
                if i >= self.agents {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < rels.len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }

    pub fn random<R: Rng>(&self, rels: &[Vec<u64>], rng: &mut R) -> Option<Relational> {
        let poss: Vec<Vec<u64>> = (0..self.agents)
            .map(|_| rels.choose(rng).cloned())
            .collect::<Option<_>>()?;
        let val = (0..self.n)
            .map(|_| rng.gen_range(0..1u32 << self.atoms))
            .collect();
        let aware = match self.awareness {
            None => Vec::new(),
            Some(ka) => poss
                .iter()
                .map(|rel| {
                    // Under ka, states linked by the relation share a vocabulary.
                    let mut comp: Vec<usize> = (0..self.n).collect();
                    if ka {
                        fn find(comp: &mut [usize], x: usize) -> usize {
                            if comp[x] != x {
                                let root = find(comp, comp[x]);
                                comp[x] = root;
                            }
                            comp[x]
                        }
                        for s in 0..self.n {
                            for t in ones(rel[s]) {
                                let (a, b) = (find(&mut comp, s), find(&mut comp, t));
                                comp[a] = b;
                            }
                        }
                        for s in 0..self.n {
                            comp[s] = find(&mut comp, s);
                        }
                    }
                    let chosen: Vec<Vocab> = (0..self.n)
                        .map(|_| Vocab(rng.gen_range(0..1u32 << self.atoms)))
                        .collect();
                    (0..self.n).map(|s| chosen[comp[s]]).collect()
                })
                .collect(),
        };
        Some(Relational {
            n: self.n,
            poss,
            val,
            aware,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{validate_awareness, validate_kripke};
    use crate::validity::enumerate::default_atoms;

    fn all(shape: Shape) -> Vec<Relational> {
        let rels = relations(shape.n, shape.class);
        (0..rels.len())
            .flat_map(|i| shape.shard(&rels, i))
            .collect()
    }

    #[test]
    fn relation_counts() {
        // Partitions of 3 elements.
        assert_eq!(relations(3, ClassSpec::PARTITIONAL).len(), 5);
        assert_eq!(relations(2, ClassSpec::NONE).len(), 16);
        // Reflexive relations on 2 states: the off-diagonal pair is free.
        assert_eq!(relations(2, ClassSpec::new(true, false, false)).len(), 4);
    }

    #[test]
    fn single_state_kripke_by_hand() {
        // Two valuations times two relations on one state.
        let shape = |class| Shape {
            n: 1,
            agents: 1,
            atoms: 1,
            class,
            awareness: None,
        };
        assert_eq!(all(shape(ClassSpec::NONE)).len(), 4);
        assert_eq!(all(shape(ClassSpec::PARTITIONAL)).len(), 2);
        // Euclidean and transitive hold for both relations; reflexivity does not.
        assert_eq!(all(shape(ClassSpec::new(false, true, true))).len(), 4);
    }

    #[test]
    fn relabeling_dedup_counts_two_state_structures() {
        // Unlabeled one-atom structures on two states with one agent: count
        // orbits of the 16 × 4 labeled ones under the swap by Burnside.
        let labeled = 16 * 4;
        // Fixed by the swap: relation symmetric under swap (4 choices) and
        // equal values at both states (2 choices).
        let fixed = 4 * 2;
        let shape = Shape {
            n: 2,
            agents: 1,
            atoms: 1,
            class: ClassSpec::NONE,
            awareness: None,
        };
        assert_eq!(all(shape).len(), (labeled + fixed) / 2);
    }

    #[test]
    fn enumerated_structures_validate() {
        let atoms = default_atoms(2);
        for class in ClassSpec::all() {
            for ka in [false, true] {
                let shape = Shape {
                    n: 2,
                    agents: 2,
                    atoms: 2,
                    class,
                    awareness: Some(ka),
                };
                for r in all(shape).iter().step_by(97) {
                    let report = validate_awareness(&r.awareness(&atoms)).unwrap();
                    assert!(report.kripke.in_class(class) && report.pg);
                    assert!(!ka || report.ka);
                    let k = validate_kripke(&r.kripke(&atoms)).unwrap();
                    assert!(k.in_class(class));
                }
            }
        }
    }

    #[test]
    fn random_samples_meet_the_shape() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let atoms = default_atoms(2);
        for class in ClassSpec::all() {
            let shape = Shape {
                n: 3,
                agents: 2,
                atoms: 2,
                class,
                awareness: Some(true),
            };
            let rels = relations(3, class);
            for _ in 0..20 {
                let m = shape.random(&rels, &mut rng).unwrap().awareness(&atoms);
                let report = validate_awareness(&m).unwrap();
                assert!(report.pd && report.kripke.in_class(class));
            }
        }
    }
}
