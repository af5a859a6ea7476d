//! Generalized standard models.
//!
//! Only subjective states in the image of the projection can matter, so each
//! subjective state is identified with its block of objective preimages.
//! Blocks get a vocabulary on which their members agree, and the relation
//! links blocks of equal vocabulary only.

use super::hms::ones;
use super::permutations;
use super::relational::relations;
use crate::structures::{state_set, ClassSpec, Gsm, Vocab};
use crate::syntax::Atom;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Blocks {
    /// Bit `a` of `val[s]` is atom `a` at objective `s`.
    pub val: Vec<u32>,
    /// Block of each objective state, numbered by first occurrence.
    pub block: Vec<usize>,
    pub vocab: Vec<Vocab>,
    /// Successor blocks of each block.
    pub poss: Vec<u64>,
}

impl Blocks {
    fn encode(&self, perm: &[usize]) -> Vec<u64> {
        let n = self.val.len();
        let mut inverse = vec![0; n];
        for (s, &p) in perm.iter().enumerate() {
            inverse[p] = s;
        }
        // Renumber blocks by first occurrence in the new order.
        let mut renumber = vec![usize::MAX; self.vocab.len()];
        let mut next = 0;
        for &old in &inverse {
            let b = self.block[old];
            if renumber[b] == usize::MAX {
                renumber[b] = next;
                next += 1;
            }
        }
        let mut code = Vec::with_capacity(4 * n);
        for &old in &inverse {
            let b = self.block[old];
            let succ = ones(self.poss[b]).fold(0u64, |m, c| m | 1 << renumber[c]);
            code.extend([
                u64::from(self.val[old]),
                renumber[b] as u64,
                u64::from(self.vocab[b].0),
                succ,
            ]);
        }
        code
    }

    fn is_canonical(&self, perms: &[Vec<usize>]) -> bool {
        let own = self.encode(&perms[0]);
        perms.iter().all(|p| self.encode(p) >= own)
    }

    pub fn to_gsm(&self, atoms: &[Atom]) -> Gsm {
        let blocks = self.vocab.len();
        Gsm {
            atoms: atoms.to_vec(),
            objective: (0..self.val.len()).map(|s| format!("o{s}")).collect(),
            subjective: (0..blocks).map(|b| format!("s{b}")).collect(),
            space: self.vocab.clone(),
            val: self
                .val
                .iter()
                .map(|&v| (0..atoms.len()).map(|a| v >> a & 1 == 1).collect())
                .collect(),
            poss: self
                .block
                .iter()
                .map(|&b| state_set(blocks, ones(self.poss[b])))
                .collect(),
            proj: self.block.clone(),
        }
    }
}

/// Restricted growth strings of length `n`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Vocabularies on which all members of the block agree.
fn block_vocabs(val: &[u32], block: &[usize], b: usize, atoms: usize) -> Vec<Vocab> {
    let members: Vec<u32> = (0..val.len())
        .filter(|&s| block[s] == b)
        .map(|s| val[s])
        .collect();
    let differ = members.iter().fold(0u32, |m, &v| m | (v ^ members[0]));
    Vocab::full(atoms)
        .subsets()
        .filter(|v| v.0 & differ == 0)
        .collect()
}

/// Relations on blocks that link equal vocabularies only and meet `class`
/// within each vocabulary.
fn block_relations(vocab: &[Vocab], class: ClassSpec) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; vocab.len()]];
    let mut groups: Vec<Vocab> = vocab.to_vec();
    groups.sort();
    groups.dedup();
    for v in groups {
        let members: Vec<usize> = (0..vocab.len()).filter(|&b| vocab[b] == v).collect();
        let rels = relations(members.len(), class);
        out = out
            .into_iter()
            .flat_map(|partial| {
                rels.iter()
                    .map(|rel| {
                        let mut next = partial.clone();
                        for (j, &b) in members.iter().enumerate() {
                            next[b] = ones(rel[j]).fold(0u64, |m, x| m | 1 << members[x]);
                        }
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Every model with `n` objective states and the given valuation code, one
/// per relabeling class.
pub(crate) fn shard(n: usize, atoms: usize, class: ClassSpec, val_code: u64) -> Vec<Blocks> {
    let perms = permutations(n);
    let mask = (1u32 << atoms) - 1;
    let val: Vec<u32> = (0..n)
        .map(|s| (val_code >> (s * atoms)) as u32 & mask)
        .collect();
    let mut out = Vec::new();
    for block in partitions(n) {
        let count = block.iter().max().unwrap() + 1;
        let options: Vec<Vec<Vocab>> = (0..count)
            .map(|b| block_vocabs(&val, &block, b, atoms))
            .collect();
        let mut pick = vec![0usize; count];
        loop {
            let vocab: Vec<Vocab> = pick.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            for poss in block_relations(&vocab, class) {
                let m = Blocks {
                    val: val.clone(),
                    block: block.clone(),
                    vocab: vocab.clone(),
                    poss,
                };
                if m.is_canonical(&perms) {
                    out.push(m);
                }
            }
            let mut i = 0;
            loop {
                if i == count {
                    break;
                }
                pick[i] += 1;
                if pick[i] < options[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == count {
                break;
            }
        }
    }
    out
}

pub(crate) fn random<R: Rng>(n: usize, atoms: usize, class: ClassSpec, rng: &mut R) -> Blocks {
    let val: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << atoms)).collect();
    let block = partitions(n)
        .choose(rng)
        .expect("at least one partition")
        .clone();
    let count = block.iter().max().unwrap() + 1;
    let vocab: Vec<Vocab> = (0..count)
        .map(|b| {
            *block_vocabs(&val, &block, b, atoms)
                .choose(rng)
                .expect("the empty vocabulary always fits")
        })
        .collect();
    let mut poss = vec![0u64; count];
    let mut groups = vocab.clone();
    groups.sort();
    groups.dedup();
    for v in groups {
        let members: Vec<usize> = (0..count).filter(|&b| vocab[b] == v).collect();
        let rel = relations(members.len(), class)
            .choose(rng)
            .expect("the full relation meets every class")
            .clone();
        for (j, &b) in members.iter().enumerate() {
            poss[b] = ones(rel[j]).fold(0u64, |m, x| m | 1 << members[x]);
        }
    }
    Blocks {
        val,
        block,
        vocab,
        poss,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::validate_gsm;
    use crate::validity::enumerate::default_atoms;

    fn all(n: usize, atoms: usize, class: ClassSpec) -> Vec<Blocks> {
        (0..1u64 << (n * atoms))
            .flat_map(|v| shard(n, atoms, class, v))
            .collect()
    }

    #[test]
    fn single_state_by_hand() {
        // val(o,p) ∈ {0,1}; the one block has vocabulary ∅ or {p}; the
        // relation on it is ∅ or the loop.
        assert_eq!(all(1, 1, ClassSpec::NONE).len(), 8);
        assert_eq!(all(1, 1, ClassSpec::PARTITIONAL).len(), 4);
    }

    #[test]
    fn enumerated_models_validate() {
        let atoms = default_atoms(2);
        for class in ClassSpec::all() {
            for b in all(2, 2, class) {
                let report = validate_gsm(&b.to_gsm(&atoms)).unwrap();
                assert!(report.in_class(class), "{report:?}");
            }
        }
    }

    #[test]
    fn random_models_validate() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let atoms = default_atoms(2);
        for class in ClassSpec::all() {
            for _ in 0..30 {
                let m = random(3, 2, class, &mut rng).to_gsm(&atoms);
                assert!(validate_gsm(&m).unwrap().in_class(class));
            }
        }
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell: Vec<usize> = (1..=4).map(|n| partitions(n).len()).collect();
        assert_eq!(bell, [1, 2, 5, 15]);
    }
}
