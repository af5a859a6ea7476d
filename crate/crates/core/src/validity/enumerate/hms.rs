//! Constructive enumeration of HMS structures.
//!
//! A skeleton fixes the space sizes, the covering projections and the
//! valuation. Possibility sets are then chosen state by state from the
//! bottom space upwards, offering only sets that keep confinedness,
//! projections preserve knowledge and projections preserve ignorance
//! intact; stationarity is checked once an agent is complete.

use super::{canonical_min, permutations_within};
use crate::semantics::TruthValue;
use crate::structures::{state_set, ClassSpec, HmsParts, HmsStructure, Vocab};
use crate::syntax::Atom;
use rand::seq::SliceRandom;
use rand::Rng;

const NONE: u8 = u8::MAX;

/// Space sizes, covering projections and valuation; states are laid out
/// space by space in vocabulary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Skeleton {
    k: usize,
    sizes: Vec<usize>,
    offset: Vec<usize>,
    space: Vec<Vocab>,
    /// `cover[s][a]`
    cover: Vec<Vec<u8>>,
    /// `proj[s][Ψ]`
    proj: Vec<Vec<u8>>,
    /// Values on the singleton spaces: `base[a][j]` for the `j`-th state of
    /// `S_{a}`.
    val: Vec<Vec<TruthValue>>,
    /// Every projection of each state, itself included.
    below: Vec<u64>,
}

impl Skeleton {
    fn n(&self) -> usize {
        self.space.len()
    }

    fn space_mask(&self, v: Vocab) -> u64 {
        let lo = self.offset[v.index()];
        ((1u64 << self.sizes[v.index()]) - 1) << lo
    }

    fn image(&self, set: u64, v: Vocab) -> u64 {
        ones(set).fold(0, |m, b| m | 1 << self.proj[b][v.index()])
    }

    fn up(&self, set: u64) -> u64 {
        (0..self.n())
            .filter(|&t| self.below[t] & set != 0)
            .fold(0, |m, t| m | 1 << t)
    }

    fn build(
        k: usize,
        sizes: Vec<usize>,
        cover: Vec<Vec<u8>>,
        val: Vec<Vec<TruthValue>>,
    ) -> Option<Skeleton> {
        let mut offset = Vec::with_capacity(sizes.len());
        let mut space = Vec::new();
        for (v, &size) in sizes.iter().enumerate() {
            offset.push(space.len());
            space.extend(std::iter::repeat_n(Vocab(v as u32), size));
        }
        let n = space.len();
        // Diamond law on every pair of atoms.
        for s in 0..n {
            let own: Vec<usize> = space[s].members().collect();
            for (x, &a) in own.iter().enumerate() {
                for &b in &own[x + 1..] {
                    let ab = cover[cover[s][a] as usize][b];
                    let ba = cover[cover[s][b] as usize][a];
                    if ab != ba {
                        return None;
                    }
                }
            }
        }
        let mut proj = vec![vec![NONE; 1 << k]; n];
        for s in 0..n {
            let own = space[s];
            for v in own.subsets() {
                let mut t = s;
                while space[t] != v {
                    let a = space[t].members().find(|&a| !v.contains(a)).unwrap();
                    t = cover[t][a] as usize;
                }
                proj[s][v.index()] = t as u8;
            }
        }
        let below = (0..n)
            .map(|s| {
                space[s]
                    .subsets()
                    .fold(0u64, |m, v| m | 1 << proj[s][v.index()])
            })
            .collect();
        Some(Skeleton {
            k,
            sizes,
            offset,
            space,
            cover,
            proj,
            val,
            below,
        })
    }

    fn value(&self, s: usize, a: usize) -> TruthValue {
        if !self.space[s].contains(a) {
            return TruthValue::Undefined;
        }
        let single = Vocab::EMPTY.with(a);
        let t = self.proj[s][single.index()] as usize;
        self.val[a][t - self.offset[single.index()]]
    }

    /// The skeleton with states renamed by `perm` (old index to new index).
    fn permuted(&self, perm: &[usize]) -> Skeleton {
        let n = self.n();
        let mut cover = vec![Vec::new(); n];
        for s in 0..n {
            cover[perm[s]] = self.cover[s]
                .iter()
                .map(|&t| {
                    if t == NONE {
                        NONE
                    } else {
                        perm[t as usize] as u8
                    }
                })
                .collect();
        }
        let val = (0..self.k)
            .map(|a| {
                let single = Vocab::EMPTY.with(a).index();
                let lo = self.offset[single];
                let mut row = self.val[a].clone();
                for (j, v) in self.val[a].iter().enumerate() {
                    row[perm[lo + j] - lo] = *v;
                }
                row
            })
            .collect();
        Skeleton::build(self.k, self.sizes.clone(), cover, val)
            .expect("relabeling keeps the diamond law")
    }

    fn encode(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.cover.iter().flatten().copied().collect();
        out.extend(self.val.iter().flatten().map(|v| *v as u8));
        out
    }

    pub(crate) fn to_structure(&self, atoms: &[Atom], poss: &[Vec<u64>]) -> HmsStructure {
        let n = self.n();
        let names = (0..n)
            .map(|s| {
                let v = self.space[s];
                let base: String = if v.is_empty() {
                    "e".into()
                } else {
                    v.members().map(|a| atoms[a].name()).collect()
                };
                format!("{base}{}", s - self.offset[v.index()])
            })
            .collect();
        HmsStructure::new(HmsParts {
            agents: poss.len(),
            atoms: atoms.to_vec(),
            states: names,
            space: self.space.clone(),
            val: (0..n)
                .map(|s| (0..self.k).map(|a| self.value(s, a)).collect())
                .collect(),
            poss: poss
                .iter()
                .map(|per| per.iter().map(|&m| state_set(n, ones(m))).collect())
                .collect(),
            cover: (0..n)
                .map(|s| {
                    self.cover[s]
                        .iter()
                        .map(|&t| (t != NONE).then_some(t as usize))
                        .collect()
                })
                .collect(),
        })
        .expect("enumerated skeletons are well formed")
    }

    /// Candidate possibility sets for state `s`, given the sets already
    /// chosen for every state of a smaller space.
    fn options(&self, s: usize, chosen: &[u64], class: ClassSpec) -> Vec<u64> {
        let own = self.space[s];
        let mut candidates = vec![0u64];
        for v in own.subsets().filter(|&v| v != own) {
            candidates.push(chosen[self.proj[s][v.index()] as usize]);
        }
        let mine = self.space_mask(own);
        let lo = self.offset[own.index()];
        for sub in 1..(1u64 << self.sizes[own.index()]) {
            candidates.push(sub << lo);
        }
        debug_assert!(mine.count_ones() as usize == self.sizes[own.index()]);
        candidates.sort_unstable();
        candidates.dedup();
        candidates.retain(|&b| self.admissible(s, b, chosen, class));
        candidates
    }

    fn admissible(&self, s: usize, b: u64, chosen: &[u64], class: ClassSpec) -> bool {
        let own = self.space[s];
        let lower = |v: Vocab| chosen[self.proj[s][v.index()] as usize];
        // Confinedness.
        let home = ones(b).next().map(|t| self.space[t]);
        if let Some(h) = home {
            if !h.is_subset(own) || b & !self.space_mask(h) != 0 {
                return false;
            }
        }
        // Projections preserve knowledge.
        let containers: Vec<Vocab> = match home {
            None => own.subsets().collect(),
            Some(h) => vec![h],
        };
        for v2 in containers {
            for v1 in v2.subsets().filter(|&v| v != own) {
                if self.image(b, v1) != lower(v1) {
                    return false;
                }
            }
        }
        // Projections preserve ignorance.
        let up_b = self.up(b);
        for v in own.subsets().filter(|&v| v != own) {
            if up_b & !self.up(lower(v)) != 0 {
                return false;
            }
        }
        !class.r || up_b >> s & 1 == 1
    }

    fn stationary(&self, poss: &[u64], class: ClassSpec) -> bool {
        (0..self.n()).all(|s| {
            ones(poss[s]).all(|t| {
                (!class.t || poss[t] & !poss[s] == 0) && (!class.e || poss[s] & !poss[t] == 0)
            })
        })
    }

    /// Every single-agent assignment of possibility sets meeting `class`.
    pub(crate) fn agent_assignments(&self, class: ClassSpec) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut chosen = vec![0u64; self.n()];
        self.extend(0, &mut chosen, class, &mut out);
        out
    }

    fn extend(&self, s: usize, chosen: &mut Vec<u64>, class: ClassSpec, out: &mut Vec<Vec<u64>>) {
        if s == self.n() {
            if self.stationary(chosen, class) {
                out.push(chosen.clone());
            }
            return;
        }
        for b in self.options(s, chosen, class) {
            chosen[s] = b;
            self.extend(s + 1, chosen, class, out);
        }
        chosen[s] = 0;
    }

    /// One random assignment, or `None` if the greedy walk gets stuck.
    fn random_assignment<R: Rng>(&self, class: ClassSpec, rng: &mut R) -> Option<Vec<u64>> {
        let mut chosen = vec![0u64; self.n()];
        for s in 0..self.n() {
            chosen[s] = *self.options(s, &chosen, class).choose(rng)?;
        }
        self.stationary(&chosen, class).then_some(chosen)
    }

    /// Relabelings of states that fix the skeleton.
    fn automorphisms(&self) -> Vec<Vec<usize>> {
        let own = self.encode();
        permutations_within(&self.sizes)
            .into_iter()
            .filter(|p| self.permuted(p).encode() == own)
            .collect()
    }
}

pub(crate) fn ones(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn permute_mask(m: u64, perm: &[usize]) -> u64 {
    ones(m).fold(0, |acc, s| acc | 1 << perm[s])
}

/// All monotone size vectors: `|S_Ψ| ≤ |S_Ψ′|` whenever `Ψ ⊆ Ψ′`.
fn size_vectors(k: usize, max: usize) -> Vec<Vec<usize>> {
    let count = 1usize << k;
    let mut out = Vec::new();
    let mut sizes = vec![0; count];
    fn go(v: usize, max: usize, sizes: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == sizes.len() {
            out.push(sizes.clone());
            return;
        }
        let floor = Vocab(v as u32)
            .members()
            .map(|a| sizes[v & !(1 << a)])
            .max()
            .unwrap_or(1);
        for size in floor..=max {
            sizes[v] = size;
            go(v + 1, max, sizes, out);
        }
    }
    go(0, max, &mut sizes, &mut out);
    out
}

/// All onto maps from `0..from` to `0..to`.
fn onto_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = to.pow(from as u32);
    for code in 0..total {
        let mut c = code;
        let map: Vec<usize> = (0..from)
            .map(|_| {
                let d = c % to;
                c /= to;
                d
            })
            .collect();
        if (0..to).all(|t| map.contains(&t)) {
            out.push(map);
        }
    }
    out
}

fn all_cover_choices(k: usize, sizes: &[usize]) -> Vec<Vec<Vec<u8>>> {
    let mut offset = Vec::new();
    let mut n = 0;
    for &s in sizes {
        offset.push(n);
        n += s;
    }
    // One slot per (space, dropped atom).
    let slots: Vec<(usize, usize)> = (0..sizes.len())
        .flat_map(|v| {
            Vocab(v as u32)
                .members()
                .map(move |a| (v, a))
                .collect::<Vec<_>>()
        })
        .collect();
    let choices: Vec<Vec<Vec<usize>>> = slots
        .iter()
        .map(|&(v, a)| onto_maps(sizes[v], sizes[v & !(1 << a)]))
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; slots.len()];
    loop {
        let mut cover = vec![vec![NONE; k]; n];
        for (slot, &(v, a)) in slots.iter().enumerate() {
            let map = &choices[slot][pick[slot]];
            let target = v & !(1 << a);
            for (j, &t) in map.iter().enumerate() {
                cover[offset[v] + j][a] = (offset[target] + t) as u8;
            }
        }
        out.push(cover);
        // Odometer.
        let mut i = 0;
        loop {
            if i == slots.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn all_valuations(k: usize, sizes: &[usize]) -> Vec<Vec<Vec<TruthValue>>> {
    let widths: Vec<usize> = (0..k).map(|a| sizes[1 << a]).collect();
    let bits: usize = widths.iter().sum();
    (0..1u64 << bits)
        .map(|code| {
            let mut c = code;
            widths
                .iter()
                .map(|&w| {
                    (0..w)
                        .map(|_| {
                            let b = c & 1 == 1;
                            c >>= 1;
                            TruthValue::from_bool(b)
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// One representative skeleton per relabeling class.
pub(crate) fn skeletons(k: usize, max_per_space: usize) -> Vec<Skeleton> {
    let mut out = Vec::new();
    for sizes in size_vectors(k, max_per_space) {
        let perms = permutations_within(&sizes);
        for cover in all_cover_choices(k, &sizes) {
            for val in all_valuations(k, &sizes) {
                let Some(sk) = Skeleton::build(k, sizes.clone(), cover.clone(), val) else {
                    continue;
                };
                let own = sk.encode();
                if perms.iter().all(|p| sk.permuted(p).encode() >= own) {
                    out.push(sk);
                }
            }
        }
    }
    out
}

/// Every structure over `skeleton` with `agents` agents in `class`, one
/// per relabeling class.
pub(crate) fn structures_over(
    sk: &Skeleton,
    atoms: &[Atom],
    agents: usize,
    class: ClassSpec,
) -> Vec<HmsStructure> {
    let per_agent = sk.agent_assignments(class);
    let autos = sk.automorphisms();
    let mut out = Vec::new();
    let mut pick = vec![0usize; agents];
    if per_agent.is_empty() {
        return out;
    }
    loop {
        let tuple: Vec<&Vec<u64>> = pick.iter().map(|&i| &per_agent[i]).collect();
        let code: Vec<u64> = tuple.iter().flat_map(|v| v.iter().copied()).collect();
        let minimal = canonical_min(
            &code,
            autos.iter().map(|p| {
                let mut image = vec![0u64; code.len()];
                let n = sk.n();
                for (chunk, agent) in tuple.iter().enumerate() {
                    for s in 0..n {
                        image[chunk * n + p[s]] = permute_mask(agent[s], p);
                    }
                }
                image
            }),
        );
        if minimal {
            let poss: Vec<Vec<u64>> = tuple.iter().map(|v| (*v).clone()).collect();
            out.push(sk.to_structure(atoms, &poss));
        }
        let mut i = 0;
        loop {
            if i == agents {
                return out;
            }
            pick[i] += 1;
            if pick[i] < per_agent.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// A random structure built constructively: random sizes, projections and
/// values, then possibility sets chosen among the admissible options state
/// by state. Gives up after `attempts` tries.
pub(crate) fn random_structure<R: Rng>(
    k: usize,
    max_per_space: usize,
    atoms: &[Atom],
    agents: usize,
    class: ClassSpec,
    rng: &mut R,
    attempts: usize,
) -> Option<HmsStructure> {
    let size_options = size_vectors(k, max_per_space);
    for _ in 0..attempts {
        let sizes = size_options.choose(rng)?.clone();
        let mut offset = Vec::new();
        let mut n = 0;
        for &s in &sizes {
            offset.push(n);
            n += s;
        }
        let mut cover = vec![vec![NONE; k]; n];
        for v in 0..sizes.len() {
            for a in Vocab(v as u32).members() {
                let target = v & !(1 << a);
                let maps = onto_maps(sizes[v], sizes[target]);
                let map = maps.choose(rng)?;
                for (j, &t) in map.iter().enumerate() {
                    cover[offset[v] + j][a] = (offset[target] + t) as u8;
                }
            }
        }
        let val = (0..k)
            .map(|a| {
                (0..sizes[1 << a])
                    .map(|_| TruthValue::from_bool(rng.gen()))
                    .collect()
            })
            .collect();
        let Some(sk) = Skeleton::build(k, sizes, cover, val) else {
            continue;
        };
        let poss: Option<Vec<Vec<u64>>> = (0..agents)
            .map(|_| sk.random_assignment(class, rng))
            .collect();
        if let Some(poss) = poss {
            return Some(sk.to_structure(atoms, &poss));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::validate_hms;
    use crate::validity::enumerate::default_atoms;
    use std::collections::HashSet;

    /// All raw structures with the given skeletons and arbitrary
    /// possibility sets, filtered by the validator and reduced by
    /// relabeling. Independent of the option generator.
    fn brute_force(k: usize, max: usize, class: ClassSpec) -> usize {
        let mut seen = HashSet::new();
        for sizes in size_vectors(k, max) {
            let perms = permutations_within(&sizes);
            for cover in all_cover_choices(k, &sizes) {
                for val in all_valuations(k, &sizes) {
                    let Some(sk) = Skeleton::build(k, sizes.clone(), cover.clone(), val) else {
                        continue;
                    };
                    let n = sk.n();
                    let subsets = 1u64 << n;
                    let total = subsets.pow(n as u32);
                    for code in 0..total {
                        let mut c = code;
                        let poss: Vec<u64> = (0..n)
                            .map(|_| {
                                let m = c % subsets;
                                c /= subsets;
                                m
                            })
                            .collect();
                        let m = sk.to_structure(&default_atoms(k), std::slice::from_ref(&poss));
                        if !validate_hms(&m).in_class(class) {
                            continue;
                        }
                        let canon = perms
                            .iter()
                            .map(|p| {
                                let q = sk.permuted(p);
                                let mut enc =
                                    q.encode().into_iter().map(u64::from).collect::<Vec<_>>();
                                let mut moved = vec![0u64; n];
                                for s in 0..n {
                                    moved[p[s]] = permute_mask(poss[s], p);
                                }
                                enc.extend(moved);
                                enc
                            })
                            .min()
                            .unwrap();
                        seen.insert((sizes.clone(), canon));
                    }
                }
            }
        }
        seen.len()
    }

    fn constructive(k: usize, max: usize, class: ClassSpec) -> usize {
        skeletons(k, max)
            .iter()
            .map(|sk| structures_over(sk, &default_atoms(k), 1, class).len())
            .sum()
    }

    #[test]
    fn one_atom_one_state_per_space_by_hand() {
        // S_∅ = {t}, S_{p} = {s}; val(s,p) ∈ {0,1}. For 𝒦(t): ∅ or {t}.
        // For 𝒦(s): ∅ (needs 𝒦(t) = ∅), {t} (needs 𝒦(t) = {t}) or {s}
        // (needs 𝒦(t) = {t}). So 3 per valuation, 6 in all.
        assert_eq!(constructive(1, 1, ClassSpec::NONE), 6);
        assert_eq!(brute_force(1, 1, ClassSpec::NONE), 6);
        // Generalized reflexivity removes the two with empty sets.
        assert_eq!(constructive(1, 1, ClassSpec::PARTITIONAL), 4);
    }

    #[test]
    fn constructive_matches_brute_force_on_one_atom() {
        for class in ClassSpec::all() {
            assert_eq!(
                constructive(1, 2, class),
                brute_force(1, 2, class),
                "class {class}"
            );
        }
    }

    #[test]
    fn enumerated_structures_validate() {
        for class in [ClassSpec::NONE, ClassSpec::PARTITIONAL] {
            for sk in skeletons(2, 1) {
                for m in structures_over(&sk, &default_atoms(2), 2, class) {
                    let r = validate_hms(&m);
                    assert!(r.in_class(class), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn random_structures_validate() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for class in ClassSpec::all() {
            for _ in 0..20 {
                let m = random_structure(2, 2, &default_atoms(2), 2, class, &mut rng, 100).unwrap();
                assert!(validate_hms(&m).in_class(class));
            }
        }
    }
}
