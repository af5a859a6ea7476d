//! Model enumeration, exhaustive and seeded.
//!
//! Exhaustive enumeration yields one structure per relabeling class, in a
//! fixed order. It is split into shards that can be generated
//! independently; concatenating the shards in order gives the full stream.

pub(crate) mod gsm;
pub(crate) mod hms;
pub(crate) mod relational;

use super::model::{Model, StructureKind};
use crate::semantics::MAX_FRAME_STATES;
use crate::structures::ClassSpec;
use crate::syntax::Atom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

/// Exhaustive caps for HMS structures.
pub const MAX_HMS_ATOMS: usize = 2;
pub const MAX_HMS_AGENTS: usize = 2;
pub const MAX_HMS_STATES_PER_SPACE: usize = 2;
/// Exhaustive cap for GSMs, in objective states.
pub const MAX_GSM_STATES: usize = 4;
/// Kripke and awareness enumerations are refused when the number of raw
/// candidates would exceed this.
pub const MAX_RAW_CANDIDATES: f64 = (1u64 << 27) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Randomized { seed: u64, samples: usize },
}

/// How much of a class to look at.
///
/// Structures are built over exactly `atoms` atoms and `agents` agents.
/// `states` bounds the states of each space for HMS structures, objective
/// states for GSMs and all states otherwise; every size from 1 up is
/// covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub atoms: usize,
    pub agents: usize,
    pub states: usize,
    pub sampling: Sampling,
}

impl SearchBounds {
    /// The default exhaustive caps for `kind`.
    pub fn default_for(kind: StructureKind) -> Self {
        let states = match kind {
            StructureKind::Hms => 2,
            StructureKind::Gsm | StructureKind::Kripke => 3,
            StructureKind::Awareness | StructureKind::AwarenessPd => 2,
        };
        SearchBounds {
            atoms: 2,
            agents: 1,
            states,
            sampling: Sampling::Exhaustive,
        }
    }

    pub fn with_atoms(self, atoms: usize) -> Self {
        SearchBounds { atoms, ..self }
    }

    pub fn with_agents(self, agents: usize) -> Self {
        SearchBounds { agents, ..self }
    }

    pub fn with_states(self, states: usize) -> Self {
        SearchBounds { states, ..self }
    }

    pub fn randomized(self, seed: u64, samples: usize) -> Self {
        SearchBounds {
            sampling: Sampling::Randomized { seed, samples },
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerateError {
    #[error("bounds must be at least 1 ({0} is 0)")]
    ZeroBound(&'static str),
    #[error("bounds exceed the exhaustive cap: {0}")]
    TooLarge(String),
    #[error("generalized standard models have a single agent")]
    SingleAgent,
}

/// A piece of an enumeration.
#[derive(Debug, Clone)]
pub struct Shard {
    atoms: Arc<Vec<Atom>>,
    work: Work,
}

#[derive(Debug, Clone)]
enum Work {
    Hms {
        skeleton: Arc<hms::Skeleton>,
        agents: usize,
        class: ClassSpec,
    },
    Relational {
        shape: relational::Shape,
        rels: Arc<Vec<Vec<u64>>>,
        first: usize,
    },
    Gsm {
        n: usize,
        class: ClassSpec,
        val: u64,
    },
    Sample {
        kind: StructureKind,
        bounds: SearchBounds,
        class: ClassSpec,
        index: usize,
    },
}

impl Shard {
    pub fn models(&self) -> Vec<Model> {
        let atoms = &self.atoms[..];
        match &self.work {
            Work::Hms {
                skeleton,
                agents,
                class,
            } => hms::structures_over(skeleton, atoms, *agents, *class)
                .into_iter()
                .map(Model::Hms)
                .collect(),
            Work::Relational { shape, rels, first } => shape
                .shard(rels, *first)
                .into_iter()
                .map(|r| match shape.awareness {
                    None => Model::Kripke(r.kripke(atoms)),
                    Some(_) => Model::Awareness(r.awareness(atoms)),
                })
                .collect(),
            Work::Gsm { n, class, val } => gsm::shard(*n, atoms.len(), *class, *val)
                .into_iter()
                .map(|b| Model::Gsm(b.to_gsm(atoms)))
                .collect(),
            Work::Sample {
                kind,
                bounds,
                class,
                index,
            } => sample(*kind, bounds, *class, atoms, *index)
                .into_iter()
                .collect(),
        }
    }
}

fn sample(
    kind: StructureKind,
    b: &SearchBounds,
    class: ClassSpec,
    atoms: &[Atom],
    index: usize,
) -> Option<Model> {
    use rand::Rng;
    let Sampling::Randomized { seed, .. } = b.sampling else {
        return None;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let k = atoms.len();
    match kind {
        StructureKind::Hms => {
            hms::random_structure(k, b.states, atoms, b.agents, class, &mut rng, 1000)
                .map(Model::Hms)
        }
        StructureKind::Gsm => {
            let n = rng.gen_range(1..=b.states);
            Some(Model::Gsm(gsm::random(n, k, class, &mut rng).to_gsm(atoms)))
        }
        _ => {
            let n = rng.gen_range(1..=b.states);
            let shape = relational_shape(kind, n, b, class);
            let rels = shape.relations();
            let r = shape.random(&rels, &mut rng)?;
            Some(match kind {
                StructureKind::Kripke => Model::Kripke(r.kripke(atoms)),
                _ => Model::Awareness(r.awareness(atoms)),
            })
        }
    }
}

fn relational_shape(
    kind: StructureKind,
    n: usize,
    b: &SearchBounds,
    class: ClassSpec,
) -> relational::Shape {
    relational::Shape {
        n,
        agents: b.agents,
        atoms: b.atoms,
        class,
        awareness: match kind {
            StructureKind::Kripke => None,
            StructureKind::AwarenessPd => Some(true),
            _ => Some(false),
        },
    }
}

/// The shards of an enumeration over `atoms` (sorted, at most 32).
pub fn shards_over(
    kind: StructureKind,
    bounds: &SearchBounds,
    class: ClassSpec,
    atoms: Vec<Atom>,
) -> Result<Vec<Shard>, EnumerateError> {
    let b = SearchBounds {
        atoms: atoms.len(),
        ..*bounds
    };
    if b.atoms == 0 {
        return Err(EnumerateError::ZeroBound("atoms"));
    }
    if b.agents == 0 {
        return Err(EnumerateError::ZeroBound("agents"));
    }
    if b.states == 0 {
        return Err(EnumerateError::ZeroBound("states"));
    }
    if kind == StructureKind::Gsm && b.agents != 1 {
        return Err(EnumerateError::SingleAgent);
    }
    let atoms = Arc::new(atoms);
    let shard = |work| Shard {
        atoms: atoms.clone(),
        work,
    };
    if let Sampling::Randomized { samples, .. } = b.sampling {
        if kind == StructureKind::Hms && (1usize << b.atoms.min(7)) * b.states > MAX_FRAME_STATES {
            return Err(EnumerateError::TooLarge(format!(
                "random HMS structures need at most {MAX_FRAME_STATES} states in all"
            )));
        }
        if b.states > 8 {
            return Err(EnumerateError::TooLarge(
                "random structures need ≤ 8 states".into(),
            ));
        }
        return Ok((0..samples)
            .map(|index| {
                shard(Work::Sample {
                    kind,
                    bounds: b,
                    class,
                    index,
                })
            })
            .collect());
    }
    match kind {
        StructureKind::Hms => {
            if b.atoms > MAX_HMS_ATOMS
                || b.agents > MAX_HMS_AGENTS
                || b.states > MAX_HMS_STATES_PER_SPACE
            {
                return Err(EnumerateError::TooLarge(format!(
                    "HMS enumeration allows ≤ {MAX_HMS_ATOMS} atoms, ≤ {MAX_HMS_AGENTS} agents and ≤ \
                     {MAX_HMS_STATES_PER_SPACE} states per space"
                )));
            }
            Ok(hms::skeletons(b.atoms, b.states)
                .into_iter()
                .map(|sk| {
                    shard(Work::Hms {
                        skeleton: Arc::new(sk),
                        agents: b.agents,
                        class,
                    })
                })
                .collect())
        }
        StructureKind::Gsm => {
            if b.states > MAX_GSM_STATES || b.atoms > 2 {
                return Err(EnumerateError::TooLarge(format!(
                    "GSM enumeration allows ≤ {MAX_GSM_STATES} objective states and ≤ 2 atoms"
                )));
            }
            Ok((1..=b.states)
                .flat_map(|n| (0..1u64 << (n * b.atoms)).map(move |val| (n, val)))
                .map(|(n, val)| shard(Work::Gsm { n, class, val }))
                .collect())
        }
        _ => {
            let mut out = Vec::new();
            for n in 1..=b.states {
                let shape = relational_shape(kind, n, &b, class);
                if shape.raw_count() > MAX_RAW_CANDIDATES {
                    return Err(EnumerateError::TooLarge(format!(
                        "{} candidates for {kind} structures with {n} states",
                        shape.raw_count()
                    )));
                }
                let rels = Arc::new(shape.relations());
                for first in 0..rels.len() {
                    out.push(shard(Work::Relational {
                        shape,
                        rels: rels.clone(),
                        first,
                    }));
                }
            }
            Ok(out)
        }
    }
}

/// The shards of an enumeration over [`default_atoms`].
pub fn shards(
    kind: StructureKind,
    bounds: &SearchBounds,
    class: ClassSpec,
) -> Result<Vec<Shard>, EnumerateError> {
    shards_over(kind, bounds, class, default_atoms(bounds.atoms))
}

/// Every structure in the class within the bounds (or the seeded samples),
/// in canonical order.
pub fn enumerate_structures(
    kind: StructureKind,
    bounds: &SearchBounds,
    class: ClassSpec,
) -> Result<impl Iterator<Item = Model>, EnumerateError> {
    Ok(shards(kind, bounds, class)?
        .into_iter()
        .flat_map(|s| s.models()))
}

/// `p`, `q`, `r`, ... then `p1`, `p2`, ...
pub fn default_atoms(k: usize) -> Vec<Atom> {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    let mut out: Vec<Atom> = (0..k)
        .map(|i| {
            let name = NAMES
                .get(i)
                .map_or_else(|| format!("p{i}"), |n| n.to_string());
            Atom::new(&name).expect("default atom names are valid")
        })
        .collect();
    out.sort();
    out
}

/// Every permutation of `0..n` that maps each block of consecutive indices
/// (of the given sizes) onto itself.
pub(crate) fn permutations_within(sizes: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = sizes.iter().sum();
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    let mut lo = 0;
    for &size in sizes {
        let block = permutations(size);
        out = out
            .into_iter()
            .flat_map(|p| {
                block.iter().map(move |b| {
                    let mut q = p.clone();
                    for (j, &x) in b.iter().enumerate() {
                        q[lo + j] = lo + x;
                    }
                    q
                })
            })
            .collect();
        lo += size;
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Whether `code` is no greater than any of its images.
pub(crate) fn canonical_min<T: Ord>(code: &[T], images: impl Iterator<Item = Vec<T>>) -> bool {
    images.into_iter().all(|img| img.as_slice() >= code)
}
