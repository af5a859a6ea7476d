//! Events as (truths, falsities) pairs, and the union lemma.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unawareness::eventalg::{conj_event, know_event, neg_event, union_lemma_sample, EventPair};
use unawareness::structures::ClassSpec;
use unawareness::validity::{enumerate_structures, Model, SearchBounds, StructureKind};
use unawareness::{parse, LanguageTag};

fn main() {
    let bounds = SearchBounds::default_for(StructureKind::Hms).randomized(4, 1);
    let Some(Model::Hms(h)) = enumerate_structures(StructureKind::Hms, &bounds, ClassSpec::NONE)
        .unwrap()
        .next()
    else {
        unreachable!()
    };
    let lk = |t: &str| parse(t, LanguageTag::knimp(1)).unwrap();
    let names = |e: &EventPair| {
        let show = |set: &unawareness::structures::StateSet| {
            set.ones()
                .map(|s| h.state_name(s).to_string())
                .collect::<Vec<_>>()
        };
        format!(
            "true at {:?}, false at {:?}",
            show(&e.truths),
            show(&e.falsities)
        )
    };
    let p = EventPair::of(&h, &lk("p")).unwrap();
    let q = EventPair::of(&h, &lk("q")).unwrap();
    println!("[p]        {}", names(&p));
    println!("~[p]       {}", names(&neg_event(&p)));
    println!("[p] ⊓ [q]  {}", names(&conj_event(&p, &q)));
    println!("K1 [p]     {}", names(&know_event(&h, 1, &p).unwrap()));
    println!(
        "[K1 p]     {}",
        names(&EventPair::of(&h, &lk("K1 p")).unwrap())
    );
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let holds = (0..100)
        .filter(|_| union_lemma_sample(&h, &mut rng).holds)
        .count();
    println!("union lemma held on {holds} of 100 random choices");
}
