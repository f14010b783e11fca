use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{Axiom, FinSubset, FiniteSite, Localization};

/// A random localised site on `1..=max_base` elements: a random preorder
/// (closed transitively) and up to three random axioms.
pub fn random_site(seed: u64, max_base: usize) -> FiniteSite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_base.max(1));
    let names = (0..n).map(|i| format!("e{i}")).collect();
    let mut order = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if rng.gen_bool(0.3) {
                order.push((i, j));
            }
        }
    }
    let axioms = (0..rng.gen_range(0..=3))
        .map(|_| {
            let head = rng.gen_range(0..n as u32);
            let cover = FinSubset::new((0..n as u32).filter(|_| rng.gen_bool(0.35)));
            Axiom::new(head, cover)
        })
        .collect();
    FiniteSite::new(names, &order, axioms, Localization::Apply).expect("generated order is acyclic")
}
