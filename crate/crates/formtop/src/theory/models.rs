use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::generator::Generator;
use super::theory::GeometricTheory;
use crate::core::{sort_canonical, FinSubset};
use crate::error::{Error, Result};

/// Default generator bound for exhaustive model enumeration.
pub const MODEL_ENUMERATION_BOUND: usize = 22;

/// A model given by a membership test, optionally with its extension.
#[derive(Clone)]
pub struct ModelOracle<G = Generator> {
    membership: Arc<dyn Fn(&G) -> bool + Send + Sync>,
    support: Option<Arc<Vec<G>>>,
}

impl<G: Clone + PartialEq + Send + Sync + 'static> ModelOracle<G> {
    pub fn from_fn<F: Fn(&G) -> bool + Send + Sync + 'static>(f: F) -> Self {
        ModelOracle {
            membership: Arc::new(f),
            support: None,
        }
    }

    pub fn from_set(members: Vec<G>) -> Self {
        let support = Arc::new(members);
        let s = Arc::clone(&support);
        ModelOracle {
            membership: Arc::new(move |g| s.contains(g)),
            support: Some(support),
        }
    }

    pub fn contains(&self, g: &G) -> bool {
        (self.membership)(g)
    }

    pub fn support(&self) -> Option<&[G]> {
        self.support.as_deref().map(|v| v.as_slice())
    }
}

impl ModelOracle<Generator> {
    /// The model consisting of the given generator indices of `theory`.
    pub fn from_indices(theory: &GeometricTheory, m: &FinSubset) -> Self {
        Self::from_set(m.iter().map(|g| theory.generators()[g as usize].clone()).collect())
    }

    /// Membership restricted to `theory`'s generators, as indices.
    pub fn indices(&self, theory: &GeometricTheory) -> FinSubset {
        (0..theory.generator_count() as u32)
            .filter(|&g| self.contains(&theory.generators()[g as usize]))
            .collect()
    }
}

/// First axiom violated by the model `m` (as a set of generator indices), if any.
pub fn first_violation(theory: &GeometricTheory, m: &FixedBitSet) -> Option<usize> {
    theory.axioms().position(|ax| {
        ax.ante.iter().all(|&g| m.contains(g as usize))
            && !ax.disjuncts().any(|d| d.iter().all(|&g| m.contains(g as usize)))
    })
}

/// Every axiom `⋀A ⊢ ⋁ᵢ⋀Bᵢ` holds: `A ⊆ m ⇒ ∃i, Bᵢ ⊆ m`.
pub fn model_check(theory: &GeometricTheory, m: &ModelOracle) -> bool {
    let bits = m.indices(theory).to_bits(theory.generator_count());
    first_violation(theory, &bits).is_none()
}

/// Like [`model_check`], naming the violated axiom.
pub fn model_check_explain(theory: &GeometricTheory, m: &ModelOracle) -> std::result::Result<(), String> {
    let bits = m.indices(theory).to_bits(theory.generator_count());
    match first_violation(theory, &bits) {
        None => Ok(()),
        Some(i) => Err(theory.describe(i)),
    }
}

pub fn is_model(theory: &GeometricTheory, m: &FinSubset) -> bool {
    first_violation(theory, &m.to_bits(theory.generator_count())).is_none()
}

struct MaskAxiom {
    ante: u64,
    disjuncts: Vec<u64>,
}

/// All models, by size and then lexicographically, via depth-first search with pruning.
pub fn enumerate_models(theory: &GeometricTheory, max_generators: usize) -> Result<Vec<FinSubset>> {
    let n = theory.generator_count();
    if n > max_generators.min(30) {
        return Err(Error::Bound {
            what: format!(
                "model enumeration over {} generators (use the located-subset route for {})",
                n,
                theory.provenance()
            ),
            size: n,
            bound: max_generators.min(30),
        });
    }
    let axioms: Vec<MaskAxiom> = theory
        .axioms()
        .map(|ax| MaskAxiom {
            ante: ax.ante.iter().fold(0, |m, &g| m | 1 << g),
            disjuncts: ax.disjuncts().map(|d| d.iter().fold(0, |m, &g| m | 1 << g)).collect(),
        })
        .collect();
    // axioms mentioning no generator at all are decided before the search
    let ground: Vec<usize> = axioms
        .iter()
        .enumerate()
        .filter(|(_, ax)| ax.disjuncts.iter().fold(ax.ante, |m, d| m | d) == 0)
        .map(|(i, _)| i)
        .collect();
    // watchers: every axiom mentioning generator g is rechecked after g is decided
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, ax) in axioms.iter().enumerate() {
        let all = ax.disjuncts.iter().fold(ax.ante, |m, d| m | d);
        for (g, w) in watch.iter_mut().enumerate() {
            if all >> g & 1 == 1 {
                w.push(i);
            }
        }
    }
    let violated = |ax: &MaskAxiom, truth: u64, decided: u64| {
        ax.ante & !truth == 0 && ax.disjuncts.iter().all(|&d| d & decided & !truth != 0)
    };
    if ground.iter().any(|&i| violated(&axioms[i], 0, 0)) {
        return Ok(Vec::new());
    }
    fn dfs(
        k: usize,
        n: usize,
        truth: u64,
        axioms: &[MaskAxiom],
        watch: &[Vec<usize>],
        violated: &(dyn Fn(&MaskAxiom, u64, u64) -> bool + Sync),
        out: &mut Vec<u64>,
    ) {
        if k == n {
            out.push(truth);
            return;
        }
        let decided = if k + 1 >= 64 { u64::MAX } else { (1u64 << (k + 1)) - 1 };
        for bit in [false, true] {
            let t = if bit { truth | 1 << k } else { truth };
            if watch[k].iter().all(|&i| !violated(&axioms[i], t, decided)) {
                dfs(k + 1, n, t, axioms, watch, violated, out);
            }
        }
    }
    // split the search on the first few generators
    let split = n.min(6);
    let prefixes: Vec<u64> = (0u64..1 << split).collect();
    let chunks: Vec<Vec<u64>> = prefixes
        .par_iter()
        .map(|&prefix| {
            let mut out = Vec::new();
            let mut truth = 0u64;
            for k in 0..split {
                let decided = (1u64 << (k + 1)) - 1;
                if prefix >> k & 1 == 1 {
                    truth |= 1 << k;
                }
                if watch[k].iter().any(|&i| violated(&axioms[i], truth, decided)) {
                    return out;
                }
            }
            dfs(split, n, truth, &axioms, &watch, &violated, &mut out);
            out
        })
        .collect();
    let mut models: Vec<FinSubset> = chunks.into_iter().flatten().map(FinSubset::from_mask).collect();
    sort_canonical(&mut models);
    Ok(models)
}
