use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use super::{closed_kfit, SubTopology};
use crate::construct::{patch_lazy, PatchLayout};
use crate::core::{Elem, FinSubset, FiniteSite};
use crate::error::{bound, Result};
use crate::theory::{CoverSpace, Generator, SiteMap};

/// Largest parent base for the PSub site, whose base is `S × Fin(S)`.
pub const PSUB_BASE_BOUND: usize = 4;

/// `PSub(S)`: base pairs `(a, A)`, covers decided by comparing meets of
/// `Closed_b ∨ KFit_B` subtopologies.
pub struct PSubSite {
    parent: Arc<FiniteSite>,
    gens: Vec<SubTopology>,
    meets: Mutex<HashMap<Vec<u32>, Arc<SubTopology>>>,
}

impl std::fmt::Debug for PSubSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PSubSite").field("base", &self.gens.len()).finish()
    }
}

/// Build `PSub(S)` for a stably locally compact site.
pub fn psub_site(site: &Arc<FiniteSite>) -> Result<PSubSite> {
    bound("PSub parent base", site.size(), PSUB_BASE_BOUND)?;
    crate::construct::require_slc(site, "PSub")?;
    let n = site.size();
    let mut gens = Vec::with_capacity(n << n);
    for a in site.elems() {
        for m in 0u64..1 << n {
            gens.push(closed_kfit(site, a, &FinSubset::from_mask(m))?);
        }
    }
    Ok(PSubSite {
        parent: site.clone(),
        gens,
        meets: Mutex::new(HashMap::new()),
    })
}

impl PSubSite {
    pub fn parent(&self) -> &Arc<FiniteSite> {
        &self.parent
    }

    pub fn size(&self) -> usize {
        self.gens.len()
    }

    pub fn elem(&self, a: Elem, set: &FinSubset) -> u32 {
        (a << self.parent.size()) | set.to_mask() as u32
    }

    pub fn decode(&self, x: u32) -> (Elem, FinSubset) {
        let n = self.parent.size();
        (x >> n, FinSubset::from_mask((x & ((1 << n) - 1)) as u64))
    }

    /// `Closed_a ∨ KFit_A` for the pair `x = (a, A)`.
    pub fn generator(&self, x: u32) -> &SubTopology {
        &self.gens[x as usize]
    }

    /// `⋀ {Closed_b ∨ KFit_B | (b, B) ∈ U}`, cached per `U`.
    pub fn meet_of(&self, u: &[u32]) -> Arc<SubTopology> {
        let mut key = u.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(t) = self.meets.lock().unwrap().get(&key) {
            return t.clone();
        }
        let mut extra = Vec::new();
        for &x in &key {
            extra.extend(self.gens[x as usize].extra_axioms().iter().cloned());
        }
        let t = Arc::new(SubTopology::new(self.parent.clone(), extra).expect("generators share the parent"));
        t.site();
        self.meets.lock().unwrap().entry(key).or_insert(t).clone()
    }

    /// `(a, A) ≤ (b, B)`, i.e. `Closed_b ∨ KFit_B ⊑ Closed_a ∨ KFit_A`.
    pub fn le(&self, x: u32, y: u32) -> bool {
        self.covers(&x, &[y])
    }
}

impl CoverSpace for PSubSite {
    type Elem = u32;

    fn covers(&self, a: &u32, u: &[u32]) -> bool {
        let t = self.meet_of(u);
        self.gens[*a as usize]
            .extra_axioms()
            .iter()
            .all(|ax| t.covers(ax.head, &ax.cover))
    }

    fn meet(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        (0..self.size() as u32)
            .filter(|&z| u.iter().any(|&x| self.le(z, x)) && v.iter().any(|&y| self.le(z, y)))
            .collect()
    }

    fn top(&self) -> Vec<u32> {
        (0..self.size() as u32).collect()
    }

    fn show(&self, x: &u32) -> String {
        let (a, set) = self.decode(*x);
        format!("({}, {})", self.parent.name(a), self.parent.format_subset(&set))
    }

    fn test_elements(&self) -> Vec<u32> {
        self.top()
    }

    fn basic_axioms(&self) -> Option<Vec<(u32, Vec<u32>)>> {
        None
    }
}

/// Outcome of one round-trip check on a generator.
#[derive(Clone, Debug, Serialize)]
pub struct IsoCheck {
    pub generator: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PsubIsoReport {
    pub site: String,
    pub psub_elements: usize,
    pub patch_generators: usize,
    /// `r ∘ s` on each Patch generator.
    pub patch_side: Vec<IsoCheck>,
    /// `s ∘ r` on each PSub element.
    pub psub_side: Vec<IsoCheck>,
    /// `r` respects the Patch axioms, when the explicit theory is small enough to list.
    pub r_respects_axioms: Option<bool>,
}

impl PsubIsoReport {
    pub fn passed(&self) -> bool {
        self.patch_side.iter().chain(&self.psub_side).all(|c| c.passed) && self.r_respects_axioms != Some(false)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.patch_side
            .iter()
            .chain(&self.psub_side)
            .filter(|c| !c.passed)
            .map(|c| c.generator.as_str())
            .collect()
    }
}

/// The maps `r : PSub(S) → Patch(S)` and `s : Patch(S) → PSub(S)` built from their
/// generator clauses, and the checks `r ∘ s = id`, `s ∘ r = id` up to cover-equality.
pub fn psub_patch_iso(site: &FiniteSite, label: &str) -> Result<PsubIsoReport> {
    let parent = Arc::new(site.clone());
    let psub = Arc::new(psub_site(&parent)?);
    let patch = Arc::new(patch_lazy(site)?);
    let n = site.size();
    let lay = PatchLayout { n };
    let all: Vec<u32> = (0..psub.size() as u32).collect();

    let gens: Vec<Vec<u32>> = lay
        .generators()
        .par_iter()
        .map(|g| {
            let target: Vec<u32> = match g {
                Generator::R(b) => vec![psub.elem(*b, &FinSubset::empty())],
                Generator::L(bs) => site.elems().map(|c| psub.elem(c, bs)).collect(),
                _ => unreachable!("patch generators are l or r"),
            };
            all.iter().copied().filter(|x| psub.covers(x, &target)).collect()
        })
        .collect();
    let r = SiteMap::from_generators("r", psub.clone(), patch.clone(), gens);
    let ps = psub.clone();
    let s = SiteMap::new("s", patch.clone(), psub.clone(), move |x: &u32| {
        let (a, set) = ps.decode(*x);
        vec![FinSubset::new([lay.r(a), lay.l(&set)])]
    });

    let rs = s.compose(&r);
    let patch_side = patch
        .test_elements()
        .par_iter()
        .map(|g| IsoCheck {
            generator: patch.show(g),
            passed: patch.cover_eq(&rs.preimage(g), std::slice::from_ref(g)),
        })
        .collect();
    let sr = r.compose(&s);
    let psub_side = all
        .par_iter()
        .map(|x| IsoCheck {
            generator: psub.show(x),
            passed: psub.cover_eq(&sr.preimage(x), &[*x]),
        })
        .collect();
    let r_respects_axioms = patch.theory().map(|_| r.check_basic().is_ok() && r.check_ftm1().is_ok());
    Ok(PsubIsoReport {
        site: label.to_string(),
        psub_elements: psub.size(),
        patch_generators: lay.count(),
        patch_side,
        psub_side,
        r_respects_axioms,
    })
}
