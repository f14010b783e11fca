//! Inductively generated subtopologies of a finite site, perfect subtopologies,
//! the PSub site and its isomorphism with Patch.

mod psub;
mod search;

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::core::{
    brute_force_way_below, localize, Axiom, AxiomDoc, Elem, FinSubset, FiniteSite, Localization, BRUTE_FORCE_BOUND,
};
use crate::error::{bound, Error, Result};

pub use psub::{psub_patch_iso, psub_site, IsoCheck, PSubSite, PsubIsoReport, PSUB_BASE_BOUND};
pub use search::{cover_tables, perfect_search, CoverTable, PerfectSearchReport, SEARCH_BASE_BOUND};

/// Largest base for which `kfit` expands `B ≫ A` over all of `Fin(base)`.
pub const KFIT_BASE_BOUND: usize = 10;

/// A subtopology given by extra axioms over a parent site. The cover is the parent
/// cover together with the localisation of the extras.
#[derive(Clone)]
pub struct SubTopology {
    parent: Arc<FiniteSite>,
    extra: Vec<Axiom>,
    site: OnceLock<FiniteSite>,
}

impl std::fmt::Debug for SubTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubTopology")
            .field("parent", &self.parent.names())
            .field("extra", &self.extra.len())
            .finish()
    }
}

/// Interchange form: parent base names and the extra axioms.
#[derive(Clone, Debug, Serialize)]
pub struct SubTopologyDoc {
    pub parent: Vec<String>,
    pub extra_axioms: Vec<AxiomDoc>,
}

impl SubTopology {
    /// Extra axioms are checked against the parent base; duplicates are dropped.
    pub fn new(parent: Arc<FiniteSite>, mut extra: Vec<Axiom>) -> Result<Self> {
        let n = parent.size();
        for ax in &extra {
            check(n, ax.head)?;
            for c in ax.cover.iter() {
                check(n, c)?;
            }
        }
        extra.sort();
        extra.dedup();
        Ok(SubTopology {
            parent,
            extra,
            site: OnceLock::new(),
        })
    }

    /// The parent itself, with no extra axioms.
    pub fn whole(parent: &Arc<FiniteSite>) -> Self {
        SubTopology {
            parent: parent.clone(),
            extra: Vec::new(),
            site: OnceLock::new(),
        }
    }

    /// `S ◁ ∅`.
    pub fn least(parent: &Arc<FiniteSite>) -> Self {
        let extra = parent.elems().map(|a| Axiom::new(a, FinSubset::empty())).collect();
        SubTopology::new(parent.clone(), extra).expect("elements are in base")
    }

    pub fn parent(&self) -> &Arc<FiniteSite> {
        &self.parent
    }

    pub fn extra_axioms(&self) -> &[Axiom] {
        &self.extra
    }

    /// The subtopology as a site over the parent base and order.
    pub fn site(&self) -> &FiniteSite {
        self.site.get_or_init(|| {
            let p = &self.parent;
            let mut axioms = p.axioms().to_vec();
            axioms.extend(localize(p, &self.extra).expect("extras are in base"));
            let below = p.elems().map(|b| p.below_bits(b).clone()).collect();
            FiniteSite::from_downsets(p.names().to_vec(), below, axioms, Localization::Assume)
                .expect("parent order is valid")
        })
    }

    pub fn covers(&self, a: Elem, u: &FinSubset) -> bool {
        self.site().covers(a, u)
    }

    pub fn saturate(&self, u: &FinSubset) -> FinSubset {
        self.site().saturate(u)
    }

    pub fn to_doc(&self) -> SubTopologyDoc {
        let p = &self.parent;
        SubTopologyDoc {
            parent: p.names().to_vec(),
            extra_axioms: self
                .extra
                .iter()
                .map(|ax| AxiomDoc {
                    head: p.name(ax.head).to_string(),
                    cover: ax.cover.iter().map(|c| p.name(c).to_string()).collect(),
                })
                .collect(),
        }
    }
}

fn check(n: usize, e: Elem) -> Result<()> {
    if (e as usize) < n {
        Ok(())
    } else {
        Err(Error::OutOfBase(e, n))
    }
}

fn check_set(site: &FiniteSite, u: &FinSubset) -> Result<()> {
    u.iter().try_for_each(|e| check(site.size(), e))
}

fn same_parent(a: &FiniteSite, b: &FiniteSite) -> bool {
    std::ptr::eq(a, b)
        || (a.names() == b.names() && a.order_pairs() == b.order_pairs() && a.axioms() == b.axioms())
}

/// Closed subtopology: `u ◁ ∅` for `u ∈ U`.
pub fn closed_sub(site: &Arc<FiniteSite>, u: &FinSubset) -> Result<SubTopology> {
    check_set(site, u)?;
    SubTopology::new(site.clone(), u.iter().map(|a| Axiom::new(a, FinSubset::empty())).collect())
}

/// Open subtopology: `S ◁ V`.
pub fn open_sub(site: &Arc<FiniteSite>, v: &FinSubset) -> Result<SubTopology> {
    check_set(site, v)?;
    SubTopology::new(site.clone(), site.elems().map(|a| Axiom::new(a, v.clone())).collect())
}

/// `KFit_A`, the meet of the open subtopologies `S_B` over `A ≪ B`.
pub fn kfit(site: &Arc<FiniteSite>, a: &FinSubset) -> Result<SubTopology> {
    check_set(site, a)?;
    let n = site.size();
    bound("kfit base", n, KFIT_BASE_BOUND)?;
    let mut extra = Vec::new();
    for m in 0u64..1 << n {
        let b = FinSubset::from_mask(m);
        if site.way_below_set(a, &b) {
            extra.extend(site.elems().map(|x| Axiom::new(x, b.clone())));
        }
    }
    SubTopology::new(site.clone(), extra)
}

/// `Closed_a ∨ KFit_A`.
pub fn closed_kfit(site: &Arc<FiniteSite>, a: Elem, set: &FinSubset) -> Result<SubTopology> {
    sub_join(&closed_sub(site, &FinSubset::singleton(a))?, &kfit(site, set)?)
}

/// Meet: the union of the extra axioms.
pub fn sub_meet(subs: &[SubTopology]) -> Result<SubTopology> {
    let first = subs
        .first()
        .ok_or_else(|| Error::Precondition("meet of an empty family needs a parent".into()))?;
    let mut extra = Vec::new();
    for s in subs {
        if !same_parent(&first.parent, &s.parent) {
            return Err(Error::ParentMismatch);
        }
        extra.extend(s.extra.iter().cloned());
    }
    SubTopology::new(first.parent.clone(), extra)
}

/// Binary join: `c ◁ U ∪ V` for `c ∈ a ↓ b`, over extras `a ◁ U` of `s0` and `b ◁ V` of `s1`.
pub fn sub_join(s0: &SubTopology, s1: &SubTopology) -> Result<SubTopology> {
    if !same_parent(&s0.parent, &s1.parent) {
        return Err(Error::ParentMismatch);
    }
    let p = &s0.parent;
    let mut extra = Vec::new();
    for x in &s0.extra {
        for y in &s1.extra {
            let mut both: FixedBitSet = p.below_bits(x.head).clone();
            both.intersect_with(p.below_bits(y.head));
            let cover = x.cover.union(&y.cover);
            extra.extend(both.ones().map(|c| Axiom::new(c as Elem, cover.clone())));
        }
    }
    SubTopology::new(p.clone(), extra)
}

/// `t1 ⊑ t2`: every extra axiom of `t2` holds in `t1`.
pub fn sub_leq(t1: &SubTopology, t2: &SubTopology) -> Result<bool> {
    if !same_parent(&t1.parent, &t2.parent) {
        return Err(Error::ParentMismatch);
    }
    Ok(t2.extra.iter().all(|ax| t1.covers(ax.head, &ax.cover)))
}

/// `t1 ⊑ t2` and `t2 ⊑ t1`.
pub fn sub_cover_eq(t1: &SubTopology, t2: &SubTopology) -> Result<bool> {
    Ok(sub_leq(t1, t2)? && sub_leq(t2, t1)?)
}

/// `a ≪ b` in the parent implies `a ≪ b` in `sub`. Cross-checked with the
/// brute-force oracle in `sub` on small bases.
pub fn is_perfect_sub(sub: &SubTopology) -> bool {
    let p = &sub.parent;
    let s = sub.site();
    let brute = p.size() <= BRUTE_FORCE_BOUND;
    for a in p.elems() {
        for b in p.elems() {
            if !p.way_below(a, b) {
                continue;
            }
            if !s.way_below(a, b) {
                return false;
            }
            if brute && !brute_force_way_below(s, a, b, BRUTE_FORCE_BOUND).unwrap_or(false) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests;
