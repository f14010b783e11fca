use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::site::FiniteSite;
use super::subset::{Elem, FinSubset};
use crate::error::{bound, Error, Result};

/// Default base-size bound for the brute-force way-below oracle.
pub const BRUTE_FORCE_BOUND: usize = 6;

impl FiniteSite {
    /// `a ≪ b`. On a finite base every cover is finite, so this is `a ◁ {b}`.
    pub fn way_below(&self, a: Elem, b: Elem) -> bool {
        self.covers(a, &FinSubset::singleton(b))
    }

    /// `U ≪ V`, i.e. `U ◁ V` on a finite base.
    pub fn way_below_set(&self, u: &FinSubset, v: &FinSubset) -> bool {
        self.covers_set(u, v)
    }

    /// `{b | b ≪ a}`.
    pub fn wb(&self, a: Elem) -> FinSubset {
        self.saturate(&FinSubset::singleton(a))
    }

    /// `U* = ⋂_{u∈U} u*` with `u* = {c | c ↓ u ◁ ∅}`.
    pub fn star(&self, u: &FinSubset) -> FinSubset {
        let bottom = self.saturate_bits(&FixedBitSet::with_capacity(self.size()));
        let mut out = FixedBitSet::with_capacity(self.size());
        for c in self.elems() {
            let all = u.iter().all(|x| {
                let mut d = self.below_bits(c).clone();
                d.intersect_with(self.below_bits(x));
                d.is_subset(&bottom)
            });
            if all {
                out.insert(c as usize);
            }
        }
        FinSubset::from_bits(&out)
    }

    /// `a ⋘ b`, i.e. `S ◁ a* ∪ {b}`.
    pub fn well_inside(&self, a: Elem, b: Elem) -> bool {
        let cover = self.star(&FinSubset::singleton(a)).with(b);
        self.covers_set(&self.base(), &cover)
    }
}

/// Way-below by the definition: for every `U` with `b ◁ U`, some finite `U₀ ⊆ U` has `a ◁ U₀`.
pub fn brute_force_way_below(site: &FiniteSite, a: Elem, b: Elem, max_base: usize) -> Result<bool> {
    let n = site.size();
    bound("brute-force way-below base", n, max_base)?;
    let sats: Vec<FixedBitSet> = (0u64..1 << n)
        .map(|m| site.saturate_bits(&FinSubset::from_mask(m).to_bits(n)))
        .collect();
    for u in 0u64..1 << n {
        if !sats[u as usize].contains(b as usize) {
            continue;
        }
        let finite_sub = super::subset::submasks(u).any(|u0| sats[u0 as usize].contains(a as usize));
        if !finite_sub {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub compact: bool,
    pub regular: bool,
    pub locally_compact: bool,
    pub stably_locally_compact: bool,
    pub finitary: bool,
    /// `None` when the site carries no meet structure.
    pub spectral: Option<bool>,
    pub stone: Option<bool>,
}

impl Classification {
    pub fn stably_compact(&self) -> bool {
        self.stably_locally_compact && self.compact
    }

    pub fn compact_regular(&self) -> bool {
        self.compact && self.regular
    }
}

pub fn classify(site: &FiniteSite) -> Classification {
    let n = site.size();
    let base = site.base();
    let wb: Vec<FixedBitSet> = site.elems().map(|a| site.saturate_bits(&site.bits(&FinSubset::singleton(a)))).collect();
    let compact = site.way_below_set(&base, &base);
    let finitary = site.elems().all(|a| wb[a as usize].contains(a as usize));
    let locally_compact = site.elems().all(|a| {
        let below_a = FinSubset::from_bits(&wb[a as usize]);
        site.covers(a, &below_a)
    });
    // a ≪ a', b ≪ b' ⇒ a↓b ≪ a'↓b'. The wb sets are down-closed, so it suffices that
    // wb(a') ∩ wb(b') ⊆ A({a'} ↓ {b'}).
    let mut slk = locally_compact;
    'outer: for a in 0..n {
        for b in 0..n {
            let mut both = wb[a].clone();
            both.intersect_with(&wb[b]);
            let d = site.down(&FinSubset::singleton(a as Elem), &FinSubset::singleton(b as Elem));
            let sat = site.saturate_bits(&site.bits(&d));
            if !both.is_subset(&sat) {
                slk = false;
                break 'outer;
            }
        }
    }
    let regular = site.elems().all(|a| {
        let inside: FinSubset = site.elems().filter(|&b| site.well_inside(b, a)).collect();
        site.covers(a, &inside)
    });
    let spectral = is_spectral(site).ok();
    let stone = is_stone(site).ok();
    Classification {
        compact,
        regular,
        locally_compact,
        stably_locally_compact: slk,
        finitary,
        spectral,
        stone,
    }
}

/// The meet structure is compatible with the cover (`S ◁ {1}`, `{a} ↓ {b} =_S {a ∧ b}`) and `a ≪ a` for all `a`.
pub fn is_spectral(site: &FiniteSite) -> Result<bool> {
    let meet = site.meet_structure().ok_or(Error::NoMeetStructure)?;
    let base = site.base();
    if !site.covers_set(&base, &FinSubset::singleton(meet.top())) {
        return Ok(false);
    }
    for a in site.elems() {
        if !site.way_below(a, a) {
            return Ok(false);
        }
        for b in site.elems() {
            let d = site.down(&FinSubset::singleton(a), &FinSubset::singleton(b));
            if !site.cover_eq(&d, &FinSubset::singleton(meet.meet(a, b))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_stone(site: &FiniteSite) -> Result<bool> {
    Ok(is_spectral(site)? && site.elems().all(|a| site.well_inside(a, a)))
}

/// Given `U ≪ V`, return `A` with `U ≪ A` and every member of `A` way-below some member of `V`.
/// On a finite base `b ≪ b` fails only for elements not covered by themselves, which cannot happen,
/// so `A = V` always works; the postcondition is still checked.
pub fn interpolate(site: &FiniteSite, u: &FinSubset, v: &FinSubset) -> Result<FinSubset> {
    if !site.way_below_set(u, v) {
        return Err(Error::Precondition(format!(
            "{} is not way-below {}",
            site.format_subset(u),
            site.format_subset(v)
        )));
    }
    let a = v.clone();
    let ok = site.way_below_set(u, &a) && a.iter().all(|x| v.iter().any(|y| site.way_below(x, y)));
    if !ok {
        return Err(Error::Internal("interpolant fails its postcondition".into()));
    }
    Ok(a)
}
