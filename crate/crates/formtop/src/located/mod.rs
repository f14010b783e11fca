//! Splitting subsets, points, located subsets, cuts and their pair representation.

mod oracle;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::core::{submasks, Elem, FinSubset, FiniteSite, BRUTE_FORCE_BOUND};
use crate::error::{bound, Error, Result};

pub use oracle::{bounded_located_check, OracleReport, OracleTest};

/// Default base-size bound for exhaustive subset enumeration.
pub const ENUMERATION_BOUND: usize = 12;
/// Largest base for which conditions quantifying over all finite subsets are evaluated literally.
pub const LITERAL_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubsetFlags {
    pub splitting: bool,
    pub point: bool,
    pub located: bool,
    pub located_point: bool,
}

/// `(L, U)` as in the cut conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub lower: FinSubset,
    pub upper: FinSubset,
}

/// `(𝕃, U)`: a family of finite subsets together with an upper set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRep {
    pub lower: BTreeSet<FinSubset>,
    pub upper: FinSubset,
}

/// Result of a literal condition check: `Err(k)` names the first violated condition.
pub type CheckResult = std::result::Result<(), u8>;

fn complement(site: &FiniteSite, v: &FinSubset) -> FinSubset {
    site.elems().filter(|&a| !v.contains(a)).collect()
}

/// Saturations of every subset of a small base, indexed by bitmask.
pub(crate) struct SatTable {
    sats: Vec<u64>,
}

impl SatTable {
    pub(crate) fn new(site: &FiniteSite) -> Option<Self> {
        let n = site.size();
        if n > LITERAL_BOUND {
            return None;
        }
        let sats = (0u64..1 << n)
            .into_par_iter()
            .map(|m| FinSubset::from_bits(&site.saturate_bits(&FinSubset::from_mask(m).to_bits(n))).to_mask())
            .collect();
        Some(SatTable { sats })
    }

    pub(crate) fn sat(&self, m: u64) -> u64 {
        self.sats[m as usize]
    }
}

fn splitting_brute_force(site: &FiniteSite, v: &FinSubset) -> bool {
    let n = site.size();
    let vm = v.to_mask();
    (0u64..1 << n).all(|u| {
        let sat = FinSubset::from_bits(&site.saturate_bits(&FinSubset::from_mask(u).to_bits(n))).to_mask();
        sat & vm == 0 || u & vm != 0
    })
}

/// The two-condition criterion for continuous sites: `a ◁ A & a ∈ V ⇒ A ≬ V`, and
/// `a ∈ V ⇒ ∃b ≪ a, b ∈ V`. The first is evaluated at `A = S∖V`, the largest `A` missing `V`.
fn splitting_criterion(site: &FiniteSite, v: &FinSubset) -> bool {
    let sat_c = site.saturate(&complement(site, v));
    let first = !sat_c.meets(v);
    let second = v.iter().all(|a| site.wb(a).meets(v));
    first && second
}

/// `V` meets every cover of each of its members.
pub fn is_splitting(site: &FiniteSite, v: &FinSubset) -> Result<bool> {
    let fast = splitting_criterion(site, v);
    if site.size() <= BRUTE_FORCE_BOUND {
        let brute = splitting_brute_force(site, v);
        if brute != fast {
            return Err(Error::Internal(format!(
                "splitting criteria disagree on {}",
                site.format_subset(v)
            )));
        }
    }
    Ok(fast)
}

fn is_point_given_splitting(site: &FiniteSite, v: &FinSubset) -> bool {
    !v.is_empty()
        && v.iter().all(|a| {
            v.iter()
                .all(|b| site.down(&FinSubset::singleton(a), &FinSubset::singleton(b)).meets(v))
        })
}

fn is_located_given_splitting(site: &FiniteSite, v: &FinSubset) -> bool {
    site.elems()
        .filter(|&a| v.contains(a))
        .all(|a| site.elems().all(|b| !site.way_below(a, b) || v.contains(b)))
}

pub fn classify_subset(site: &FiniteSite, v: &FinSubset) -> Result<SubsetFlags> {
    let splitting = is_splitting(site, v)?;
    let point = splitting && is_point_given_splitting(site, v);
    let located = splitting && is_located_given_splitting(site, v);
    Ok(SubsetFlags {
        splitting,
        point,
        located,
        located_point: point && located,
    })
}

/// `L_V = {a | ∃A finite, a ≪ A, A ∩ V = ∅}`. On a finite base the largest such `A` is `S∖V`.
pub fn lower_of(site: &FiniteSite, v: &FinSubset) -> FinSubset {
    site.saturate(&complement(site, v))
}

pub fn located_to_cut(site: &FiniteSite, v: &FinSubset) -> Result<Cut> {
    if !classify_subset(site, v)?.located {
        return Err(Error::NotLocated);
    }
    Ok(Cut {
        lower: lower_of(site, v),
        upper: v.clone(),
    })
}

pub fn cut_to_located(cut: &Cut) -> FinSubset {
    cut.upper.clone()
}

/// The six cut conditions, in order. Conditions quantifying over finite subsets are evaluated
/// over all subsets when the base is small, otherwise at the extremal subset.
pub fn cut_check(site: &FiniteSite, cut: &Cut) -> CheckResult {
    match SatTable::new(site) {
        Some(t) => cut_check_literal(site, &t, cut),
        None => cut_check_reduced(site, cut),
    }
}

pub(crate) fn cut_check_literal(site: &FiniteSite, t: &SatTable, cut: &Cut) -> CheckResult {
    let n = site.size();
    let (l, u) = (cut.lower.to_mask(), cut.upper.to_mask());
    let all = (1u64 << n) - 1;
    let wb = |a: u32| t.sat(1 << a);
    // 1. a ◁ A & a ∈ U ⇒ A ≬ U
    if (0..=all).any(|a_set| t.sat(a_set) & u != 0 && a_set & u == 0) {
        return Err(1);
    }
    // 2. a ∈ U ⇒ ∃b ≪ a, b ∈ U
    if cut.upper.iter().any(|a| wb(a) & u == 0) {
        return Err(2);
    }
    // 3. a ◁ A ⊆ L ⇒ a ∈ L
    if submasks(l).any(|a_set| t.sat(a_set) & !l != 0) {
        return Err(3);
    }
    // 4. a ∈ L ⇒ ∃A ⊆ L with a ≪ A
    if cut.lower.iter().any(|a| !submasks(l).any(|a_set| t.sat(a_set) >> a & 1 == 1)) {
        return Err(4);
    }
    // 5. a ≪ b ⇒ a ∈ L ∨ b ∈ U
    for b in 0..n as u32 {
        if u >> b & 1 == 1 {
            continue;
        }
        if wb(b) & !l & all != 0 {
            return Err(5);
        }
    }
    // 6. L ∩ U = ∅
    if l & u != 0 {
        return Err(6);
    }
    Ok(())
}

fn cut_check_reduced(site: &FiniteSite, cut: &Cut) -> CheckResult {
    let (l, u) = (&cut.lower, &cut.upper);
    if site.saturate(&complement(site, u)).meets(u) {
        return Err(1);
    }
    if u.iter().any(|a| !site.wb(a).meets(u)) {
        return Err(2);
    }
    let sat_l = site.saturate(l);
    if !sat_l.is_subset(l) {
        return Err(3);
    }
    if !l.is_subset(&sat_l) {
        return Err(4);
    }
    for a in site.elems() {
        for b in site.elems() {
            if site.way_below(a, b) && !l.contains(a) && !u.contains(b) {
                return Err(5);
            }
        }
    }
    if l.meets(u) {
        return Err(6);
    }
    Ok(())
}

/// The two extra conditions singling out located points among cuts: `U ≬ S`, and
/// `a, b ∈ U ⇒ (a ↓ b) ≬ U`.
pub fn cut_point_check(site: &FiniteSite, cut: &Cut) -> CheckResult {
    if cut.upper.is_empty() {
        return Err(7);
    }
    if !is_point_given_splitting(site, &cut.upper) {
        return Err(8);
    }
    Ok(())
}

/// `(Fin L, U)`.
pub fn cut_to_pair(cut: &Cut) -> PairRep {
    PairRep {
        lower: cut.lower.subsets().into_iter().collect(),
        upper: cut.upper.clone(),
    }
}

/// `(⋃𝕃, U)`.
pub fn pair_to_cut(pr: &PairRep) -> Cut {
    let lower = pr.lower.iter().fold(FinSubset::empty(), |acc, a| acc.union(a));
    Cut {
        lower,
        upper: pr.upper.clone(),
    }
}

/// The seven conditions on `(𝕃, U)`, in order.
pub fn pair_rep_check(site: &FiniteSite, pr: &PairRep) -> Result<CheckResult> {
    let n = site.size();
    bound("pair representation base", n, LITERAL_BOUND)?;
    let t = SatTable::new(site).expect("bounded");
    let u = pr.upper.to_mask();
    let all = (1u64 << n) - 1;
    let fam: BTreeSet<u64> = pr.lower.iter().map(|a| a.to_mask()).collect();
    let maximal: Vec<u64> = fam
        .iter()
        .copied()
        .filter(|&a| !fam.iter().any(|&b| b != a && a & b == a))
        .collect();
    // 1
    if (0..=all).any(|a_set| t.sat(a_set) & u != 0 && a_set & u == 0) {
        return Ok(Err(1));
    }
    // 2
    if pr.upper.iter().any(|a| t.sat(1 << a) & u == 0) {
        return Ok(Err(2));
    }
    // 3
    if !fam.contains(&0) {
        return Ok(Err(3));
    }
    // 4. A ◁ B & B ∈ 𝕃 ⇒ A ∈ 𝕃
    for &b in &fam {
        if submasks(t.sat(b)).any(|a| !fam.contains(&a)) {
            return Ok(Err(4));
        }
    }
    // 5. A, B ∈ 𝕃 ⇒ ∃C ∈ 𝕃, A ≪ C & B ≪ C; enlarging C only helps, so maximal C suffice
    for &a in &fam {
        for &b in &fam {
            if !maximal.iter().any(|&c| (a | b) & !t.sat(c) == 0) {
                return Ok(Err(5));
            }
        }
    }
    // 6. a ≪ b ⇒ {a} ∈ 𝕃 ∨ b ∈ U
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if t.sat(1 << b) >> a & 1 == 1 && !fam.contains(&(1 << a)) && u >> b & 1 == 0 {
                return Ok(Err(6));
            }
        }
    }
    // 7. {a} ∈ 𝕃 & a ∈ U ⇒ ⊥
    if (0..n as u32).any(|a| fam.contains(&(1 << a)) && u >> a & 1 == 1) {
        return Ok(Err(7));
    }
    Ok(Ok(()))
}

fn enumerate_with<F>(site: &FiniteSite, max_base: usize, keep: F) -> Result<Vec<FinSubset>>
where
    F: Fn(&FinSubset) -> Result<bool> + Sync,
{
    let n = site.size();
    bound("subset enumeration base", n, max_base.min(20))?;
    let results: Vec<Result<Option<FinSubset>>> = (0u64..1 << n)
        .into_par_iter()
        .map(|m| {
            let v = FinSubset::from_mask(m);
            Ok(keep(&v)?.then_some(v))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(v) = r? {
            out.push(v);
        }
    }
    crate::core::sort_canonical(&mut out);
    Ok(out)
}

/// Precomputed `wb` rows for fast locatedness tests.
struct WbRows(Vec<FixedBitSet>);

impl WbRows {
    fn new(site: &FiniteSite) -> Self {
        WbRows(site.elems().map(|a| site.saturate_bits(&FinSubset::singleton(a).to_bits(site.size()))).collect())
    }

    fn located(&self, v: &FinSubset) -> bool {
        // a ≪ b with a ∈ V forces b ∈ V
        (0..self.0.len() as Elem).filter(|b| !v.contains(*b)).all(|b| !self.0[b as usize].ones().any(|a| v.contains(a as Elem)))
    }
}

pub fn enumerate_splitting(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    enumerate_with(site, max_base, |v| is_splitting(site, v))
}

pub fn enumerate_located(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    let wb = WbRows::new(site);
    enumerate_with(site, max_base, |v| Ok(wb.located(v) && is_splitting(site, v)?))
}

pub fn enumerate_points(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    enumerate_with(site, max_base, |v| Ok(is_splitting(site, v)? && is_point_given_splitting(site, v)))
}

pub fn enumerate_located_points(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    let wb = WbRows::new(site);
    enumerate_with(site, max_base, |v| {
        Ok(wb.located(v) && is_splitting(site, v)? && is_point_given_splitting(site, v))
    })
}

/// All cuts, found by letting `U` range over subsets with `L := L_U` and validating.
pub fn enumerate_cuts(site: &FiniteSite, max_base: usize) -> Result<Vec<Cut>> {
    let n = site.size();
    bound("cut enumeration base", n, max_base)?;
    let table = SatTable::new(site);
    let mut out = Vec::new();
    for m in 0u64..1 << n {
        let upper = FinSubset::from_mask(m);
        let cut = Cut {
            lower: lower_of(site, &upper),
            upper,
        };
        let ok = match &table {
            Some(t) => cut_check_literal(site, t, &cut),
            None => cut_check_reduced(site, &cut),
        };
        if ok.is_ok() {
            out.push(cut);
        }
    }
    Ok(out)
}

/// All cuts found by letting both `L` and `U` range over all subsets; `4^n` candidates.
pub fn enumerate_cuts_all_pairs(site: &FiniteSite, max_base: usize) -> Result<Vec<Cut>> {
    let n = site.size();
    bound("all-pairs cut enumeration base", n, max_base.min(7))?;
    let t = SatTable::new(site).expect("bounded");
    let mut out: Vec<Cut> = (0u64..1 << n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let t = &t;
            (0u64..1 << n).filter_map(move |l| {
                let cut = Cut {
                    lower: FinSubset::from_mask(l),
                    upper: FinSubset::from_mask(u),
                };
                cut_check_literal(site, t, &cut).is_ok().then_some(cut)
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests;
