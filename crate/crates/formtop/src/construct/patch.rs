use std::sync::Arc;

use rayon::prelude::*;

use crate::core::{classify, Elem, FinSubset, FiniteSite};
use crate::error::{bound, Error, Result};
use crate::located::{enumerate_located, enumerate_located_points, lower_of};
use crate::theory::{open_branches, AxiomSource, Generator, GeometricTheory, Instance, LazySite};

/// Largest base for which an explicit `T_P` / `T_L` is expanded (`2^12` l-generators).
pub const EXPLICIT_BASE_BOUND: usize = 12;
/// Largest total number of disjunct entries in an explicit expansion.
pub const EXPANSION_ENTRY_BOUND: usize = 1 << 25;
/// Largest base for the lazy schema presentation.
pub const LAZY_BASE_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatchKind {
    /// `T_P`: (R1)–(R4), (L1)–(L3), (Loc), (D).
    Patch,
    /// `T_L`: (R3)–(D).
    Lawson,
}

impl PatchKind {
    pub fn label(self) -> &'static str {
        match self {
            PatchKind::Patch => "patch",
            PatchKind::Lawson => "lawson",
        }
    }
}

/// Generator numbering shared by the explicit and lazy presentations:
/// `l(A)` is the bitmask of `A`, `r(a)` is `2^n + a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatchLayout {
    pub n: usize,
}

impl PatchLayout {
    pub fn l(&self, a: &FinSubset) -> u32 {
        a.to_mask() as u32
    }

    pub fn l_mask(&self, m: u32) -> u32 {
        m
    }

    pub fn r(&self, a: Elem) -> u32 {
        (1u32 << self.n) + a
    }

    pub fn count(&self) -> usize {
        (1usize << self.n) + self.n
    }

    pub fn decode(&self, g: u32) -> Generator {
        if (g as usize) < 1 << self.n {
            Generator::L(FinSubset::from_mask(g as u64))
        } else {
            Generator::R(g - (1 << self.n))
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.count() as u32).map(|g| self.decode(g)).collect()
    }

    /// `(Ls, R)` as masks: the l-generators and the r-part of `x`.
    pub fn split(&self, x: &FinSubset) -> (Vec<u32>, u32) {
        let lim = 1u32 << self.n;
        let mut ls = Vec::new();
        let mut r = 0u32;
        for g in x.iter() {
            if g < lim {
                ls.push(g);
            } else {
                r |= 1 << (g - lim);
            }
        }
        (ls, r)
    }
}

fn bits_of(m: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

/// Saturations and order data of a site with at most 16 elements, as masks.
pub(crate) struct MaskSite {
    pub n: usize,
    pub sat: Vec<u32>,
    /// `below[a]`: the down-set of `a`.
    pub below: Vec<u32>,
}

impl MaskSite {
    pub fn new(site: &FiniteSite) -> Result<Self> {
        let n = site.size();
        bound("mask site base", n, LAZY_BASE_BOUND)?;
        let sat = (0u64..1 << n)
            .into_par_iter()
            .map(|m| FinSubset::from_bits(&site.saturate_bits(&FinSubset::from_mask(m).to_bits(n))).to_mask() as u32)
            .collect();
        let below = site
            .elems()
            .map(|a| FinSubset::from_bits(site.below_bits(a)).to_mask() as u32)
            .collect();
        Ok(MaskSite { n, sat, below })
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// `A ◁ B`, equivalently `A ≪ B` on a finite site.
    pub fn covered(&self, a: u32, b: u32) -> bool {
        a & !self.sat[b as usize] == 0
    }
}

pub(crate) fn require_slc(site: &FiniteSite, what: &str) -> Result<()> {
    if classify(site).stably_locally_compact {
        Ok(())
    } else {
        Err(Error::Classification(format!("{what} needs a stably locally compact site")))
    }
}

/// `T_P`, expanded over the finite base.
pub fn patch_theory(site: &FiniteSite) -> Result<GeometricTheory> {
    require_slc(site, "patch")?;
    expand(site, PatchKind::Patch)
}

/// `T_L`: the axioms (R3)–(D) of `T_P`. Every finite site is continuous.
pub fn lawson_theory(site: &FiniteSite) -> Result<GeometricTheory> {
    expand(site, PatchKind::Lawson)
}

pub fn construction_theory(site: &FiniteSite, kind: PatchKind) -> Result<GeometricTheory> {
    match kind {
        PatchKind::Patch => patch_theory(site),
        PatchKind::Lawson => lawson_theory(site),
    }
}

fn expand(site: &FiniteSite, kind: PatchKind) -> Result<GeometricTheory> {
    let n = site.size();
    bound(format!("{} generators 2^|base| for base", kind.label()), n, EXPLICIT_BASE_BOUND)?;
    let ms = MaskSite::new(site)?;
    let lay = PatchLayout { n };
    let mut t = GeometricTheory::new(kind.label(), site.names().to_vec(), lay.generators())?;
    let full = ms.full();
    let masks = || 0..=full;
    let one = |g: u32| FinSubset::singleton(g);
    let rs = |m: u32| bits_of(m).map(|b| FinSubset::singleton(lay.r(b))).collect::<Vec<_>>();
    let mut entries = 0usize;
    let mut charge = |k: usize| -> Result<()> {
        entries += k;
        bound(format!("{} disjunct entries", kind.label()), entries, EXPANSION_ENTRY_BOUND)
    };

    if kind == PatchKind::Patch {
        t.push_axiom("R1", [], rs(full))?;
        for a in 0..n as u32 {
            for b in a..n as u32 {
                let d = ms.below[a as usize] & ms.below[b as usize];
                t.push_axiom("R2", [lay.r(a), lay.r(b)], rs(d))?;
            }
        }
    }
    for a in 0..n as u32 {
        for m in masks() {
            if ms.sat[m as usize] >> a & 1 == 1 {
                charge(m.count_ones() as usize)?;
                t.push_axiom("R3", [lay.r(a)], rs(m))?;
            }
        }
    }
    for a in 0..n as u32 {
        let wb = ms.sat[1usize << a];
        t.push_axiom("R4", [lay.r(a)], rs(wb))?;
    }
    t.push_axiom("L1", [], [one(lay.l_mask(0))])?;
    for b in masks() {
        for a in masks() {
            if a != b && ms.covered(a, b) {
                t.push_axiom("L2", [lay.l_mask(b)], [one(lay.l_mask(a))])?;
            }
        }
    }
    // C with X ⊆ sat(C), per X.
    let ups: Vec<Vec<u32>> = (0..=full)
        .into_par_iter()
        .map(|x| masks().filter(|&c| ms.covered(x, c)).collect())
        .collect();
    for a in masks() {
        for b in a..=full {
            let up = &ups[(a | b) as usize];
            charge(up.len())?;
            t.push_axiom("L3", [lay.l_mask(a), lay.l_mask(b)], up.iter().map(|&c| one(lay.l_mask(c))))?;
        }
    }
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if ms.covered(1 << a, 1 << b) {
                t.push_axiom("Loc", [], [one(lay.l_mask(1 << a)), one(lay.r(b))])?;
            }
        }
    }
    for a in 0..n as u32 {
        t.push_axiom("D", [lay.l_mask(1 << a), lay.r(a)], [])?;
    }
    Ok(t)
}

/// Axiom source for `T_P` / `T_L` that finds active instances without expanding the theory.
///
/// (L3) is used in its derived form `l(A) ∧ l(B) ⊢ l(A ∪ B)`, which holds in every model by
/// (L3) and (L2); it is active whenever (L3) is, once (L2) is satisfied.
pub struct PatchSchema {
    kind: PatchKind,
    lay: PatchLayout,
    ms: MaskSite,
    names: Vec<String>,
    /// `(a, b)` with `a ≪ b`.
    wb_pairs: Vec<(u32, u32)>,
}

impl PatchSchema {
    pub fn new(site: &FiniteSite, kind: PatchKind) -> Result<Self> {
        if kind == PatchKind::Patch {
            require_slc(site, "patch")?;
        }
        let ms = MaskSite::new(site)?;
        let n = site.size();
        let mut wb_pairs = Vec::new();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if ms.covered(1 << a, 1 << b) {
                    wb_pairs.push((a, b));
                }
            }
        }
        Ok(PatchSchema {
            kind,
            lay: PatchLayout { n },
            ms,
            names: site.names().to_vec(),
            wb_pairs,
        })
    }

    pub fn layout(&self) -> PatchLayout {
        self.lay
    }

    fn inst(&self, family: &str, ante: Vec<u32>, disjuncts: Vec<FinSubset>) -> Instance {
        Instance {
            family: family.to_string(),
            ante: FinSubset::new(ante),
            disjuncts,
        }
    }

    fn rs(&self, m: u32) -> Vec<FinSubset> {
        bits_of(m).map(|b| FinSubset::singleton(self.lay.r(b))).collect()
    }
}

impl AxiomSource for PatchSchema {
    fn generator_count(&self) -> usize {
        self.lay.count()
    }

    fn code(&self, g: u32) -> String {
        self.lay.decode(g).code(&self.names)
    }

    fn find_active(&self, x: &FinSubset, goal: &[FinSubset]) -> Option<Instance> {
        let lay = self.lay;
        let ms = &self.ms;
        let (ls, r) = lay.split(x);
        let has_l = |m: u32| ls.binary_search(&m).is_ok();
        let n = lay.n as u32;
        let one = FinSubset::singleton;

        // (D)
        for a in bits_of(r) {
            if has_l(1 << a) {
                return Some(self.inst("D", vec![lay.l_mask(1 << a), lay.r(a)], vec![]));
            }
        }

        // Single l-generators that would close a goal branch.
        let targets: Vec<u32> = goal
            .iter()
            .filter_map(|g| {
                let d = g.difference(x);
                (d.len() == 1).then(|| d.as_slice()[0])
            })
            .filter(|&g| g < 1 << n)
            .collect();
        for &t in &targets {
            if t == 0 {
                return Some(self.inst("L1", vec![], vec![one(0)]));
            }
            if let Some(&b) = ls.iter().find(|&&b| ms.covered(t, b)) {
                return Some(self.inst("L2", vec![b], vec![one(t)]));
            }
            for (i, &a) in ls.iter().enumerate() {
                if let Some(&b) = ls[i..].iter().find(|&&b| a | b == t) {
                    return Some(self.inst("L3", vec![a, b], vec![one(t)]));
                }
            }
        }

        let mut best: Option<((usize, usize), Instance)> = None;
        let mut offer = |inst: Instance| -> bool {
            let ds: Vec<&[u32]> = inst.disjuncts.iter().map(|d| d.as_slice()).collect();
            let key = (open_branches(x, &ds, goal), ds.len());
            let done = key.0 == 0;
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, inst));
            }
            done
        };

        // (Loc)
        for &(a, b) in &self.wb_pairs {
            if !has_l(1 << a) && r >> b & 1 == 0 {
                let inst = self.inst("Loc", vec![], vec![one(lay.l_mask(1 << a)), one(lay.r(b))]);
                if offer(inst) {
                    return best.map(|(_, i)| i);
                }
            }
        }
        if self.kind == PatchKind::Patch {
            if r == 0 && offer(self.inst("R1", vec![], self.rs(ms.full()))) {
                return best.map(|(_, i)| i);
            }
            for a in bits_of(r) {
                for b in bits_of(r).filter(|&b| b >= a) {
                    let d = ms.below[a as usize] & ms.below[b as usize];
                    if d & r == 0 && offer(self.inst("R2", vec![lay.r(a), lay.r(b)], self.rs(d))) {
                        return best.map(|(_, i)| i);
                    }
                }
            }
        }
        // (R3): a ∈ R with a ◁ S∖R; shrink S∖R greedily to a minimal cover.
        let rest = ms.full() & !r;
        for a in bits_of(r) {
            if ms.sat[rest as usize] >> a & 1 == 1 {
                let mut m = rest;
                for b in bits_of(rest) {
                    let smaller = m & !(1 << b);
                    if ms.sat[smaller as usize] >> a & 1 == 1 {
                        m = smaller;
                    }
                }
                if offer(self.inst("R3", vec![lay.r(a)], self.rs(m))) {
                    return best.map(|(_, i)| i);
                }
            }
        }
        // (L1), (L2), (L3) without a target.
        if !has_l(0) && offer(self.inst("L1", vec![], vec![one(0)])) {
            return best.map(|(_, i)| i);
        }
        'l2: for &b in &ls {
            for a in bits_of(ms.sat[b as usize]) {
                if !has_l(1 << a) {
                    offer(self.inst("L2", vec![b], vec![one(1 << a)]));
                    break 'l2;
                }
            }
            for a in crate::core::submasks(ms.sat[b as usize] as u64) {
                if !has_l(a as u32) {
                    offer(self.inst("L2", vec![b], vec![one(a as u32)]));
                    break 'l2;
                }
            }
        }
        'l3: for (i, &a) in ls.iter().enumerate() {
            for &b in &ls[i + 1..] {
                if !has_l(a | b) {
                    offer(self.inst("L3", vec![a, b], vec![one(a | b)]));
                    break 'l3;
                }
            }
        }
        best.map(|(_, i)| i)
    }
}

/// `Patch(S)` or `L(S)` presented lazily; the explicit theory is attached when the base is small.
pub fn construction_lazy(site: &FiniteSite, kind: PatchKind) -> Result<LazySite> {
    let schema = Arc::new(PatchSchema::new(site, kind)?);
    if site.size() <= 4 {
        let t = Arc::new(construction_theory(site, kind)?);
        Ok(LazySite::with_theory(schema, t))
    } else {
        Ok(LazySite::new(schema))
    }
}

pub fn patch_lazy(site: &FiniteSite) -> Result<LazySite> {
    construction_lazy(site, PatchKind::Patch)
}

pub fn lawson_lazy(site: &FiniteSite) -> Result<LazySite> {
    construction_lazy(site, PatchKind::Lawson)
}

/// The model `{l(A) | A ⊆ L_V} ∪ {r(a) | a ∈ V}` of a located subset `V`, with `L_V = A(S∖V)`.
pub fn located_to_model(site: &FiniteSite, v: &FinSubset) -> FinSubset {
    let lay = PatchLayout { n: site.size() };
    let lower = lower_of(site, v);
    let mut out: Vec<u32> = crate::core::submasks(lower.to_mask()).map(|m| m as u32).collect();
    out.extend(v.iter().map(|a| lay.r(a)));
    FinSubset::new(out)
}

/// `{a | r(a) ∈ m}`.
pub fn model_to_located(site: &FiniteSite, m: &FinSubset) -> FinSubset {
    let (_, r) = PatchLayout { n: site.size() }.split(m);
    FinSubset::from_mask(r as u64)
}

/// Models of `T_P`, from the located points.
pub fn patch_models(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    require_slc(site, "patch")?;
    let mut out: Vec<FinSubset> = enumerate_located_points(site, max_base)?
        .iter()
        .map(|v| located_to_model(site, v))
        .collect();
    crate::core::sort_canonical(&mut out);
    Ok(out)
}

/// Models of `T_L`, from the located subsets.
pub fn lawson_models(site: &FiniteSite, max_base: usize) -> Result<Vec<FinSubset>> {
    let mut out: Vec<FinSubset> = enumerate_located(site, max_base)?
        .iter()
        .map(|v| located_to_model(site, v))
        .collect();
    crate::core::sort_canonical(&mut out);
    Ok(out)
}
