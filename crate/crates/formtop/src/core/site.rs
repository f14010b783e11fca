use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use super::subset::{Elem, FinSubset};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axiom {
    pub head: Elem,
    pub cover: FinSubset,
}

impl Axiom {
    pub fn new(head: Elem, cover: FinSubset) -> Self {
        Axiom { head, cover }
    }
}

/// Top element and binary meet table of a spectral base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetStructure {
    top: Elem,
    n: usize,
    table: Vec<Elem>,
}

impl MeetStructure {
    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }
}

/// How the axioms handed to a constructor relate to the localisation condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Localization {
    /// Replace the axioms by their localisation.
    Apply,
    /// The caller guarantees the axioms are localised already.
    Assume,
    /// Use the axioms verbatim; the result is a basic cover with ≤ but may not be a formal topology.
    Off,
}

/// A finite base with a preorder and an axiom-set. All cover questions are
/// answered by saturation.
#[derive(Clone)]
pub struct FiniteSite {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    generating: Vec<Axiom>,
    axioms: Vec<Axiom>,
    localized: bool,
    meet: Option<MeetStructure>,
    closure_added: bool,
    // saturation index over the non-trivial axioms
    heads: Vec<Elem>,
    cover_len: Vec<u32>,
    watch: Vec<Vec<u32>>,
    empty_heads: Vec<Elem>,
}

impl fmt::Debug for FiniteSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSite")
            .field("base", &self.names)
            .field("axioms", &self.axioms.len())
            .field("localized", &self.localized)
            .finish()
    }
}

impl FiniteSite {
    /// Build a site from element names, order pairs `(a, b)` meaning `a ≤ b`, and axioms.
    /// The order is closed reflexively and transitively; `closure_added` reports whether that changed it.
    pub fn new(
        names: Vec<String>,
        order: &[(Elem, Elem)],
        axioms: Vec<Axiom>,
        localization: Localization,
    ) -> Result<Self> {
        let n = names.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in below.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in order {
            check_elem(a, n)?;
            check_elem(b, n)?;
            below[b as usize].insert(a as usize);
        }
        let pairs_before: usize = below.iter().map(|r| r.count_ones(..)).sum();
        // Warshall: rows are down-sets, so k ≤ b pulls below[k] into below[b].
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let pairs_after: usize = below.iter().map(|r| r.count_ones(..)).sum();
        let mut site = Self::from_downsets(names, below, axioms, localization)?;
        site.closure_added = pairs_after != pairs_before;
        Ok(site)
    }

    /// Build from precomputed down-sets `below[b] = {a | a ≤ b}`, which must be reflexive and transitive.
    pub fn from_downsets(
        names: Vec<String>,
        below: Vec<FixedBitSet>,
        axioms: Vec<Axiom>,
        localization: Localization,
    ) -> Result<Self> {
        let n = names.len();
        if below.len() != n {
            return Err(Error::Precondition("order rows do not match base".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i as Elem).is_some() {
                return Err(Error::Precondition(format!("duplicate element `{name}`")));
            }
        }
        for ax in &axioms {
            check_elem(ax.head, n)?;
            for c in ax.cover.iter() {
                check_elem(c, n)?;
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (b, row) in below.iter().enumerate() {
            for a in row.ones() {
                above[a].insert(b);
            }
        }
        let mut site = FiniteSite {
            names,
            index,
            below,
            above,
            generating: axioms.clone(),
            axioms: Vec::new(),
            localized: localization != Localization::Off,
            meet: None,
            closure_added: false,
            heads: Vec::new(),
            cover_len: Vec::new(),
            watch: vec![Vec::new(); n],
            empty_heads: Vec::new(),
        };
        site.axioms = match localization {
            Localization::Apply => localize_with(&site.below, &axioms),
            _ => axioms,
        };
        site.build_index();
        Ok(site)
    }

    fn build_index(&mut self) {
        for ax in &self.axioms {
            // a ◁ C with a ≤ some c ∈ C is already an instance of (≤)
            if ax.cover.iter().any(|c| self.below[c as usize].contains(ax.head as usize)) {
                continue;
            }
            if ax.cover.is_empty() {
                self.empty_heads.push(ax.head);
                continue;
            }
            let id = self.heads.len() as u32;
            self.heads.push(ax.head);
            self.cover_len.push(ax.cover.len() as u32);
            for c in ax.cover.iter() {
                self.watch[c as usize].push(id);
            }
        }
        self.empty_heads.sort_unstable();
        self.empty_heads.dedup();
    }

    /// Attach a meet structure given as a top element and a full table `(a, b, a ∧ b)`.
    pub fn with_meet(mut self, top: Elem, table: &[(Elem, Elem, Elem)]) -> Result<Self> {
        let n = self.size();
        check_elem(top, n)?;
        let mut t = vec![u32::MAX; n * n];
        for &(a, b, c) in table {
            check_elem(a, n)?;
            check_elem(b, n)?;
            check_elem(c, n)?;
            t[a as usize * n + b as usize] = c;
        }
        if let Some(pos) = t.iter().position(|&c| c == u32::MAX) {
            return Err(Error::BadMeet(format!(
                "missing entry for ({}, {})",
                self.names[pos / n],
                self.names[pos % n]
            )));
        }
        for a in 0..n as Elem {
            if !self.le(a, top) {
                return Err(Error::BadMeet(format!("{} is not below top", self.names[a as usize])));
            }
            for b in 0..n as Elem {
                let m = t[a as usize * n + b as usize];
                if !self.le(m, a) || !self.le(m, b) {
                    return Err(Error::BadMeet(format!(
                        "{} is not a lower bound of {} and {}",
                        self.names[m as usize], self.names[a as usize], self.names[b as usize]
                    )));
                }
                for c in 0..n as Elem {
                    if self.le(c, a) && self.le(c, b) && !self.le(c, m) {
                        return Err(Error::BadMeet(format!(
                            "{} is not the greatest lower bound of {} and {}",
                            self.names[m as usize], self.names[a as usize], self.names[b as usize]
                        )));
                    }
                }
            }
        }
        self.meet = Some(MeetStructure { top, n, table: t });
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e as usize]
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn subset(&self, names: &[&str]) -> Result<FinSubset> {
        names.iter().map(|s| self.elem(s)).collect::<Result<Vec<_>>>().map(FinSubset::new)
    }

    pub fn format_subset(&self, s: &FinSubset) -> String {
        let parts: Vec<&str> = s.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn base(&self) -> FinSubset {
        FinSubset::from_sorted((0..self.size() as u32).collect())
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        0..self.size() as Elem
    }

    pub fn is_localized(&self) -> bool {
        self.localized
    }

    pub fn closure_added(&self) -> bool {
        self.closure_added
    }

    pub fn meet_structure(&self) -> Option<&MeetStructure> {
        self.meet.as_ref()
    }

    /// Axioms as supplied to the constructor.
    pub fn generating_axioms(&self) -> &[Axiom] {
        &self.generating
    }

    /// Axioms the cover is generated from (localised when the site is).
    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.below[b as usize].contains(a as usize)
    }

    pub fn below_bits(&self, b: Elem) -> &FixedBitSet {
        &self.below[b as usize]
    }

    pub fn above_bits(&self, a: Elem) -> &FixedBitSet {
        &self.above[a as usize]
    }

    /// Order pairs `(a, b)` with `a ≤ b`, `a ≠ b`.
    pub fn order_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for b in self.elems() {
            for a in self.below[b as usize].ones() {
                if a as Elem != b {
                    out.push((a as Elem, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Covering pairs of the order (Hasse diagram) between distinct classes.
    pub fn hasse_pairs(&self) -> Vec<(Elem, Elem)> {
        let strict = |a: Elem, b: Elem| self.le(a, b) && !self.le(b, a);
        let mut out = Vec::new();
        for (a, b) in self.order_pairs() {
            if !strict(a, b) {
                continue;
            }
            let skip = self.elems().any(|c| strict(a, c) && strict(c, b));
            if !skip {
                out.push((a, b));
            }
        }
        out
    }

    pub fn bits(&self, u: &FinSubset) -> FixedBitSet {
        u.to_bits(self.size())
    }

    pub fn down_closure_bits(&self, u: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.size());
        for x in u.ones() {
            out.union_with(&self.below[x]);
        }
        out
    }

    /// `U ↓ V = {c | ∃u∈U ∃v∈V, c ≤ u and c ≤ v}`.
    pub fn down(&self, u: &FinSubset, v: &FinSubset) -> FinSubset {
        let mut a = self.down_closure_bits(&self.bits(u));
        a.intersect_with(&self.down_closure_bits(&self.bits(v)));
        FinSubset::from_bits(&a)
    }

    pub fn saturate_bits(&self, u: &FixedBitSet) -> FixedBitSet {
        self.saturate_inner(u, None).0
    }

    fn saturate_inner(&self, u: &FixedBitSet, target: Option<usize>) -> (FixedBitSet, bool) {
        let n = self.size();
        let mut cur = FixedBitSet::with_capacity(n);
        let mut count = self.cover_len.clone();
        let mut stack: Vec<usize> = Vec::new();
        let push = |x: usize, cur: &mut FixedBitSet, stack: &mut Vec<usize>| {
            if !cur.put(x) {
                stack.push(x);
            }
        };
        for x in u.ones() {
            push(x, &mut cur, &mut stack);
        }
        for &h in &self.empty_heads {
            push(h as usize, &mut cur, &mut stack);
        }
        while let Some(x) = stack.pop() {
            if Some(x) == target {
                return (cur, true);
            }
            for y in self.below[x].ones() {
                push(y, &mut cur, &mut stack);
            }
            for &ax in &self.watch[x] {
                let c = &mut count[ax as usize];
                *c -= 1;
                if *c == 0 {
                    push(self.heads[ax as usize] as usize, &mut cur, &mut stack);
                }
            }
        }
        let hit = target.is_some_and(|t| cur.contains(t));
        (cur, hit)
    }

    /// Least set containing `U`, down-closed, and closed under every axiom whose cover it contains.
    pub fn saturate(&self, u: &FinSubset) -> FinSubset {
        FinSubset::from_bits(&self.saturate_bits(&self.bits(u)))
    }

    pub fn covers(&self, a: Elem, u: &FinSubset) -> bool {
        if u.contains(a) {
            return true;
        }
        self.saturate_inner(&self.bits(u), Some(a as usize)).1
    }

    /// Every member of `U` is covered by `V`.
    pub fn covers_set(&self, u: &FinSubset, v: &FinSubset) -> bool {
        let sat = self.saturate_bits(&self.bits(v));
        u.iter().all(|a| sat.contains(a as usize))
    }

    pub fn cover_eq(&self, u: &FinSubset, v: &FinSubset) -> bool {
        self.saturate_bits(&self.bits(u)) == self.saturate_bits(&self.bits(v))
    }

    pub fn is_saturated(&self, u: &FinSubset) -> bool {
        self.saturate(u) == *u
    }

    /// Literal check of the localisation condition: for every axiom `(b, C)` and `a ≤ b`,
    /// either `a ≤ c` for some `c ∈ C` or some axiom `(a, C')` has `C' ⊆ a ↓ C`.
    pub fn check_localized(&self) -> bool {
        let mut by_head: HashMap<Elem, Vec<&FinSubset>> = HashMap::new();
        for ax in &self.axioms {
            by_head.entry(ax.head).or_default().push(&ax.cover);
        }
        for ax in &self.axioms {
            let dc = self.down_closure_bits(&self.bits(&ax.cover));
            for a in self.below[ax.head as usize].ones() {
                if dc.contains(a) {
                    continue;
                }
                let mut target = dc.clone();
                target.intersect_with(&self.below[a]);
                let ok = by_head.get(&(a as Elem)).is_some_and(|covers| {
                    covers.iter().any(|c| c.iter().all(|x| target.contains(x as usize)))
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn check_elem(e: Elem, n: usize) -> Result<()> {
    if (e as usize) < n {
        Ok(())
    } else {
        Err(Error::OutOfBase(e, n))
    }
}

fn localize_with(below: &[FixedBitSet], axioms: &[Axiom]) -> Vec<Axiom> {
    let n = below.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for ax in axioms {
        let mut dc = FixedBitSet::with_capacity(n);
        for c in ax.cover.iter() {
            dc.union_with(&below[c as usize]);
        }
        for a in below[ax.head as usize].ones() {
            let mut cov = dc.clone();
            cov.intersect_with(&below[a]);
            let new = Axiom::new(a as Elem, FinSubset::from_bits(&cov));
            if seen.insert(new.clone()) {
                out.push(new);
            }
        }
    }
    out
}

/// The localisation `{(a, a ↓ C) | a ≤ b, (b, C) given}` of an axiom multiset over a site's preorder.
pub fn localize(site: &FiniteSite, axioms: &[Axiom]) -> Result<Vec<Axiom>> {
    for ax in axioms {
        check_elem(ax.head, site.size())?;
        for c in ax.cover.iter() {
            check_elem(c, site.size())?;
        }
    }
    Ok(localize_with(&site.below, axioms))
}
