use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::present::LazySite;
use super::theory::GeometricTheory;
use crate::core::{Elem, FinSubset, FiniteSite};
use crate::error::{Error, Result};

/// A site answering cover queries, with a finite meet `U ↓ V` up to cover-equality.
pub trait CoverSpace: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn covers(&self, a: &Self::Elem, u: &[Self::Elem]) -> bool;

    fn covers_set(&self, u: &[Self::Elem], v: &[Self::Elem]) -> bool {
        u.iter().all(|a| self.covers(a, v))
    }

    fn cover_eq(&self, u: &[Self::Elem], v: &[Self::Elem]) -> bool {
        self.covers_set(u, v) && self.covers_set(v, u)
    }

    /// A finite set cover-equal to `U ↓ V`.
    fn meet(&self, u: &[Self::Elem], v: &[Self::Elem]) -> Vec<Self::Elem>;

    /// A finite set cover-equal to the whole base.
    fn top(&self) -> Vec<Self::Elem>;

    fn show(&self, a: &Self::Elem) -> String;

    /// `U ≪ V`. Every base considered here is finite, where `≪` coincides with `◁`.
    fn way_below_set(&self, u: &[Self::Elem], v: &[Self::Elem]) -> bool {
        self.covers_set(u, v)
    }

    /// Elements whose preimages determine a map: the whole base, or generators.
    fn test_elements(&self) -> Vec<Self::Elem>;

    /// Axioms `a ◁ U` generating the cover, when available explicitly.
    fn basic_axioms(&self) -> Option<Vec<(Self::Elem, Vec<Self::Elem>)>>;

    fn show_set(&self, u: &[Self::Elem]) -> String {
        let parts: Vec<String> = u.iter().map(|a| self.show(a)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl CoverSpace for FiniteSite {
    type Elem = Elem;

    fn covers(&self, a: &Elem, u: &[Elem]) -> bool {
        FiniteSite::covers(self, *a, &FinSubset::new(u.iter().copied()))
    }

    fn covers_set(&self, u: &[Elem], v: &[Elem]) -> bool {
        FiniteSite::covers_set(self, &FinSubset::new(u.iter().copied()), &FinSubset::new(v.iter().copied()))
    }

    fn meet(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let su = self.saturate(&FinSubset::new(u.iter().copied()));
        let sv = self.saturate(&FinSubset::new(v.iter().copied()));
        su.intersection(&sv).into_vec()
    }

    fn top(&self) -> Vec<Elem> {
        self.elems().collect()
    }

    fn show(&self, a: &Elem) -> String {
        self.name(*a).to_string()
    }

    fn test_elements(&self) -> Vec<Elem> {
        self.elems().collect()
    }

    fn basic_axioms(&self) -> Option<Vec<(Elem, Vec<Elem>)>> {
        let mut out: Vec<(Elem, Vec<Elem>)> =
            self.generating_axioms().iter().map(|ax| (ax.head, ax.cover.as_slice().to_vec())).collect();
        out.extend(self.hasse_pairs().into_iter().map(|(a, b)| (a, vec![b])));
        Some(out)
    }
}

impl CoverSpace for LazySite {
    type Elem = FinSubset;

    fn covers(&self, a: &FinSubset, u: &[FinSubset]) -> bool {
        LazySite::covers(self, a, u)
    }

    fn meet(&self, u: &[FinSubset], v: &[FinSubset]) -> Vec<FinSubset> {
        let mut out: Vec<FinSubset> = u.iter().flat_map(|a| v.iter().map(move |b| a.union(b))).collect();
        out.sort();
        out.dedup();
        out
    }

    fn top(&self) -> Vec<FinSubset> {
        vec![FinSubset::empty()]
    }

    fn show(&self, a: &FinSubset) -> String {
        self.format(a)
    }

    fn test_elements(&self) -> Vec<FinSubset> {
        std::iter::once(FinSubset::empty())
            .chain((0..self.generator_count() as u32).map(FinSubset::singleton))
            .collect()
    }

    fn basic_axioms(&self) -> Option<Vec<(FinSubset, Vec<FinSubset>)>> {
        let t = self.theory()?;
        Some(
            t.axioms()
                .map(|ax| {
                    let d = ax.disjuncts().map(|d| FinSubset::new(d.iter().copied())).collect();
                    (FinSubset::new(ax.ante.iter().copied()), d)
                })
                .collect(),
        )
    }
}

type Preimage<S, T> = Arc<dyn Fn(&<T as CoverSpace>::Elem) -> Vec<<S as CoverSpace>::Elem> + Send + Sync>;

/// A relation `s r t ⇔ s ◁ r⁻t`, given by a finite preimage for each target element.
pub struct SiteMap<S: CoverSpace, T: CoverSpace> {
    pub label: String,
    source: Arc<S>,
    target: Arc<T>,
    pre: Preimage<S, T>,
}

impl<S: CoverSpace, T: CoverSpace> Clone for SiteMap<S, T> {
    fn clone(&self) -> Self {
        SiteMap {
            label: self.label.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            pre: self.pre.clone(),
        }
    }
}

impl<S: CoverSpace + 'static, T: CoverSpace + 'static> SiteMap<S, T> {
    pub fn new<F>(label: impl Into<String>, source: Arc<S>, target: Arc<T>, pre: F) -> Self
    where
        F: Fn(&T::Elem) -> Vec<S::Elem> + Send + Sync + 'static,
    {
        SiteMap {
            label: label.into(),
            source,
            target,
            pre: Arc::new(pre),
        }
    }

    pub fn source(&self) -> &Arc<S> {
        &self.source
    }

    pub fn target(&self) -> &Arc<T> {
        &self.target
    }

    pub fn preimage(&self, t: &T::Elem) -> Vec<S::Elem> {
        (self.pre)(t)
    }

    pub fn preimage_set(&self, ts: &[T::Elem]) -> Vec<S::Elem> {
        let mut out: Vec<S::Elem> = ts.iter().flat_map(|t| self.preimage(t)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn relates(&self, s: &S::Elem, t: &T::Elem) -> bool {
        self.source.covers(s, &self.preimage(t))
    }

    /// `a ◁ U ⇒ r⁻a ◁ r⁻U` on the generating axioms of the target.
    pub fn check_basic(&self) -> std::result::Result<(), String> {
        let Some(axioms) = self.target.basic_axioms() else {
            return Ok(());
        };
        for (h, c) in axioms {
            if !self.source.covers_set(&self.preimage(&h), &self.preimage_set(&c)) {
                return Err(format!(
                    "{}: preimage of {} not covered by preimage of {}",
                    self.label,
                    self.target.show(&h),
                    self.target.show_set(&c)
                ));
            }
        }
        Ok(())
    }

    /// `S ◁ r⁻T`.
    pub fn check_ftm1(&self) -> std::result::Result<(), String> {
        if self.source.covers_set(&self.source.top(), &self.preimage_set(&self.target.top())) {
            Ok(())
        } else {
            Err(format!("{}: source top not covered by preimage of target top", self.label))
        }
    }

    /// `r⁻a ↓ r⁻b ◁ r⁻(a ↓ b)` on all pairs of test elements.
    pub fn check_ftm2(&self) -> std::result::Result<(), String> {
        let ts = self.target.test_elements();
        for (i, a) in ts.iter().enumerate() {
            let pa = self.preimage(a);
            for b in &ts[i..] {
                let lhs = self.source.meet(&pa, &self.preimage(b));
                let ab = self.target.meet(std::slice::from_ref(a), std::slice::from_ref(b));
                if !self.source.covers_set(&lhs, &self.preimage_set(&ab)) {
                    return Err(format!(
                        "{}: meet of preimages of {} and {} not covered",
                        self.label,
                        self.target.show(a),
                        self.target.show(b)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_formal_topology_map(&self) -> bool {
        self.check_basic().is_ok() && self.check_ftm1().is_ok() && self.check_ftm2().is_ok()
    }

    /// `a ≪ b ⇒ r⁻a ≪ r⁻b` over test elements and the target top.
    pub fn check_perfect(&self) -> std::result::Result<(), String> {
        let mut sets: Vec<Vec<T::Elem>> = self.target.test_elements().into_iter().map(|t| vec![t]).collect();
        sets.push(self.target.top());
        for a in &sets {
            let pa = self.preimage_set(a);
            for b in &sets {
                if self.target.way_below_set(a, b) && !self.source.way_below_set(&pa, &self.preimage_set(b)) {
                    return Err(format!(
                        "{}: {} ≪ {} not preserved",
                        self.label,
                        self.target.show_set(a),
                        self.target.show_set(b)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_perfect(&self) -> bool {
        self.check_perfect().is_ok()
    }

    /// Equal preimages on every test element, up to cover-equality in the source.
    pub fn map_eq(&self, other: &SiteMap<S, T>) -> bool {
        self.target
            .test_elements()
            .iter()
            .all(|t| self.source.cover_eq(&self.preimage(t), &other.preimage(t)))
    }

    /// A test element of the target where the two maps differ.
    pub fn first_difference(&self, other: &SiteMap<S, T>) -> Option<T::Elem> {
        self.target
            .test_elements()
            .into_iter()
            .find(|t| !self.source.cover_eq(&self.preimage(t), &other.preimage(t)))
    }

    /// `next ∘ self`.
    pub fn compose<U: CoverSpace + 'static>(&self, next: &SiteMap<T, U>) -> SiteMap<S, U> {
        let first = self.clone();
        let second = next.clone();
        SiteMap::new(
            format!("{} ∘ {}", next.label, self.label),
            self.source.clone(),
            next.target.clone(),
            move |u| first.preimage_set(&second.preimage(u)),
        )
    }
}

impl<S: CoverSpace + 'static> SiteMap<S, LazySite> {
    /// The map into a presented site determined by the preimage of each generator;
    /// `r⁻A` is the meet of the generator preimages, and `r⁻∅` is the source top.
    pub fn from_generators(label: impl Into<String>, source: Arc<S>, target: Arc<LazySite>, gens: Vec<Vec<S::Elem>>) -> Self {
        let src = source.clone();
        SiteMap::new(label, source, target, move |a: &FinSubset| {
            a.iter().fold(src.top(), |acc, g| src.meet(&acc, &gens[g as usize]))
        })
    }
}

/// Extend a relation from `source` to the generators of `theory` into a map into the
/// presented site, after checking `r⁻A ◁ ⋃ᵢ r⁻Bᵢ` for each axiom `⋀A ⊢ ⋁⋀Bᵢ`.
pub fn extend_to_map<F>(source: Arc<FiniteSite>, theory: Arc<GeometricTheory>, relation: F) -> Result<SiteMap<FiniteSite, LazySite>>
where
    F: Fn(Elem, u32) -> bool,
{
    let gens: Vec<Vec<Elem>> = (0..theory.generator_count() as u32)
        .map(|g| source.elems().filter(|&b| relation(b, g)).collect())
        .collect();
    extend_with_preimages(source, theory, gens)
}

/// As [`extend_to_map`], with the generator preimages given directly.
pub fn extend_with_preimages(
    source: Arc<FiniteSite>,
    theory: Arc<GeometricTheory>,
    gens: Vec<Vec<Elem>>,
) -> Result<SiteMap<FiniteSite, LazySite>> {
    if gens.len() != theory.generator_count() {
        return Err(Error::Precondition(format!(
            "{} generator preimages for {} generators",
            gens.len(),
            theory.generator_count()
        )));
    }
    let target = Arc::new(LazySite::from_theory(theory.clone()));
    let map = SiteMap::from_generators(format!("extension into {}", theory.provenance()), source, target, gens);
    for ax in theory.axioms() {
        let lhs = map.preimage(&FinSubset::new(ax.ante.iter().copied()));
        let rhs: Vec<FinSubset> = ax.disjuncts().map(|d| FinSubset::new(d.iter().copied())).collect();
        if !CoverSpace::covers_set(&**map.source(), &lhs, &map.preimage_set(&rhs)) {
            return Err(Error::Respect(theory.describe(ax.index)));
        }
    }
    Ok(map)
}
