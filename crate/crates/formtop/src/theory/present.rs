use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;

use super::theory::GeometricTheory;
use crate::core::{Axiom, FinSubset, FiniteSite, Localization};
use crate::error::{Error, Result};

/// Default bound on the number of base elements `2^|P|` of a materialized presentation.
pub const PRESENT_BOUND: usize = 1 << 12;

/// Base element of a presented site from its generator set; valid while `|P| ≤ 12`.
pub fn presented_elem(a: &FinSubset) -> u32 {
    a.to_mask() as u32
}

/// The presented formal topology: base `Fin P`, `A ≤ B ⇔ B ⊆ A`, and axioms
/// `C ∪ A ◁ {C ∪ Bᵢ}` for every theory axiom `⋀A ⊢ ⋁⋀Bᵢ` and every `C`.
/// Base element `A` has index `presented_elem(A)`.
pub fn present(theory: &GeometricTheory, max_elems: usize) -> Result<FiniteSite> {
    let n = theory.generator_count();
    let size = 1usize.checked_shl(n as u32).filter(|&s| n < 31 && s <= max_elems.max(1));
    let Some(size) = size else {
        return Err(Error::Bound {
            what: format!("presented base 2^{n} of {} (use the lazy presentation)", theory.provenance()),
            size: if n < 63 { 1usize << n.min(62) } else { usize::MAX },
            bound: max_elems,
        });
    };
    let full = (size - 1) as u64;
    let names: Vec<String> = (0..size as u64)
        .map(|m| {
            let s = FinSubset::from_mask(m);
            theory.format_set(s.as_slice())
        })
        .collect();
    let mut below = vec![FixedBitSet::with_capacity(size); size];
    for (b, row) in below.iter_mut().enumerate() {
        let rest = full & !(b as u64);
        for extra in crate::core::submasks(rest) {
            row.insert((b as u64 | extra) as usize);
        }
    }
    let mut axioms = Vec::new();
    for ax in theory.axioms() {
        let a = ax.ante.iter().fold(0u64, |m, &g| m | 1 << g);
        let ds: Vec<u64> = ax.disjuncts().map(|d| d.iter().fold(0u64, |m, &g| m | 1 << g)).collect();
        for extra in crate::core::submasks(full & !a) {
            let x = a | extra;
            let cover = FinSubset::new(ds.iter().map(|d| (x | d) as u32));
            axioms.push(Axiom::new(x as u32, cover));
        }
    }
    FiniteSite::from_downsets(names, below, axioms, Localization::Assume)
}

/// An axiom instance found active at a tableau node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub family: String,
    pub ante: FinSubset,
    pub disjuncts: Vec<FinSubset>,
}

/// Source of axiom instances for the lazy presentation.
pub trait AxiomSource: Send + Sync {
    fn generator_count(&self) -> usize;
    fn code(&self, g: u32) -> String;
    /// Some instance with antecedent `⊆ x` and no disjunct `⊆ x`, or `None` when `x` is a model.
    /// Instances whose branches all close against `goal` should be preferred, then instances
    /// with fewer branches.
    fn find_active(&self, x: &FinSubset, goal: &[FinSubset]) -> Option<Instance>;
}

/// Branches of an instance that stay open: `x ∪ B` contains no goal member.
pub(crate) fn open_branches(x: &FinSubset, disjuncts: &[&[u32]], goal: &[FinSubset]) -> usize {
    let residual: Vec<FinSubset> = goal.iter().map(|g| g.difference(x)).collect();
    disjuncts
        .iter()
        .filter(|d| !residual.iter().any(|r| r.iter().all(|g| d.binary_search(&g).is_ok())))
        .count()
}

impl AxiomSource for GeometricTheory {
    fn generator_count(&self) -> usize {
        GeometricTheory::generator_count(self)
    }

    fn code(&self, g: u32) -> String {
        GeometricTheory::code(self, g)
    }

    fn find_active(&self, x: &FinSubset, goal: &[FinSubset]) -> Option<Instance> {
        let bits = x.to_bits(self.generator_count());
        let mut best: Option<((usize, usize), usize)> = None;
        for ax in self.axioms() {
            if !ax.ante.iter().all(|&g| bits.contains(g as usize)) {
                continue;
            }
            let ds: Vec<&[u32]> = ax.disjuncts().collect();
            if ds.iter().any(|d| d.iter().all(|&g| bits.contains(g as usize))) {
                continue;
            }
            let score = (open_branches(x, &ds, goal), ds.len());
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, ax.index));
                if score.0 == 0 {
                    break;
                }
            }
        }
        best.map(|(_, i)| {
            let ax = self.axiom(i);
            Instance {
                family: ax.family.to_string(),
                ante: FinSubset::new(ax.ante.iter().copied()),
                disjuncts: ax.disjuncts().map(|d| FinSubset::new(d.iter().copied())).collect(),
            }
        })
    }
}

/// Cover queries on a presented site without materializing `Fin P`.
///
/// `X ◁ 𝒰` is decided by a tableau: it holds if some member of `𝒰` is contained in `X`;
/// otherwise pick an active instance `⋀A ⊢ ⋁⋀Bᵢ` (`A ⊆ X`, no `Bᵢ ⊆ X`) and require
/// `X ∪ Bᵢ ◁ 𝒰` for every `i`. With no active instance, `X` is itself a model, and
/// `{Y | Y ⊆ X}` is a point refuting the cover. Each branch strictly grows `X`.
pub struct LazySite {
    source: Arc<dyn AxiomSource>,
    theory: Option<Arc<GeometricTheory>>,
    memo: Mutex<HashMap<Vec<FinSubset>, HashMap<FinSubset, bool>>>,
}

impl LazySite {
    pub fn new(source: Arc<dyn AxiomSource>) -> Self {
        LazySite {
            source,
            theory: None,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_theory(theory: Arc<GeometricTheory>) -> Self {
        LazySite {
            source: theory.clone(),
            theory: Some(theory),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// A site answering queries through `source`, which must present the same models as `theory`.
    pub fn with_theory(source: Arc<dyn AxiomSource>, theory: Arc<GeometricTheory>) -> Self {
        LazySite {
            source,
            theory: Some(theory),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// The explicit theory, when the site was presented from one.
    pub fn theory(&self) -> Option<&GeometricTheory> {
        self.theory.as_deref()
    }

    pub fn source(&self) -> &dyn AxiomSource {
        &*self.source
    }

    pub fn generator_count(&self) -> usize {
        self.source.generator_count()
    }

    pub fn format(&self, a: &FinSubset) -> String {
        let parts: Vec<String> = a.iter().map(|g| self.source.code(g)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Drop goal members that contain another member, then sort.
    fn normalize_goal(goal: &[FinSubset]) -> Vec<FinSubset> {
        let mut g: Vec<FinSubset> = goal.to_vec();
        crate::core::sort_canonical(&mut g);
        g.dedup();
        let mut out: Vec<FinSubset> = Vec::new();
        for a in g {
            if !out.iter().any(|b| b.is_subset(&a)) {
                out.push(a);
            }
        }
        out
    }

    /// `x ◁ goal`.
    pub fn covers(&self, x: &FinSubset, goal: &[FinSubset]) -> bool {
        let goal = Self::normalize_goal(goal);
        let mut memo = self.memo.lock().expect("memo lock").remove(&goal).unwrap_or_default();
        let r = self.tableau(x, &goal, &mut memo);
        self.memo.lock().expect("memo lock").insert(goal, memo);
        r
    }

    fn tableau(&self, x: &FinSubset, goal: &[FinSubset], memo: &mut HashMap<FinSubset, bool>) -> bool {
        // Single-disjunct instances are applied in place; only genuine branching recurses.
        let mut x = x.clone();
        let mut chain: Vec<FinSubset> = Vec::new();
        let r = loop {
            if goal.iter().any(|g| g.is_subset(&x)) {
                break true;
            }
            if let Some(&r) = memo.get(&x) {
                break r;
            }
            match self.source.find_active(&x, goal) {
                None => break false,
                Some(inst) if inst.disjuncts.len() == 1 => {
                    let next = x.union(&inst.disjuncts[0]);
                    chain.push(std::mem::replace(&mut x, next));
                }
                Some(inst) => {
                    let r = inst.disjuncts.iter().all(|b| self.tableau(&x.union(b), goal, memo));
                    break r;
                }
            }
        };
        memo.insert(x, r);
        for y in chain {
            memo.insert(y, r);
        }
        r
    }

    /// Every member of `u` is covered by `v`.
    pub fn covers_set(&self, u: &[FinSubset], v: &[FinSubset]) -> bool {
        u.iter().all(|x| self.covers(x, v))
    }

    pub fn cover_eq(&self, u: &[FinSubset], v: &[FinSubset]) -> bool {
        self.covers_set(u, v) && self.covers_set(v, u)
    }

    /// `x` is a model of the underlying theory.
    pub fn is_model(&self, x: &FinSubset) -> bool {
        self.source.find_active(x, &[]).is_none()
    }

    /// `U ≪ V`; the base `Fin P` is finite, so this is `U ◁ V`.
    pub fn way_below_set(&self, u: &[FinSubset], v: &[FinSubset]) -> bool {
        self.covers_set(u, v)
    }

    pub fn clear_memo(&self) {
        self.memo.lock().expect("memo lock").clear();
    }
}

pub fn present_lazy(theory: GeometricTheory) -> LazySite {
    LazySite::from_theory(Arc::new(theory))
}
