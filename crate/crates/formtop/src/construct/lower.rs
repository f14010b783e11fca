use std::sync::Arc;

use crate::core::{Elem, FinSubset, FiniteSite};
use crate::error::Result;
use crate::theory::{Generator, GeometricTheory, LazySite, SiteMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerForm {
    /// `a ⊢ ⋁ C(a, i)` per generating axiom and `a ⊢ b` for `a ≤ b`, over plain generators.
    Axioms,
    /// (R3) and (R4) of `T_L` over `r(a)`.
    Continuous,
}

/// The theory of splitting subsets. Generator `i` stands for base element `i` in both forms.
pub fn lower_theory(site: &FiniteSite, form: LowerForm) -> Result<GeometricTheory> {
    let one = FinSubset::singleton;
    match form {
        LowerForm::Axioms => {
            let gens = site.names().iter().cloned().map(Generator::Plain).collect();
            let mut t = GeometricTheory::new("lower", site.names().to_vec(), gens)?;
            for ax in site.generating_axioms() {
                t.push_axiom("axiom", [ax.head], ax.cover.iter().map(one))?;
            }
            for (a, b) in site.order_pairs() {
                if a != b {
                    t.push_axiom("order", [a], [one(b)])?;
                }
            }
            Ok(t)
        }
        LowerForm::Continuous => {
            let n = site.size();
            crate::error::bound("continuous lower theory base", n, super::patch::LAZY_BASE_BOUND)?;
            let gens = site.elems().map(Generator::R).collect();
            let mut t = GeometricTheory::new("lower", site.names().to_vec(), gens)?;
            for a in site.elems() {
                for m in 0u64..1 << n {
                    let s = FinSubset::from_mask(m);
                    if site.covers(a, &s) {
                        t.push_axiom("R3", [a], s.iter().map(one))?;
                    }
                }
            }
            for a in site.elems() {
                t.push_axiom("R4", [a], site.wb(a).iter().map(one))?;
            }
            Ok(t)
        }
    }
}

/// `σ_L : L(S) → S`, `A σ_L a ⇔ A ◁_L {{a}}`.
pub fn sigma_l(site: &FiniteSite) -> Result<SiteMap<LazySite, FiniteSite>> {
    let t = lower_theory(site, LowerForm::Axioms)?;
    let lower = Arc::new(LazySite::from_theory(Arc::new(t)));
    Ok(SiteMap::new("σ_L", lower, Arc::new(site.clone()), |a: &Elem| vec![FinSubset::singleton(*a)]))
}
