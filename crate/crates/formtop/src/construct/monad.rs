use std::sync::Arc;

use serde::Serialize;

use crate::core::{FinSubset, FiniteSite};
use crate::error::{bound, Result};
use crate::theory::{model_check, Generator, GeometricTheory, LazySite, ModelOracle};

use super::vietoris::{require_compact_regular, ModelTranslations};

/// Largest base for which the monad checks run (`T_V` then has `2^4 + 4` generators).
pub const MONAD_BASE_BOUND: usize = 4;

/// Generator of `T_V` over the presented site `V(S)`: `◇𝒜` or `□𝔅` for finite sets of `T_V` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DoubleGen {
    Diamond(FinSubset),
    Box(Vec<FinSubset>),
}

/// `η` and `μ` at the level of models.
pub struct MonadModelOps {
    translations: ModelTranslations,
    vsite: Arc<LazySite>,
    theory: Arc<GeometricTheory>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LeftUnitReport {
    pub site: String,
    pub models: usize,
    pub generators: usize,
    pub eta_models: bool,
    pub mu_models: bool,
    pub disagreements: Vec<String>,
}

impl LeftUnitReport {
    pub fn passed(&self) -> bool {
        self.eta_models && self.mu_models && self.disagreements.is_empty()
    }
}

impl MonadModelOps {
    pub fn new(site: &FiniteSite) -> Result<Self> {
        require_compact_regular(site, "monad")?;
        bound("monad base", site.size(), MONAD_BASE_BOUND)?;
        let translations = ModelTranslations::new(site)?;
        let theory = Arc::new(translations.vietoris().clone());
        let vsite = Arc::new(LazySite::from_theory(theory.clone()));
        Ok(MonadModelOps {
            translations,
            vsite,
            theory,
        })
    }

    pub fn translations(&self) -> &ModelTranslations {
        &self.translations
    }

    pub fn theory(&self) -> &GeometricTheory {
        &self.theory
    }

    /// `η_S` on a point `x`: the `T_V` model of `x` as a located subset.
    pub fn eta(&self, x: &FinSubset) -> Result<ModelOracle> {
        self.translations.loc_to_v_oracle(x)
    }

    /// `η_{V(S)}` on a model `m`, i.e. on the point `{𝒜 | 𝒜 ⊆ m}` of `V(S)`:
    /// `◇𝒜 ∈ η(m) ⇔ m ◁_V {𝒜}` and `□𝔅 ∈ η(m) ⇔ m ◁_V 𝔅`.
    pub fn eta_model(&self, m: &FinSubset) -> ModelOracle<DoubleGen> {
        let vsite = self.vsite.clone();
        let m = m.clone();
        ModelOracle::from_fn(move |g: &DoubleGen| match g {
            DoubleGen::Diamond(a) => vsite.covers(&m, std::slice::from_ref(a)),
            DoubleGen::Box(bs) => vsite.covers(&m, bs),
        })
    }

    /// `◇a ∈ μ(M) ⇔ ◇{◇a} ∈ M` and `□A ∈ μ(M) ⇔ □{{□A}} ∈ M`.
    pub fn mu(&self, big: &ModelOracle<DoubleGen>) -> ModelOracle {
        let theory = self.theory.clone();
        let big = big.clone();
        ModelOracle::from_fn(move |g: &Generator| {
            let Some(i) = theory.index_of(g) else {
                return false;
            };
            match g {
                Generator::Diamond(_) => big.contains(&DoubleGen::Diamond(FinSubset::singleton(i))),
                Generator::Box(_) => big.contains(&DoubleGen::Box(vec![FinSubset::singleton(i)])),
                _ => false,
            }
        })
    }
}

pub fn monad_model(site: &FiniteSite) -> Result<MonadModelOps> {
    MonadModelOps::new(site)
}

/// For every `T_V` model `m`: `μ(η_{V(S)}(m))` agrees with `m` on every generator of `T_V`.
/// Also checks that `η` of each located point and each `μ` output are models.
pub fn left_unit_check(site: &FiniteSite, label: &str) -> Result<LeftUnitReport> {
    let ops = MonadModelOps::new(site)?;
    let t = ops.theory();
    let models = ops.translations.vietoris_models(site.size())?;
    let mut report = LeftUnitReport {
        site: label.to_string(),
        models: models.len(),
        generators: t.generator_count(),
        eta_models: true,
        mu_models: true,
        disagreements: Vec::new(),
    };
    for x in crate::located::enumerate_located_points(site, site.size())? {
        report.eta_models &= model_check(t, &ops.eta(&x)?);
    }
    for m in &models {
        let back = ops.mu(&ops.eta_model(m));
        report.mu_models &= model_check(t, &back);
        for (i, g) in t.generators().iter().enumerate() {
            if back.contains(g) != m.contains(i as u32) {
                report
                    .disagreements
                    .push(format!("{}: {}", t.format_set(m.as_slice()), t.code(i as u32)));
            }
        }
    }
    Ok(report)
}
