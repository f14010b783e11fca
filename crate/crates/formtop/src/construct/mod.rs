//! Patch, Lawson, Vietoris, lower, Scott and de Groot constructions, their canonical maps,
//! and the model-level monad operations.

mod lower;
mod maps;
mod monad;
mod patch;
mod scott;
mod vietoris;
mod wb;

pub use lower::{lower_theory, sigma_l, LowerForm};
pub use maps::{
    canonical_maps, eps_d, eps_l, eps_p, extend_perfect, point_map, point_of_map, terminal_site, CanonicalMaps,
    EXTEND_BASE_BOUND,
};
pub use monad::{left_unit_check, monad_model, DoubleGen, LeftUnitReport, MonadModelOps, MONAD_BASE_BOUND};
pub use patch::{
    construction_lazy, construction_theory, lawson_lazy, lawson_models, lawson_theory, located_to_model,
    model_to_located, patch_lazy, patch_models, patch_theory, PatchKind, PatchLayout, PatchSchema,
    EXPANSION_ENTRY_BOUND, EXPLICIT_BASE_BOUND, LAZY_BASE_BOUND,
};
pub use scott::{
    degroot, join_f, join_f_literal, order_isomorphic, saturated_subsets, scott_covers_literal, scott_dual_check,
    scott_open_filters, scott_site, star_family, up_arrow, DeGroot, DualPath, ScottDualReport,
    DEGROOT_BASE_BOUND, SCOTT_BASE_BOUND,
};
pub use vietoris::{model_translations, vietoris_theory, ModelTranslations, VietorisLayout};
pub use wb::synthetic_wb;
pub(crate) use patch::require_slc;

#[cfg(test)]
mod tests;
