//! Propositional geometric theories, their presented sites, models, and maps into them.

mod generator;
mod map;
mod models;
mod present;
#[allow(clippy::module_inception)]
mod theory;

pub use generator::Generator;
pub use map::{extend_to_map, extend_with_preimages, CoverSpace, SiteMap};
pub use models::{
    enumerate_models, first_violation, is_model, model_check, model_check_explain, ModelOracle,
    MODEL_ENUMERATION_BOUND,
};
pub use present::{present, present_lazy, presented_elem, AxiomSource, Instance, LazySite, PRESENT_BOUND};
pub(crate) use present::open_branches;
pub use theory::{AxiomDoc, AxiomRef, GeometricAxiom, GeometricTheory, TheoryDoc, TheoryStats};
