//! Finite sets, finite and oracle-backed sites, saturation, way-below and classification.

mod json;
mod oracle;
mod site;
mod subset;
mod waybelow;

pub use json::{site_from_json, site_to_json, AxiomDoc, MeetDoc, SiteDoc};
pub use oracle::OracleSite;
pub use site::{localize, Axiom, FiniteSite, Localization, MeetStructure};
pub use subset::{canonical_cmp, sort_canonical, submasks, Elem, FinSubset};
pub use waybelow::{
    brute_force_way_below, classify, interpolate, is_spectral, is_stone, Classification,
    BRUTE_FORCE_BOUND,
};

#[cfg(test)]
mod tests;
