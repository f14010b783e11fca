//! Computable point-free topology over finite and oracle-backed sites.
//!
//! Sites are given by a base, a preorder and a localised axiom-set; every cover
//! question is answered by saturation. Geometric theories compile to presented
//! sites, and the patch, Lawson, Vietoris, lower, Scott and de Groot
//! constructions are theory transformers over finite sites.

pub mod core;
pub mod error;
pub mod examples;

pub use error::{Error, Result};
pub mod located;
pub mod theory;
pub mod construct;
pub mod subtop;
pub mod verify;
