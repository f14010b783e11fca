use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} outside base of size {1}")]
    OutOfBase(u32, usize),
    #[error("{what}: size {size} exceeds bound {bound}")]
    Bound {
        what: String,
        size: usize,
        bound: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("classification: {0}")]
    Classification(String),
    #[error("no meet structure on site; spectral/stone undefined")]
    NoMeetStructure,
    #[error("invalid meet structure: {0}")]
    BadMeet(String),
    #[error("subset is not located")]
    NotLocated,
    #[error("relation does not respect axiom {0}")]
    Respect(String),
    #[error("subtopologies have different parents")]
    ParentMismatch,
    #[error("not a model: {0}")]
    NotModel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid poset or lattice: {0}")]
    Order(String),
    #[error("internal disagreement: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bound(what: impl Into<String>, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::Bound {
            what: what.into(),
            size,
            bound,
        })
    } else {
        Ok(())
    }
}
