//! Structured, possibly non-finitely-generated groups with exact element
//! arithmetic, decidable membership, and a closed class of homomorphism
//! expressions with decidable equality.

pub mod element;
pub mod expr;
pub mod hom;
pub mod numutil;
pub mod reduce;

pub use element::{GroupElement, Payload};
pub use expr::{GroupExpr, IndexSet, QuotientData, TailMaps, TailProductData, TailRule};
pub use hom::{homs_equal, CoordMaps, Hom, HomEquality, HomKind};
pub use reduce::{coeff_reduce, CoeffReduction};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("elements belong to different groups")]
    OwnerMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("payload is not an element: {0}")]
    NotAnElement(String),
    #[error("not a homomorphism: {0}")]
    NotAHom(String),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("comparison left the decidable class: {0}")]
    Undecidable(String),
}

pub type Result<T> = std::result::Result<T, ExprError>;
