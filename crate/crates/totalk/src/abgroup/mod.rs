//! Exact integer linear algebra over finitely generated abelian groups.
//!
//! Everything here is arbitrary precision and total: matrices are dense
//! `BigInt` matrices, groups are stored in invariant-factor normal form, and
//! homomorphisms are matrices on canonical generators, checked for
//! well-definedness at construction.

mod group;
mod hom;
mod matrix;

pub use group::{cokernel_presentation, tensor_tor_cyclic, FgAbGroup, SubgroupPresentation, TensorTor};
pub use hom::{enumerate_automorphisms, inclusion_hom, is_exact_at, kernel_image, ExactnessVerdict, FgHom};
pub use matrix::{in_column_span, invert_unimodular, kernel_basis, lattice_basis, smith_normal_form, solve, IntMatrix, SmithNormalForm};

use thiserror::Error;

/// Errors raised by group and homomorphism constructions.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AbError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("matrix does not respect torsion relations: {0}")]
    WellDefinedness(String),
    #[error("group has free rank {0} > 0, automorphism enumeration needs a finite group")]
    InfiniteGroup(usize),
    #[error("group order {order} exceeds bound {bound}")]
    BoundExceeded { order: String, bound: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, AbError>;
