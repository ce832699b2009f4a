//! Exact computation with graded K-theory invariants of abelian groups.
//!
//! The crate is organized in layers:
//!
//! * [`abgroup`]: exact integer linear algebra over finitely generated
//!   abelian groups: Smith normal form, kernels/cokernels, tensor and Tor
//!   with cyclic groups, exactness tests, automorphism enumeration.
//! * [`groupexpr`]: structured (possibly non-finitely-generated) groups:
//!   dyadic rationals, rationals, tail-product subgroups of `C ⊕ ∏ Gₘ`,
//!   quotients; exact element arithmetic and decidable homomorphism
//!   equality for a closed class of map expressions.
//! * [`lambda`]: graded K-theory containers with their coefficient
//!   operations (reduction, Bockstein boundary, coefficient change) and
//!   the checks: six-term exactness, square commutativity, operation
//!   compatibility.
//! * [`fixtures`]: the named inductive-limit and extension invariants the
//!   verification suite runs on, with their scales and positivity cones.
//! * [`verify`]: the finite verification procedures and their reports.
//! * [`cli`]: JSON input documents, the command dispatcher, and report
//!   emission.

pub mod abgroup;
pub mod cli;
pub mod fixtures;
pub mod groupexpr;
pub mod lambda;
pub mod verify;
