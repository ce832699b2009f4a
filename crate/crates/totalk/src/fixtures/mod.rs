//! The named invariants the verification suite runs on: the two
//! building-block algebras and their bonded-limit pairs, the extension
//! story, and the boundary-counterexample pair, together with scales and
//! positivity cones.

mod bundles;
mod cones;
mod maps;

pub use bundles::{load_fixture, FixtureBundle, FixtureName, NamedMap};
pub use cones::{cone_membership, total_cone_membership, ConeSpec, TotalElement};
pub use maps::{
    bold_q, bold_z, eta_map, gamma_map, omega_graded, omega_map, zeta_map,
    omega_level as omega_level_map, phi_level as phi_level_map,
};

use crate::groupexpr::numutil;
use num_bigint::BigInt;

/// `l_k`: the odd part of `k`.
pub fn l(k: u64) -> u64 {
    numutil::odd_part(k)
}

/// `l_{j!}`: the odd part of `j!`.
pub fn l_factorial(j: u64) -> BigInt {
    numutil::odd_part_factorial(j)
}

pub type Result<T> = crate::groupexpr::Result<T>;
