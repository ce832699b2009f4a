//! Positivity cones of the fixtures and their membership predicates.

use super::Result;
use crate::groupexpr::element::{self, GroupElement, Payload};
use crate::groupexpr::{ExprError, GroupExpr};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// The positivity structures carried by fixture bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSpec {
    /// Everything is positive (unordered or unspecified data).
    Trivial,
    /// All coordinates nonnegative in the ordered base.
    ProductPositive,
    /// First (rational) coordinate strictly positive, or the zero element.
    StrictPositiveOrZero,
    /// The extension cone on `K_0 = Q ⊕ boldQ`: strictly positive image in
    /// the quotient, or the image of a positive ideal class.
    ExtensionCone,
    /// The graded extension cone: conditions on the whole tuple
    /// `(x, u, ⊕(s_{n,0}, s_{n,1}))`.
    TotalExtensionCone,
}

impl ConeSpec {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConeSpec::Trivial => "trivial",
            ConeSpec::ProductPositive => "product-positive",
            ConeSpec::StrictPositiveOrZero => "strict-positive-or-zero",
            ConeSpec::ExtensionCone => "extension-cone",
            ConeSpec::TotalExtensionCone => "total-extension-cone",
        }
    }
}

/// An element of a graded container: the two integral classes plus finitely
/// many nonzero coefficient classes.
#[derive(Debug, Clone)]
pub struct TotalElement {
    pub k0: GroupElement,
    pub k1: GroupElement,
    /// Sparse coefficient entries `(j, n) ↦ s_{n,j}`; missing entries are 0.
    pub coeff: BTreeMap<(u8, u64), GroupElement>,
}

impl TotalElement {
    pub fn from_k0(k0: GroupElement, k1: GroupElement) -> Self {
        TotalElement { k0, k1, coeff: BTreeMap::new() }
    }

    pub fn with_coeff(mut self, j: u8, n: u64, s: GroupElement) -> Self {
        self.coeff.insert((j, n), s);
        self
    }
}

/// Membership of a `K_0`-class in a cone.
pub fn cone_membership(x: &GroupElement, cone: ConeSpec) -> Result<bool> {
    match cone {
        ConeSpec::Trivial => Ok(true),
        ConeSpec::ProductPositive => element::is_coordinatewise_nonneg(&x.group, &x.payload),
        ConeSpec::StrictPositiveOrZero => {
            let (first, _) = split_first_rational(x)?;
            if first.is_positive() {
                return Ok(true);
            }
            x.is_zero()
        }
        ConeSpec::ExtensionCone => extension_positive(x),
        ConeSpec::TotalExtensionCone => Err(ExprError::ShapeMismatch(
            "the graded cone takes a full tuple; use total_cone_membership".into(),
        )),
    }
}

/// Membership of a graded tuple in the graded extension cone. The three
/// defining conditions:
///
/// 1. the rational coordinate of `x` is strictly positive;
/// 2. `x = (0, y)` with `y` a positive ideal class whose base entry is
///    strictly positive;
/// 3. `x = (0, y)` with `y` a positive ideal class with zero base entry, and
///    the torsion class and every coefficient class vanish.
pub fn total_cone_membership(t: &TotalElement) -> Result<bool> {
    let (first, ideal_part) = split_first_rational(&t.k0)?;
    if first.is_positive() {
        return Ok(true); // condition (1)
    }
    if !first.is_zero() {
        return Ok(false);
    }
    // x = (0, y): y must be a positive class of the ideal
    let Some((base_positive, base_zero, ideal_positive)) = ideal_class_shape(&ideal_part)? else {
        return Ok(false);
    };
    if !ideal_positive {
        return Ok(false);
    }
    if base_positive {
        return Ok(true); // condition (2)
    }
    if !base_zero {
        return Ok(false);
    }
    // condition (3): all other graded entries must vanish
    if !t.k1.is_zero()? {
        return Ok(false);
    }
    for s in t.coeff.values() {
        if !s.is_zero()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The extension cone at the `K_0` level.
fn extension_positive(x: &GroupElement) -> Result<bool> {
    let (first, ideal_part) = split_first_rational(x)?;
    if first.is_positive() {
        return Ok(true);
    }
    if !first.is_zero() {
        return Ok(false);
    }
    match ideal_class_shape(&ideal_part)? {
        Some((_, _, positive)) => Ok(positive),
        None => Ok(false),
    }
}

/// Split a direct-sum class `(q, y)` into the rational coordinate and the
/// second-summand element.
fn split_first_rational(x: &GroupElement) -> Result<(num_rational::BigRational, GroupElement)> {
    let GroupExpr::DirectSum(parts) = &x.group else {
        return Err(ExprError::ShapeMismatch("expected a two-summand class".into()));
    };
    let Payload::Tuple(vals) = &x.payload else {
        return Err(ExprError::ShapeMismatch("expected a tuple payload".into()));
    };
    if parts.len() != 2 {
        return Err(ExprError::ShapeMismatch("expected a two-summand class".into()));
    }
    let Payload::Ratio(q) = &vals[0] else {
        return Err(ExprError::ShapeMismatch("first summand must be rational".into()));
    };
    let y = GroupElement { group: parts[1].clone(), payload: vals[1].clone() };
    Ok((q.clone(), y))
}

/// For an element of the rational tail (the ambient of the ideal classes):
/// is it a class of the dyadic subgroup, and if so, is its base strictly
/// positive / zero, and is the whole class coordinatewise nonnegative?
///
/// Returns `None` when the element is not an ideal class at all.
fn ideal_class_shape(y: &GroupElement) -> Result<Option<(bool, bool, bool)>> {
    let GroupExpr::TailProduct(t) = &y.group else {
        return Err(ExprError::ShapeMismatch("expected a tail-product class".into()));
    };
    let Payload::Tail { base, overrides } = &y.payload else {
        return Err(ExprError::ShapeMismatch("expected a tail payload".into()));
    };
    // in the image of the dyadic subgroup?
    let Payload::Ratio(b) = base.as_ref() else {
        return Err(ExprError::ShapeMismatch("tail base must be rational".into()));
    };
    if !crate::groupexpr::numutil::is_dyadic(b) {
        return Ok(None);
    }
    for v in overrides.values() {
        let Payload::Ratio(r) = v else {
            return Err(ExprError::ShapeMismatch("tail coordinates must be rational".into()));
        };
        if !crate::groupexpr::numutil::is_dyadic(r) {
            return Ok(None);
        }
    }
    let positive = element::is_coordinatewise_nonneg(&y.group, &y.payload)?;
    let _ = t;
    Ok(Some((b.is_positive(), b.is_zero(), positive)))
}
