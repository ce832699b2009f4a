//! Structured group expressions: finitely generated parts, dyadic rationals,
//! rationals, tail products, direct sums, and supported quotients.

use super::hom::Hom;
use super::{ExprError, Result};
use crate::abgroup::FgAbGroup;
use num_bigint::BigInt;

/// Coordinate index set of a tail product.
///
/// Coordinates are enumerated into "positions" `1, 2, 3, …` so that one rule
/// representation serves both sets: `NPlus` enumerates `1, 2, 3, …`
/// identically, `ZNonzero` interleaves `-1, +1, -2, +2, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    NPlus,
    ZNonzero,
}

impl IndexSet {
    /// Position of a coordinate (1-based).
    pub fn position(&self, coord: i64) -> Result<u64> {
        match self {
            IndexSet::NPlus => {
                if coord <= 0 {
                    return Err(ExprError::ShapeMismatch(format!(
                        "coordinate {} is not a positive index",
                        coord
                    )));
                }
                Ok(coord as u64)
            }
            IndexSet::ZNonzero => {
                if coord == 0 {
                    return Err(ExprError::ShapeMismatch("coordinate 0 is not indexable".into()));
                }
                let a = coord.unsigned_abs();
                Ok(if coord < 0 { 2 * a - 1 } else { 2 * a })
            }
        }
    }

    /// Coordinate at a position (inverse of [`IndexSet::position`]).
    pub fn coordinate(&self, position: u64) -> i64 {
        assert!(position >= 1, "positions are 1-based");
        match self {
            IndexSet::NPlus => position as i64,
            IndexSet::ZNonzero => {
                let j = position.div_ceil(2) as i64;
                if position % 2 == 1 {
                    -j
                } else {
                    j
                }
            }
        }
    }
}

/// The eventually-formulaic part of a coordinate rule or coordinate family.
#[derive(Debug, Clone, PartialEq)]
pub enum TailMaps {
    /// `maps[(p - offset) mod maps.len()]`, period = length.
    Periodic(Vec<Hom>),
    /// Position `p` carries `l_{⌈p/2⌉!} · map` (odd part of the factorial).
    LFact(Box<Hom>),
}

impl TailMaps {
    pub fn period(&self) -> Option<u64> {
        match self {
            TailMaps::Periodic(maps) => Some(maps.len() as u64),
            TailMaps::LFact(_) => None,
        }
    }

    /// The map at offset `k` from the start of the tail, as `(coefficient, hom)`.
    pub fn at_offset(&self, k: u64, position: u64) -> (BigInt, &Hom) {
        match self {
            TailMaps::Periodic(maps) => {
                let idx = (k % maps.len() as u64) as usize;
                (BigInt::from(1), &maps[idx])
            }
            TailMaps::LFact(map) => {
                (super::numutil::odd_part_factorial(position.div_ceil(2)), map)
            }
        }
    }
}

/// The declared rule of a tail product: positions `p < start` are
/// unconstrained (their default value is zero), positions in the head window
/// carry the listed maps, and positions beyond follow the tail family.
#[derive(Debug, Clone, PartialEq)]
pub struct TailRule {
    pub start: u64,
    pub head: Vec<Hom>,
    pub tail: TailMaps,
}

impl TailRule {
    pub fn new(start: u64, head: Vec<Hom>, tail: TailMaps) -> Self {
        assert!(start >= 1, "rule start is 1-based");
        TailRule { start, head, tail }
    }

    /// Constant rule from `start` onwards.
    pub fn constant(start: u64, map: Hom) -> Self {
        TailRule::new(start, vec![], TailMaps::Periodic(vec![map]))
    }

    /// Rule map at a position, with its integer coefficient; `None` below the
    /// start (where the default coordinate value is zero).
    pub fn at(&self, position: u64) -> Option<(BigInt, &Hom)> {
        if position < self.start {
            return None;
        }
        let k = position - self.start;
        if (k as usize) < self.head.len() {
            return Some((BigInt::from(1), &self.head[k as usize]));
        }
        Some(self.tail.at_offset(k - self.head.len() as u64, position))
    }

    /// First position of the eventually-formulaic part.
    pub fn settled_from(&self) -> u64 {
        self.start + self.head.len() as u64
    }

    pub fn period(&self) -> Option<u64> {
        self.tail.period()
    }
}

/// A tail product: the subgroup of `base ⊕ ∏ component` of tuples whose
/// coordinates eventually follow the rule applied to the base entry.
#[derive(Debug, Clone, PartialEq)]
pub struct TailProductData {
    pub base: GroupExpr,
    pub component: GroupExpr,
    pub rule: TailRule,
    pub index: IndexSet,
}

/// A quotient `ambient / sub` for the supported pairs: the sub must embed
/// payload-wise with decidable membership (dyadic inside rational shapes).
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientData {
    pub ambient: GroupExpr,
    pub sub: GroupExpr,
}

/// A structured abelian group.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupExpr {
    Fg(FgAbGroup),
    /// Dyadic rationals `Z[1/2]`.
    Dyadic,
    /// The rationals `Q`.
    Rational,
    DirectSum(Vec<GroupExpr>),
    TailProduct(Box<TailProductData>),
    Quotient(Box<QuotientData>),
}

impl GroupExpr {
    pub fn trivial() -> Self {
        GroupExpr::Fg(FgAbGroup::trivial())
    }

    pub fn cyclic(n: u64) -> Self {
        GroupExpr::Fg(FgAbGroup::cyclic(n))
    }

    pub fn free(rank: usize) -> Self {
        GroupExpr::Fg(FgAbGroup::free(rank))
    }

    pub fn sum(parts: Vec<GroupExpr>) -> Self {
        GroupExpr::DirectSum(parts)
    }

    pub fn tail_product(
        base: GroupExpr,
        component: GroupExpr,
        rule: TailRule,
        index: IndexSet,
    ) -> Self {
        GroupExpr::TailProduct(Box::new(TailProductData { base, component, rule, index }))
    }

    /// Build a quotient after validating the pair is supported.
    pub fn quotient(ambient: GroupExpr, sub: GroupExpr) -> Result<Self> {
        if !supported_quotient(&ambient, &sub) {
            return Err(ExprError::UnsupportedKind(format!(
                "unsupported quotient pair: {:?} / {:?}",
                kind_name(&ambient),
                kind_name(&sub)
            )));
        }
        Ok(GroupExpr::Quotient(Box::new(QuotientData { ambient, sub })))
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            GroupExpr::Fg(g) => g.is_trivial(),
            GroupExpr::DirectSum(parts) => parts.iter().all(GroupExpr::is_trivial),
            GroupExpr::TailProduct(t) => t.base.is_trivial() && t.component.is_trivial(),
            _ => false,
        }
    }

    /// Uniquely divisible in every coordinate (so tensoring with any cyclic
    /// group kills it).
    pub fn is_divisible(&self) -> bool {
        match self {
            GroupExpr::Fg(g) => g.is_trivial(),
            GroupExpr::Dyadic => false,
            GroupExpr::Rational => true,
            GroupExpr::DirectSum(parts) => parts.iter().all(GroupExpr::is_divisible),
            GroupExpr::TailProduct(t) => t.base.is_divisible() && t.component.is_divisible(),
            GroupExpr::Quotient(q) => q.ambient.is_divisible(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        match self {
            GroupExpr::Fg(g) => g.torsion().is_empty(),
            GroupExpr::Dyadic | GroupExpr::Rational => true,
            GroupExpr::DirectSum(parts) => parts.iter().all(GroupExpr::is_torsion_free),
            GroupExpr::TailProduct(t) => {
                t.base.is_torsion_free() && t.component.is_torsion_free()
            }
            // quotients of our supported pairs (rational mod dyadic shapes)
            // are torsion groups when nontrivial
            GroupExpr::Quotient(_) => false,
        }
    }

    /// Exponent of the group when it is a bounded torsion group.
    pub fn bounded_exponent(&self) -> Option<BigInt> {
        match self {
            GroupExpr::Fg(g) => {
                if g.free_rank() > 0 {
                    None
                } else {
                    Some(g.torsion_exponent())
                }
            }
            GroupExpr::Dyadic | GroupExpr::Rational => None,
            GroupExpr::DirectSum(parts) => {
                let mut e = BigInt::from(1);
                for p in parts {
                    let pe = p.bounded_exponent()?;
                    e = num_integer::lcm(e, pe);
                }
                Some(e)
            }
            GroupExpr::TailProduct(t) => {
                let a = t.base.bounded_exponent()?;
                let b = t.component.bounded_exponent()?;
                Some(num_integer::lcm(a, b))
            }
            GroupExpr::Quotient(_) => None,
        }
    }

    /// Generator orders when the group is a finite direct sum of f.g. pieces
    /// (`0` marks a free generator); `None` for structured kinds.
    pub fn flat_orders(&self) -> Option<Vec<BigInt>> {
        match self {
            GroupExpr::Fg(g) => {
                let mut v: Vec<BigInt> = g.torsion().to_vec();
                v.extend(std::iter::repeat_n(BigInt::from(0), g.free_rank()));
                Some(v)
            }
            GroupExpr::DirectSum(parts) => {
                let mut v = Vec::new();
                for p in parts {
                    v.extend(p.flat_orders()?);
                }
                Some(v)
            }
            _ => None,
        }
    }
}

pub(super) fn kind_name(g: &GroupExpr) -> &'static str {
    match g {
        GroupExpr::Fg(_) => "fg",
        GroupExpr::Dyadic => "dyadic",
        GroupExpr::Rational => "rational",
        GroupExpr::DirectSum(_) => "sum",
        GroupExpr::TailProduct(_) => "tail-product",
        GroupExpr::Quotient(_) => "quotient",
    }
}

/// Quotient pairs with a decidable membership of the sub inside the ambient:
/// `Q / Z[1/2]` and tail products of rationals over matching dyadic tails.
pub fn supported_quotient(ambient: &GroupExpr, sub: &GroupExpr) -> bool {
    match (ambient, sub) {
        (GroupExpr::Rational, GroupExpr::Dyadic) => true,
        (GroupExpr::TailProduct(a), GroupExpr::TailProduct(s)) => {
            a.index == s.index
                && supported_quotient(&a.base, &s.base)
                && supported_quotient(&a.component, &s.component)
                && rules_agree_through_embedding(&a.rule, &s.rule)
        }
        _ => false,
    }
}

/// The two rules must be the same formula read over the two coefficient
/// domains (the scalar content must match literally).
fn rules_agree_through_embedding(ambient: &TailRule, sub: &TailRule) -> bool {
    if ambient.start != sub.start || ambient.head.len() != sub.head.len() {
        return false;
    }
    let heads_match = ambient
        .head
        .iter()
        .zip(&sub.head)
        .all(|(a, s)| a.scalar_content() == s.scalar_content() && a.scalar_content().is_some());
    if !heads_match {
        return false;
    }
    match (&ambient.tail, &sub.tail) {
        (TailMaps::Periodic(a), TailMaps::Periodic(s)) => {
            a.len() == s.len()
                && a.iter().zip(s).all(|(x, y)| {
                    x.scalar_content().is_some() && x.scalar_content() == y.scalar_content()
                })
        }
        (TailMaps::LFact(a), TailMaps::LFact(s)) => {
            a.scalar_content().is_some() && a.scalar_content() == s.scalar_content()
        }
        _ => false,
    }
}
