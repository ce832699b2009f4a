//! Homomorphism expressions between structured groups: a closed class with
//! exact evaluation and decidable equality.
//!
//! Every coordinatewise family declares where it stabilizes and with what
//! period; equality is decided by evaluating both maps on a canonical probe
//! set wide enough to cover both stabilization windows plus one common
//! period.

use super::element::{
    self, canonicalize, coordinate_value, payload_eq, probes, scale, zero_payload, Payload,
};
use super::expr::{GroupExpr, TailMaps, TailRule};
use super::numutil;
use super::{ExprError, Result};
use crate::abgroup::{self, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Coordinate maps of a [`HomKind::CoordMap`]: position `p` carries
/// `head[p-1]` inside the head window and the tail family beyond it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordMaps {
    pub head: Vec<Hom>,
    pub tail: TailMaps,
}

impl CoordMaps {
    pub fn constant(map: Hom) -> Self {
        CoordMaps { head: vec![], tail: TailMaps::Periodic(vec![map]) }
    }

    /// Alternating family: odd positions carry `odd`, even positions `even`.
    pub fn alternating(odd: Hom, even: Hom) -> Self {
        CoordMaps { head: vec![], tail: TailMaps::Periodic(vec![odd, even]) }
    }

    pub fn at(&self, position: u64) -> (BigInt, &Hom) {
        assert!(position >= 1);
        let idx = position - 1;
        if (idx as usize) < self.head.len() {
            return (BigInt::one(), &self.head[idx as usize]);
        }
        self.tail.at_offset(idx - self.head.len() as u64, position)
    }

    fn period(&self) -> Result<u64> {
        self.tail.period().ok_or_else(|| {
            ExprError::Undecidable("factorial coordinate families are not comparable".into())
        })
    }
}

/// The closed class of homomorphism expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum HomKind {
    Zero,
    Identity,
    /// `x ↦ -x`.
    Negate,
    /// Multiplication by an exact rational, where it acts.
    ScalarMul(BigRational),
    /// Matrix on canonical generators of finite-generator groups
    /// (column `j` = image of generator `j`).
    Matrix(IntMatrix),
    /// Left-to-right composition: `[f, g]` is `g ∘ f`.
    Compose(Vec<Hom>),
    /// Blockwise map between direct sums of equal length.
    SumMap(Vec<Hom>),
    /// Inclusion of summand `i` into a direct sum.
    Inject(usize),
    /// Projection onto summand `i`.
    Project(usize),
    /// Componentwise map between tail products: the base map plus a declared
    /// coordinate family, verified natural against both rules from
    /// `natural_from` on.
    CoordMap { base: Box<Hom>, coords: CoordMaps, natural_from: u64 },
    /// `b ↦ (b, rule defaults)`.
    TailSection,
    /// `(b, coords) ↦ b`.
    TailBase,
    /// Component at a coordinate into the tail product.
    TailInject(i64),
    /// Reduction `G → G ⊗ Z_n` for base kinds (f.g., dyadic, rational).
    ModReduce(u64),
    /// Embedding of the `Tor(·, Z_n)` presentation back into the group as
    /// its n-torsion (quotient codomains only; f.g. cases use matrices).
    TorEmbed(u64),
    /// `ambient → ambient/sub`.
    QuotientMap,
    /// Payload-preserving inclusion (dyadic into rational shapes).
    CanonicalEmbed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hom {
    pub kind: HomKind,
    pub domain: GroupExpr,
    pub codomain: GroupExpr,
}

impl Hom {
    pub fn zero(domain: GroupExpr, codomain: GroupExpr) -> Hom {
        Hom { kind: HomKind::Zero, domain, codomain }
    }

    pub fn identity(g: GroupExpr) -> Hom {
        Hom { kind: HomKind::Identity, domain: g.clone(), codomain: g }
    }

    pub fn negation(g: GroupExpr) -> Hom {
        Hom { kind: HomKind::Negate, domain: g.clone(), codomain: g }
    }

    pub fn scalar_mul(g: GroupExpr, q: BigRational) -> Result<Hom> {
        if !scalar_acts(&g, &q) {
            return Err(ExprError::UnsupportedKind(format!(
                "scalar {} does not act on this group",
                q
            )));
        }
        Ok(Hom { kind: HomKind::ScalarMul(q), domain: g.clone(), codomain: g })
    }

    pub fn scalar_int(g: GroupExpr, c: i64) -> Hom {
        Hom {
            kind: HomKind::ScalarMul(BigRational::from(BigInt::from(c))),
            domain: g.clone(),
            codomain: g,
        }
    }

    /// Matrix map between finite-generator groups, checked for
    /// well-definedness against the torsion relations.
    pub fn matrix(domain: GroupExpr, codomain: GroupExpr, m: IntMatrix) -> Result<Hom> {
        let dorders = domain.flat_orders().ok_or_else(|| {
            ExprError::ShapeMismatch("matrix domain must have finite generators".into())
        })?;
        let corders = codomain.flat_orders().ok_or_else(|| {
            ExprError::ShapeMismatch("matrix codomain must have finite generators".into())
        })?;
        if m.rows() != corders.len() || m.cols() != dorders.len() {
            return Err(ExprError::ShapeMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                corders.len(),
                dorders.len()
            )));
        }
        for (j, dj) in dorders.iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            for (i, ei) in corders.iter().enumerate() {
                let v = dj * &m[(i, j)];
                let ok = if ei.is_zero() { v.is_zero() } else { v.mod_floor(ei).is_zero() };
                if !ok {
                    return Err(ExprError::NotAHom(format!(
                        "column {} is not killed by the generator order {}",
                        j, dj
                    )));
                }
            }
        }
        Ok(Hom { kind: HomKind::Matrix(m), domain, codomain })
    }

    pub fn matrix_i64(domain: GroupExpr, codomain: GroupExpr, entries: &[i64]) -> Result<Hom> {
        let rows = codomain.flat_orders().map(|o| o.len()).unwrap_or(0);
        let cols = domain.flat_orders().map(|o| o.len()).unwrap_or(0);
        Hom::matrix(domain, codomain, IntMatrix::from_i64(rows, cols, entries))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        if self.codomain != other.domain {
            return Err(ExprError::DomainMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        let mut parts = Vec::new();
        for h in [self, other] {
            match &h.kind {
                HomKind::Compose(inner) => parts.extend(inner.iter().cloned()),
                HomKind::Identity => {}
                _ => parts.push(h.clone()),
            }
        }
        if parts.is_empty() {
            return Ok(Hom::identity(self.domain.clone()));
        }
        if parts.len() == 1 && parts[0].domain == self.domain && parts[0].codomain == other.codomain
        {
            return Ok(parts.into_iter().next().unwrap());
        }
        Ok(Hom {
            kind: HomKind::Compose(parts),
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
        })
    }

    pub fn negated(&self) -> Hom {
        self.then(&Hom::negation(self.codomain.clone())).expect("negation composes")
    }

    pub fn sum_map(domain: GroupExpr, codomain: GroupExpr, parts: Vec<Hom>) -> Result<Hom> {
        let (GroupExpr::DirectSum(d), GroupExpr::DirectSum(c)) = (&domain, &codomain) else {
            return Err(ExprError::ShapeMismatch("blockwise maps need direct sums".into()));
        };
        if d.len() != parts.len() || c.len() != parts.len() {
            return Err(ExprError::ShapeMismatch("blockwise length mismatch".into()));
        }
        for (i, part) in parts.iter().enumerate() {
            if part.domain != d[i] || part.codomain != c[i] {
                return Err(ExprError::DomainMismatch(format!(
                    "block {} endpoints do not match the sums",
                    i
                )));
            }
        }
        Ok(Hom { kind: HomKind::SumMap(parts), domain, codomain })
    }

    pub fn inject(sum: GroupExpr, index: usize) -> Result<Hom> {
        let GroupExpr::DirectSum(parts) = &sum else {
            return Err(ExprError::ShapeMismatch("injection target must be a sum".into()));
        };
        let part = parts
            .get(index)
            .ok_or_else(|| ExprError::ShapeMismatch(format!("no summand {}", index)))?
            .clone();
        Ok(Hom { kind: HomKind::Inject(index), domain: part, codomain: sum })
    }

    pub fn project(sum: GroupExpr, index: usize) -> Result<Hom> {
        let GroupExpr::DirectSum(parts) = &sum else {
            return Err(ExprError::ShapeMismatch("projection source must be a sum".into()));
        };
        let part = parts
            .get(index)
            .ok_or_else(|| ExprError::ShapeMismatch(format!("no summand {}", index)))?
            .clone();
        Ok(Hom { kind: HomKind::Project(index), domain: sum, codomain: part })
    }

    /// Componentwise map between tail products. Verifies that the coordinate
    /// family intertwines the two rules from some finite position on; the
    /// verified position is stored for evaluation.
    pub fn coord_map(
        domain: GroupExpr,
        codomain: GroupExpr,
        base: Hom,
        coords: CoordMaps,
    ) -> Result<Hom> {
        let (GroupExpr::TailProduct(d), GroupExpr::TailProduct(c)) = (&domain, &codomain) else {
            return Err(ExprError::ShapeMismatch(
                "componentwise maps need tail products on both sides".into(),
            ));
        };
        if d.index != c.index {
            return Err(ExprError::ShapeMismatch("index sets differ".into()));
        }
        if base.domain != d.base || base.codomain != c.base {
            return Err(ExprError::DomainMismatch("base map endpoints do not match".into()));
        }
        for (p, h) in coords.head.iter().enumerate() {
            if h.domain != d.component || h.codomain != c.component {
                return Err(ExprError::DomainMismatch(format!(
                    "coordinate map at position {} has wrong endpoints",
                    p + 1
                )));
            }
        }
        let tail_maps: Vec<&Hom> = match &coords.tail {
            TailMaps::Periodic(maps) => maps.iter().collect(),
            TailMaps::LFact(map) => vec![map.as_ref()],
        };
        for h in tail_maps {
            if h.domain != d.component || h.codomain != c.component {
                return Err(ExprError::DomainMismatch(
                    "tail coordinate maps have wrong endpoints".into(),
                ));
            }
        }
        let natural_from = verify_naturality(d, c, &base, &coords)?;
        Ok(Hom {
            kind: HomKind::CoordMap { base: Box::new(base), coords, natural_from },
            domain,
            codomain,
        })
    }

    pub fn tail_section(t: GroupExpr) -> Result<Hom> {
        let GroupExpr::TailProduct(data) = &t else {
            return Err(ExprError::ShapeMismatch("section needs a tail product".into()));
        };
        Ok(Hom { kind: HomKind::TailSection, domain: data.base.clone(), codomain: t })
    }

    pub fn tail_base(t: GroupExpr) -> Result<Hom> {
        let GroupExpr::TailProduct(data) = &t else {
            return Err(ExprError::ShapeMismatch("base projection needs a tail product".into()));
        };
        Ok(Hom { kind: HomKind::TailBase, domain: t.clone(), codomain: data.base.clone() })
    }

    pub fn tail_inject(t: GroupExpr, coord: i64) -> Result<Hom> {
        let GroupExpr::TailProduct(data) = &t else {
            return Err(ExprError::ShapeMismatch("coordinate injection needs a tail product".into()));
        };
        data.index.position(coord)?;
        Ok(Hom { kind: HomKind::TailInject(coord), domain: data.component.clone(), codomain: t })
    }

    pub fn quotient_map(q: GroupExpr) -> Result<Hom> {
        let GroupExpr::Quotient(data) = &q else {
            return Err(ExprError::ShapeMismatch("quotient map needs a quotient".into()));
        };
        Ok(Hom { kind: HomKind::QuotientMap, domain: data.ambient.clone(), codomain: q })
    }

    pub fn canonical_embed(domain: GroupExpr, codomain: GroupExpr) -> Result<Hom> {
        if !embeddable(&domain, &codomain) {
            return Err(ExprError::UnsupportedKind(
                "no canonical payload embedding between these groups".into(),
            ));
        }
        Ok(Hom { kind: HomKind::CanonicalEmbed, domain, codomain })
    }

    /// The scalar this map multiplies by, when it is one.
    pub fn scalar_content(&self) -> Option<BigRational> {
        match &self.kind {
            HomKind::Zero => Some(BigRational::zero()),
            HomKind::Identity | HomKind::CanonicalEmbed => Some(BigRational::one()),
            HomKind::Negate => Some(-BigRational::one()),
            HomKind::ScalarMul(q) => Some(q.clone()),
            HomKind::Compose(parts) => {
                let mut acc = BigRational::one();
                for p in parts {
                    acc *= p.scalar_content()?;
                }
                Some(acc)
            }
            _ => None,
        }
    }

    pub fn is_zero_kind(&self) -> bool {
        matches!(self.kind, HomKind::Zero)
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group != self.domain {
            return Err(ExprError::DomainMismatch(
                "element does not belong to the map's domain".into(),
            ));
        }
        let payload = apply(self, &x.payload)?;
        Ok(GroupElement { group: self.codomain.clone(), payload })
    }
}

use super::element::GroupElement;

fn scalar_acts(g: &GroupExpr, q: &BigRational) -> bool {
    if q.is_integer() {
        return true;
    }
    match g {
        GroupExpr::Fg(fg) => fg.is_trivial(),
        GroupExpr::Dyadic => numutil::is_dyadic(q),
        GroupExpr::Rational => true,
        GroupExpr::DirectSum(parts) => parts.iter().all(|p| scalar_acts(p, q)),
        GroupExpr::TailProduct(t) => scalar_acts(&t.base, q) && scalar_acts(&t.component, q),
        GroupExpr::Quotient(d) => scalar_acts(&d.ambient, q),
    }
}

fn embeddable(domain: &GroupExpr, codomain: &GroupExpr) -> bool {
    match (domain, codomain) {
        (GroupExpr::Dyadic, GroupExpr::Rational) => true,
        (GroupExpr::Dyadic, GroupExpr::Dyadic) | (GroupExpr::Rational, GroupExpr::Rational) => true,
        (GroupExpr::Fg(fg), GroupExpr::Dyadic | GroupExpr::Rational) => {
            fg.free_rank() == 1 && fg.torsion().is_empty()
        }
        (GroupExpr::TailProduct(d), GroupExpr::TailProduct(c)) => {
            d.index == c.index
                && embeddable(&d.base, &c.base)
                && embeddable(&d.component, &c.component)
                && d.rule.start == c.rule.start
                && d.rule.head.len() == c.rule.head.len()
                && scalar_rules_match(&d.rule, &c.rule)
        }
        (GroupExpr::DirectSum(d), GroupExpr::DirectSum(c)) => {
            d.len() == c.len() && d.iter().zip(c).all(|(a, b)| embeddable(a, b))
        }
        _ => false,
    }
}

fn scalar_rules_match(d: &TailRule, c: &TailRule) -> bool {
    let scal = |h: &Hom| h.scalar_content();
    let heads = d.head.iter().zip(&c.head).all(|(a, b)| {
        let (sa, sb) = (scal(a), scal(b));
        sa.is_some() && sa == sb
    });
    if !heads {
        return false;
    }
    match (&d.tail, &c.tail) {
        (TailMaps::Periodic(a), TailMaps::Periodic(b)) => {
            a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| {
                    let (sx, sy) = (scal(x), scal(y));
                    sx.is_some() && sx == sy
                })
        }
        (TailMaps::LFact(a), TailMaps::LFact(b)) => {
            let (sa, sb) = (scal(a), scal(b));
            sa.is_some() && sa == sb
        }
        _ => false,
    }
}

/// Exact evaluation of a homomorphism expression on a payload of its domain.
pub fn apply(h: &Hom, x: &Payload) -> Result<Payload> {
    match &h.kind {
        HomKind::Zero => Ok(zero_payload(&h.codomain)),
        HomKind::Identity => Ok(x.clone()),
        HomKind::Negate => element::neg(&h.domain, x),
        HomKind::ScalarMul(q) => scale(&h.domain, x, q),
        HomKind::Matrix(m) => {
            let coords = flatten_payload(&h.domain, x)?;
            let image = m.mul_vec(&coords);
            unflatten_payload(&h.codomain, &image)
        }
        HomKind::Compose(parts) => {
            let mut cur = x.clone();
            for part in parts {
                cur = apply(part, &cur)?;
            }
            Ok(cur)
        }
        HomKind::SumMap(parts) => {
            let Payload::Tuple(vals) = x else {
                return Err(ExprError::ShapeMismatch("tuple payload expected".into()));
            };
            let out: Result<Vec<Payload>> =
                parts.iter().zip(vals).map(|(h, v)| apply(h, v)).collect();
            Ok(Payload::Tuple(out?))
        }
        HomKind::Inject(i) => {
            let GroupExpr::DirectSum(parts) = &h.codomain else {
                return Err(ExprError::ShapeMismatch("sum codomain expected".into()));
            };
            let mut tuple: Vec<Payload> = parts.iter().map(zero_payload).collect();
            tuple[*i] = x.clone();
            Ok(Payload::Tuple(tuple))
        }
        HomKind::Project(i) => {
            let Payload::Tuple(vals) = x else {
                return Err(ExprError::ShapeMismatch("tuple payload expected".into()));
            };
            Ok(vals[*i].clone())
        }
        HomKind::CoordMap { base, coords, natural_from } => {
            let (GroupExpr::TailProduct(d), GroupExpr::TailProduct(c)) =
                (&h.domain, &h.codomain)
            else {
                return Err(ExprError::ShapeMismatch("tail products expected".into()));
            };
            let Payload::Tail { base: xbase, overrides } = x else {
                return Err(ExprError::ShapeMismatch("tail payload expected".into()));
            };
            let new_base = apply(base, xbase)?;
            // positions that may deviate from the codomain rule default:
            // everything below the verified naturality window, plus inputs
            // with explicit overrides
            let mut positions: Vec<u64> = (1..*natural_from).collect();
            for coord in overrides.keys() {
                let p = d.index.position(*coord)?;
                if p >= *natural_from {
                    positions.push(p);
                }
            }
            let mut out = BTreeMap::new();
            for p in positions {
                let coord = d.index.coordinate(p);
                let value = coordinate_value(d, x, coord)?;
                let (coef, map) = coords.at(p);
                let image = apply(map, &value)?;
                let image = scale(&c.component, &image, &BigRational::from(coef))?;
                let default = element::default_coordinate(c, &new_base, p)?;
                if !payload_eq(&c.component, &image, &default)? {
                    out.insert(coord, image);
                }
            }
            Ok(Payload::Tail { base: Box::new(new_base), overrides: out })
        }
        HomKind::TailSection => Ok(Payload::Tail {
            base: Box::new(x.clone()),
            overrides: BTreeMap::new(),
        }),
        HomKind::TailBase => {
            let Payload::Tail { base, .. } = x else {
                return Err(ExprError::ShapeMismatch("tail payload expected".into()));
            };
            Ok(base.as_ref().clone())
        }
        HomKind::TailInject(coord) => {
            let p = Payload::Tail {
                base: Box::new(zero_payload(match &h.codomain {
                    GroupExpr::TailProduct(t) => &t.base,
                    _ => return Err(ExprError::ShapeMismatch("tail codomain expected".into())),
                })),
                overrides: [(*coord, x.clone())].into_iter().collect(),
            };
            canonicalize(&h.codomain, &p)
        }
        HomKind::ModReduce(n) => mod_reduce_payload(&h.domain, &h.codomain, x, *n),
        HomKind::TorEmbed(n) => tor_embed_payload(&h.domain, &h.codomain, x, *n),
        HomKind::QuotientMap => Ok(Payload::Coset(Box::new(x.clone()))),
        HomKind::CanonicalEmbed => embed_payload(&h.domain, &h.codomain, x),
    }
}

fn flatten_payload(g: &GroupExpr, p: &Payload) -> Result<Vec<BigInt>> {
    match (g, p) {
        (GroupExpr::Fg(_), Payload::Fg(coords)) => Ok(coords.clone()),
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            let mut out = Vec::new();
            for (g, v) in parts.iter().zip(vals) {
                out.extend(flatten_payload(g, v)?);
            }
            Ok(out)
        }
        _ => Err(ExprError::ShapeMismatch("payload has no finite coordinates".into())),
    }
}

fn unflatten_payload(g: &GroupExpr, coords: &[BigInt]) -> Result<Payload> {
    fn take(g: &GroupExpr, coords: &[BigInt], at: &mut usize) -> Result<Payload> {
        match g {
            GroupExpr::Fg(fg) => {
                let n = fg.num_generators();
                let slice = coords
                    .get(*at..*at + n)
                    .ok_or_else(|| ExprError::ShapeMismatch("coordinate underflow".into()))?;
                *at += n;
                Ok(Payload::Fg(fg.canonicalize(slice)))
            }
            GroupExpr::DirectSum(parts) => {
                let mut vals = Vec::new();
                for part in parts {
                    vals.push(take(part, coords, at)?);
                }
                Ok(Payload::Tuple(vals))
            }
            _ => Err(ExprError::ShapeMismatch("group has no finite coordinates".into())),
        }
    }
    let mut at = 0;
    let out = take(g, coords, &mut at)?;
    if at != coords.len() {
        return Err(ExprError::ShapeMismatch("coordinate overflow".into()));
    }
    Ok(out)
}

fn mod_reduce_payload(domain: &GroupExpr, codomain: &GroupExpr, x: &Payload, n: u64) -> Result<Payload> {
    match (domain, x) {
        (GroupExpr::Fg(fg), Payload::Fg(coords)) => {
            let tt = abgroup::tensor_tor_cyclic(fg, n);
            let image = tt.reduction.mul_vec(coords);
            Ok(Payload::Fg(tt.tensor.canonicalize(&image)))
        }
        (GroupExpr::Dyadic, Payload::Ratio(r)) => {
            let l = numutil::odd_part(n);
            if l == 1 {
                return Ok(zero_payload(codomain));
            }
            let c = numutil::dyadic_mod(r, &BigInt::from(l))
                .ok_or_else(|| ExprError::NotAnElement("non-dyadic payload".into()))?;
            Ok(Payload::Fg(vec![c]))
        }
        (GroupExpr::Rational, Payload::Ratio(_)) => Ok(zero_payload(codomain)),
        _ => Err(ExprError::UnsupportedKind(
            "reduction is built structurally for composite groups".into(),
        )),
    }
}

/// Lift a payload of the reduced presentation of `sub` back to `sub` itself
/// (any choice of representative works, differences die in the quotient).
fn lift_reduced(reduced: &GroupExpr, sub: &GroupExpr, x: &Payload) -> Result<Payload> {
    match (reduced, sub, x) {
        (GroupExpr::Fg(_), GroupExpr::Dyadic | GroupExpr::Rational, Payload::Fg(coords)) => {
            let v = coords.first().cloned().unwrap_or_else(BigInt::zero);
            Ok(Payload::Ratio(BigRational::from(v)))
        }
        (GroupExpr::TailProduct(r), GroupExpr::TailProduct(s), Payload::Tail { base, overrides }) => {
            let base_l = lift_reduced(&r.base, &s.base, base)?;
            let mut out = BTreeMap::new();
            for (coord, v) in overrides {
                out.insert(*coord, lift_reduced(&r.component, &s.component, v)?);
            }
            Ok(Payload::Tail { base: Box::new(base_l), overrides: out })
        }
        _ => Err(ExprError::UnsupportedKind("no lift for this reduced payload".into())),
    }
}

fn tor_embed_payload(domain: &GroupExpr, codomain: &GroupExpr, x: &Payload, n: u64) -> Result<Payload> {
    match codomain {
        GroupExpr::Quotient(q) => {
            // domain is the tensor presentation of the subgroup; lift, divide
            // by n inside the ambient group, and pass to the quotient
            let lifted = lift_reduced(domain, &q.sub, x)?;
            let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
            let divided = scale(&q.ambient, &lifted, &inv_n)?;
            Ok(Payload::Coset(Box::new(divided)))
        }
        _ => Err(ExprError::UnsupportedKind(
            "torsion embeddings are built as matrices for f.g. codomains".into(),
        )),
    }
}

fn embed_payload(domain: &GroupExpr, codomain: &GroupExpr, x: &Payload) -> Result<Payload> {
    match (domain, codomain, x) {
        (GroupExpr::Dyadic, GroupExpr::Rational | GroupExpr::Dyadic, Payload::Ratio(_))
        | (GroupExpr::Rational, GroupExpr::Rational, Payload::Ratio(_)) => Ok(x.clone()),
        (GroupExpr::Fg(_), GroupExpr::Dyadic | GroupExpr::Rational, Payload::Fg(coords)) => {
            let v = coords.first().cloned().unwrap_or_else(BigInt::zero);
            Ok(Payload::Ratio(BigRational::from(v)))
        }
        (GroupExpr::TailProduct(d), GroupExpr::TailProduct(c), Payload::Tail { base, overrides }) => {
            let base_e = embed_payload(&d.base, &c.base, base)?;
            let mut out = BTreeMap::new();
            for (coord, v) in overrides {
                out.insert(*coord, embed_payload(&d.component, &c.component, v)?);
            }
            Ok(Payload::Tail { base: Box::new(base_e), overrides: out })
        }
        (GroupExpr::DirectSum(d), GroupExpr::DirectSum(c), Payload::Tuple(vals)) => {
            let out: Result<Vec<Payload>> = d
                .iter()
                .zip(c.iter().zip(vals))
                .map(|(dg, (cg, v))| embed_payload(dg, cg, v))
                .collect();
            Ok(Payload::Tuple(out?))
        }
        _ => Err(ExprError::UnsupportedKind("no canonical embedding for this payload".into())),
    }
}

/// Verify `coords(p) ∘ rule_dom(p) = rule_cod(p) ∘ base` for all `p` beyond a
/// finite position, returning that position.
fn verify_naturality(
    d: &super::expr::TailProductData,
    c: &super::expr::TailProductData,
    base: &Hom,
    coords: &CoordMaps,
) -> Result<u64> {
    let candidate = d
        .rule
        .settled_from()
        .max(c.rule.settled_from())
        .max(coords.head.len() as u64 + 1);
    let base_probes = probes(&d.base, 1)?;

    let check_at = |p: u64| -> Result<bool> {
        for b in &base_probes {
            // left: coordinate map applied to the domain default at p
            let lhs = match d.rule.at(p) {
                None => zero_payload(&c.component),
                Some((coef, rule_map)) => {
                    let v = apply(rule_map, b)?;
                    let v = scale(&d.component, &v, &BigRational::from(coef))?;
                    let (ccoef, cmap) = coords.at(p);
                    let w = apply(cmap, &v)?;
                    scale(&c.component, &w, &BigRational::from(ccoef))?
                }
            };
            // right: codomain default at p of the mapped base
            let nb = apply(base, b)?;
            let rhs = element::default_coordinate(c, &nb, p)?;
            if !payload_eq(&c.component, &lhs, &rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    match (&d.rule.tail, &c.rule.tail) {
        (TailMaps::Periodic(dm), TailMaps::Periodic(cm)) => {
            let period = lcm3(dm.len() as u64, cm.len() as u64, coords.period()?);
            for p in candidate..candidate + period {
                if !check_at(p)? {
                    return Err(ExprError::NotAHom(format!(
                        "coordinate family is not natural at position {}",
                        p
                    )));
                }
            }
            Ok(candidate)
        }
        (TailMaps::LFact(dmap), TailMaps::LFact(cmap)) => {
            // strip the common factorial coefficient: verifying
            // coords(p)∘map_d = map_c∘base per period proves every position,
            // since integer scalars commute with all maps
            let period = coords.period()?;
            for p in candidate..candidate + period {
                let (_, cmaps) = coords.at(p);
                for b in &base_probes {
                    let lhs = apply(cmaps, &apply(dmap, b)?)?;
                    let rhs = apply(cmap, &apply(base, b)?)?;
                    if !payload_eq(&c.component, &lhs, &rhs)? {
                        return Err(ExprError::NotAHom(format!(
                            "coordinate family is not natural at position {}",
                            p
                        )));
                    }
                }
            }
            Ok(candidate)
        }
        (TailMaps::LFact(dmap), TailMaps::Periodic(cm)) => {
            // the factorial coefficients eventually die in the (bounded
            // exponent) image; beyond that the codomain rule must be checked
            // to kill the mapped base
            let e = c
                .component
                .bounded_exponent()
                .ok_or_else(|| ExprError::Undecidable("unbounded codomain component".into()))?;
            let _ = dmap;
            let mut settle = candidate;
            let cap = candidate + 400;
            while settle < cap {
                let coef = numutil::odd_part_factorial(settle.div_ceil(2));
                if e.is_one() || coef.mod_floor(&e).is_zero() {
                    break;
                }
                settle += 1;
            }
            if settle == cap {
                return Err(ExprError::Undecidable(
                    "factorial coefficients never die in the codomain exponent".into(),
                ));
            }
            // exact check on the finite prefix
            for p in candidate..settle {
                if !check_at(p)? {
                    return Err(ExprError::NotAHom(format!(
                        "coordinate family is not natural at position {}",
                        p
                    )));
                }
            }
            // beyond: the left side vanishes (coefficient divisible by the
            // exponent, monotonically); the right side must vanish too
            let period = lcm3(cm.len() as u64, coords.period()?, 2);
            for p in settle..settle + period {
                if !check_at(p)? {
                    return Err(ExprError::NotAHom(format!(
                        "coordinate family is not natural at position {}",
                        p
                    )));
                }
                // confirm the right side is actually the zero default
                for b in &base_probes {
                    let nb = apply(base, b)?;
                    let rhs = element::default_coordinate(c, &nb, p)?;
                    if !payload_eq(&c.component, &rhs, &zero_payload(&c.component))? {
                        return Err(ExprError::NotAHom(format!(
                            "codomain rule does not vanish at position {}",
                            p
                        )));
                    }
                }
            }
            Ok(candidate)
        }
        (TailMaps::Periodic(_), TailMaps::LFact(_)) => Err(ExprError::Undecidable(
            "periodic-to-factorial coordinate families are outside the closed class".into(),
        )),
    }
}

fn lcm3(a: u64, b: u64, c: u64) -> u64 {
    num_integer::lcm(num_integer::lcm(a, b), c)
}

/// Far-coordinate behaviour of a map: its action on coordinate injections at
/// positions beyond `window` repeats with the period.
fn far_behavior(h: &Hom) -> Result<(u64, u64)> {
    match &h.kind {
        HomKind::CoordMap { coords, .. } => {
            Ok((coords.head.len() as u64, coords.period()?))
        }
        HomKind::Compose(parts) => {
            let mut w = 0;
            let mut p = 1;
            for part in parts {
                let (pw, pp) = far_behavior(part)?;
                w = w.max(pw);
                p = num_integer::lcm(p, pp);
            }
            Ok((w, p))
        }
        HomKind::SumMap(parts) => {
            let mut w = 0;
            let mut p = 1;
            for part in parts {
                let (pw, pp) = far_behavior(part)?;
                w = w.max(pw);
                p = num_integer::lcm(p, pp);
            }
            Ok((w, p))
        }
        _ => Ok((0, 1)),
    }
}

/// Outcome of a homomorphism comparison.
#[derive(Debug, Clone)]
pub enum HomEquality {
    Equal,
    Differ { witness: Payload, lhs: Payload, rhs: Payload },
}

impl HomEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, HomEquality::Equal)
    }
}

/// Decide equality of two homomorphism expressions with the same endpoints.
///
/// Complete on the closed class: canonical probes (sections, finite-generator
/// probes, coordinate injections up to the common certified window) decide
/// equality; a failing probe is returned as a witness.
pub fn homs_equal(f: &Hom, g: &Hom, min_window: u64) -> Result<HomEquality> {
    if f.domain != g.domain || g.codomain != f.codomain {
        return Err(ExprError::DomainMismatch(
            "maps with different endpoints are never compared".into(),
        ));
    }
    let (wf, pf) = far_behavior(f)?;
    let (wg, pg) = far_behavior(g)?;
    let window = min_window
        .max(wf.max(wg) + num_integer::lcm(pf, pg))
        .max(rule_window(&f.domain));
    for probe in probes(&f.domain, window)? {
        let a = apply(f, &probe)?;
        let b = apply(g, &probe)?;
        if !payload_eq(&f.codomain, &a, &b)? {
            return Ok(HomEquality::Differ { witness: probe, lhs: a, rhs: b });
        }
    }
    Ok(HomEquality::Equal)
}

/// A window covering the explicitly-ruled region of any tail product inside
/// the group (so probes reach past every rule head).
fn rule_window(g: &GroupExpr) -> u64 {
    match g {
        GroupExpr::Fg(_) | GroupExpr::Dyadic | GroupExpr::Rational => 0,
        GroupExpr::DirectSum(parts) => parts.iter().map(rule_window).max().unwrap_or(0),
        GroupExpr::TailProduct(t) => {
            let own = t.rule.settled_from() + t.rule.period().unwrap_or(2);
            own.max(rule_window(&t.base)).max(rule_window(&t.component))
        }
        GroupExpr::Quotient(q) => rule_window(&q.ambient),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupexpr::IndexSet;

    fn dyadic_tail_lfact() -> GroupExpr {
        // base Z[1/2], components Z[1/2], rule ×l_{⌈p/2⌉!}
        let embed = Hom::identity(GroupExpr::Dyadic);
        GroupExpr::tail_product(
            GroupExpr::Dyadic,
            GroupExpr::Dyadic,
            TailRule::new(1, vec![], TailMaps::LFact(Box::new(embed))),
            IndexSet::NPlus,
        )
    }

    #[test]
    fn dyadic_arithmetic() {
        let g = GroupExpr::Dyadic;
        let a = GroupElement::new(g.clone(), Payload::ratio(1, 4)).unwrap();
        let b = GroupElement::new(g.clone(), Payload::ratio(3, 4)).unwrap();
        let sum = a.add(&b).unwrap();
        assert!(sum.eq_element(&GroupElement::new(g.clone(), Payload::int(1)).unwrap()).unwrap());
        // 1/3 is not dyadic
        assert!(GroupElement::new(g, Payload::ratio(1, 3)).is_err());
    }

    #[test]
    fn tail_identity_element() {
        // (1,(3,0,3,0,...)) + 0 = (1,(3,0,3,0,...)) in the l-factorial tail
        let g = dyadic_tail_lfact();
        let x = GroupElement::new(
            g.clone(),
            Payload::tail(
                Payload::int(1),
                &[
                    (1, Payload::int(3)),
                    (2, Payload::int(0)),
                    (3, Payload::int(3)),
                    (4, Payload::int(0)),
                ],
            ),
        )
        .unwrap();
        let zero = GroupElement::zero(g);
        let sum = x.add(&zero).unwrap();
        assert!(sum.eq_element(&x).unwrap());
    }

    #[test]
    fn quotient_equality_mod_dyadic() {
        // in Q/Z[1/2]: 1/3 = 1/3 + 5/4 = 19/12
        let q = GroupExpr::quotient(GroupExpr::Rational, GroupExpr::Dyadic).unwrap();
        let a = GroupElement::new(q.clone(), Payload::Coset(Box::new(Payload::ratio(1, 3)))).unwrap();
        let b = GroupElement::new(q, Payload::Coset(Box::new(Payload::ratio(19, 12)))).unwrap();
        assert!(a.eq_element(&b).unwrap());
    }

    #[test]
    fn membership_checks() {
        let bold_z_like = dyadic_tail_lfact();
        // base 1, no exceptions: member
        let p = Payload::tail(Payload::int(1), &[]);
        assert!(element::contains(&bold_z_like, &p).unwrap());
        // non-dyadic base: not a member (value-level false, not an error)
        let p = Payload::tail(Payload::ratio(1, 3), &[]);
        assert!(!element::contains(&bold_z_like, &p).unwrap());
    }

    #[test]
    fn scalar_and_matrix_maps() {
        let z9 = GroupExpr::cyclic(9);
        let z3 = GroupExpr::cyclic(3);
        // ι: Z_3 → Z_9, [1]_3 ↦ [3]_9
        let iota = Hom::matrix_i64(z3.clone(), z9.clone(), &[3]).unwrap();
        let one = GroupElement::new(z3.clone(), Payload::fg(&[1])).unwrap();
        let img = iota.apply(&one).unwrap();
        assert_eq!(element::render(&z9, &img.payload), "[3]_9");
        // ill-defined matrix rejected
        assert!(Hom::matrix_i64(z3, z9, &[1]).is_err());
    }

    #[test]
    fn hom_equality_with_witness() {
        let z9 = GroupExpr::cyclic(9);
        let mul4 = Hom::scalar_int(z9.clone(), 4);
        let mul13 = Hom::scalar_int(z9.clone(), 13);
        assert!(homs_equal(&mul4, &mul13, 4).unwrap().is_equal());
        let mul5 = Hom::scalar_int(z9.clone(), 5);
        match homs_equal(&mul4, &mul5, 4).unwrap() {
            HomEquality::Differ { lhs, rhs, .. } => {
                assert_eq!(element::render(&z9, &lhs), "[4]_9");
                assert_eq!(element::render(&z9, &rhs), "[5]_9");
            }
            HomEquality::Equal => panic!("×4 and ×5 must differ on Z_9"),
        }
    }

    #[test]
    fn coordinate_family_flip() {
        // flip of even coordinates on a constant-rule tail of Z_3 over Z_3⊕Z_3 base
        let z3 = GroupExpr::cyclic(3);
        let base = GroupExpr::sum(vec![GroupExpr::cyclic(3), GroupExpr::cyclic(3)]);
        let proj: Hom = Hom::matrix_i64(base.clone(), z3.clone(), &[0, 1]).unwrap();
        let rule1 = TailRule::constant(1, proj.clone());
        let t1 = GroupExpr::tail_product(base.clone(), z3.clone(), rule1, IndexSet::NPlus);
        let rule2 = TailRule::new(
            1,
            vec![],
            TailMaps::Periodic(vec![proj.clone(), proj.negated()]),
        );
        let t2 = GroupExpr::tail_product(base.clone(), z3.clone(), rule2, IndexSet::NPlus);
        let gamma = Hom::coord_map(
            t1.clone(),
            t2.clone(),
            Hom::identity(base),
            CoordMaps::alternating(Hom::identity(z3.clone()), Hom::negation(z3.clone())),
        )
        .unwrap();
        // section of ([1],[1]) maps to an element whose even coordinates flip
        let x = GroupElement::new(
            t1,
            Payload::tail(Payload::Tuple(vec![Payload::fg(&[1]), Payload::fg(&[1])]), &[]),
        )
        .unwrap();
        let y = gamma.apply(&x).unwrap();
        let GroupExpr::TailProduct(t2d) = &t2 else { unreachable!() };
        let v1 = coordinate_value(t2d, &y.payload, 1).unwrap();
        let v2 = coordinate_value(t2d, &y.payload, 2).unwrap();
        assert_eq!(element::render(&z3.clone(), &v1), "[1]_3");
        assert_eq!(element::render(&z3, &v2), "[2]_3");
    }
}
