//! Elements of structured groups: exact payloads, arithmetic, membership,
//! and rendering.

use super::expr::{GroupExpr, TailProductData};
use super::numutil;
use super::{ExprError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Raw element data. Which payload shapes are valid depends on the owning
/// [`GroupExpr`]; see [`contains`].
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    /// Coordinates on canonical generators of an f.g. group.
    Fg(Vec<BigInt>),
    /// An exact rational (dyadic groups constrain the denominator).
    Ratio(BigRational),
    /// One payload per direct summand.
    Tuple(Vec<Payload>),
    /// Base entry plus finitely many coordinate overrides; a coordinate
    /// without an override takes the rule default (zero below the rule
    /// start).
    Tail { base: Box<Payload>, overrides: BTreeMap<i64, Payload> },
    /// A coset representative in the ambient group.
    Coset(Box<Payload>),
}

impl Payload {
    pub fn int(n: i64) -> Payload {
        Payload::Ratio(BigRational::from(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Payload {
        Payload::Ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn fg(coords: &[i64]) -> Payload {
        Payload::Fg(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn tail(base: Payload, overrides: &[(i64, Payload)]) -> Payload {
        Payload::Tail {
            base: Box::new(base),
            overrides: overrides.iter().cloned().collect(),
        }
    }
}

/// An element together with its owning group.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub group: GroupExpr,
    pub payload: Payload,
}

impl GroupElement {
    /// Validates membership and canonicalizes.
    pub fn new(group: GroupExpr, payload: Payload) -> Result<Self> {
        if !contains(&group, &payload)? {
            return Err(ExprError::NotAnElement(format!(
                "payload {:?} does not satisfy the constraints of the group",
                payload
            )));
        }
        let payload = canonicalize(&group, &payload)?;
        Ok(GroupElement { group, payload })
    }

    pub fn zero(group: GroupExpr) -> Self {
        let payload = zero_payload(&group);
        GroupElement { group, payload }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(ExprError::OwnerMismatch);
        }
        let payload = add(&self.group, &self.payload, &other.payload)?;
        Ok(GroupElement { group: self.group.clone(), payload })
    }

    pub fn neg(&self) -> Result<Self> {
        let payload = neg(&self.group, &self.payload)?;
        Ok(GroupElement { group: self.group.clone(), payload })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn eq_element(&self, other: &Self) -> Result<bool> {
        if self.group != other.group {
            return Err(ExprError::OwnerMismatch);
        }
        payload_eq(&self.group, &self.payload, &other.payload)
    }

    pub fn is_zero(&self) -> Result<bool> {
        payload_eq(&self.group, &self.payload, &zero_payload(&self.group))
    }

    pub fn scale_int(&self, c: &BigInt) -> Result<Self> {
        let q = BigRational::from(c.clone());
        let payload = scale(&self.group, &self.payload, &q)?;
        Ok(GroupElement { group: self.group.clone(), payload })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.group, &self.payload))
    }
}

pub fn zero_payload(g: &GroupExpr) -> Payload {
    match g {
        GroupExpr::Fg(fg) => Payload::Fg(fg.zero_element()),
        GroupExpr::Dyadic | GroupExpr::Rational => Payload::Ratio(BigRational::zero()),
        GroupExpr::DirectSum(parts) => Payload::Tuple(parts.iter().map(zero_payload).collect()),
        GroupExpr::TailProduct(t) => Payload::Tail {
            base: Box::new(zero_payload(&t.base)),
            overrides: BTreeMap::new(),
        },
        GroupExpr::Quotient(q) => Payload::Coset(Box::new(zero_payload(&q.ambient))),
    }
}

/// Does the payload describe an element of the group? Value-level violations
/// (a non-dyadic rational in a dyadic slot) yield `false`; structural
/// mismatches (wrong arity or payload kind) are errors.
pub fn contains(g: &GroupExpr, p: &Payload) -> Result<bool> {
    match (g, p) {
        (GroupExpr::Fg(fg), Payload::Fg(coords)) => {
            if coords.len() != fg.num_generators() {
                return Err(ExprError::ShapeMismatch(format!(
                    "expected {} coordinates, got {}",
                    fg.num_generators(),
                    coords.len()
                )));
            }
            Ok(true)
        }
        (GroupExpr::Dyadic, Payload::Ratio(r)) => Ok(numutil::is_dyadic(r)),
        (GroupExpr::Rational, Payload::Ratio(_)) => Ok(true),
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            if parts.len() != vals.len() {
                return Err(ExprError::ShapeMismatch(format!(
                    "expected {} summands, got {}",
                    parts.len(),
                    vals.len()
                )));
            }
            for (part, val) in parts.iter().zip(vals) {
                if !contains(part, val)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (GroupExpr::TailProduct(t), Payload::Tail { base, overrides }) => {
            if !contains(&t.base, base)? {
                return Ok(false);
            }
            for (coord, val) in overrides {
                t.index.position(*coord)?;
                if !contains(&t.component, val)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (GroupExpr::Quotient(q), Payload::Coset(rep)) => contains(&q.ambient, rep),
        _ => Err(ExprError::ShapeMismatch(format!(
            "payload kind does not match group kind {:?}",
            super::expr::kind_name(g)
        ))),
    }
}

/// The rule-default value of a tail coordinate for a given base entry.
pub fn default_coordinate(t: &TailProductData, base: &Payload, position: u64) -> Result<Payload> {
    match t.rule.at(position) {
        None => Ok(zero_payload(&t.component)),
        Some((coef, map)) => {
            let image = super::hom::apply(map, base)?;
            scale(&t.component, &image, &BigRational::from(coef))
        }
    }
}

/// Value of a tail element at a coordinate (override or rule default).
pub fn coordinate_value(t: &TailProductData, p: &Payload, coord: i64) -> Result<Payload> {
    let Payload::Tail { base, overrides } = p else {
        return Err(ExprError::ShapeMismatch("tail payload expected".into()));
    };
    if let Some(v) = overrides.get(&coord) {
        return Ok(v.clone());
    }
    default_coordinate(t, base, t.index.position(coord)?)
}

/// Canonical form: f.g. coordinates reduced into range, tail overrides that
/// equal the rule default dropped.
pub fn canonicalize(g: &GroupExpr, p: &Payload) -> Result<Payload> {
    match (g, p) {
        (GroupExpr::Fg(fg), Payload::Fg(coords)) => Ok(Payload::Fg(fg.canonicalize(coords))),
        (GroupExpr::Dyadic | GroupExpr::Rational, Payload::Ratio(_)) => Ok(p.clone()),
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            let out: Result<Vec<Payload>> =
                parts.iter().zip(vals).map(|(g, v)| canonicalize(g, v)).collect();
            Ok(Payload::Tuple(out?))
        }
        (GroupExpr::TailProduct(t), Payload::Tail { base, overrides }) => {
            let base_c = canonicalize(&t.base, base)?;
            let mut kept = BTreeMap::new();
            for (coord, val) in overrides {
                let val_c = canonicalize(&t.component, val)?;
                let def = default_coordinate(t, &base_c, t.index.position(*coord)?)?;
                if !payload_eq(&t.component, &val_c, &def)? {
                    kept.insert(*coord, val_c);
                }
            }
            Ok(Payload::Tail { base: Box::new(base_c), overrides: kept })
        }
        (GroupExpr::Quotient(q), Payload::Coset(rep)) => {
            Ok(Payload::Coset(Box::new(canonicalize(&q.ambient, rep)?)))
        }
        _ => Err(ExprError::ShapeMismatch("payload kind does not match group".into())),
    }
}

pub fn add(g: &GroupExpr, a: &Payload, b: &Payload) -> Result<Payload> {
    match (g, a, b) {
        (GroupExpr::Fg(fg), Payload::Fg(x), Payload::Fg(y)) => {
            if x.len() != y.len() {
                return Err(ExprError::ShapeMismatch("coordinate length mismatch".into()));
            }
            let sum: Vec<BigInt> = x.iter().zip(y).map(|(u, v)| u + v).collect();
            Ok(Payload::Fg(fg.canonicalize(&sum)))
        }
        (GroupExpr::Dyadic | GroupExpr::Rational, Payload::Ratio(x), Payload::Ratio(y)) => {
            Ok(Payload::Ratio(x + y))
        }
        (GroupExpr::DirectSum(parts), Payload::Tuple(xs), Payload::Tuple(ys)) => {
            let out: Result<Vec<Payload>> = parts
                .iter()
                .zip(xs.iter().zip(ys))
                .map(|(g, (x, y))| add(g, x, y))
                .collect();
            Ok(Payload::Tuple(out?))
        }
        (GroupExpr::TailProduct(t), Payload::Tail { .. }, Payload::Tail { .. }) => {
            let (Payload::Tail { base: ab, overrides: ao }, Payload::Tail { base: bb, overrides: bo }) =
                (a, b)
            else {
                unreachable!()
            };
            let base = add(&t.base, ab, bb)?;
            let mut overrides = BTreeMap::new();
            let keys: std::collections::BTreeSet<i64> =
                ao.keys().chain(bo.keys()).copied().collect();
            for coord in keys {
                let va = coordinate_value(t, a, coord)?;
                let vb = coordinate_value(t, b, coord)?;
                let sum = add(&t.component, &va, &vb)?;
                let def = default_coordinate(t, &base, t.index.position(coord)?)?;
                if !payload_eq(&t.component, &sum, &def)? {
                    overrides.insert(coord, sum);
                }
            }
            Ok(Payload::Tail { base: Box::new(base), overrides })
        }
        (GroupExpr::Quotient(q), Payload::Coset(x), Payload::Coset(y)) => {
            Ok(Payload::Coset(Box::new(add(&q.ambient, x, y)?)))
        }
        _ => Err(ExprError::ShapeMismatch("payload kinds do not match for addition".into())),
    }
}

pub fn neg(g: &GroupExpr, p: &Payload) -> Result<Payload> {
    scale(g, p, &BigRational::from(BigInt::from(-1)))
}

/// Scale by a rational; validity (integrality on torsion, dyadic scalars on
/// dyadic groups) is the caller's concern and checked where decidable.
pub fn scale(g: &GroupExpr, p: &Payload, q: &BigRational) -> Result<Payload> {
    match (g, p) {
        (GroupExpr::Fg(fg), Payload::Fg(coords)) => {
            if !q.is_integer() {
                return Err(ExprError::UnsupportedKind(format!(
                    "scalar {} does not act on an f.g. group",
                    q
                )));
            }
            let c = q.to_integer();
            let out: Vec<BigInt> = coords.iter().map(|x| x * &c).collect();
            Ok(Payload::Fg(fg.canonicalize(&out)))
        }
        (GroupExpr::Dyadic, Payload::Ratio(x)) => {
            let r = x * q;
            if !numutil::is_dyadic(&r) {
                return Err(ExprError::UnsupportedKind(format!(
                    "scalar {} does not act on the dyadic rationals",
                    q
                )));
            }
            Ok(Payload::Ratio(r))
        }
        (GroupExpr::Rational, Payload::Ratio(x)) => Ok(Payload::Ratio(x * q)),
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            let out: Result<Vec<Payload>> =
                parts.iter().zip(vals).map(|(g, v)| scale(g, v, q)).collect();
            Ok(Payload::Tuple(out?))
        }
        (GroupExpr::TailProduct(t), Payload::Tail { base, overrides }) => {
            let new_base = scale(&t.base, base, q)?;
            let mut out = BTreeMap::new();
            for (coord, val) in overrides {
                let scaled = scale(&t.component, val, q)?;
                let def = default_coordinate(t, &new_base, t.index.position(*coord)?)?;
                if !payload_eq(&t.component, &scaled, &def)? {
                    out.insert(*coord, scaled);
                }
            }
            Ok(Payload::Tail { base: Box::new(new_base), overrides: out })
        }
        (GroupExpr::Quotient(q_data), Payload::Coset(rep)) => {
            Ok(Payload::Coset(Box::new(scale(&q_data.ambient, rep, q)?)))
        }
        _ => Err(ExprError::ShapeMismatch("payload kind does not match group".into())),
    }
}

/// Exact element equality. For cosets this is difference-membership in the
/// subgroup; for tails, base equality plus agreement on the overridden
/// coordinates (the rule forces the rest).
pub fn payload_eq(g: &GroupExpr, a: &Payload, b: &Payload) -> Result<bool> {
    match (g, a, b) {
        (GroupExpr::Fg(fg), Payload::Fg(x), Payload::Fg(y)) => {
            Ok(fg.canonicalize(x) == fg.canonicalize(y))
        }
        (GroupExpr::Dyadic | GroupExpr::Rational, Payload::Ratio(x), Payload::Ratio(y)) => {
            Ok(x == y)
        }
        (GroupExpr::DirectSum(parts), Payload::Tuple(xs), Payload::Tuple(ys)) => {
            for (g, (x, y)) in parts.iter().zip(xs.iter().zip(ys)) {
                if !payload_eq(g, x, y)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (GroupExpr::TailProduct(t), Payload::Tail { base: xb, overrides: xo }, Payload::Tail { base: yb, overrides: yo }) => {
            if !payload_eq(&t.base, xb, yb)? {
                return Ok(false);
            }
            let keys: std::collections::BTreeSet<i64> =
                xo.keys().chain(yo.keys()).copied().collect();
            for coord in keys {
                let vx = coordinate_value(t, a, coord)?;
                let vy = coordinate_value(t, b, coord)?;
                if !payload_eq(&t.component, &vx, &vy)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (GroupExpr::Quotient(q), Payload::Coset(x), Payload::Coset(y)) => {
            let diff = add(&q.ambient, x, &neg(&q.ambient, y)?)?;
            sub_contains(&q.ambient, &q.sub, &diff)
        }
        _ => Err(ExprError::ShapeMismatch("payload kinds do not match for equality".into())),
    }
}

/// Is an ambient element in the canonical image of the subgroup? Only the
/// supported quotient pairs reach this.
pub fn sub_contains(ambient: &GroupExpr, sub: &GroupExpr, p: &Payload) -> Result<bool> {
    match (ambient, sub, p) {
        (GroupExpr::Rational, GroupExpr::Dyadic, Payload::Ratio(r)) => Ok(numutil::is_dyadic(r)),
        (
            GroupExpr::TailProduct(a),
            GroupExpr::TailProduct(s),
            Payload::Tail { base, overrides },
        ) => {
            if !sub_contains(&a.base, &s.base, base)? {
                return Ok(false);
            }
            for v in overrides.values() {
                if !sub_contains(&a.component, &s.component, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(ExprError::UnsupportedKind(
            "membership is only decidable for the supported quotient pairs".into(),
        )),
    }
}

/// Canonical probe elements of a group: enough to determine any homomorphism
/// in the closed expression class, given tail behaviour up to `window`.
pub fn probes(g: &GroupExpr, window: u64) -> Result<Vec<Payload>> {
    match g {
        GroupExpr::Fg(fg) => {
            let n = fg.num_generators();
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let mut coords = fg.zero_element();
                coords[i] = BigInt::one();
                out.push(Payload::Fg(coords));
            }
            Ok(out)
        }
        GroupExpr::Dyadic | GroupExpr::Rational => Ok(vec![Payload::Ratio(BigRational::one())]),
        GroupExpr::DirectSum(parts) => {
            let mut out = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                for probe in probes(part, window)? {
                    let mut tuple: Vec<Payload> = parts.iter().map(zero_payload).collect();
                    tuple[i] = probe;
                    out.push(Payload::Tuple(tuple));
                }
            }
            Ok(out)
        }
        GroupExpr::TailProduct(t) => {
            let mut out = Vec::new();
            for probe in probes(&t.base, window)? {
                out.push(Payload::Tail { base: Box::new(probe), overrides: BTreeMap::new() });
            }
            let comp_probes = probes(&t.component, window)?;
            for pos in 1..=window {
                let coord = t.index.coordinate(pos);
                for probe in &comp_probes {
                    let p = Payload::Tail {
                        base: Box::new(zero_payload(&t.base)),
                        overrides: [(coord, probe.clone())].into_iter().collect(),
                    };
                    out.push(canonicalize(g, &p)?);
                }
            }
            Ok(out)
        }
        GroupExpr::Quotient(q) => {
            let mut out = Vec::new();
            for probe in probes(&q.ambient, window)? {
                out.push(Payload::Coset(Box::new(probe)));
            }
            Ok(out)
        }
    }
}

/// Human-readable rendering; finite cyclic coordinates are written `[c]_d`.
pub fn render(g: &GroupExpr, p: &Payload) -> String {
    match (g, p) {
        (GroupExpr::Fg(fg), Payload::Fg(coords)) => {
            let coords = fg.canonicalize(coords);
            let parts: Vec<String> = coords
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let d = fg.generator_order(i);
                    if d.is_zero() {
                        format!("{}", c)
                    } else {
                        format!("[{}]_{}", c, d)
                    }
                })
                .collect();
            match parts.len() {
                0 => "0".to_string(),
                1 => parts.into_iter().next().unwrap(),
                _ => format!("({})", parts.join(",")),
            }
        }
        (GroupExpr::Dyadic | GroupExpr::Rational, Payload::Ratio(r)) => {
            if r.is_integer() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            let shown: Vec<String> = parts
                .iter()
                .zip(vals)
                .filter(|(g, _)| !g.is_trivial())
                .map(|(g, v)| render(g, v))
                .collect();
            match shown.len() {
                0 => "0".to_string(),
                1 => shown.into_iter().next().unwrap(),
                _ => format!("({})", shown.join(",")),
            }
        }
        (GroupExpr::TailProduct(t), Payload::Tail { base, overrides }) => {
            let max_pos = overrides
                .keys()
                .filter_map(|c| t.index.position(*c).ok())
                .max()
                .unwrap_or(0)
                .max(4);
            let mut coords = Vec::new();
            for pos in 1..=max_pos {
                let coord = t.index.coordinate(pos);
                let v = coordinate_value(t, p, coord)
                    .map(|v| render(&t.component, &v))
                    .unwrap_or_else(|_| "?".to_string());
                coords.push(v);
            }
            format!("({},({},...))", render(&t.base, base), coords.join(","))
        }
        (GroupExpr::Quotient(q), Payload::Coset(rep)) => {
            match (&q.ambient, rep.as_ref()) {
                (GroupExpr::Rational, Payload::Ratio(r)) => {
                    let f = numutil::odd_fraction_part(r);
                    if f.is_zero() {
                        "0".to_string()
                    } else {
                        format!("{}/{}", f.numer(), f.denom())
                    }
                }
                _ => format!("[{}]", render(&q.ambient, rep)),
            }
        }
        _ => format!("{:?}", p),
    }
}

/// Positivity of a payload in the coordinatewise order of an ordered base
/// (rationals ordered as usual, tails positive when base and all coordinate
/// values are nonnegative).
pub fn is_coordinatewise_nonneg(g: &GroupExpr, p: &Payload) -> Result<bool> {
    match (g, p) {
        (GroupExpr::Dyadic | GroupExpr::Rational, Payload::Ratio(r)) => Ok(!r.is_negative()),
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            for (g, v) in parts.iter().zip(vals) {
                if !is_coordinatewise_nonneg(g, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (GroupExpr::TailProduct(t), Payload::Tail { base, overrides }) => {
            if !is_coordinatewise_nonneg(&t.base, base)? {
                return Ok(false);
            }
            for v in overrides.values() {
                if !is_coordinatewise_nonneg(&t.component, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(ExprError::UnsupportedKind(
            "coordinatewise order undefined for this group kind".into(),
        )),
    }
}
