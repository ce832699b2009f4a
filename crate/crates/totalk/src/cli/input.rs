//! The JSON input document: group and homomorphism literals by name plus a
//! list of diagram assertions. Parsing is total; every malformed input
//! produces a positioned or named diagnostic, never a crash.

use crate::abgroup::{FgAbGroup, IntMatrix};
use crate::fixtures::{cone_membership, ConeSpec};
use crate::groupexpr::element::{contains, GroupElement, Payload};
use crate::groupexpr::{GroupExpr, Hom};
use crate::lambda::{
    build_total_k, check_lambda_linear, check_square, exact_at_flat, induced_graded_hom,
    CheckMode, OpFamily, SubCheck, Verdict, Witness,
};
use crate::verify::VerifyReport;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

/// Diagnostics of the input layer.
#[derive(Debug, Clone)]
pub enum CliError {
    /// Syntax error with position information.
    Parse { line: usize, column: usize, message: String },
    /// A validated document with an inconsistent definition.
    Semantic { name: String, message: String },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, column, message } => {
                write!(f, "parse error at line {}, column {}: {}", line, column, message)
            }
            CliError::Semantic { name, message } => {
                write!(f, "invalid definition {:?}: {}", name, message)
            }
        }
    }
}

fn semantic(name: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Semantic { name: name.into(), message: message.into() }
}

/// Expected outcome of an assertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Commutes,
    Fails,
    Exact,
    Positive,
    Negative,
}

impl Expected {
    fn parse(name: &str, s: &str) -> Result<Expected, CliError> {
        match s {
            "commutes" => Ok(Expected::Commutes),
            "fails" => Ok(Expected::Fails),
            "exact" => Ok(Expected::Exact),
            "positive" => Ok(Expected::Positive),
            "negative" => Ok(Expected::Negative),
            other => Err(semantic(name, format!("unknown expectation {:?}", other))),
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Expected::Commutes => "commutes",
            Expected::Fails => "fails",
            Expected::Exact => "exact",
            Expected::Positive => "positive",
            Expected::Negative => "negative",
        }
    }
}

/// One diagram assertion of the document.
#[derive(Debug, Clone)]
pub enum Assertion {
    Square { top: String, bottom: String, left: String, right: String, expected: Expected },
    ExactAt { first: String, second: String, expected: Expected },
    LambdaLinear {
        source: (String, String),
        target: (String, String),
        homs: (String, String),
        bound: u64,
        ops: Vec<OpFamily>,
        expected: Expected,
    },
    ConeMember { cone: ConeSpec, group: String, element: Payload, expected: Expected },
}

/// A fully validated input document: every name resolves, every matrix is a
/// homomorphism, and composite definitions are acyclic.
#[derive(Debug, Clone)]
pub struct InputDocument {
    pub version: u64,
    pub groups: BTreeMap<String, GroupExpr>,
    pub homs: BTreeMap<String, Hom>,
    pub assertions: Vec<Assertion>,
}

/// Parse and validate a JSON input document.
pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(root) = &value else {
        return Err(semantic("document", "the document must be a JSON object"));
    };
    let version = root.get("version").and_then(Value::as_u64).unwrap_or(1);

    let mut groups: BTreeMap<String, GroupExpr> = BTreeMap::new();
    if let Some(raw) = root.get("groups") {
        let Value::Object(map) = raw else {
            return Err(semantic("groups", "must be an object of name: literal"));
        };
        for (name, literal) in map {
            groups.insert(name.clone(), parse_group(name, literal)?);
        }
    }

    let mut homs: BTreeMap<String, Hom> = BTreeMap::new();
    if let Some(raw) = root.get("homs") {
        let Value::Object(map) = raw else {
            return Err(semantic("homs", "must be an object of name: literal"));
        };
        // resolve with cycle detection: composites may reference other homs
        let mut in_progress: Vec<String> = Vec::new();
        let names: Vec<String> = map.keys().cloned().collect();
        for name in &names {
            resolve_hom(name, map, &groups, &mut homs, &mut in_progress)?;
        }
    }

    let mut assertions = Vec::new();
    if let Some(raw) = root.get("assertions") {
        let Value::Array(list) = raw else {
            return Err(semantic("assertions", "must be an array"));
        };
        for (i, item) in list.iter().enumerate() {
            assertions.push(parse_assertion(i, item, &groups, &homs)?);
        }
    }
    Ok(InputDocument { version, groups, homs, assertions })
}

pub(super) fn json_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(BigInt::from(i))
            } else {
                n.as_u64().map(BigInt::from)
            }
        }
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn json_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(_) => json_bigint(v).map(BigRational::from),
        Value::String(s) => {
            if let Some((num, den)) = s.split_once('/') {
                let num: BigInt = num.trim().parse().ok()?;
                let den: BigInt = den.trim().parse().ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            } else {
                s.trim().parse::<BigInt>().ok().map(BigRational::from)
            }
        }
        _ => None,
    }
}

fn parse_group(name: &str, literal: &Value) -> Result<GroupExpr, CliError> {
    let Value::Object(map) = literal else {
        return Err(semantic(name, "group literals are objects with a \"kind\" tag"));
    };
    let kind = map
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| semantic(name, "missing \"kind\" tag"))?;
    match kind {
        "cyclic" => {
            let n = map
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| semantic(name, "cyclic groups need a positive \"n\""))?;
            if n == 0 {
                return Err(semantic(name, "cyclic groups need n >= 1"));
            }
            Ok(GroupExpr::cyclic(n))
        }
        "free" => {
            let rank = map
                .get("rank")
                .and_then(Value::as_u64)
                .ok_or_else(|| semantic(name, "free groups need a \"rank\""))?;
            Ok(GroupExpr::free(rank as usize))
        }
        "fg" => {
            let rank = map.get("rank").and_then(Value::as_u64).unwrap_or(0);
            let torsion: Vec<BigInt> = match map.get("torsion") {
                None => vec![],
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|v| {
                        json_bigint(v)
                            .ok_or_else(|| semantic(name, "torsion entries must be integers"))
                    })
                    .collect::<Result<_, _>>()?,
                Some(_) => return Err(semantic(name, "\"torsion\" must be an array")),
            };
            let fg = FgAbGroup::new(torsion, rank as usize)
                .map_err(|e| semantic(name, e.to_string()))?;
            Ok(GroupExpr::Fg(fg))
        }
        "sum" => {
            let Some(Value::Array(parts)) = map.get("parts") else {
                return Err(semantic(name, "sums need a \"parts\" array"));
            };
            let parts: Result<Vec<GroupExpr>, CliError> =
                parts.iter().map(|p| parse_group(name, p)).collect();
            Ok(GroupExpr::sum(parts?))
        }
        "dyadic" => Ok(GroupExpr::Dyadic),
        "rational" => Ok(GroupExpr::Rational),
        other => Err(semantic(name, format!("unknown group kind {:?}", other))),
    }
}

fn resolve_hom(
    name: &str,
    raw: &serde_json::Map<String, Value>,
    groups: &BTreeMap<String, GroupExpr>,
    resolved: &mut BTreeMap<String, Hom>,
    in_progress: &mut Vec<String>,
) -> Result<Hom, CliError> {
    if let Some(h) = resolved.get(name) {
        return Ok(h.clone());
    }
    if in_progress.iter().any(|n| n == name) {
        return Err(semantic(name, "composite definitions must not be cyclic"));
    }
    let Some(literal) = raw.get(name) else {
        return Err(semantic(name, "reference to an undefined homomorphism"));
    };
    in_progress.push(name.to_string());
    let hom = build_hom(name, literal, raw, groups, resolved, in_progress)?;
    in_progress.pop();
    resolved.insert(name.to_string(), hom.clone());
    Ok(hom)
}

fn lookup_group(
    name: &str,
    key: &str,
    map: &serde_json::Map<String, Value>,
    groups: &BTreeMap<String, GroupExpr>,
) -> Result<GroupExpr, CliError> {
    let gname = map
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| semantic(name, format!("missing group reference {:?}", key)))?;
    groups
        .get(gname)
        .cloned()
        .ok_or_else(|| semantic(name, format!("reference to undefined group {:?}", gname)))
}

fn build_hom(
    name: &str,
    literal: &Value,
    raw: &serde_json::Map<String, Value>,
    groups: &BTreeMap<String, GroupExpr>,
    resolved: &mut BTreeMap<String, Hom>,
    in_progress: &mut Vec<String>,
) -> Result<Hom, CliError> {
    let Value::Object(map) = literal else {
        return Err(semantic(name, "homomorphism literals are objects with a \"kind\" tag"));
    };
    let kind = map
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| semantic(name, "missing \"kind\" tag"))?;
    match kind {
        "matrix" => {
            let domain = lookup_group(name, "domain", map, groups)?;
            let codomain = lookup_group(name, "codomain", map, groups)?;
            let Some(Value::Array(rows)) = map.get("entries") else {
                return Err(semantic(name, "matrix maps need an \"entries\" array of rows"));
            };
            let mut data: Vec<Vec<BigInt>> = Vec::new();
            for row in rows {
                let Value::Array(cells) = row else {
                    return Err(semantic(name, "matrix rows must be arrays"));
                };
                let parsed: Result<Vec<BigInt>, CliError> = cells
                    .iter()
                    .map(|c| {
                        json_bigint(c)
                            .ok_or_else(|| semantic(name, "matrix entries must be integers"))
                    })
                    .collect();
                data.push(parsed?);
            }
            let cols = data.first().map(Vec::len).unwrap_or(0);
            if data.iter().any(|r| r.len() != cols) {
                return Err(semantic(name, "ragged matrix rows"));
            }
            let m = if data.is_empty() {
                IntMatrix::zero(0, 0)
            } else {
                IntMatrix::from_rows(data)
            };
            Hom::matrix(domain, codomain, m).map_err(|e| semantic(name, e.to_string()))
        }
        "scalar" => {
            let on = lookup_group(name, "on", map, groups)?;
            let value = map
                .get("value")
                .and_then(json_rational)
                .ok_or_else(|| semantic(name, "scalar maps need a rational \"value\""))?;
            Hom::scalar_mul(on, value).map_err(|e| semantic(name, e.to_string()))
        }
        "identity" => {
            let on = lookup_group(name, "on", map, groups)?;
            Ok(Hom::identity(on))
        }
        "zero" => {
            let domain = lookup_group(name, "domain", map, groups)?;
            let codomain = lookup_group(name, "codomain", map, groups)?;
            Ok(Hom::zero(domain, codomain))
        }
        "negate" => {
            let inner = map
                .get("of")
                .ok_or_else(|| semantic(name, "negations need an \"of\" reference"))?;
            let h = hom_ref_or_literal(name, inner, raw, groups, resolved, in_progress)?;
            Ok(h.negated())
        }
        "compose" => {
            let Some(Value::Array(parts)) = map.get("of") else {
                return Err(semantic(name, "compositions need an \"of\" array"));
            };
            let mut acc: Option<Hom> = None;
            for part in parts {
                let h = hom_ref_or_literal(name, part, raw, groups, resolved, in_progress)?;
                acc = Some(match acc {
                    None => h,
                    Some(prev) => prev.then(&h).map_err(|e| semantic(name, e.to_string()))?,
                });
            }
            acc.ok_or_else(|| semantic(name, "compositions need at least one map"))
        }
        "mod_reduce" => {
            let on = lookup_group(name, "on", map, groups)?;
            let n = map
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| semantic(name, "reductions need a modulus \"n\" >= 2"))?;
            if n < 2 {
                return Err(semantic(name, "reductions need n >= 2"));
            }
            crate::groupexpr::reduce::coeff_reduce(&on, n)
                .map(|r| r.reduction)
                .map_err(|e| semantic(name, e.to_string()))
        }
        other => Err(semantic(name, format!("unknown homomorphism kind {:?}", other))),
    }
}

/// Composition and negation entries may reference a named map or carry an
/// inline literal; both resolve to the same expressions.
fn hom_ref_or_literal(
    name: &str,
    value: &Value,
    raw: &serde_json::Map<String, Value>,
    groups: &BTreeMap<String, GroupExpr>,
    resolved: &mut BTreeMap<String, Hom>,
    in_progress: &mut Vec<String>,
) -> Result<Hom, CliError> {
    match value {
        Value::String(reference) => resolve_hom(reference, raw, groups, resolved, in_progress),
        Value::Object(_) => build_hom(name, value, raw, groups, resolved, in_progress),
        _ => Err(semantic(name, "expected a map name or an inline map literal")),
    }
}

impl InputDocument {
    /// Canonical JSON form of the document: groups and assertions as parsed,
    /// homomorphisms re-emitted from their resolved expressions (matrices
    /// evaluated on canonical generators, scalar content extracted).
    /// Reparsing the canonical form reproduces the same resolved document.
    pub fn canonical_json(&self) -> Result<Value, CliError> {
        let group_name = |g: &GroupExpr| -> Option<String> {
            self.groups.iter().find(|(_, v)| *v == g).map(|(k, _)| k.clone())
        };
        let mut groups = serde_json::Map::new();
        for (name, g) in &self.groups {
            groups.insert(name.clone(), group_to_json(g));
        }
        let mut homs = serde_json::Map::new();
        for (name, h) in &self.homs {
            homs.insert(name.clone(), hom_to_json(name, h, &group_name)?);
        }
        let assertions: Vec<Value> = self
            .assertions
            .iter()
            .map(|a| assertion_to_json(a, &group_name))
            .collect::<Result<_, _>>()?;
        Ok(serde_json::json!({
            "version": self.version,
            "groups": groups,
            "homs": homs,
            "assertions": assertions,
        }))
    }
}

fn group_to_json(g: &GroupExpr) -> Value {
    match g {
        GroupExpr::Fg(fg) => {
            let torsion: Vec<Value> = fg
                .torsion()
                .iter()
                .map(|d| Value::String(d.to_string()))
                .collect();
            serde_json::json!({"kind": "fg", "torsion": torsion, "rank": fg.free_rank()})
        }
        GroupExpr::Dyadic => serde_json::json!({"kind": "dyadic"}),
        GroupExpr::Rational => serde_json::json!({"kind": "rational"}),
        GroupExpr::DirectSum(parts) => {
            let parts: Vec<Value> = parts.iter().map(group_to_json).collect();
            serde_json::json!({"kind": "sum", "parts": parts})
        }
        _ => serde_json::json!({"kind": "unsupported"}),
    }
}

fn hom_to_json(
    name: &str,
    h: &Hom,
    group_name: &dyn Fn(&GroupExpr) -> Option<String>,
) -> Result<Value, CliError> {
    use crate::groupexpr::HomKind;
    let named = |g: &GroupExpr| -> Result<Value, CliError> {
        group_name(g)
            .map(Value::String)
            .ok_or_else(|| semantic(name, "map endpoint is not a named group"))
    };
    // flat maps canonicalize to their matrices
    if h.domain.flat_orders().is_some() && h.codomain.flat_orders().is_some() {
        let probes = crate::groupexpr::element::probes(&h.domain, 1)
            .map_err(|e| semantic(name, e.to_string()))?;
        let mut rows: Vec<Vec<Value>> = vec![];
        let mut cols: Vec<Vec<BigInt>> = vec![];
        for p in &probes {
            let image = crate::groupexpr::hom::apply(h, p)
                .map_err(|e| semantic(name, e.to_string()))?;
            cols.push(flatten_coords(&h.codomain, &image).map_err(|e| semantic(name, e))?);
        }
        let nrows = h.codomain.flat_orders().map(|o| o.len()).unwrap_or(0);
        for i in 0..nrows {
            rows.push(cols.iter().map(|c| Value::String(c[i].to_string())).collect());
        }
        return Ok(serde_json::json!({
            "kind": "matrix",
            "domain": named(&h.domain)?,
            "codomain": named(&h.codomain)?,
            "entries": rows,
        }));
    }
    if let Some(q) = h.scalar_content() {
        if h.domain == h.codomain {
            return Ok(serde_json::json!({
                "kind": "scalar",
                "on": named(&h.domain)?,
                "value": format!("{}/{}", q.numer(), q.denom()),
            }));
        }
    }
    match &h.kind {
        HomKind::ModReduce(n) => Ok(serde_json::json!({
            "kind": "mod_reduce",
            "on": named(&h.domain)?,
            "n": n,
        })),
        HomKind::Zero => Ok(serde_json::json!({
            "kind": "zero",
            "domain": named(&h.domain)?,
            "codomain": named(&h.codomain)?,
        })),
        HomKind::Compose(parts) => {
            let parts: Vec<Value> = parts
                .iter()
                .map(|p| hom_to_json(name, p, group_name))
                .collect::<Result<_, _>>()?;
            Ok(serde_json::json!({"kind": "compose", "of": parts}))
        }
        _ => Err(semantic(name, "map does not canonicalize to an input literal")),
    }
}

fn flatten_coords(g: &GroupExpr, p: &Payload) -> Result<Vec<BigInt>, String> {
    match (g, p) {
        (GroupExpr::Fg(_), Payload::Fg(c)) => Ok(c.clone()),
        (GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            let mut out = Vec::new();
            for (g, v) in parts.iter().zip(vals) {
                out.extend(flatten_coords(g, v)?);
            }
            Ok(out)
        }
        _ => Err("payload has no finite coordinates".to_string()),
    }
}

fn assertion_to_json(
    a: &Assertion,
    group_name: &dyn Fn(&GroupExpr) -> Option<String>,
) -> Result<Value, CliError> {
    let _ = group_name;
    Ok(match a {
        Assertion::Square { top, bottom, left, right, expected } => serde_json::json!({
            "kind": "square", "top": top, "bottom": bottom,
            "left": left, "right": right, "expected": expected.as_str(),
        }),
        Assertion::ExactAt { first, second, expected } => serde_json::json!({
            "kind": "exact_at", "first": first, "second": second,
            "expected": expected.as_str(),
        }),
        Assertion::LambdaLinear { source, target, homs, bound, ops, expected } => {
            let ops: Vec<&str> = ops
                .iter()
                .map(|o| match o {
                    crate::lambda::OpFamily::Rho => "rho",
                    crate::lambda::OpFamily::Beta => "beta",
                    crate::lambda::OpFamily::Kappa => "kappa",
                })
                .collect();
            serde_json::json!({
                "kind": "lambda_linear",
                "source_k0": source.0, "source_k1": source.1,
                "target_k0": target.0, "target_k1": target.1,
                "hom0": homs.0, "hom1": homs.1,
                "bound": bound, "ops": ops, "expected": expected.as_str(),
            })
        }
        Assertion::ConeMember { cone, group, element, expected } => {
            let cone = match cone {
                ConeSpec::Trivial => "trivial",
                ConeSpec::ProductPositive => "product_positive",
                ConeSpec::StrictPositiveOrZero => "strict_positive_or_zero",
                _ => return Err(semantic("assertion", "cone does not serialize")),
            };
            serde_json::json!({
                "kind": "cone_member", "cone": cone, "group": group,
                "element": element_to_json(element),
                "expected": expected.as_str(),
            })
        }
    })
}

fn element_to_json(p: &Payload) -> Value {
    match p {
        Payload::Fg(coords) => {
            Value::Array(coords.iter().map(|c| Value::String(c.to_string())).collect())
        }
        Payload::Ratio(r) => Value::String(format!("{}/{}", r.numer(), r.denom())),
        Payload::Tuple(vals) => Value::Array(vals.iter().map(element_to_json).collect()),
        _ => Value::Null,
    }
}

fn parse_assertion(
    index: usize,
    item: &Value,
    groups: &BTreeMap<String, GroupExpr>,
    homs: &BTreeMap<String, Hom>,
) -> Result<Assertion, CliError> {
    let name = format!("assertion {}", index);
    let Value::Object(map) = item else {
        return Err(semantic(name, "assertions are objects with a \"kind\" tag"));
    };
    let kind = map
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| semantic(&name, "missing \"kind\" tag"))?;
    let hom_ref = |key: &str| -> Result<String, CliError> {
        let h = map
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| semantic(&name, format!("missing hom reference {:?}", key)))?;
        if !homs.contains_key(h) {
            return Err(semantic(&name, format!("reference to undefined hom {:?}", h)));
        }
        Ok(h.to_string())
    };
    let expected = |default: Expected| -> Result<Expected, CliError> {
        match map.get("expected").and_then(Value::as_str) {
            None => Ok(default),
            Some(s) => Expected::parse(&name, s),
        }
    };
    match kind {
        "square" => Ok(Assertion::Square {
            top: hom_ref("top")?,
            bottom: hom_ref("bottom")?,
            left: hom_ref("left")?,
            right: hom_ref("right")?,
            expected: expected(Expected::Commutes)?,
        }),
        "exact_at" => Ok(Assertion::ExactAt {
            first: hom_ref("first")?,
            second: hom_ref("second")?,
            expected: expected(Expected::Exact)?,
        }),
        "lambda_linear" => {
            let group_ref = |key: &str| -> Result<String, CliError> {
                let g = map
                    .get(key)
                    .and_then(Value::as_str)
                    .ok_or_else(|| semantic(&name, format!("missing group reference {:?}", key)))?;
                if !groups.contains_key(g) {
                    return Err(semantic(&name, format!("reference to undefined group {:?}", g)));
                }
                Ok(g.to_string())
            };
            let ops = match map.get("ops") {
                None => vec![OpFamily::Rho, OpFamily::Beta, OpFamily::Kappa],
                Some(Value::Array(items)) => {
                    let mut out = Vec::new();
                    for item in items {
                        match item.as_str() {
                            Some("rho") => out.push(OpFamily::Rho),
                            Some("beta") => out.push(OpFamily::Beta),
                            Some("kappa") => out.push(OpFamily::Kappa),
                            _ => {
                                return Err(semantic(
                                    &name,
                                    "\"ops\" entries are \"rho\", \"beta\", or \"kappa\"",
                                ))
                            }
                        }
                    }
                    out
                }
                Some(_) => return Err(semantic(&name, "\"ops\" must be an array")),
            };
            Ok(Assertion::LambdaLinear {
                source: (group_ref("source_k0")?, group_ref("source_k1")?),
                target: (group_ref("target_k0")?, group_ref("target_k1")?),
                homs: (hom_ref("hom0")?, hom_ref("hom1")?),
                bound: map.get("bound").and_then(Value::as_u64).unwrap_or(12).max(2),
                ops,
                expected: expected(Expected::Commutes)?,
            })
        }
        "cone_member" => {
            let cone = match map.get("cone").and_then(Value::as_str) {
                Some("trivial") => ConeSpec::Trivial,
                Some("product_positive") => ConeSpec::ProductPositive,
                Some("strict_positive_or_zero") => ConeSpec::StrictPositiveOrZero,
                Some(other) => {
                    return Err(semantic(&name, format!("unsupported cone {:?}", other)))
                }
                None => return Err(semantic(&name, "missing \"cone\" tag")),
            };
            let gname = map
                .get("group")
                .and_then(Value::as_str)
                .ok_or_else(|| semantic(&name, "missing group reference \"group\""))?;
            let group = groups
                .get(gname)
                .ok_or_else(|| semantic(&name, format!("reference to undefined group {:?}", gname)))?;
            let element = map
                .get("element")
                .ok_or_else(|| semantic(&name, "missing \"element\" literal"))?;
            let payload = parse_element(&name, element, group)?;
            if !contains(group, &payload).map_err(|e| semantic(&name, e.to_string()))? {
                return Err(semantic(&name, "element does not belong to the group"));
            }
            Ok(Assertion::ConeMember {
                cone,
                group: gname.to_string(),
                element: payload,
                expected: expected(Expected::Positive)?,
            })
        }
        other => Err(semantic(&name, format!("unknown assertion kind {:?}", other))),
    }
}

fn parse_element(name: &str, value: &Value, group: &GroupExpr) -> Result<Payload, CliError> {
    match group {
        GroupExpr::Fg(fg) => {
            let Value::Array(items) = value else {
                return Err(semantic(name, "elements of f.g. groups are coordinate arrays"));
            };
            let coords: Result<Vec<BigInt>, CliError> = items
                .iter()
                .map(|v| json_bigint(v).ok_or_else(|| semantic(name, "coordinates are integers")))
                .collect();
            let coords = coords?;
            if coords.len() != fg.num_generators() {
                return Err(semantic(
                    name,
                    format!("expected {} coordinates, got {}", fg.num_generators(), coords.len()),
                ));
            }
            Ok(Payload::Fg(coords))
        }
        GroupExpr::Dyadic | GroupExpr::Rational => json_rational(value)
            .map(Payload::Ratio)
            .ok_or_else(|| semantic(name, "elements here are integers or \"p/q\" strings")),
        GroupExpr::DirectSum(parts) => {
            let Value::Array(items) = value else {
                return Err(semantic(name, "elements of sums are arrays, one entry per part"));
            };
            if items.len() != parts.len() {
                return Err(semantic(
                    name,
                    format!("expected {} summand entries, got {}", parts.len(), items.len()),
                ));
            }
            let vals: Result<Vec<Payload>, CliError> = parts
                .iter()
                .zip(items)
                .map(|(g, v)| parse_element(name, v, g))
                .collect();
            Ok(Payload::Tuple(vals?))
        }
        _ => Err(semantic(name, "only finite-generator, dyadic, and rational elements parse")),
    }
}

/// Run the assertions of a document, producing one sub-verdict each.
pub fn run_assertions(doc: &InputDocument) -> Result<VerifyReport, CliError> {
    let mut report = VerifyReport::new("input-assertions")
        .param("assertions", doc.assertions.len())
        .param("version", doc.version);
    let to_cli = |e: crate::groupexpr::ExprError| semantic("assertion", e.to_string());

    for (i, assertion) in doc.assertions.iter().enumerate() {
        match assertion {
            Assertion::Square { top, bottom, left, right, expected } => {
                let sq = check_square(
                    &doc.homs[top],
                    &doc.homs[bottom],
                    &doc.homs[left],
                    &doc.homs[right],
                    8,
                )
                .map_err(to_cli)?;
                let outcome = if sq.commutes { Expected::Commutes } else { Expected::Fails };
                push_outcome(&mut report, i, "square", outcome, *expected, sq.witness);
            }
            Assertion::ExactAt { first, second, expected } => {
                let result =
                    exact_at_flat(&doc.homs[first], &doc.homs[second]).map_err(to_cli)?;
                let (outcome, witness) = match result {
                    None => (Expected::Exact, None),
                    Some(w) => (
                        Expected::Fails,
                        Some(Witness {
                            location: format!("assertion {}", i),
                            element: w,
                            lhs: "lies in exactly one of image/kernel".into(),
                            rhs: String::new(),
                        }),
                    ),
                };
                push_outcome(&mut report, i, "exact_at", outcome, *expected, witness);
            }
            Assertion::LambdaLinear { source, target, homs, bound, ops, expected } => {
                let src =
                    build_total_k(doc.groups[&source.0].clone(), doc.groups[&source.1].clone(), *bound)
                        .map_err(to_cli)?;
                let tgt =
                    build_total_k(doc.groups[&target.0].clone(), doc.groups[&target.1].clone(), *bound)
                        .map_err(to_cli)?;
                let graded = induced_graded_hom(&doc.homs[&homs.0], &doc.homs[&homs.1], &src, &tgt)
                    .map_err(to_cli)?;
                let result =
                    check_lambda_linear(&graded, &src, &tgt, ops, 6).map_err(to_cli)?;
                let outcome = if result.verdict().passed() {
                    Expected::Commutes
                } else {
                    Expected::Fails
                };
                let witness = result
                    .subchecks
                    .iter()
                    .find(|s| !s.verdict.passed())
                    .and_then(|s| s.witnesses.first().cloned());
                push_outcome(&mut report, i, "lambda_linear", outcome, *expected, witness);
            }
            Assertion::ConeMember { cone, group, element, expected } => {
                let el = GroupElement::new(doc.groups[group].clone(), element.clone())
                    .map_err(to_cli)?;
                let positive = cone_membership(&el, *cone).map_err(to_cli)?;
                let outcome = if positive { Expected::Positive } else { Expected::Negative };
                push_outcome(&mut report, i, "cone_member", outcome, *expected, None);
            }
        }
    }
    Ok(report)
}

fn push_outcome(
    report: &mut VerifyReport,
    index: usize,
    kind: &str,
    outcome: Expected,
    expected: Expected,
    witness: Option<Witness>,
) {
    let label = format!("assertion {} ({}): {}", index, kind, outcome.as_str());
    if outcome == expected {
        report.push(SubCheck {
            label,
            verdict: Verdict::Pass,
            mode: CheckMode::Exact,
            witnesses: witness.into_iter().collect(),
        });
    } else {
        report.push(SubCheck::fail(
            format!("{} (expected {})", label, expected.as_str()),
            CheckMode::Exact,
            witness.into_iter().collect(),
        ));
    }
}
