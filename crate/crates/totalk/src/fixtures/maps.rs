//! The distinguished maps of the fixtures.

use super::{l, l_factorial, Result};
use crate::groupexpr::{
    CoordMaps, ExprError, GroupExpr, Hom, IndexSet, TailMaps, TailRule,
};
use crate::lambda::{build_total_k, induced_graded_hom, GradedHom, TotalK};
use num_rational::BigRational;
use std::collections::BTreeMap;

/// The two-sided-indexed subgroup of `Z[1/2] ⊕ ∏ Z[1/2]` with tail rule
/// `a_j = l_{|j|!}·a`.
pub fn bold_z() -> GroupExpr {
    GroupExpr::tail_product(
        GroupExpr::Dyadic,
        GroupExpr::Dyadic,
        TailRule::new(1, vec![], TailMaps::LFact(Box::new(Hom::identity(GroupExpr::Dyadic)))),
        IndexSet::ZNonzero,
    )
}

/// The rational version of [`bold_z`], with the same tail rule (so the
/// inclusion exists).
pub fn bold_q() -> GroupExpr {
    GroupExpr::tail_product(
        GroupExpr::Rational,
        GroupExpr::Rational,
        TailRule::new(1, vec![], TailMaps::LFact(Box::new(Hom::identity(GroupExpr::Rational)))),
        IndexSet::ZNonzero,
    )
}

/// Level component of the `×3` bonding map pair at a coefficient level:
/// `([x], [y]) ↦ 3[x] ± y·[l_n/3]` when `3 | n`, multiplication by three
/// otherwise.
pub fn phi_level(a: &TotalK, b: &TotalK, n: u64, primed: bool) -> Result<Hom> {
    let dom = a.group(0, n).expect("building blocks are fully populated").clone();
    let cod = b.group(0, n).expect("building blocks are fully populated").clone();
    let ln = l(n) as i64;
    if n % 3 == 0 {
        let iota = if primed { -(ln / 3) } else { ln / 3 };
        Hom::matrix_i64(dom, cod, &[3, iota])
    } else if ln > 1 {
        Hom::matrix_i64(dom, cod, &[3])
    } else {
        Ok(Hom::zero(dom, cod))
    }
}

/// The graded bonding map of the constant/alternating limit pair.
pub fn phi_graded(a: &TotalK, b: &TotalK, primed: bool) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    let k0a = a.group(0, 0).expect("present").clone();
    components.insert(
        (0u8, 0u64),
        Hom::scalar_int(k0a, 3),
    );
    components.insert(
        (1u8, 0u64),
        Hom::zero(
            a.group(1, 0).expect("present").clone(),
            b.group(1, 0).expect("present").clone(),
        ),
    );
    for n in a.coeff_levels() {
        components.insert((0, n), phi_level(a, b, n, primed)?);
        components.insert(
            (1, n),
            Hom::zero(
                a.group(1, n).expect("present").clone(),
                b.group(1, n).expect("present").clone(),
            ),
        );
    }
    GradedHom::new(a.bound(), components).validated(a, b)
}

/// Level component of the modified family at a coefficient level `k`:
/// `(0, ±ι_{j,k})` with `ι_{j,k}([x]_3) = [x·l_k/3]_{l_k}` when `3 | k`, the
/// zero map otherwise. Independent of `j` at fixed level.
pub fn omega_level(a: &TotalK, b: &TotalK, _j: u64, k: u64, primed: bool) -> Result<Hom> {
    let dom = a.group(0, k).expect("building blocks are fully populated").clone();
    let cod = b.group(0, k).expect("building blocks are fully populated").clone();
    let lk = l(k) as i64;
    if k % 3 == 0 {
        let iota = if primed { -(lk / 3) } else { lk / 3 };
        Hom::matrix_i64(dom, cod, &[0, iota])
    } else {
        Ok(Hom::zero(dom, cod))
    }
}

/// `K_0(ω_j; Z_k)` (or the primed variant) on freshly built building blocks:
/// the integral level (`k = 0`) is multiplication by `l_{j!}`.
pub fn omega_map(j: u64, primed: bool, k: u64, bound: u64) -> Result<Hom> {
    if j < 1 {
        return Err(ExprError::ShapeMismatch("family index must be at least 1".into()));
    }
    if k == 0 {
        let q = BigRational::from(l_factorial(j));
        return Hom::scalar_mul(GroupExpr::Dyadic, q);
    }
    if k < 2 || k > bound {
        return Err(ExprError::ShapeMismatch(format!(
            "level {} is outside the bound {}",
            k, bound
        )));
    }
    let a = build_total_k(GroupExpr::Dyadic, GroupExpr::cyclic(3), bound)?;
    let b = build_total_k(GroupExpr::Dyadic, GroupExpr::trivial(), bound)?;
    omega_level(&a, &b, j, k, primed)
}

/// The full graded map of `ω_j` (or `ω_j'`) between the building blocks.
pub fn omega_graded(j: u64, primed: bool, a: &TotalK, b: &TotalK) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    let q = BigRational::from(l_factorial(j));
    components.insert((0u8, 0u64), Hom::scalar_mul(a.group(0, 0).expect("present").clone(), q)?);
    components.insert(
        (1u8, 0u64),
        Hom::zero(
            a.group(1, 0).expect("present").clone(),
            b.group(1, 0).expect("present").clone(),
        ),
    );
    for n in a.coeff_levels() {
        components.insert((0, n), omega_level(a, b, j, n, primed)?);
        components.insert(
            (1, n),
            Hom::zero(
                a.group(1, n).expect("present").clone(),
                b.group(1, n).expect("present").clone(),
            ),
        );
    }
    GradedHom::new(a.bound(), components).validated(a, b)
}

/// The graded ordered isomorphism between the two limit containers: identity
/// on integral levels and on bases, sign flip on even coordinate positions
/// at every coefficient level.
pub fn gamma_map(source: &TotalK, target: &TotalK) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    for j in [0u8, 1] {
        for n in std::iter::once(0u64).chain(source.coeff_levels()) {
            let (Some(dom), Some(cod)) = (source.group(j, n), target.group(j, n)) else {
                continue;
            };
            let component = match (dom, cod) {
                // coefficient levels that survive as genuine tail products
                // get the coordinate flip; everything else is carried by the
                // identity (equal collapsed or integral presentations)
                (GroupExpr::TailProduct(d), GroupExpr::TailProduct(_)) if n > 0 => {
                    let comp = d.component.clone();
                    Hom::coord_map(
                        dom.clone(),
                        cod.clone(),
                        Hom::identity(d.base.clone()),
                        CoordMaps::alternating(
                            Hom::identity(comp.clone()),
                            Hom::negation(comp),
                        ),
                    )?
                }
                _ => {
                    if dom != cod {
                        return Err(ExprError::DomainMismatch(format!(
                            "levels (j={}, n={}) differ but are not tail products",
                            j, n
                        )));
                    }
                    Hom::identity(dom.clone())
                }
            };
            components.insert((j, n), component);
        }
    }
    GradedHom::new(source.bound(), components).validated(source, target)
}

/// The identification map between the two extension containers (their
/// presentations coincide, so it is the identity at every level).
pub fn eta_map(e1: &TotalK, e2: &TotalK) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    for j in [0u8, 1] {
        for n in std::iter::once(0u64).chain(e1.coeff_levels()) {
            let (Some(dom), Some(cod)) = (e1.group(j, n), e2.group(j, n)) else {
                continue;
            };
            if dom != cod {
                return Err(ExprError::DomainMismatch(
                    "extension containers are expected to coincide".into(),
                ));
            }
            components.insert((j, n), Hom::identity(dom.clone()));
        }
    }
    GradedHom::new(e1.bound(), components).validated(e1, e2)
}

/// The ordered isomorphism of the boundary-counterexample pair:
/// identity on `K_0`-data where stated, coordinatewise sign flip on the
/// `K_1` tails, global sign flip on the `K_0` coefficient levels.
pub fn zeta_map(re1: &TotalK, re2: &TotalK) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    for j in [0u8, 1] {
        for n in std::iter::once(0u64).chain(re1.coeff_levels()) {
            let (Some(dom), Some(cod)) = (re1.group(j, n), re2.group(j, n)) else {
                continue;
            };
            let component = if j == 1 {
                // (a, (a_m)) ↦ (a, (-a_m))
                match (dom, cod) {
                    (GroupExpr::TailProduct(d), GroupExpr::TailProduct(_)) => Hom::coord_map(
                        dom.clone(),
                        cod.clone(),
                        Hom::identity(d.base.clone()),
                        CoordMaps::constant(Hom::negation(d.component.clone())),
                    )?,
                    _ => {
                        if dom != cod {
                            return Err(ExprError::DomainMismatch(
                                "counterexample levels do not align".into(),
                            ));
                        }
                        Hom::identity(dom.clone())
                    }
                }
            } else if n == 0 {
                if dom != cod {
                    return Err(ExprError::DomainMismatch(
                        "counterexample levels do not align".into(),
                    ));
                }
                Hom::identity(dom.clone())
            } else {
                // ζ_n^0 = -id on the coefficient levels
                if dom != cod {
                    return Err(ExprError::DomainMismatch(
                        "counterexample levels do not align".into(),
                    ));
                }
                Hom::negation(dom.clone())
            };
            components.insert((j, n), component);
        }
    }
    GradedHom::new(re1.bound(), components).validated(re1, re2)
}

/// Integral inclusion of the ideal: `boldZ → Q ⊕ boldQ`, the canonical
/// embedding into the second summand.
pub fn iota_integral(ideal: &TotalK, e: &TotalK) -> Result<Hom> {
    let dom = ideal.group(0, 0).expect("present").clone();
    let cod = e.group(0, 0).expect("present").clone();
    let GroupExpr::DirectSum(parts) = &cod else {
        return Err(ExprError::ShapeMismatch("extension K_0 must be a sum".into()));
    };
    let embed = Hom::canonical_embed(dom, parts[1].clone())?;
    embed.then(&Hom::inject(cod.clone(), 1)?)
}

/// The graded inclusion of the ideal into the extension: the canonical
/// embedding at the integral level, the identity on torsion, and the
/// boundary-compatible collapse onto the surviving Tor class at coefficient
/// levels.
pub fn iota_graded(ideal: &TotalK, e: &TotalK) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    components.insert((0u8, 0u64), iota_integral(ideal, e)?);
    {
        let dom = ideal.group(1, 0).expect("present").clone();
        let cod = e.group(1, 0).expect("present").clone();
        if dom != cod {
            return Err(ExprError::DomainMismatch("torsion levels must coincide".into()));
        }
        components.insert((1u8, 0u64), Hom::identity(dom));
    }
    for n in ideal.coeff_levels() {
        // K_0 level: everything except the torsion class dies; the class is
        // the second coordinate of the base of the ideal level
        let dom = ideal.group(0, n).expect("present").clone();
        let cod = e.group(0, n).expect("present").clone();
        let component = if cod.is_trivial() {
            Hom::zero(dom, cod)
        } else {
            // dom is the tail product over base (Z_{l_n} ⊕ Z_3) (or the
            // collapsed base when the coordinate groups vanish)
            let to_base = match &dom {
                GroupExpr::TailProduct(_) => Some(Hom::tail_base(dom.clone())?),
                _ => None,
            };
            let base = to_base.as_ref().map(|h| h.codomain.clone()).unwrap_or(dom.clone());
            let tor_part = Hom::project(base.clone(), 1)?;
            let into_e = Hom::inject(cod.clone(), 1)?;
            let mut h = tor_part.then(&into_e)?;
            if let Some(tb) = to_base {
                h = tb.then(&h)?;
            }
            h
        };
        components.insert((0, n), component);

        let dom = ideal.group(1, n).expect("present").clone();
        let cod = e.group(1, n).expect("present").clone();
        if dom == cod {
            components.insert((1, n), Hom::identity(dom));
        } else if cod.is_trivial() {
            components.insert((1, n), Hom::zero(dom, cod));
        } else {
            return Err(ExprError::DomainMismatch(format!(
                "torsion coefficient level {} does not align",
                n
            )));
        }
    }
    GradedHom::new(ideal.bound(), components).validated(ideal, e)
}

/// Integral quotient map `Q ⊕ boldQ → Q ⊕ boldQ/boldZ`.
pub fn varpi(e: &TotalK) -> Result<Hom> {
    let dom = e.group(0, 0).expect("present").clone();
    let GroupExpr::DirectSum(parts) = &dom else {
        return Err(ExprError::ShapeMismatch("extension K_0 must be a sum".into()));
    };
    let quotient = GroupExpr::quotient(parts[1].clone(), bold_z())?;
    let cod = GroupExpr::sum(vec![GroupExpr::Rational, quotient.clone()]);
    Hom::sum_map(
        dom.clone(),
        cod,
        vec![Hom::identity(GroupExpr::Rational), Hom::quotient_map(quotient)?],
    )
}

/// The graded quotient map onto the target container, induced functorially
/// by the integral data.
pub fn pi_graded(e: &TotalK, achi: &TotalK) -> Result<GradedHom> {
    let pi0 = varpi(e)?;
    let pi1 = Hom::zero(
        e.group(1, 0).expect("present").clone(),
        achi.group(1, 0).expect("present").clone(),
    );
    induced_graded_hom(&pi0, &pi1, e, achi)
}
