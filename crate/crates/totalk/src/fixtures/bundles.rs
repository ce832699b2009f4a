//! Construction of the named fixture bundles.

use super::maps::{self};
use super::{cones::ConeSpec, Result};
use crate::groupexpr::element::{GroupElement, Payload};
use crate::groupexpr::{ExprError, GroupExpr, Hom, IndexSet, TailMaps, TailRule};
use crate::lambda::{
    build_total_k, check_six_term, f_construction_k, FData, GradedFamily, GradedHom, TotalK,
};
use std::collections::BTreeMap;
use std::str::FromStr;

/// The addressable fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    A,
    B,
    D,
    Dprime,
    F1,
    F2,
    Achi,
    E1,
    E2,
    RemarkE1,
    RemarkE2,
}

impl FixtureName {
    pub const ALL: [FixtureName; 11] = [
        FixtureName::A,
        FixtureName::B,
        FixtureName::D,
        FixtureName::Dprime,
        FixtureName::F1,
        FixtureName::F2,
        FixtureName::Achi,
        FixtureName::E1,
        FixtureName::E2,
        FixtureName::RemarkE1,
        FixtureName::RemarkE2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::A => "A",
            FixtureName::B => "B",
            FixtureName::D => "D",
            FixtureName::Dprime => "Dprime",
            FixtureName::F1 => "F1",
            FixtureName::F2 => "F2",
            FixtureName::Achi => "Achi",
            FixtureName::E1 => "E1",
            FixtureName::E2 => "E2",
            FixtureName::RemarkE1 => "RemarkE1",
            FixtureName::RemarkE2 => "RemarkE2",
        }
    }
}

impl FromStr for FixtureName {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<FixtureName> {
        FixtureName::ALL
            .iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| ExprError::ShapeMismatch(format!("unknown fixture {:?}", s)))
    }
}

/// A distinguished map carried by a bundle.
#[derive(Debug, Clone)]
pub enum NamedMap {
    Graded(GradedHom),
    Level(Hom),
}

/// A named object at invariant level: its graded container, scale class,
/// distinguished maps, positivity cone, and (for extensions) the container
/// of its distinguished ideal.
#[derive(Debug, Clone)]
pub struct FixtureBundle {
    pub name: FixtureName,
    pub totalk: TotalK,
    pub scale: Option<GroupElement>,
    pub named_maps: BTreeMap<String, NamedMap>,
    pub cone: ConeSpec,
    /// For the extension fixtures: the bundle of the distinguished ideal.
    pub ideal: Option<Box<FixtureBundle>>,
}

/// Load a fixture at the given coefficient bound. Every loaded bundle's
/// six-term sequences are verified (exactly on finite-generator levels,
/// probe identities on structured ones).
pub fn load_fixture(name: FixtureName, bound: u64) -> Result<FixtureBundle> {
    let bundle = match name {
        FixtureName::A => bundle_a(bound)?,
        FixtureName::B => bundle_b(bound)?,
        FixtureName::D => bundle_limit(name, bound, false, IndexSet::NPlus)?,
        FixtureName::Dprime => bundle_limit(name, bound, true, IndexSet::NPlus)?,
        FixtureName::F1 => bundle_f(name, bound, false, IndexSet::NPlus)?,
        FixtureName::F2 => bundle_f(name, bound, true, IndexSet::NPlus)?,
        FixtureName::Achi => bundle_achi(bound)?,
        FixtureName::E1 => bundle_e(name, bound, false)?,
        FixtureName::E2 => bundle_e(name, bound, true)?,
        FixtureName::RemarkE1 => bundle_remark(name, bound, false)?,
        FixtureName::RemarkE2 => bundle_remark(name, bound, true)?,
    };
    let report = check_six_term(&bundle.totalk, 6)?;
    if !report.verdict().passed() {
        return Err(ExprError::NotAHom(format!(
            "fixture {} failed its six-term verification",
            name.as_str()
        )));
    }
    Ok(bundle)
}

fn dyadic_one() -> GroupElement {
    GroupElement::new(GroupExpr::Dyadic, Payload::int(1)).expect("1 is dyadic")
}

fn dyadic_three() -> GroupElement {
    GroupElement::new(GroupExpr::Dyadic, Payload::int(3)).expect("3 is dyadic")
}

/// The simple building block with nontrivial torsion:
/// `(K_0, K_0^+, [1], K_1) = (Z[1/4], Z[1/4] ∩ R_+, 1, Z_3)`.
fn bundle_a(bound: u64) -> Result<FixtureBundle> {
    let totalk = build_total_k(GroupExpr::Dyadic, GroupExpr::cyclic(3), bound)?;
    Ok(FixtureBundle {
        name: FixtureName::A,
        totalk,
        scale: Some(dyadic_one()),
        named_maps: BTreeMap::new(),
        cone: ConeSpec::ProductPositive,
        ideal: None,
    })
}

/// The torsion-free building block: `(Z[1/4], Z[1/4] ∩ R_+, 3)`, trivial K_1.
fn bundle_b(bound: u64) -> Result<FixtureBundle> {
    let totalk = build_total_k(GroupExpr::Dyadic, GroupExpr::trivial(), bound)?;
    Ok(FixtureBundle {
        name: FixtureName::B,
        totalk,
        scale: Some(dyadic_three()),
        named_maps: BTreeMap::new(),
        cone: ConeSpec::ProductPositive,
        ideal: None,
    })
}

/// The constant / alternating limit of the ×3 bonding maps.
fn bundle_limit(
    name: FixtureName,
    bound: u64,
    alternating: bool,
    index: IndexSet,
) -> Result<FixtureBundle> {
    let a = build_total_k(GroupExpr::Dyadic, GroupExpr::cyclic(3), bound)?;
    let b = build_total_k(GroupExpr::Dyadic, GroupExpr::trivial(), bound)?;
    let phi = maps::phi_graded(&a, &b, false)?;
    let family = if alternating {
        let phi_prime = maps::phi_graded(&a, &b, true)?;
        GradedFamily::from_periodic(&[phi, phi_prime], 1, bound)?
    } else {
        GradedFamily::from_periodic(&[phi], 1, bound)?
    };
    let family = reindex_family(family, index, bound, &a);
    let mut named_maps = BTreeMap::new();
    named_maps.insert("phi".to_string(), NamedMap::Graded(maps::phi_graded(&a, &b, false)?));
    named_maps
        .insert("phiprime".to_string(), NamedMap::Graded(maps::phi_graded(&a, &b, true)?));
    let data = FData { a, b, family };
    let totalk = f_construction_k(&data)?;
    let scale = unit_class(&totalk)?;
    Ok(FixtureBundle {
        name,
        totalk,
        scale: Some(scale),
        named_maps,
        cone: ConeSpec::ProductPositive,
        ideal: None,
    })
}

fn reindex_family(family: GradedFamily, index: IndexSet, bound: u64, _a: &TotalK) -> GradedFamily {
    if index == IndexSet::NPlus {
        return family;
    }
    let mut rules = BTreeMap::new();
    for j in [0u8, 1] {
        for n in std::iter::once(0u64).chain(2..=bound) {
            if let Some(r) = family.rule(j, n) {
                rules.insert((j, n), r.clone());
            }
        }
    }
    GradedFamily::from_rules(rules, index)
}

/// The unit class of a unital limit: the section of the base unit.
fn unit_class(tk: &TotalK) -> Result<GroupElement> {
    let k0 = tk
        .group(0, 0)
        .ok_or_else(|| ExprError::ShapeMismatch("no integral level".into()))?;
    match k0 {
        GroupExpr::TailProduct(_) => GroupElement::new(
            k0.clone(),
            Payload::tail(Payload::int(1), &[]),
        ),
        _ => GroupElement::new(k0.clone(), Payload::int(1)),
    }
}

/// The modified limits over the `ω`-family (constant vs sign-alternating at
/// levels divisible by three), with level-dependent stabilization.
fn bundle_f(
    name: FixtureName,
    bound: u64,
    primed_evens: bool,
    index: IndexSet,
) -> Result<FixtureBundle> {
    let a = build_total_k(GroupExpr::Dyadic, GroupExpr::cyclic(3), bound)?;
    let b = build_total_k(GroupExpr::Dyadic, GroupExpr::trivial(), bound)?;
    let family = omega_family(&a, &b, bound, primed_evens, index)?;
    let data = FData { a, b, family };
    let totalk = f_construction_k(&data)?;
    Ok(FixtureBundle {
        name,
        totalk,
        scale: None, // stable algebra: no unit class
        named_maps: BTreeMap::new(),
        cone: ConeSpec::ProductPositive,
        ideal: None,
    })
}

/// The `ω`-family as level rules: integral positions carry `×l_{⌈p/2⌉!}`,
/// coefficient level `k` settles at position `2k-1` with the constant
/// (unprimed) or odd/even-alternating (primed evens) level maps.
pub(super) fn omega_family(
    a: &TotalK,
    b: &TotalK,
    bound: u64,
    primed_evens: bool,
    index: IndexSet,
) -> Result<GradedFamily> {
    let mut rules = BTreeMap::new();

    // integral K_0: x_p = l_{⌈p/2⌉!}·x_0
    let dyadic_id = Hom::identity(GroupExpr::Dyadic);
    rules.insert(
        (0u8, 0u64),
        TailRule::new(1, vec![], TailMaps::LFact(Box::new(dyadic_id))),
    );
    // integral K_1: the target vanishes
    let k1a = a.group(1, 0).expect("present").clone();
    let k1b = b.group(1, 0).expect("present").clone();
    rules.insert((1u8, 0u64), TailRule::constant(1, Hom::zero(k1a, k1b)));

    for n in 2..=bound {
        let start = 2 * n - 1;
        let unprimed = maps::omega_level(a, b, n, n, false)?;
        let k0_rule = if primed_evens {
            let primed = maps::omega_level(a, b, n, n, true)?;
            TailRule::new(start, vec![], TailMaps::Periodic(vec![unprimed, primed]))
        } else {
            TailRule::constant(start, unprimed)
        };
        rules.insert((0u8, n), k0_rule);

        let k1a = a.group(1, n).expect("present").clone();
        let k1b = b.group(1, n).expect("present").clone();
        rules.insert((1u8, n), TailRule::constant(start, Hom::zero(k1a, k1b)));
    }
    Ok(GradedFamily::from_rules(rules, index))
}

/// The target of the extension story: `K_0 = Q ⊕ (boldQ/boldZ)` with the
/// simplex-like cone, trivial `K_1`, unit class `(1, 0)`.
fn bundle_achi(bound: u64) -> Result<FixtureBundle> {
    let bold_z = maps::bold_z();
    let bold_q = maps::bold_q();
    let quotient = GroupExpr::quotient(bold_q.clone(), bold_z)?;
    let k0 = GroupExpr::sum(vec![GroupExpr::Rational, quotient]);
    let totalk = build_total_k(k0.clone(), GroupExpr::trivial(), bound)?;
    let scale = GroupElement::new(
        k0,
        Payload::Tuple(vec![
            Payload::int(1),
            Payload::Coset(Box::new(Payload::tail(Payload::int(0), &[]))),
        ]),
    )?;
    Ok(FixtureBundle {
        name: FixtureName::Achi,
        totalk,
        scale: Some(scale),
        named_maps: BTreeMap::new(),
        cone: ConeSpec::StrictPositiveOrZero,
        ideal: None,
    })
}

/// The unital essential extensions over the limit ideals: identified
/// `K_* = (Q ⊕ boldQ, Z_3)`, scale `(1,0)`, the extension cone, and the
/// distinguished maps (inclusion, quotient map, and the extension data).
fn bundle_e(name: FixtureName, bound: u64, primed: bool) -> Result<FixtureBundle> {
    // the ideal: the limit container in its two-sided indexing
    let ideal_name = if primed { FixtureName::F2 } else { FixtureName::F1 };
    let a = build_total_k(GroupExpr::Dyadic, GroupExpr::cyclic(3), bound)?;
    let b = build_total_k(GroupExpr::Dyadic, GroupExpr::trivial(), bound)?;
    let family = omega_family(&a, &b, bound, primed, IndexSet::ZNonzero)?;
    let ideal_tk = f_construction_k(&FData { a, b, family })?;
    let ideal = FixtureBundle {
        name: ideal_name,
        totalk: ideal_tk.clone(),
        scale: None,
        named_maps: BTreeMap::new(),
        cone: ConeSpec::ProductPositive,
        ideal: None,
    };

    let bold_q = maps::bold_q();
    let k0_e = GroupExpr::sum(vec![GroupExpr::Rational, bold_q.clone()]);
    let totalk = build_total_k(k0_e.clone(), GroupExpr::cyclic(3), bound)?;

    let scale = GroupElement::new(
        k0_e.clone(),
        Payload::Tuple(vec![Payload::int(1), Payload::tail(Payload::int(0), &[])]),
    )?;

    let mut named_maps = BTreeMap::new();
    // extension-class data: 0 → K_0(B) → (Q⊕boldQ,(1,0)) → K_0(A_χ) → 0
    let rho_ext = maps::iota_integral(&ideal_tk, &totalk)?;
    named_maps.insert("rho_ext".to_string(), NamedMap::Level(rho_ext.clone()));
    let nu = Hom::identity(GroupExpr::cyclic(3));
    named_maps.insert("nu".to_string(), NamedMap::Level(nu));
    let varpi = maps::varpi(&totalk)?;
    named_maps.insert("varpi".to_string(), NamedMap::Level(varpi.clone()));
    verify_extension_sequence(&rho_ext, &varpi)?;

    // graded inclusion and quotient maps
    let achi = bundle_achi(bound)?;
    let iota = maps::iota_graded(&ideal_tk, &totalk)?;
    named_maps.insert("iota".to_string(), NamedMap::Graded(iota));
    let pi = maps::pi_graded(&totalk, &achi.totalk)?;
    named_maps.insert("pi".to_string(), NamedMap::Graded(pi));

    Ok(FixtureBundle {
        name,
        totalk,
        scale: Some(scale),
        named_maps,
        cone: ConeSpec::TotalExtensionCone,
        ideal: Some(Box::new(ideal)),
    })
}

/// Probe-level short-exactness of the stored extension class
/// `0 → K_0(B) → Q⊕boldQ → K_0(A_χ) → 0`: the composite vanishes, the
/// inclusion is injective on probes, kernel membership in the middle forces
/// an ideal-class preimage, and the quotient map is onto the coset probes.
fn verify_extension_sequence(rho_ext: &Hom, varpi: &Hom) -> Result<()> {
    use crate::groupexpr::element::{contains, payload_eq, probes, zero_payload, Payload as P};
    use crate::groupexpr::hom::{apply, homs_equal, HomEquality};

    let composite = rho_ext.then(varpi)?;
    let zero = Hom::zero(composite.domain.clone(), composite.codomain.clone());
    if !matches!(homs_equal(&composite, &zero, 6)?, HomEquality::Equal) {
        return Err(ExprError::NotAHom("extension composite does not vanish".into()));
    }
    for p in probes(&rho_ext.domain, 6)? {
        let x = GroupElement::new(rho_ext.domain.clone(), p)?;
        if !x.is_zero()? && rho_ext.apply(&x)?.is_zero()? {
            return Err(ExprError::NotAHom("extension inclusion is not injective".into()));
        }
    }
    // exactness in the middle on probes: a middle class killed by the
    // quotient has all-dyadic second coordinate, hence lifts along the
    // inclusion; re-evaluating the inclusion must reproduce it
    for p in probes(&varpi.domain, 6)? {
        let image = apply(varpi, &p)?;
        if !payload_eq(&varpi.codomain, &image, &zero_payload(&varpi.codomain))? {
            continue;
        }
        let P::Tuple(parts) = &p else {
            return Err(ExprError::ShapeMismatch("middle probes are pairs".into()));
        };
        if !contains(&rho_ext.domain, &parts[1])? {
            return Err(ExprError::NotAHom(
                "kernel probe of the quotient has no ideal-class preimage".into(),
            ));
        }
        let lifted = apply(rho_ext, &parts[1])?;
        if !payload_eq(&varpi.domain, &lifted, &p)? {
            return Err(ExprError::NotAHom("inclusion does not reproduce the kernel".into()));
        }
    }
    // surjectivity on coset probes: ambient representatives are preimages
    for p in probes(&varpi.codomain, 6)? {
        let P::Tuple(parts) = &p else { continue };
        let P::Coset(rep) = &parts[1] else { continue };
        let lift = P::Tuple(vec![parts[0].clone(), rep.as_ref().clone()]);
        let image = apply(varpi, &lift)?;
        if !payload_eq(&varpi.codomain, &image, &p)? {
            return Err(ExprError::NotAHom("quotient map misses a coset probe".into()));
        }
    }
    Ok(())
}

/// The boundary-counterexample pair: only the levels stated for it are
/// populated (`K_1` as a bonded tail of `Z ⊕ ∏ Z_3`, the coefficient levels
/// it determines); the integral `K_0` is not specified and stays absent.
fn bundle_remark(name: FixtureName, bound: u64, second: bool) -> Result<FixtureBundle> {
    use crate::groupexpr::reduce::coeff_reduce;

    let z = GroupExpr::free(1);
    let z3 = GroupExpr::cyclic(3);
    let red3 = Hom::matrix_i64(z.clone(), z3.clone(), &[1])?;
    let rule_map = if second { red3.negated() } else { red3 };
    let k1 = GroupExpr::tail_product(
        z.clone(),
        z3.clone(),
        TailRule::constant(1, rule_map),
        IndexSet::NPlus,
    );

    let mut groups: BTreeMap<(u8, u64), Option<GroupExpr>> = BTreeMap::new();
    let mut rho: BTreeMap<(u8, u64), Hom> = BTreeMap::new();
    let mut kappa_up: BTreeMap<(u8, u64, u64), Hom> = BTreeMap::new();

    groups.insert((0, 0), None); // not specified
    groups.insert((1, 0), Some(k1.clone()));

    for n in 2..=bound {
        // K_0(·;Z_n): a direct sum of Z_3's when 3 | n, zero otherwise
        let k0n = if n % 3 == 0 {
            GroupExpr::tail_product(
                GroupExpr::trivial(),
                z3.clone(),
                TailRule::constant(1, Hom::zero(GroupExpr::trivial(), z3.clone())),
                IndexSet::NPlus,
            )
        } else {
            GroupExpr::trivial()
        };
        groups.insert((0, n), Some(k0n));
        // K_1(·;Z_n) = K_1 / n·K_1
        let reduced = coeff_reduce(&k1, n)?;
        groups.insert((1, n), Some(reduced.tensor.clone()));
        rho.insert((1, n), reduced.reduction);
    }
    for m in 2..=bound {
        for n in 2..=bound {
            if m * n > bound {
                continue;
            }
            if let Ok(k) = crate::groupexpr::reduce::tensor_kappa_up(&k1, m, n) {
                kappa_up.insert((1, m, n), k);
            }
        }
    }

    let totalk = TotalK::from_parts(bound, groups, rho, BTreeMap::new(), kappa_up, BTreeMap::new())?;
    Ok(FixtureBundle {
        name,
        totalk,
        scale: None,
        named_maps: BTreeMap::new(),
        cone: ConeSpec::Trivial,
        ideal: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupexpr::element::coordinate_value;
    use crate::lambda::check_lambda_linear;

    fn cyclic_pair(l: u64, t: u64) -> GroupExpr {
        GroupExpr::sum(vec![GroupExpr::cyclic(l), GroupExpr::cyclic(t)])
    }

    #[test]
    fn building_block_tables() {
        let a = load_fixture(FixtureName::A, 12).unwrap();
        let b = load_fixture(FixtureName::B, 12).unwrap();
        for k in 2..=12u64 {
            let lk = super::super::l(k);
            let expected_k0 = if k % 3 == 0 { cyclic_pair(lk, 3) } else { cyclic_pair(lk, 1) };
            assert_eq!(a.totalk.group(0, k).unwrap(), &expected_k0, "K_0(A;Z_{})", k);
            let expected_k1 =
                if k % 3 == 0 { cyclic_pair(3, 1) } else { GroupExpr::sum(vec![GroupExpr::trivial(), GroupExpr::trivial()]) };
            assert_eq!(a.totalk.group(1, k).unwrap(), &expected_k1, "K_1(A;Z_{})", k);
            assert_eq!(b.totalk.group(0, k).unwrap(), &cyclic_pair(lk, 1), "K_0(B;Z_{})", k);
            assert!(b.totalk.group(1, k).unwrap().is_trivial(), "K_1(B;Z_{})", k);
        }
        // scales
        assert_eq!(a.scale.unwrap().to_string(), "1");
        assert_eq!(b.scale.unwrap().to_string(), "3");
    }

    #[test]
    fn limit_fixture_rules() {
        let f2 = load_fixture(FixtureName::F2, 9).unwrap();
        // K_0(;Z_9): base (Z_9 ⊕ Z_3), coordinates Z_9, rule from position 17
        let GroupExpr::TailProduct(t) = f2.totalk.group(0, 9).unwrap() else {
            panic!("tail product expected")
        };
        assert_eq!(t.rule.start, 17);
        // the tail product element with base ([0]_9, [1]_3) has default
        // coordinates (-1)^{p+1}·[3]_9 from the start position
        let base = Payload::Tuple(vec![Payload::fg(&[0]), Payload::fg(&[1])]);
        let x = Payload::tail(base, &[]);
        let v17 = coordinate_value(t, &x, 17).unwrap();
        let v18 = coordinate_value(t, &x, 18).unwrap();
        assert_eq!(crate::groupexpr::element::render(&t.component, &v17), "[3]_9");
        assert_eq!(crate::groupexpr::element::render(&t.component, &v18), "[6]_9");

        // K_1 of the limits is the torsion of the first building block
        assert_eq!(
            f2.totalk.group(1, 0).unwrap(),
            &GroupExpr::cyclic(3),
            "K_1 of the limit"
        );

        // integral rule: positions 2j-1 and 2j both carry the odd part of j!
        let GroupExpr::TailProduct(t0) = f2.totalk.group(0, 0).unwrap() else {
            panic!("integral level is a bonded tail")
        };
        let one = Payload::tail(Payload::int(1), &[]);
        for (pos, expected) in [(1, 1i64), (2, 1), (5, 3), (6, 3), (9, 15), (10, 15)] {
            let v = coordinate_value(t0, &one, pos).unwrap();
            let want = Payload::int(expected);
            assert!(
                crate::groupexpr::element::payload_eq(&t0.component, &v, &want).unwrap(),
                "integral rule at position {}",
                pos
            );
        }
    }

    #[test]
    fn extension_fixture_proposition() {
        let e1 = load_fixture(FixtureName::E1, 12).unwrap();
        for n in 2..=12u64 {
            let k0 = e1.totalk.group(0, n).unwrap();
            let k1 = e1.totalk.group(1, n).unwrap();
            if n % 3 == 0 {
                assert_eq!(k0, &GroupExpr::sum(vec![GroupExpr::trivial(), GroupExpr::cyclic(3)]));
                assert_eq!(k1, &GroupExpr::sum(vec![GroupExpr::cyclic(3), GroupExpr::trivial()]));
            } else {
                assert!(k0.is_trivial(), "K_0(E;Z_{})", n);
                assert!(k1.is_trivial(), "K_1(E;Z_{})", n);
            }
        }
        assert!(e1.ideal.is_some());
    }

    #[test]
    fn gamma_is_boundary_and_kappa_compatible_on_limits() {
        let f1 = load_fixture(FixtureName::F1, 6).unwrap();
        let f2 = load_fixture(FixtureName::F2, 6).unwrap();
        let gamma = maps::gamma_map(&f1.totalk, &f2.totalk).unwrap();
        let report = check_lambda_linear(
            &gamma,
            &f1.totalk,
            &f2.totalk,
            &[crate::lambda::OpFamily::Beta, crate::lambda::OpFamily::Kappa],
            6,
        )
        .unwrap();
        assert!(report.verdict().passed(), "{:?}", report.subchecks.iter().filter(|s| !s.verdict.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn two_sided_membership() {
        use crate::groupexpr::element::contains;
        let bz = maps::bold_z();
        // base 1 with the factorial tail everywhere: a member
        assert!(contains(&bz, &Payload::tail(Payload::int(1), &[])).unwrap());
        // coordinates are indexed by nonzero integers on both sides
        let two_sided = Payload::tail(
            Payload::int(1),
            &[(-2, Payload::int(7)), (3, Payload::ratio(1, 4))],
        );
        assert!(contains(&bz, &two_sided).unwrap());
        // a rational non-dyadic entry is not a member
        let bad = Payload::tail(Payload::int(1), &[(1, Payload::ratio(1, 3))]);
        assert!(!contains(&bz, &bad).unwrap());
        // coordinate zero does not exist in the index set
        let zero_coord = Payload::tail(Payload::int(1), &[(0, Payload::int(1))]);
        assert!(contains(&bz, &zero_coord).is_err());
        // and the factorial rule reads off |j|: positions -3 and +3 agree
        let GroupExpr::TailProduct(t) = &bz else { panic!() };
        let base_one = Payload::tail(Payload::int(1), &[]);
        let v_neg = crate::groupexpr::element::coordinate_value(t, &base_one, -3).unwrap();
        let v_pos = crate::groupexpr::element::coordinate_value(t, &base_one, 3).unwrap();
        assert!(crate::groupexpr::element::payload_eq(&t.component, &v_neg, &v_pos).unwrap());
        assert!(
            crate::groupexpr::element::payload_eq(&t.component, &v_pos, &Payload::int(3)).unwrap()
        );
    }

    #[test]
    fn remark_fixture_and_zeta() {
        let r1 = load_fixture(FixtureName::RemarkE1, 6).unwrap();
        let r2 = load_fixture(FixtureName::RemarkE2, 6).unwrap();
        assert!(r1.totalk.group(0, 0).is_none(), "integral K_0 is unspecified");
        let zeta = maps::zeta_map(&r1.totalk, &r2.totalk).unwrap();
        // ζ_0^1 (a,(a_m)) = (a,(-a_m)): check on the element (1, defaults)
        let k1 = r1.totalk.group(1, 0).unwrap();
        let x = GroupElement::new(k1.clone(), Payload::tail(Payload::fg(&[1]), &[])).unwrap();
        let y = zeta.component(1, 0).unwrap().apply(&x).unwrap();
        let GroupExpr::TailProduct(t) = r2.totalk.group(1, 0).unwrap() else { panic!() };
        let v1 = coordinate_value(t, &y.payload, 1).unwrap();
        // in the second container the rule default at base 1 is -[1]_3 = [2]_3,
        // and ζ flips the +[1]_3 value of the first container onto it
        assert_eq!(crate::groupexpr::element::render(&t.component, &v1), "[2]_3");
    }
}

#[cfg(test)]
mod map_tests {
    use super::*;
    use crate::fixtures::{omega_map, zeta_map};
    use crate::groupexpr::HomKind;
    use crate::lambda::restrict_to_kstar;

    #[test]
    fn omega_map_examples() {
        // at level 3 the unprimed map carries the torsion class identically
        let m = omega_map(3, false, 3, 9).unwrap();
        let gen = GroupElement::new(
            m.domain.clone(),
            Payload::Tuple(vec![Payload::fg(&[0]), Payload::fg(&[1])]),
        )
        .unwrap();
        assert_eq!(m.apply(&gen).unwrap().to_string(), "[1]_3");
        // the primed variant flips it
        let mp = omega_map(3, true, 3, 9).unwrap();
        assert_eq!(mp.apply(&gen).unwrap().to_string(), "[2]_3");
        // away from multiples of three the level map vanishes
        let z = omega_map(4, false, 5, 9).unwrap();
        assert!(z.is_zero_kind());
        // the integral level is multiplication by the odd factorial part
        let int = omega_map(4, false, 0, 9).unwrap();
        let one = GroupElement::new(GroupExpr::Dyadic, Payload::int(1)).unwrap();
        assert_eq!(int.apply(&one).unwrap().to_string(), "3"); // l_{4!} = 3
        assert!(omega_map(0, false, 3, 9).is_err());
    }

    #[test]
    fn gamma_restricts_to_identity() {
        let f1 = load_fixture(FixtureName::F1, 6).unwrap();
        let f2 = load_fixture(FixtureName::F2, 6).unwrap();
        let gamma = maps::gamma_map(&f1.totalk, &f2.totalk).unwrap();
        let (g0, g1) = restrict_to_kstar(&gamma);
        assert!(matches!(g0.unwrap().kind, HomKind::Identity));
        assert!(matches!(g1.unwrap().kind, HomKind::Identity));
        // torsion components: identity where the level survives
        assert!(matches!(gamma.component(1, 3).unwrap().kind, HomKind::Identity));
        assert!(matches!(gamma.component(1, 5).unwrap().kind, HomKind::Identity));
        assert!(gamma.component(1, 5).unwrap().domain.is_trivial());
    }

    #[test]
    fn zeta_components() {
        let r1 = load_fixture(FixtureName::RemarkE1, 9).unwrap();
        let r2 = load_fixture(FixtureName::RemarkE2, 9).unwrap();
        let zeta = zeta_map(&r1.totalk, &r2.totalk).unwrap();
        // sign flip on the coefficient levels of the even part
        assert!(matches!(zeta.component(0, 9).unwrap().kind, HomKind::Negate));
        assert!(matches!(zeta.component(0, 3).unwrap().kind, HomKind::Negate));
        // no integral even part is specified
        assert!(zeta.component(0, 0).is_none());
        let (z0, z1) = restrict_to_kstar(&zeta);
        assert!(z0.is_none());
        assert!(z1.is_some());
    }
}
