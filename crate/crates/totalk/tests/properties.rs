//! Property tests for the structural invariants of each layer: normal forms,
//! structured-group arithmetic, homomorphism equality, and the
//! coefficient-operation calculus.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use totalk::abgroup::{
    cokernel_presentation, enumerate_automorphisms, is_exact_at, smith_normal_form, FgAbGroup,
    FgHom, IntMatrix,
};
use totalk::groupexpr::element::{
    coordinate_value, payload_eq, zero_payload, GroupElement, Payload,
};
use totalk::groupexpr::{
    homs_equal, CoordMaps, GroupExpr, Hom, HomEquality, IndexSet, TailMaps, TailRule,
};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-50i64..=50, rows * cols)
            .prop_map(move |entries| IntMatrix::from_i64(rows, cols, &entries))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_equation_and_chain(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&snf.s, &snf.u.mul(&m).mul(&snf.v));
        prop_assert_eq!(snf.u.determinant().abs(), BigInt::from(1));
        prop_assert_eq!(snf.v.determinant().abs(), BigInt::from(1));
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", diag);
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn cokernel_stable_under_normal_form(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(cokernel_presentation(&m), cokernel_presentation(&snf.s));
    }
}

/// Brute-force automorphism count: every endomorphism matrix candidate,
/// tested for bijectivity by enumerating its action on all elements.
fn brute_force_automorphism_count(g: &FgAbGroup) -> usize {
    use num_integer::Integer;
    let t = g.torsion().len();
    if t == 0 {
        return 1;
    }
    let elements = g.elements().expect("finite");
    let mut counts: Vec<u64> = Vec::new();
    let mut steps: Vec<BigInt> = Vec::new();
    for i in 0..t {
        for j in 0..t {
            let di = &g.torsion()[i];
            let dj = &g.torsion()[j];
            let gcd = di.gcd(dj);
            steps.push(di / &gcd);
            counts.push(u64::try_from(&gcd).unwrap());
        }
    }
    let mut odometer = vec![0u64; t * t];
    let mut found = 0usize;
    'outer: loop {
        let entries: Vec<BigInt> =
            odometer.iter().zip(&steps).map(|(&k, s)| BigInt::from(k) * s).collect();
        let m = IntMatrix::new(t, t, entries);
        // bijective on elements?
        let mut images = std::collections::HashSet::new();
        for e in &elements {
            images.insert(g.canonicalize(&m.mul_vec(e)));
        }
        if images.len() == elements.len() {
            found += 1;
        }
        let mut pos = t * t;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < counts[pos] {
                break;
            }
            odometer[pos] = 0;
        }
    }
    found
}

#[test]
fn automorphism_counts_match_brute_force() {
    let groups: Vec<Vec<u64>> = vec![
        vec![],
        vec![2],
        vec![9],
        vec![2, 2],
        vec![2, 4],
        vec![3, 3],
        vec![2, 2, 2],
        vec![4, 8],
        vec![2, 4, 8],
    ];
    for torsion in groups {
        let g = FgAbGroup::new(torsion.iter().map(|&d| BigInt::from(d)).collect(), 0).unwrap();
        if g.order().unwrap() > BigInt::from(64) {
            continue;
        }
        let listed = enumerate_automorphisms(&g, 10_000).unwrap().len();
        let brute = brute_force_automorphism_count(&g);
        assert_eq!(listed, brute, "automorphism count of {:?}", torsion);
    }
}

#[test]
fn exactness_invariant_under_change_of_coordinates() {
    // exactness at the middle group is preserved when the pair is rewritten
    // through an automorphism of the middle group
    let z = FgAbGroup::free(1);
    let z9 = FgAbGroup::cyclic(9);
    let z3 = FgAbGroup::cyclic(3);
    let f = FgHom::new(z.clone(), z9.clone(), IntMatrix::from_i64(1, 1, &[3])).unwrap();
    let g = FgHom::new(z9.clone(), z3.clone(), IntMatrix::from_i64(1, 1, &[1])).unwrap();
    let base = is_exact_at(&f, &g).unwrap().is_exact();
    for theta in enumerate_automorphisms(&z9, 100).unwrap() {
        let f2 = f.then(&theta).unwrap();
        let theta_inv = enumerate_automorphisms(&z9, 100)
            .unwrap()
            .into_iter()
            .find(|c| theta.then(c).unwrap().equal(&FgHom::identity(z9.clone())).unwrap())
            .expect("automorphisms invert");
        let g2 = theta_inv.then(&g).unwrap();
        assert_eq!(is_exact_at(&f2, &g2).unwrap().is_exact(), base);
    }
}

fn lfact_tail() -> GroupExpr {
    GroupExpr::tail_product(
        GroupExpr::Dyadic,
        GroupExpr::Dyadic,
        TailRule::new(1, vec![], TailMaps::LFact(Box::new(Hom::identity(GroupExpr::Dyadic)))),
        IndexSet::NPlus,
    )
}

fn dyadic(n: i64, k: u32) -> Payload {
    Payload::Ratio(BigRational::new(BigInt::from(n), BigInt::from(2i64.pow(k))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Splitting of bonded tails: subtracting the section of the base leaves
    /// a class with zero base and finitely many nonzero coordinates, and the
    /// section is additive.
    #[test]
    fn tail_splitting(
        base_num in -8i64..=8, base_pow in 0u32..=3,
        over in proptest::collection::btree_map(1i64..=6, (-8i64..=8, 0u32..=2), 0..4)
    ) {
        let g = lfact_tail();
        let overrides: Vec<(i64, Payload)> =
            over.iter().map(|(&c, &(n, k))| (c, dyadic(n, k))).collect();
        let x = GroupElement::new(
            g.clone(),
            Payload::tail(dyadic(base_num, base_pow), &overrides),
        ).unwrap();
        // section of the base
        let section = Hom::tail_section(g.clone()).unwrap();
        let Payload::Tail { base, .. } = &x.payload else { unreachable!() };
        let base_el = GroupElement::new(GroupExpr::Dyadic, base.as_ref().clone()).unwrap();
        let sec = section.apply(&base_el).unwrap();
        let diff = x.sub(&sec).unwrap();
        let Payload::Tail { base: diff_base, overrides: diff_over } = &diff.payload else {
            unreachable!()
        };
        prop_assert!(matches!(diff_base.as_ref(), Payload::Ratio(r) if r.is_zero()));
        prop_assert!(diff_over.len() <= overrides.len());
        // additivity of the section on two probes
        let y = GroupElement::new(GroupExpr::Dyadic, dyadic(3, 1)).unwrap();
        let lhs = section.apply(&base_el.add(&y).unwrap()).unwrap();
        let rhs = section.apply(&base_el).unwrap().add(&section.apply(&y).unwrap()).unwrap();
        prop_assert!(lhs.eq_element(&rhs).unwrap());
    }

    /// Reduction commutes with the splitting: reducing then reading a
    /// coordinate equals reading then reducing.
    #[test]
    fn reduction_commutes_with_splitting(
        base_num in -8i64..=8,
        coord in 1i64..=6,
        value in -5i64..=5,
        n in prop::sample::select(vec![3u64, 5, 6, 12]),
    ) {
        let g = lfact_tail();
        let x = Payload::tail(
            Payload::Ratio(BigRational::from(BigInt::from(base_num))),
            &[(coord, Payload::Ratio(BigRational::from(BigInt::from(value))))],
        );
        let reduction = totalk::groupexpr::reduce::coeff_reduce(&g, n).unwrap();
        let reduced = totalk::groupexpr::hom::apply(&reduction.reduction, &x).unwrap();
        let GroupExpr::TailProduct(rt) = &reduction.tensor else { panic!() };
        let GroupExpr::TailProduct(ot) = &g else { panic!() };
        let coord_then_reduce = {
            let v = coordinate_value(ot, &x, coord).unwrap();
            let comp_reduction =
                totalk::groupexpr::reduce::coeff_reduce(&GroupExpr::Dyadic, n).unwrap();
            totalk::groupexpr::hom::apply(&comp_reduction.reduction, &v).unwrap()
        };
        let reduce_then_coord = coordinate_value(rt, &reduced, coord).unwrap();
        prop_assert!(payload_eq(&rt.component, &coord_then_reduce, &reduce_then_coord).unwrap());
    }

    /// Dyadic equality is an equivalence on canonical forms.
    #[test]
    fn dyadic_equality_equivalence(
        a in -40i64..=40, ka in 0u32..=4,
        b in -40i64..=40, kb in 0u32..=4,
        c in -40i64..=40, kc in 0u32..=4,
    ) {
        let g = GroupExpr::Dyadic;
        let x = GroupElement::new(g.clone(), dyadic(a, ka)).unwrap();
        let y = GroupElement::new(g.clone(), dyadic(b, kb)).unwrap();
        let z = GroupElement::new(g.clone(), dyadic(c, kc)).unwrap();
        prop_assert!(x.eq_element(&x).unwrap());
        prop_assert_eq!(x.eq_element(&y).unwrap(), y.eq_element(&x).unwrap());
        if x.eq_element(&y).unwrap() && y.eq_element(&z).unwrap() {
            prop_assert!(x.eq_element(&z).unwrap());
        }
    }

    /// Quotient equality modulo the dyadics agrees with the brute-force
    /// check: clear denominators by powers of two and test integrality of
    /// the odd part.
    #[test]
    fn quotient_equality_brute_force(
        an in -30i64..=30, ad in 1i64..=30,
        bn in -30i64..=30, bd in 1i64..=30,
    ) {
        let q = GroupExpr::quotient(GroupExpr::Rational, GroupExpr::Dyadic).unwrap();
        let x = BigRational::new(BigInt::from(an), BigInt::from(ad));
        let y = BigRational::new(BigInt::from(bn), BigInt::from(bd));
        let ex = GroupElement::new(q.clone(), Payload::Coset(Box::new(Payload::Ratio(x.clone())))).unwrap();
        let ey = GroupElement::new(q, Payload::Coset(Box::new(Payload::Ratio(y.clone())))).unwrap();
        // brute force: x - y is dyadic iff multiplying by 2^v for v up to the
        // denominator's 2-adic content makes it an integer
        let diff = &x - &y;
        let mut brute = false;
        let mut scaled = diff.clone();
        for _ in 0..=40 {
            if scaled.is_integer() {
                brute = true;
                break;
            }
            scaled *= BigRational::from(BigInt::from(2));
        }
        prop_assert_eq!(ex.eq_element(&ey).unwrap(), brute);
    }
}

/// Homomorphism equality is sound and complete on the closed class:
/// families with shifted but equivalent stabilization compare equal, a
/// perturbed coordinate yields a witness.
#[test]
fn hom_equality_shifted_families() {
    let z3 = GroupExpr::cyclic(3);
    let base = GroupExpr::sum(vec![GroupExpr::cyclic(3), GroupExpr::cyclic(3)]);
    let proj = Hom::matrix_i64(base.clone(), z3.clone(), &[0, 1]).unwrap();
    let t = GroupExpr::tail_product(
        base.clone(),
        z3.clone(),
        TailRule::constant(1, proj.clone()),
        IndexSet::NPlus,
    );

    // the same coordinate family declared with and without a redundant head
    let id3 = Hom::identity(z3.clone());
    let f = Hom::coord_map(
        t.clone(),
        t.clone(),
        Hom::identity(base.clone()),
        CoordMaps::constant(id3.clone()),
    )
    .unwrap();
    let g = Hom::coord_map(
        t.clone(),
        t.clone(),
        Hom::identity(base.clone()),
        CoordMaps { head: vec![id3.clone(), id3.clone(), id3.clone()], tail: TailMaps::Periodic(vec![id3.clone()]) },
    )
    .unwrap();
    assert!(homs_equal(&f, &g, 4).unwrap().is_equal());

    // perturb one coordinate map: inequality with a witness at that position
    let mut head = vec![id3.clone(), id3.clone()];
    head[1] = Hom::negation(z3.clone());
    let h = Hom::coord_map(
        t.clone(),
        t.clone(),
        Hom::identity(base),
        CoordMaps { head, tail: TailMaps::Periodic(vec![id3]) },
    )
    .unwrap();
    match homs_equal(&f, &h, 4).unwrap() {
        HomEquality::Differ { witness, .. } => {
            let GroupExpr::TailProduct(td) = &t else { unreachable!() };
            let v = coordinate_value(td, &witness, 2).unwrap();
            assert!(!payload_eq(&td.component, &v, &zero_payload(&td.component)).unwrap());
        }
        HomEquality::Equal => panic!("perturbed families must differ"),
    }
}

/// Coefficient-change functoriality on built containers: down∘up equals the
/// map induced by the composite coefficient morphism, checked through two
/// independent routes (the reduction relation on tensor parts, the torsion
/// embedding on Tor parts).
#[test]
fn kappa_functoriality_via_independent_routes() {
    use totalk::lambda::build_total_k;

    for (k0, k1) in [
        (GroupExpr::free(1), GroupExpr::cyclic(3)),
        (GroupExpr::Dyadic, GroupExpr::cyclic(3)),
        (GroupExpr::cyclic(9), GroupExpr::cyclic(6)),
    ] {
        let bound = 24u64;
        let tk = build_total_k(k0.clone(), k1.clone(), bound).unwrap();
        for j in [0u8, 1] {
            let kj = tk.group(j, 0).unwrap().clone();
            let kother = tk.group(1 - j, 0).unwrap().clone();
            for m in 2..=bound {
                for n in 2..=bound {
                    if m * n > bound {
                        continue;
                    }
                    let up = tk.kappa_up(j, m, n).unwrap();
                    let down = tk.kappa_down(j, n, m).unwrap();
                    let composite = up.then(down).unwrap();

                    // route 1: on reductions, composite∘ρ_m = n·ρ_n
                    let rho_m = tk.rho(j, m).unwrap();
                    let rho_n = tk.rho(j, n).unwrap();
                    let lhs = rho_m.then(&composite).unwrap();
                    let rhs = Hom::scalar_int(kj.clone(), n as i64).then(rho_n).unwrap();
                    assert!(
                        homs_equal(&lhs, &rhs, 4).unwrap().is_equal(),
                        "reduction route at (j={}, m={}, n={})",
                        j,
                        m,
                        n
                    );

                    // route 2: the boundary relation. The coefficient map
                    // [1]_mn ↦ [1]_n lifts to multiplication by m on the
                    // integral row, so β_n ∘ κ_down = m · β_mn.
                    let beta_mn = tk.beta(j, m * n).unwrap();
                    let beta_n = tk.beta(j, n).unwrap();
                    let lhs = down.then(beta_n).unwrap();
                    let rhs = beta_mn
                        .then(&Hom::scalar_int(kother.clone(), m as i64))
                        .unwrap();
                    assert!(
                        homs_equal(&lhs, &rhs, 4).unwrap().is_equal(),
                        "boundary route at (j={}, m={}, n={})",
                        j,
                        m,
                        n
                    );
                }
            }
        }
    }
}

/// Square checks are invariant under composing all four maps with a common
/// automorphism pair.
#[test]
fn square_invariance_under_conjugation() {
    use totalk::lambda::check_square;
    let z9 = GroupExpr::cyclic(9);
    let z3 = GroupExpr::cyclic(3);
    let top = Hom::matrix_i64(z9.clone(), z3.clone(), &[1]).unwrap();
    let bottom = Hom::matrix_i64(z9.clone(), z3.clone(), &[2]).unwrap();
    let left = Hom::scalar_int(z9.clone(), 2);
    let right = Hom::scalar_int(z3.clone(), 1);
    let before = check_square(&top, &bottom, &left, &right, 4).unwrap().commutes;

    // compose everything with the automorphism pair (×4 on Z_9, ×2 on Z_3)
    let a9 = Hom::scalar_int(z9.clone(), 4);
    let a3 = Hom::scalar_int(z3.clone(), 2);
    let top2 = a9.then(&top).unwrap().then(&a3).unwrap();
    let bottom2 = a9.then(&bottom).unwrap().then(&a3).unwrap();
    let left2 = a9.then(&left).unwrap().then(&a9).unwrap();
    let right2 = a3.then(&right).unwrap().then(&a3).unwrap();
    let after = check_square(&top2, &bottom2, &left2, &right2, 4).unwrap().commutes;
    assert_eq!(before, after);
}

/// Failed verifications re-evaluate to their stated witness values.
#[test]
fn witnesses_reevaluate() {
    use totalk::lambda::check_square;
    let z9 = GroupExpr::cyclic(9);
    let four = Hom::scalar_int(z9.clone(), 4);
    let five = Hom::scalar_int(z9.clone(), 5);
    let id = Hom::identity(z9.clone());
    let sq = check_square(&four, &five, &id, &id, 4).unwrap();
    assert!(!sq.commutes);
    let w = sq.witness.unwrap();
    // recompute both routes on the witness element
    let x = GroupElement::new(
        z9.clone(),
        Payload::Fg(vec![BigInt::from(
            w.element.trim_start_matches('[').split(']').next().unwrap().parse::<i64>().unwrap(),
        )]),
    )
    .unwrap();
    let lhs = four.apply(&x).unwrap();
    let rhs = five.apply(&x).unwrap();
    assert_eq!(lhs.to_string(), w.lhs);
    assert_eq!(rhs.to_string(), w.rhs);
}

/// The verifier outcome of the transposed automaticity instance matches the
/// original (swapped bundles with inverse maps).
#[test]
fn beta_automatic_transpose_invariance() {
    use totalk::fixtures::{eta_map, gamma_map, load_fixture, FixtureName};
    use totalk::verify::check_beta_automatic;
    let e1 = load_fixture(FixtureName::E1, 6).unwrap();
    let e2 = load_fixture(FixtureName::E2, 6).unwrap();
    let b1 = e1.ideal.as_deref().unwrap().clone();
    let b2 = e2.ideal.as_deref().unwrap().clone();

    let gamma = gamma_map(&b1.totalk, &b2.totalk).unwrap();
    let eta = eta_map(&e1.totalk, &e2.totalk).unwrap();
    let forward = check_beta_automatic(&b1, &e1, &b2, &e2, &gamma, &eta, 6).unwrap();

    // the coordinate flip is its own inverse; the identification is the identity
    let gamma_inv = gamma_map(&b2.totalk, &b1.totalk).unwrap();
    let eta_inv = eta_map(&e2.totalk, &e1.totalk).unwrap();
    let transposed = check_beta_automatic(&b2, &e2, &b1, &e1, &gamma_inv, &eta_inv, 6).unwrap();
    assert_eq!(forward.passed(), transposed.passed());
}

/// Tensor sizes against direct enumeration for groups up to order 500 and
/// every modulus up to 24.
#[test]
fn tensor_sizes_match_enumeration() {
    use num_integer::Integer;
    let chains: Vec<Vec<u64>> = vec![
        vec![2],
        vec![3],
        vec![4, 8],
        vec![2, 6],
        vec![5, 10],
        vec![3, 9, 9],
        vec![7],
        vec![2, 2, 2],
    ];
    for torsion in chains {
        let g = FgAbGroup::new(torsion.iter().map(|&d| BigInt::from(d)).collect(), 0).unwrap();
        if g.order().unwrap() > BigInt::from(500) {
            continue;
        }
        let elements = g.elements().unwrap();
        for n in 2..=24u64 {
            let tt = totalk::abgroup::tensor_tor_cyclic(&g, n);
            let mut classes = std::collections::HashSet::new();
            for e in &elements {
                let key: Vec<BigInt> = e
                    .iter()
                    .zip(g.torsion())
                    .map(|(c, d)| c.mod_floor(&d.gcd(&BigInt::from(n))))
                    .collect();
                classes.insert(key);
            }
            assert_eq!(
                BigInt::from(classes.len()),
                tt.tensor.order().unwrap(),
                "tensor size of {:?} at {}",
                g,
                n
            );
            let killed = elements
                .iter()
                .filter(|e| {
                    e.iter()
                        .zip(g.torsion())
                        .all(|(c, d)| (c * BigInt::from(n)).mod_floor(d).is_zero())
                })
                .count();
            assert_eq!(
                BigInt::from(killed),
                tt.tor.order().unwrap(),
                "torsion size of {:?} at {}",
                g,
                n
            );
        }
    }
}

/// The extension cone contains zero and is closed under addition, on
/// randomized pairs of positive classes.
#[test]
fn extension_cone_additive() {
    use rand::{Rng, SeedableRng};
    use totalk::fixtures::{cone_membership, load_fixture, ConeSpec, FixtureName};
    let e = load_fixture(FixtureName::E1, 6).unwrap();
    let k0 = e.totalk.group(0, 0).unwrap().clone();

    let zero = GroupElement::zero(k0.clone());
    assert!(cone_membership(&zero, ConeSpec::ExtensionCone).unwrap());

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut random_positive = |rng: &mut rand_chacha::ChaCha8Rng| -> GroupElement {
        let payload = if rng.gen_bool(0.5) {
            // strictly positive rational part, arbitrary ideal part
            let num = rng.gen_range(1i64..=9);
            let den = rng.gen_range(1i64..=9);
            let tail_base = rng.gen_range(-5i64..=5);
            Payload::Tuple(vec![
                Payload::Ratio(BigRational::new(BigInt::from(num), BigInt::from(den))),
                Payload::tail(Payload::Ratio(BigRational::from(BigInt::from(tail_base))), &[]),
            ])
        } else {
            // zero rational part, nonnegative dyadic ideal class
            let base = rng.gen_range(0i64..=4);
            let coord = rng.gen_range(1i64..=4);
            let value = rng.gen_range(0i64..=6);
            Payload::Tuple(vec![
                Payload::Ratio(BigRational::from(BigInt::from(0))),
                Payload::tail(
                    Payload::Ratio(BigRational::from(BigInt::from(base))),
                    &[(coord, Payload::Ratio(BigRational::from(BigInt::from(value))))],
                ),
            ])
        };
        GroupElement::new(k0.clone(), payload).unwrap()
    };
    for _ in 0..60 {
        let x = random_positive(&mut rng);
        let y = random_positive(&mut rng);
        if cone_membership(&x, ConeSpec::ExtensionCone).unwrap()
            && cone_membership(&y, ConeSpec::ExtensionCone).unwrap()
        {
            let sum = x.add(&y).unwrap();
            assert!(
                cone_membership(&sum, ConeSpec::ExtensionCone).unwrap(),
                "cone not closed under addition: {} + {}",
                x,
                y
            );
        }
    }
}

/// The extension-story maps: the identification between the two extension
/// containers is fully compatible with all operation families, while the
/// ideal-side map fails exactly the reduction squares (at levels with a
/// nontrivial odd part), mirroring the limit story.
#[test]
fn extension_story_compatibility_profile() {
    use totalk::fixtures::{eta_map, gamma_map, load_fixture, FixtureName};
    use totalk::lambda::{check_lambda_linear, OpFamily};

    let e1 = load_fixture(FixtureName::E1, 12).unwrap();
    let e2 = load_fixture(FixtureName::E2, 12).unwrap();
    let eta = eta_map(&e1.totalk, &e2.totalk).unwrap();
    let full = check_lambda_linear(
        &eta,
        &e1.totalk,
        &e2.totalk,
        &[OpFamily::Rho, OpFamily::Beta, OpFamily::Kappa],
        6,
    )
    .unwrap();
    assert!(full.verdict().passed(), "the identification is fully compatible");

    let b1 = e1.ideal.as_deref().unwrap();
    let b2 = e2.ideal.as_deref().unwrap();
    let gamma = gamma_map(&b1.totalk, &b2.totalk).unwrap();
    let bk = check_lambda_linear(
        &gamma,
        &b1.totalk,
        &b2.totalk,
        &[OpFamily::Beta, OpFamily::Kappa],
        6,
    )
    .unwrap();
    assert!(bk.verdict().passed(), "boundary and coefficient changes commute");
    let rho = check_lambda_linear(&gamma, &b1.totalk, &b2.totalk, &[OpFamily::Rho], 6).unwrap();
    let failed_levels: Vec<&str> = rho
        .subchecks
        .iter()
        .filter(|s| !s.verdict.passed())
        .map(|s| s.label.as_str())
        .collect();
    assert!(
        failed_levels.contains(&"rho j=0 n=3"),
        "the ideal-side map must fail reduction at level 3: {:?}",
        failed_levels
    );
    assert!(!rho.verdict().passed());
}
