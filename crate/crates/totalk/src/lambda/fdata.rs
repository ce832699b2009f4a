//! K-theory of bonded-family limits: the container of the algebra of
//! sequences `(a, (b_m))` with `b_m` eventually `φ_m(a)`, computed levelwise
//! as tail products with the bonding family as rule.

use super::totalk::{GradedHom, TotalK};
use super::Result;
use crate::groupexpr::element::{self, zero_payload};
use crate::groupexpr::hom::{apply, homs_equal, CoordMaps, HomEquality};
use crate::groupexpr::{ExprError, GroupExpr, Hom, IndexSet, TailMaps, TailRule};
use std::collections::BTreeMap;

/// The bonding family at every level: position `p` of the coordinate grid
/// carries the level-(j,n) component of the p-th bonding map.
#[derive(Debug, Clone)]
pub struct GradedFamily {
    rules: BTreeMap<(u8, u64), TailRule>,
    index: IndexSet,
}

impl GradedFamily {
    /// Build from an eventually-periodic family of graded maps: position `p`
    /// (from `stab` on) carries `maps[(p - stab) mod maps.len()]`.
    pub fn from_periodic(maps: &[GradedHom], stab: u64, bound: u64) -> Result<GradedFamily> {
        if maps.is_empty() {
            return Err(ExprError::ShapeMismatch("family needs at least one map".into()));
        }
        let mut rules = BTreeMap::new();
        for j in [0u8, 1] {
            for n in std::iter::once(0u64).chain(2..=bound) {
                let mut level_maps = Vec::new();
                for m in maps {
                    let Some(h) = m.component(j, n) else {
                        return Err(ExprError::ShapeMismatch(format!(
                            "family map lacks the (j={}, n={}) component",
                            j, n
                        )));
                    };
                    level_maps.push(h.clone());
                }
                rules.insert((j, n), TailRule::new(stab, vec![], TailMaps::Periodic(level_maps)));
            }
        }
        Ok(GradedFamily { rules, index: IndexSet::NPlus })
    }

    /// Build from explicit per-level rules (fixtures with level-dependent
    /// stabilization or factorial integral rules).
    pub fn from_rules(rules: BTreeMap<(u8, u64), TailRule>, index: IndexSet) -> GradedFamily {
        GradedFamily { rules, index }
    }

    pub fn rule(&self, j: u8, n: u64) -> Option<&TailRule> {
        self.rules.get(&(j, n))
    }
}

/// Input of the limit construction: the two building-block containers and
/// the bonding family.
#[derive(Debug, Clone)]
pub struct FData {
    pub a: TotalK,
    pub b: TotalK,
    pub family: GradedFamily,
}

/// Build the container of the limit: at each level the tail product of the
/// two building-block levels under the family rule (collapsed to the base
/// when the component level is trivial), with all operations acting
/// componentwise.
///
/// Coefficient-change maps are included only where the componentwise
/// construction is well-defined against the level rules; pairs where the
/// naturality fails are omitted from the result.
pub fn f_construction_k(data: &FData) -> Result<TotalK> {
    let bound = data.a.bound().min(data.b.bound());
    let mut groups: BTreeMap<(u8, u64), Option<GroupExpr>> = BTreeMap::new();
    let mut collapsed: BTreeMap<(u8, u64), bool> = BTreeMap::new();

    let levels: Vec<(u8, u64)> = [0u8, 1]
        .into_iter()
        .flat_map(|j| std::iter::once((j, 0u64)).chain((2..=bound).map(move |n| (j, n))))
        .collect();

    for &(j, n) in &levels {
        let (Some(base), Some(comp)) = (data.a.group(j, n), data.b.group(j, n)) else {
            return Err(ExprError::ShapeMismatch(
                "the limit construction needs fully populated building blocks".into(),
            ));
        };
        let Some(rule) = data.family.rule(j, n) else {
            return Err(ExprError::ShapeMismatch(format!(
                "no family rule at (j={}, n={})",
                j, n
            )));
        };
        if comp.is_trivial() {
            groups.insert((j, n), Some(base.clone()));
            collapsed.insert((j, n), true);
        } else {
            groups.insert(
                (j, n),
                Some(GroupExpr::tail_product(
                    base.clone(),
                    comp.clone(),
                    rule.clone(),
                    data.family.index,
                )),
            );
            collapsed.insert((j, n), false);
        }
    }

    let level =
        |j: u8, n: u64| -> (GroupExpr, bool) { (groups[&(j, n)].clone().unwrap(), collapsed[&(j, n)]) };

    let mut rho = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for j in [0u8, 1] {
        for n in 2..=bound {
            let (Some(a_rho), Some(b_rho)) = (data.a.rho(j, n), data.b.rho(j, n)) else {
                continue;
            };
            rho.insert((j, n), componentwise(level(j, 0), level(j, n), a_rho, b_rho)?);
            let (Some(a_beta), Some(b_beta)) = (data.a.beta(j, n), data.b.beta(j, n)) else {
                continue;
            };
            beta.insert((j, n), componentwise(level(j, n), level(1 - j, 0), a_beta, b_beta)?);
        }
    }

    let mut kappa_up = BTreeMap::new();
    let mut kappa_down = BTreeMap::new();
    for j in [0u8, 1] {
        for m in 2..=bound {
            for n in 2..=bound {
                if m * n > bound {
                    continue;
                }
                if let (Some(a_k), Some(b_k)) =
                    (data.a.kappa_up(j, m, n), data.b.kappa_up(j, m, n))
                {
                    match componentwise(level(j, m), level(j, m * n), a_k, b_k) {
                        Ok(h) => {
                            kappa_up.insert((j, m, n), h);
                        }
                        Err(ExprError::NotAHom(_)) | Err(ExprError::Undecidable(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
                if let (Some(a_k), Some(b_k)) =
                    (data.a.kappa_down(j, n, m), data.b.kappa_down(j, n, m))
                {
                    match componentwise(level(j, m * n), level(j, n), a_k, b_k) {
                        Ok(h) => {
                            kappa_down.insert((j, n, m), h);
                        }
                        Err(ExprError::NotAHom(_)) | Err(ExprError::Undecidable(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }

    TotalK::from_parts(bound, groups, rho, beta, kappa_up, kappa_down)
}

/// The componentwise operation `(a, (b_m)) ↦ (a_op(a), (b_op(b_m)))` between
/// levels of the limit, adjusted for collapsed levels.
fn componentwise(
    dom: (GroupExpr, bool),
    cod: (GroupExpr, bool),
    a_op: &Hom,
    b_op: &Hom,
) -> Result<Hom> {
    match (dom.1, cod.1) {
        // both levels collapsed to their bases: the operation is the base map
        (true, true) => Ok(a_op.clone()),
        // collapsed domain: the image has zero coordinates, which must agree
        // with the codomain rule applied to the mapped base
        (true, false) => {
            let section = Hom::tail_section(cod.0.clone())?;
            let composite = a_op.then(&section)?;
            verify_rule_kills(&cod.0, a_op)?;
            Ok(composite)
        }
        // collapsed codomain: coordinates die, only the base map remains
        (false, true) => {
            let base_proj = Hom::tail_base(dom.0.clone())?;
            base_proj.then(a_op)
        }
        (false, false) => {
            Hom::coord_map(dom.0, cod.0, a_op.clone(), CoordMaps::constant(b_op.clone()))
        }
    }
}

/// For a collapsed-domain operation the codomain rule must vanish on the
/// image of the base map (so the section is the true operation).
fn verify_rule_kills(cod: &GroupExpr, a_op: &Hom) -> Result<()> {
    let GroupExpr::TailProduct(t) = cod else {
        return Err(ExprError::ShapeMismatch("tail product expected".into()));
    };
    match &t.rule.tail {
        TailMaps::LFact(map) => {
            let composite = a_op.then(map)?;
            let zero = Hom::zero(composite.domain.clone(), composite.codomain.clone());
            match homs_equal(&composite, &zero, 4)? {
                HomEquality::Equal => {}
                HomEquality::Differ { .. } => {
                    return Err(ExprError::NotAHom(
                        "codomain rule does not vanish on the mapped base".into(),
                    ))
                }
            }
            // explicit head positions
            for (k, head_map) in t.rule.head.iter().enumerate() {
                let composite = a_op.then(head_map)?;
                let zero = Hom::zero(composite.domain.clone(), composite.codomain.clone());
                if !matches!(homs_equal(&composite, &zero, 4)?, HomEquality::Equal) {
                    return Err(ExprError::NotAHom(format!(
                        "codomain rule head {} does not vanish on the mapped base",
                        k
                    )));
                }
            }
            Ok(())
        }
        TailMaps::Periodic(_) => {
            let window = t.rule.settled_from() + t.rule.period().unwrap_or(1);
            for b in element::probes(&a_op.domain, 1)? {
                let nb = apply(a_op, &b)?;
                for p in t.rule.start..=window {
                    let def = element::default_coordinate(t, &nb, p)?;
                    if !element::payload_eq(&t.component, &def, &zero_payload(&t.component))? {
                        return Err(ExprError::NotAHom(format!(
                            "codomain rule does not vanish at position {}",
                            p
                        )));
                    }
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_total_k, check_six_term, induced_graded_hom};
    use super::*;
    use crate::abgroup::FgAbGroup;
    use num_bigint::BigInt;

    #[test]
    fn builder_dyadic_z3_at_9() {
        // (Z[1/4], Z_3) at n = 9: K_0(;Z_9) = Z_9 + Z_3, K_1(;Z_9) = Z_3
        let tk = build_total_k(GroupExpr::Dyadic, GroupExpr::cyclic(3), 9).unwrap();
        let k0_9 = tk.group(0, 9).unwrap();
        let GroupExpr::DirectSum(parts) = k0_9 else { panic!() };
        assert_eq!(parts[0], GroupExpr::cyclic(9));
        assert_eq!(parts[1], GroupExpr::cyclic(3));
        let k1_9 = tk.group(1, 9).unwrap();
        let GroupExpr::DirectSum(parts) = k1_9 else { panic!() };
        assert_eq!(parts[0], GroupExpr::cyclic(3));
        assert!(parts[1].is_trivial());
    }

    #[test]
    fn builder_free_integer() {
        // (Z, 0): K_0(;Z_n) = Z_n, K_1(;Z_n) = 0 for all n
        let tk = build_total_k(GroupExpr::free(1), GroupExpr::trivial(), 8).unwrap();
        for n in 2..=8u64 {
            let k0 = tk.group(0, n).unwrap();
            let GroupExpr::DirectSum(parts) = k0 else { panic!() };
            assert_eq!(parts[0], GroupExpr::cyclic(n));
            assert!(parts[1].is_trivial());
            assert!(tk.group(1, n).unwrap().is_trivial());
        }
    }

    #[test]
    fn builder_six_term_all_exact() {
        let tk = build_total_k(GroupExpr::free(1), GroupExpr::cyclic(3), 9).unwrap();
        let report = check_six_term(&tk, 6).unwrap();
        assert!(report.verdict().passed(), "{:?}", report.subchecks);
        assert!(report
            .subchecks
            .iter()
            .all(|s| s.mode == super::super::CheckMode::Exact));
    }

    #[test]
    fn corrupted_boundary_fails_six_term() {
        // replace the boundary at (0,3) of (Z, Z_3) by zero: exactness at the
        // coefficient node breaks (kernel of zero is everything)
        let tk = build_total_k(GroupExpr::free(1), GroupExpr::cyclic(3), 4).unwrap();
        let mut groups = BTreeMap::new();
        let mut rho = BTreeMap::new();
        let mut beta = BTreeMap::new();
        for j in [0u8, 1] {
            for n in [0u64, 2, 3, 4] {
                groups.insert((j, n), tk.group(j, n).cloned());
                if n >= 2 {
                    rho.insert((j, n), tk.rho(j, n).unwrap().clone());
                    let b = tk.beta(j, n).unwrap().clone();
                    if j == 0 && n == 3 {
                        beta.insert((j, n), Hom::zero(b.domain.clone(), b.codomain.clone()));
                    } else {
                        beta.insert((j, n), b);
                    }
                }
            }
        }
        let corrupted =
            TotalK::from_parts(4, groups, rho, beta, BTreeMap::new(), BTreeMap::new()).unwrap();
        let report = check_six_term(&corrupted, 6).unwrap();
        assert!(!report.verdict().passed());
        let failing: Vec<&str> = report
            .subchecks
            .iter()
            .filter(|s| !s.verdict.passed())
            .map(|s| s.label.as_str())
            .collect();
        assert!(failing.iter().all(|l| l.contains("j=0 n=3")), "{:?}", failing);
    }

    #[test]
    fn builder_divisible_pair() {
        // (Q ⊕ Q-like divisible, Z_3) at n = 4: both coefficient groups die
        let k0 = GroupExpr::sum(vec![GroupExpr::Rational, GroupExpr::Rational]);
        let tk = build_total_k(k0, GroupExpr::cyclic(3), 4).unwrap();
        assert!(tk.group(0, 4).unwrap().is_trivial());
        assert!(tk.group(1, 4).unwrap().is_trivial());
        // at n = 3 the torsion survives through Tor
        assert!(!tk.group(0, 3).unwrap().is_trivial());
    }

    #[test]
    fn functorial_maps_are_compatible() {
        // the graded map induced by (×2, id) on (Z + Z_9, Z_3) commutes with
        // every operation family
        let k0 = GroupExpr::Fg(FgAbGroup::new(vec![BigInt::from(9)], 1).unwrap());
        let k1 = GroupExpr::cyclic(3);
        let tk = build_total_k(k0.clone(), k1.clone(), 12).unwrap();
        let f0 = Hom::scalar_int(k0, 2);
        let f1 = Hom::identity(k1);
        let h = induced_graded_hom(&f0, &f1, &tk, &tk).unwrap();
        let report = super::super::check_lambda_linear(
            &h,
            &tk,
            &tk,
            &[super::super::OpFamily::Rho, super::super::OpFamily::Beta, super::super::OpFamily::Kappa],
            4,
        )
        .unwrap();
        assert!(report.verdict().passed(), "{:?}", report.subchecks.iter().filter(|s| !s.verdict.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn f_construction_basic_limit() {
        // A = (Z, 0), B = (Z, 0), bonding maps ×2 at every position:
        // K_0 of the limit is the tail product of Z's with rule ×2
        let a = build_total_k(GroupExpr::free(1), GroupExpr::trivial(), 6).unwrap();
        let b = build_total_k(GroupExpr::free(1), GroupExpr::trivial(), 6).unwrap();
        let f0 = Hom::scalar_int(GroupExpr::free(1), 2);
        let f1 = Hom::zero(GroupExpr::trivial(), GroupExpr::trivial());
        let bonding = induced_graded_hom(&f0, &f1, &a, &b).unwrap();
        let family = GradedFamily::from_periodic(&[bonding], 1, 6).unwrap();
        let data = FData { a, b, family };
        let tk = f_construction_k(&data).unwrap();
        // K_1 collapses to the base (trivial components)
        assert!(tk.group(1, 0).unwrap().is_trivial());
        let GroupExpr::TailProduct(t) = tk.group(0, 0).unwrap() else {
            panic!("K_0 of the limit is a tail product")
        };
        assert_eq!(t.base, GroupExpr::free(1));
        // six-term holds on every level
        let report = check_six_term(&tk, 6).unwrap();
        assert!(report.verdict().passed(), "{:?}", report.subchecks);
    }
}
