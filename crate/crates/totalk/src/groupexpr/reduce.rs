//! Coefficient reduction of structured groups and maps: `G ⊗ Z_n`,
//! `Tor(G, Z_n)`, functorial reduction of homomorphisms, torsion embeddings,
//! and the coefficient-change maps between reduction levels.

use super::expr::{GroupExpr, TailMaps, TailRule};
use super::hom::{CoordMaps, Hom, HomKind};
use super::numutil;
use super::{ExprError, Result};
use crate::abgroup::{self, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Result of reducing a group at a modulus: the tensor part, the Tor part
/// (as a presentation), and the reduction map onto the tensor part.
#[derive(Debug, Clone)]
pub struct CoeffReduction {
    pub tensor: GroupExpr,
    pub tor: GroupExpr,
    pub reduction: Hom,
}

/// `G ⊗ Z_n` and `Tor(G, Z_n)` with the natural reduction `G → G ⊗ Z_n`.
///
/// Dyadic rationals reduce to `Z_{l_n}` (odd part), rationals and other
/// divisible groups die, f.g. parts follow the gcd formulas, tail products
/// reduce componentwise with the reduced rule, and supported quotients
/// contribute their subgroup's reduction as Tor.
///
/// Trivial results are canonicalized to the trivial f.g. group so that
/// different presentations of vanishing reductions compare equal.
pub fn coeff_reduce(g: &GroupExpr, n: u64) -> Result<CoeffReduction> {
    let raw = coeff_reduce_raw(g, n)?;
    let tor = if raw.tor.is_trivial() { GroupExpr::trivial() } else { raw.tor };
    if raw.tensor.is_trivial() && raw.tensor != GroupExpr::trivial() {
        let tensor = GroupExpr::trivial();
        let reduction = Hom::zero(g.clone(), tensor.clone());
        Ok(CoeffReduction { tensor, tor, reduction })
    } else {
        Ok(CoeffReduction { tensor: raw.tensor, tor, reduction: raw.reduction })
    }
}

fn coeff_reduce_raw(g: &GroupExpr, n: u64) -> Result<CoeffReduction> {
    if n < 2 {
        return Err(ExprError::ShapeMismatch("modulus must be at least 2".into()));
    }
    match g {
        GroupExpr::Fg(fg) => {
            let tt = abgroup::tensor_tor_cyclic(fg, n);
            let tensor = GroupExpr::Fg(tt.tensor);
            let tor = GroupExpr::Fg(tt.tor);
            let reduction =
                Hom { kind: HomKind::ModReduce(n), domain: g.clone(), codomain: tensor.clone() };
            Ok(CoeffReduction { tensor, tor, reduction })
        }
        GroupExpr::Dyadic => {
            let l = numutil::odd_part(n);
            let tensor = GroupExpr::cyclic(l);
            let reduction =
                Hom { kind: HomKind::ModReduce(n), domain: g.clone(), codomain: tensor.clone() };
            Ok(CoeffReduction { tensor, tor: GroupExpr::trivial(), reduction })
        }
        GroupExpr::Rational => {
            let tensor = GroupExpr::trivial();
            let reduction =
                Hom { kind: HomKind::ModReduce(n), domain: g.clone(), codomain: tensor.clone() };
            Ok(CoeffReduction { tensor, tor: GroupExpr::trivial(), reduction })
        }
        GroupExpr::DirectSum(parts) => {
            let reductions: Result<Vec<CoeffReduction>> =
                parts.iter().map(|p| coeff_reduce(p, n)).collect();
            let reductions = reductions?;
            let tensor =
                GroupExpr::DirectSum(reductions.iter().map(|r| r.tensor.clone()).collect());
            let tor = GroupExpr::DirectSum(reductions.iter().map(|r| r.tor.clone()).collect());
            let reduction = Hom::sum_map(
                g.clone(),
                tensor.clone(),
                reductions.into_iter().map(|r| r.reduction).collect(),
            )?;
            Ok(CoeffReduction { tensor, tor, reduction })
        }
        GroupExpr::TailProduct(t) => {
            let base = coeff_reduce(&t.base, n)?;
            let comp = coeff_reduce(&t.component, n)?;

            let tensor_rule =
                reduce_rule(&t.rule, &comp.tensor, &|h| tensor_hom(h, n))?;
            let tensor = GroupExpr::tail_product(
                base.tensor.clone(),
                comp.tensor.clone(),
                tensor_rule,
                t.index,
            );
            let tor_rule = reduce_rule(&t.rule, &comp.tor, &|h| tor_hom(h, n))?;
            let tor =
                GroupExpr::tail_product(base.tor.clone(), comp.tor.clone(), tor_rule, t.index);

            let reduction = Hom::coord_map(
                g.clone(),
                tensor.clone(),
                base.reduction,
                CoordMaps::constant(comp.reduction),
            )?;
            Ok(CoeffReduction { tensor, tor, reduction })
        }
        GroupExpr::Quotient(q) => {
            if !q.ambient.is_divisible() {
                return Err(ExprError::UnsupportedKind(
                    "only quotients with divisible ambient groups reduce".into(),
                ));
            }
            if !q.sub.is_torsion_free() {
                return Err(ExprError::UnsupportedKind(
                    "only quotients by torsion-free subgroups reduce".into(),
                ));
            }
            // divisible ambient: the tensor part dies; the n-torsion is the
            // subgroup modulo n, reached by x ↦ class(lift(x)/n)
            let tensor = GroupExpr::trivial();
            let reduction =
                Hom::zero(g.clone(), tensor.clone());
            let tor = coeff_reduce(&q.sub, n)?.tensor;
            Ok(CoeffReduction { tensor, tor, reduction })
        }
    }
}

/// Reduce a tail rule through a functor on maps. Factorial-coefficient rules
/// stay factorial when the target component is unbounded; when the target
/// has bounded exponent, the coefficients eventually vanish and the rule
/// stabilizes to an explicit head followed by zero.
fn reduce_rule(
    rule: &TailRule,
    target_comp: &GroupExpr,
    f: &dyn Fn(&Hom) -> Result<Hom>,
) -> Result<TailRule> {
    let head: Result<Vec<Hom>> = rule.head.iter().map(f).collect();
    let mut head = head?;
    match &rule.tail {
        TailMaps::Periodic(maps) => {
            let maps: Result<Vec<Hom>> = maps.iter().map(f).collect();
            Ok(TailRule::new(rule.start, head, TailMaps::Periodic(maps?)))
        }
        TailMaps::LFact(map) => {
            let reduced = f(map)?;
            if target_comp.is_trivial() || reduced.is_zero_kind() {
                return Ok(TailRule::new(
                    rule.start,
                    head,
                    TailMaps::Periodic(vec![Hom::zero(
                        reduced.domain.clone(),
                        reduced.codomain.clone(),
                    )]),
                ));
            }
            let Some(e) = target_comp.bounded_exponent() else {
                // coefficients never die: keep the factorial form
                return Ok(TailRule::new(rule.start, head, TailMaps::LFact(Box::new(reduced))));
            };
            // explicit head until the factorial coefficient is divisible by
            // the exponent, zero beyond (divisibility is monotone in p)
            let mut p = rule.settled_from();
            let cap = p + 400;
            while p < cap {
                let coef = numutil::odd_part_factorial(p.div_ceil(2));
                if coef.mod_floor(&e).is_zero() {
                    break;
                }
                let scaled = reduced
                    .then(&scalar_on(&reduced.codomain, &coef)?)
                    .expect("integer scalars always compose");
                head.push(scaled);
                p += 1;
            }
            if p == cap {
                return Err(ExprError::UnsupportedKind(
                    "factorial coefficients never vanish in the component exponent".into(),
                ));
            }
            Ok(TailRule::new(
                rule.start,
                head,
                TailMaps::Periodic(vec![Hom::zero(
                    reduced.domain.clone(),
                    reduced.codomain.clone(),
                )]),
            ))
        }
    }
}

fn scalar_on(g: &GroupExpr, c: &BigInt) -> Result<Hom> {
    Hom::scalar_mul(g.clone(), BigRational::from(c.clone()))
}

/// Functorial reduction of a map: `h ⊗ Z_n : G ⊗ Z_n → H ⊗ Z_n`.
pub fn tensor_hom(h: &Hom, n: u64) -> Result<Hom> {
    let dom = coeff_reduce(&h.domain, n)?.tensor;
    let cod = coeff_reduce(&h.codomain, n)?.tensor;
    reduce_kind(h, n, dom, cod, &tensor_hom, &tensor_matrix)
}

/// Functorial Tor: `Tor(h, Z_n) : Tor(G, Z_n) → Tor(H, Z_n)` on the
/// presentations produced by [`coeff_reduce`].
pub fn tor_hom(h: &Hom, n: u64) -> Result<Hom> {
    let dom = coeff_reduce(&h.domain, n)?.tor;
    let cod = coeff_reduce(&h.codomain, n)?.tor;
    reduce_kind(h, n, dom, cod, &tor_hom, &tor_matrix)
}

fn reduce_kind(
    h: &Hom,
    n: u64,
    dom: GroupExpr,
    cod: GroupExpr,
    recurse: &dyn Fn(&Hom, u64) -> Result<Hom>,
    on_matrix: &dyn Fn(&Hom, u64, &GroupExpr, &GroupExpr) -> Result<Hom>,
) -> Result<Hom> {
    if dom.is_trivial() || cod.is_trivial() {
        return Ok(Hom::zero(dom, cod));
    }
    match &h.kind {
        HomKind::Zero => Ok(Hom::zero(dom, cod)),
        HomKind::Identity => Ok(Hom::identity(dom)),
        HomKind::Negate => Ok(Hom::negation(dom)),
        HomKind::ScalarMul(q) => {
            if q.is_integer() {
                Hom::scalar_mul(dom, q.clone())
            } else {
                // a non-integer scalar only acts on dyadic/rational kinds;
                // its reduction is multiplication by the odd-part residue
                match (&h.domain, &dom) {
                    (GroupExpr::Dyadic, GroupExpr::Fg(fg)) => {
                        if fg.is_trivial() {
                            return Ok(Hom::zero(dom, cod));
                        }
                        let l = fg.torsion()[0].clone();
                        let inv = numutil::mod_inverse(q.denom(), &l).ok_or_else(|| {
                            ExprError::UnsupportedKind("denominator not invertible".into())
                        })?;
                        let c = (q.numer() * inv).mod_floor(&l);
                        let m = IntMatrix::new(1, 1, vec![c]);
                        Hom::matrix(dom, cod, m)
                    }
                    _ => Err(ExprError::UnsupportedKind(
                        "cannot reduce this scalar action".into(),
                    )),
                }
            }
        }
        HomKind::Matrix(_) => on_matrix(h, n, &dom, &cod),
        HomKind::Compose(parts) => {
            let mut reduced: Option<Hom> = None;
            for part in parts {
                let r = recurse(part, n)?;
                reduced = Some(match reduced {
                    None => r,
                    Some(acc) => acc.then(&r)?,
                });
            }
            reduced.ok_or_else(|| ExprError::ShapeMismatch("empty composition".into()))
        }
        HomKind::SumMap(parts) => {
            let reduced: Result<Vec<Hom>> = parts.iter().map(|p| recurse(p, n)).collect();
            Hom::sum_map(dom, cod, reduced?)
        }
        HomKind::Inject(i) => Hom::inject(cod, *i),
        HomKind::Project(i) => Hom::project(dom, *i),
        HomKind::CoordMap { base, coords, .. } => {
            let rbase = recurse(base, n)?;
            let rhead: Result<Vec<Hom>> = coords.head.iter().map(|m| recurse(m, n)).collect();
            let rtail = match &coords.tail {
                TailMaps::Periodic(maps) => {
                    let rm: Result<Vec<Hom>> = maps.iter().map(|m| recurse(m, n)).collect();
                    TailMaps::Periodic(rm?)
                }
                TailMaps::LFact(_) => {
                    return Err(ExprError::Undecidable(
                        "factorial coordinate families do not reduce".into(),
                    ))
                }
            };
            Hom::coord_map(dom, cod, rbase, CoordMaps { head: rhead?, tail: rtail })
        }
        HomKind::TailSection => {
            Ok(Hom { kind: HomKind::TailSection, domain: dom, codomain: cod })
        }
        HomKind::TailBase => Ok(Hom { kind: HomKind::TailBase, domain: dom, codomain: cod }),
        HomKind::TailInject(c) => {
            Ok(Hom { kind: HomKind::TailInject(*c), domain: dom, codomain: cod })
        }
        HomKind::CanonicalEmbed => Hom::canonical_embed(dom, cod),
        HomKind::QuotientMap | HomKind::ModReduce(_) | HomKind::TorEmbed(_) => {
            Err(ExprError::UnsupportedKind(
                "this map kind does not occur inside reduced expressions".into(),
            ))
        }
    }
}

fn tensor_matrix(h: &Hom, n: u64, dom: &GroupExpr, cod: &GroupExpr) -> Result<Hom> {
    let HomKind::Matrix(m) = &h.kind else { unreachable!() };
    let dorders = h.domain.flat_orders().expect("matrix domains are flat");
    let corders = h.codomain.flat_orders().expect("matrix codomains are flat");
    let dkept = kept_tensor_indices(&dorders, n);
    let ckept = kept_tensor_indices(&corders, n);
    let mut out = IntMatrix::zero(ckept.len(), dkept.len());
    for (jj, &j) in dkept.iter().enumerate() {
        for (ii, &i) in ckept.iter().enumerate() {
            out[(ii, jj)] = m[(i, j)].clone();
        }
    }
    Hom::matrix(dom.clone(), cod.clone(), out)
}

fn tor_matrix(h: &Hom, n: u64, dom: &GroupExpr, cod: &GroupExpr) -> Result<Hom> {
    let HomKind::Matrix(m) = &h.kind else { unreachable!() };
    let big_n = BigInt::from(n);
    let dorders = h.domain.flat_orders().expect("matrix domains are flat");
    let corders = h.codomain.flat_orders().expect("matrix codomains are flat");
    let dkept = kept_tor_indices(&dorders, n);
    let ckept = kept_tor_indices(&corders, n);
    let mut out = IntMatrix::zero(ckept.len(), dkept.len());
    for (jj, &j) in dkept.iter().enumerate() {
        let dj = &dorders[j];
        let gj = dj.gcd(&big_n);
        for (ii, &i) in ckept.iter().enumerate() {
            let ei = &corders[i];
            let gi = ei.gcd(&big_n);
            // Tor generator j is (dⱼ/gⱼ)·eⱼ; its image coordinate at i is
            // m[i][j]·(dⱼ/gⱼ), a multiple of eᵢ/gᵢ inside the n-torsion
            let v = (&m[(i, j)] * (dj / &gj)).mod_floor(ei);
            let step = ei / &gi;
            let (q, r) = v.div_mod_floor(&step);
            if !r.is_zero() {
                return Err(ExprError::NotAHom(
                    "matrix does not respect the torsion subgroups".into(),
                ));
            }
            out[(ii, jj)] = q;
        }
    }
    Hom::matrix(dom.clone(), cod.clone(), out)
}

fn kept_tensor_indices(orders: &[BigInt], n: u64) -> Vec<usize> {
    let big_n = BigInt::from(n);
    orders
        .iter()
        .enumerate()
        .filter(|(_, d)| {
            if d.is_zero() {
                true
            } else {
                d.gcd(&big_n) >= BigInt::from(2)
            }
        })
        .map(|(i, _)| i)
        .collect()
}

fn kept_tor_indices(orders: &[BigInt], n: u64) -> Vec<usize> {
    let big_n = BigInt::from(n);
    orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero() && d.gcd(&big_n) >= BigInt::from(2))
        .map(|(i, _)| i)
        .collect()
}

/// The embedding of `Tor(G, Z_n)` (as presented by [`coeff_reduce`]) into
/// `G`, with image the n-torsion subgroup.
pub fn tor_embed(g: &GroupExpr, n: u64) -> Result<Hom> {
    let dom = coeff_reduce(g, n)?.tor;
    if dom.is_trivial() {
        return Ok(Hom::zero(dom, g.clone()));
    }
    match g {
        GroupExpr::Fg(fg) => {
            let big_n = BigInt::from(n);
            let tt = abgroup::tensor_tor_cyclic(fg, n);
            let mut m = IntMatrix::zero(fg.num_generators(), tt.tor.num_generators());
            for (j, &origin) in tt.tor_origin.iter().enumerate() {
                let d = &fg.torsion()[origin];
                let gcd = d.gcd(&big_n);
                m[(origin, j)] = d / gcd;
            }
            Hom::matrix(dom, g.clone(), m)
        }
        GroupExpr::DirectSum(parts) => {
            let embeds: Result<Vec<Hom>> = parts.iter().map(|p| tor_embed(p, n)).collect();
            Hom::sum_map(dom, g.clone(), embeds?)
        }
        GroupExpr::TailProduct(t) => {
            let base = tor_embed(&t.base, n)?;
            let comp = tor_embed(&t.component, n)?;
            Hom::coord_map(dom, g.clone(), base, CoordMaps::constant(comp))
        }
        GroupExpr::Quotient(_) => {
            Ok(Hom { kind: HomKind::TorEmbed(n), domain: dom, codomain: g.clone() })
        }
        GroupExpr::Dyadic | GroupExpr::Rational => unreachable!("torsion-free kinds have trivial Tor"),
    }
}

/// Coefficient change on tensor parts: `G ⊗ Z_m → G ⊗ Z_{mn}` induced by
/// `[1]_m ↦ n·[1]_{mn}` (multiplication by `n` in the canonical
/// presentations).
pub fn tensor_kappa_up(g: &GroupExpr, m: u64, n: u64) -> Result<Hom> {
    let dom = coeff_reduce(g, m)?.tensor;
    let cod = coeff_reduce(g, m * n)?.tensor;
    if dom.is_trivial() || cod.is_trivial() {
        return Ok(Hom::zero(dom, cod));
    }
    match g {
        GroupExpr::Fg(fg) => {
            let tt_m = abgroup::tensor_tor_cyclic(fg, m);
            let tt_mn = abgroup::tensor_tor_cyclic(fg, m * n);
            let mut mat = IntMatrix::zero(tt_mn.tensor.num_generators(), tt_m.tensor.num_generators());
            for (j, &origin) in tt_m.tensor_origin.iter().enumerate() {
                if let Some(i) = tt_mn.tensor_origin.iter().position(|&o| o == origin) {
                    mat[(i, j)] = BigInt::from(n);
                }
            }
            Hom::matrix(dom, cod, mat)
        }
        GroupExpr::Dyadic => {
            let mat = IntMatrix::new(1, 1, vec![BigInt::from(n)]);
            Hom::matrix(dom, cod, mat)
        }
        GroupExpr::DirectSum(parts) => {
            let maps: Result<Vec<Hom>> = parts.iter().map(|p| tensor_kappa_up(p, m, n)).collect();
            Hom::sum_map(dom, cod, maps?)
        }
        GroupExpr::TailProduct(t) => {
            let base = tensor_kappa_up(&t.base, m, n)?;
            let comp = tensor_kappa_up(&t.component, m, n)?;
            Hom::coord_map(dom, cod, base, CoordMaps::constant(comp))
        }
        GroupExpr::Rational | GroupExpr::Quotient(_) => Ok(Hom::zero(dom, cod)),
    }
}

/// Coefficient change on tensor parts: `G ⊗ Z_{mn} → G ⊗ Z_n` induced by
/// `[1]_{mn} ↦ [1]_n` (the natural projection).
pub fn tensor_kappa_down(g: &GroupExpr, n: u64, m: u64) -> Result<Hom> {
    let dom = coeff_reduce(g, m * n)?.tensor;
    let cod = coeff_reduce(g, n)?.tensor;
    if dom.is_trivial() || cod.is_trivial() {
        return Ok(Hom::zero(dom, cod));
    }
    match g {
        GroupExpr::Fg(fg) => {
            let tt_mn = abgroup::tensor_tor_cyclic(fg, m * n);
            let tt_n = abgroup::tensor_tor_cyclic(fg, n);
            let mut mat = IntMatrix::zero(tt_n.tensor.num_generators(), tt_mn.tensor.num_generators());
            for (j, &origin) in tt_mn.tensor_origin.iter().enumerate() {
                if let Some(i) = tt_n.tensor_origin.iter().position(|&o| o == origin) {
                    mat[(i, j)] = BigInt::one();
                }
            }
            Hom::matrix(dom, cod, mat)
        }
        GroupExpr::Dyadic => {
            let mat = IntMatrix::new(1, 1, vec![BigInt::one()]);
            Hom::matrix(dom, cod, mat)
        }
        GroupExpr::DirectSum(parts) => {
            let maps: Result<Vec<Hom>> =
                parts.iter().map(|p| tensor_kappa_down(p, n, m)).collect();
            Hom::sum_map(dom, cod, maps?)
        }
        GroupExpr::TailProduct(t) => {
            let base = tensor_kappa_down(&t.base, n, m)?;
            let comp = tensor_kappa_down(&t.component, n, m)?;
            Hom::coord_map(dom, cod, base, CoordMaps::constant(comp))
        }
        GroupExpr::Rational | GroupExpr::Quotient(_) => Ok(Hom::zero(dom, cod)),
    }
}

/// Coefficient change on Tor parts for `[1]_m ↦ n·[1]_{mn}`: the natural
/// inclusion of the m-torsion into the mn-torsion.
pub fn tor_kappa_up(g: &GroupExpr, m: u64, n: u64) -> Result<Hom> {
    let dom = coeff_reduce(g, m)?.tor;
    let cod = coeff_reduce(g, m * n)?.tor;
    if dom.is_trivial() || cod.is_trivial() {
        return Ok(Hom::zero(dom, cod));
    }
    match g {
        GroupExpr::Fg(fg) => {
            let big_m = BigInt::from(m);
            let big_mn = BigInt::from(m * n);
            let tt_m = abgroup::tensor_tor_cyclic(fg, m);
            let tt_mn = abgroup::tensor_tor_cyclic(fg, m * n);
            let mut mat = IntMatrix::zero(tt_mn.tor.num_generators(), tt_m.tor.num_generators());
            for (j, &origin) in tt_m.tor_origin.iter().enumerate() {
                if let Some(i) = tt_mn.tor_origin.iter().position(|&o| o == origin) {
                    let d = &fg.torsion()[origin];
                    let g_m = d.gcd(&big_m);
                    let g_mn = d.gcd(&big_mn);
                    mat[(i, j)] = &g_mn / &g_m;
                }
            }
            Hom::matrix(dom, cod, mat)
        }
        GroupExpr::DirectSum(parts) => {
            let maps: Result<Vec<Hom>> = parts.iter().map(|p| tor_kappa_up(p, m, n)).collect();
            Hom::sum_map(dom, cod, maps?)
        }
        GroupExpr::TailProduct(t) => {
            let base = tor_kappa_up(&t.base, m, n)?;
            let comp = tor_kappa_up(&t.component, m, n)?;
            Hom::coord_map(dom, cod, base, CoordMaps::constant(comp))
        }
        // the Tor presentation of a supported quotient is sub ⊗ Z_m; in that
        // presentation the torsion inclusion is multiplication by n
        GroupExpr::Quotient(q) => tensor_kappa_up(&q.sub, m, n),
        GroupExpr::Dyadic | GroupExpr::Rational => Ok(Hom::zero(dom, cod)),
    }
}

/// Coefficient change on Tor parts for `[1]_{mn} ↦ [1]_n`: multiplication by
/// `m` from the mn-torsion onto the n-torsion.
pub fn tor_kappa_down(g: &GroupExpr, n: u64, m: u64) -> Result<Hom> {
    let dom = coeff_reduce(g, m * n)?.tor;
    let cod = coeff_reduce(g, n)?.tor;
    if dom.is_trivial() || cod.is_trivial() {
        return Ok(Hom::zero(dom, cod));
    }
    match g {
        GroupExpr::Fg(fg) => {
            let big_n = BigInt::from(n);
            let big_mn = BigInt::from(m * n);
            let tt_mn = abgroup::tensor_tor_cyclic(fg, m * n);
            let tt_n = abgroup::tensor_tor_cyclic(fg, n);
            let mut mat = IntMatrix::zero(tt_n.tor.num_generators(), tt_mn.tor.num_generators());
            for (j, &origin) in tt_mn.tor_origin.iter().enumerate() {
                if let Some(i) = tt_n.tor_origin.iter().position(|&o| o == origin) {
                    let d = &fg.torsion()[origin];
                    let g_n = d.gcd(&big_n);
                    let g_mn = d.gcd(&big_mn);
                    mat[(i, j)] = (BigInt::from(m) * &g_n) / &g_mn;
                }
            }
            Hom::matrix(dom, cod, mat)
        }
        GroupExpr::DirectSum(parts) => {
            let maps: Result<Vec<Hom>> = parts.iter().map(|p| tor_kappa_down(p, n, m)).collect();
            Hom::sum_map(dom, cod, maps?)
        }
        GroupExpr::TailProduct(t) => {
            let base = tor_kappa_down(&t.base, n, m)?;
            let comp = tor_kappa_down(&t.component, n, m)?;
            Hom::coord_map(dom, cod, base, CoordMaps::constant(comp))
        }
        // in the sub ⊗ Z_· presentation this is the natural projection
        GroupExpr::Quotient(q) => tensor_kappa_down(&q.sub, n, m),
        GroupExpr::Dyadic | GroupExpr::Rational => Ok(Hom::zero(dom, cod)),
    }
}
