//! Graded K-theory containers and the coefficient-operation calculus:
//! building `{K_j(·; Z_n)}` with its reduction, boundary, and
//! coefficient-change maps from integral data, building limits of bonded
//! families, and the checks (six-term exactness, square commutativity,
//! operation compatibility).

mod fdata;
mod totalk;

pub use fdata::{f_construction_k, FData, GradedFamily};
pub use totalk::{build_total_k, induced_graded_hom, GradedHom, TotalK};

use crate::groupexpr::{homs_equal, Hom, HomEquality, Payload};
use crate::groupexpr::{element, ExprError};
use serde::Serialize;

pub type Result<T> = std::result::Result<T, ExprError>;

/// How a verdict was reached: a full subgroup computation, probe identities
/// on structured groups, or skipped (absent level, inapplicable map).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    ProbeVerified,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn and(self, other: Verdict) -> Verdict {
        if self.passed() && other.passed() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// A concrete element witnessing a failed identity: evaluating both routes
/// on `element` produced `lhs` and `rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub location: String,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

/// One labelled sub-verdict inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct SubCheck {
    pub label: String,
    pub verdict: Verdict,
    pub mode: CheckMode,
    pub witnesses: Vec<Witness>,
}

impl SubCheck {
    pub fn pass(label: impl Into<String>, mode: CheckMode) -> Self {
        SubCheck { label: label.into(), verdict: Verdict::Pass, mode, witnesses: vec![] }
    }

    pub fn fail(label: impl Into<String>, mode: CheckMode, witnesses: Vec<Witness>) -> Self {
        SubCheck { label: label.into(), verdict: Verdict::Fail, mode, witnesses }
    }

    pub fn skipped(label: impl Into<String>) -> Self {
        SubCheck {
            label: label.into(),
            verdict: Verdict::Pass,
            mode: CheckMode::Skipped,
            witnesses: vec![],
        }
    }
}

/// Outcome of a commuting-square check `right ∘ top = bottom ∘ left`.
#[derive(Debug, Clone)]
pub struct SquareVerdict {
    pub commutes: bool,
    pub witness: Option<Witness>,
}

/// Decide `right ∘ top = bottom ∘ left`; on failure the witness carries the
/// probe element and both evaluations.
pub fn check_square(
    top: &Hom,
    bottom: &Hom,
    left: &Hom,
    right: &Hom,
    window: u64,
) -> Result<SquareVerdict> {
    if top.domain != left.domain {
        return Err(ExprError::ShapeMismatch("square corners do not share a source".into()));
    }
    let via_top = top.then(right)?;
    let via_left = left.then(bottom)?;
    match homs_equal(&via_top, &via_left, window)? {
        HomEquality::Equal => Ok(SquareVerdict { commutes: true, witness: None }),
        HomEquality::Differ { witness, lhs, rhs } => Ok(SquareVerdict {
            commutes: false,
            witness: Some(Witness {
                location: String::new(),
                element: element::render(&top.domain, &witness),
                lhs: element::render(&via_top.codomain, &lhs),
                rhs: element::render(&via_left.codomain, &rhs),
            }),
        }),
    }
}

/// Families of coefficient operations selectable in compatibility checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpFamily {
    Rho,
    Beta,
    Kappa,
}

/// Report of an operation-compatibility run: one sub-verdict per square.
#[derive(Debug, Clone)]
pub struct LambdaReport {
    pub subchecks: Vec<SubCheck>,
}

impl LambdaReport {
    pub fn verdict(&self) -> Verdict {
        if self.subchecks.iter().all(|s| s.verdict.passed()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Sub-verdicts whose label starts with the family tag.
    pub fn family(&self, f: OpFamily) -> impl Iterator<Item = &SubCheck> {
        let tag = match f {
            OpFamily::Rho => "rho",
            OpFamily::Beta => "beta",
            OpFamily::Kappa => "kappa",
        };
        self.subchecks.iter().filter(move |s| s.label.starts_with(tag))
    }
}

/// Check that a graded map commutes with the selected operation families of
/// its source and target containers.
///
/// `ops = {beta, kappa}` is the deleted-reduction check; `{rho, kappa}` the
/// deleted-boundary check; all three together is full compatibility.
pub fn check_lambda_linear(
    h: &GradedHom,
    source: &TotalK,
    target: &TotalK,
    ops: &[OpFamily],
    window: u64,
) -> Result<LambdaReport> {
    if source.bound() != target.bound() {
        return Err(ExprError::ShapeMismatch("containers have different bounds".into()));
    }
    let mut subchecks = Vec::new();
    let n_levels: Vec<u64> = source.coeff_levels().collect();

    for &op in ops {
        match op {
            OpFamily::Rho => {
                for j in [0u8, 1] {
                    for &n in &n_levels {
                        let label = format!("rho j={} n={}", j, n);
                        let (Some(top), Some(bottom), Some(left), Some(right)) = (
                            source.rho(j, n),
                            target.rho(j, n),
                            h.component(j, 0),
                            h.component(j, n),
                        ) else {
                            subchecks.push(SubCheck::skipped(label));
                            continue;
                        };
                        subchecks.push(square_subcheck(label, top, bottom, left, right, window)?);
                    }
                }
            }
            OpFamily::Beta => {
                for j in [0u8, 1] {
                    for &n in &n_levels {
                        let label = format!("beta j={} n={}", j, n);
                        let (Some(top), Some(bottom), Some(left), Some(right)) = (
                            source.beta(j, n),
                            target.beta(j, n),
                            h.component(j, n),
                            h.component(1 - j, 0),
                        ) else {
                            subchecks.push(SubCheck::skipped(label));
                            continue;
                        };
                        subchecks.push(square_subcheck(label, top, bottom, left, right, window)?);
                    }
                }
            }
            OpFamily::Kappa => {
                for j in [0u8, 1] {
                    for (m, n) in source.kappa_pairs() {
                        let label = format!("kappa-up j={} {}->{}", j, m, m * n);
                        match (
                            source.kappa_up(j, m, n),
                            target.kappa_up(j, m, n),
                            h.component(j, m),
                            h.component(j, m * n),
                        ) {
                            (Some(top), Some(bottom), Some(left), Some(right)) => {
                                subchecks.push(square_subcheck(
                                    label, top, bottom, left, right, window,
                                )?);
                            }
                            _ => subchecks.push(SubCheck::skipped(label)),
                        }
                        let label = format!("kappa-down j={} {}->{}", j, m * n, n);
                        match (
                            source.kappa_down(j, n, m),
                            target.kappa_down(j, n, m),
                            h.component(j, m * n),
                            h.component(j, n),
                        ) {
                            (Some(top), Some(bottom), Some(left), Some(right)) => {
                                subchecks.push(square_subcheck(
                                    label, top, bottom, left, right, window,
                                )?);
                            }
                            _ => subchecks.push(SubCheck::skipped(label)),
                        }
                    }
                }
            }
        }
    }
    Ok(LambdaReport { subchecks })
}

fn square_subcheck(
    label: String,
    top: &Hom,
    bottom: &Hom,
    left: &Hom,
    right: &Hom,
    window: u64,
) -> Result<SubCheck> {
    let sq = check_square(top, bottom, left, right, window)?;
    if sq.commutes {
        Ok(SubCheck::pass(label, CheckMode::Exact))
    } else {
        let mut w = sq.witness.expect("failed squares carry a witness");
        w.location = label.clone();
        Ok(SubCheck::fail(label, CheckMode::Exact, vec![w]))
    }
}

/// The integral-level components of a graded map.
pub fn restrict_to_kstar(h: &GradedHom) -> (Option<&Hom>, Option<&Hom>) {
    (h.component(0, 0), h.component(1, 0))
}

/// Exactness of `f`, `g` at the middle group when all three groups have
/// finite generators: `Ok(None)` when exact, otherwise the witness rendered
/// in middle-group coordinates.
pub fn exact_at_flat(f: &Hom, g: &Hom) -> Result<Option<String>> {
    if f.codomain != g.domain {
        return Err(ExprError::DomainMismatch(
            "exactness needs the maps to share the middle group".into(),
        ));
    }
    let fm = hom_to_matrix(f)?;
    let gm = hom_to_matrix(g)?;
    match exactness_at(&fm.0, &gm.0, &gm.1, &gm.2) {
        None => Ok(None),
        Some(witness) => {
            let coords: Vec<String> = witness.iter().map(|c| c.to_string()).collect();
            Ok(Some(format!("({})", coords.join(","))))
        }
    }
}

/// Report of a six-term exactness verification.
#[derive(Debug, Clone)]
pub struct SixTermReport {
    pub subchecks: Vec<SubCheck>,
}

impl SixTermReport {
    pub fn verdict(&self) -> Verdict {
        if self.subchecks.iter().all(|s| s.verdict.passed()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Verify the six-term sequences
/// `K_j -×n→ K_j -ρ→ K_j(;Z_n) -β→ K_{1-j} -×n→ K_{1-j}` of a container at
/// every coefficient level: full subgroup computations on
/// finite-generator levels, probe identities (`ρ∘×n = 0`, `β∘ρ = 0`,
/// `×n∘β = 0`, boundary image = n-torsion) on structured levels.
pub fn check_six_term(tk: &TotalK, window: u64) -> Result<SixTermReport> {
    let mut subchecks = Vec::new();
    for j in [0u8, 1] {
        for n in tk.coeff_levels() {
            let label = format!("six-term j={} n={}", j, n);
            let (Some(kj), Some(kjn), Some(kother)) =
                (tk.group(j, 0), tk.group(j, n), tk.group(1 - j, 0))
            else {
                subchecks.push(SubCheck::skipped(label));
                continue;
            };
            let (Some(rho), Some(beta)) = (tk.rho(j, n), tk.beta(j, n)) else {
                subchecks.push(SubCheck::skipped(label));
                continue;
            };
            let all_flat = kj.flat_orders().is_some()
                && kjn.flat_orders().is_some()
                && kother.flat_orders().is_some();
            if all_flat {
                subchecks.extend(six_term_exact(&label, kj, kother, rho, beta, n)?);
            } else {
                subchecks.extend(six_term_probe(&label, kj, kjn, kother, rho, beta, n, window)?);
            }
        }
    }
    Ok(SixTermReport { subchecks })
}

/// A homomorphism between finite-generator groups as a plain matrix, read
/// off by evaluating on unit probes.
fn hom_to_matrix(h: &Hom) -> Result<(crate::abgroup::IntMatrix, Vec<num_bigint::BigInt>, Vec<num_bigint::BigInt>)> {
    let dorders = h
        .domain
        .flat_orders()
        .ok_or_else(|| ExprError::ShapeMismatch("domain has no finite generators".into()))?;
    let corders = h
        .codomain
        .flat_orders()
        .ok_or_else(|| ExprError::ShapeMismatch("codomain has no finite generators".into()))?;
    let probes = element::probes(&h.domain, 1)?;
    let mut cols = Vec::new();
    for p in &probes {
        let image = crate::groupexpr::hom::apply(h, p)?;
        cols.push(flatten(&h.codomain, &image)?);
    }
    Ok((crate::abgroup::IntMatrix::from_columns(corders.len(), &cols), dorders, corders))
}

fn flatten(g: &crate::groupexpr::GroupExpr, p: &Payload) -> Result<Vec<num_bigint::BigInt>> {
    match (g, p) {
        (crate::groupexpr::GroupExpr::Fg(_), Payload::Fg(c)) => Ok(c.clone()),
        (crate::groupexpr::GroupExpr::DirectSum(parts), Payload::Tuple(vals)) => {
            let mut out = Vec::new();
            for (g, v) in parts.iter().zip(vals) {
                out.extend(flatten(g, v)?);
            }
            Ok(out)
        }
        _ => Err(ExprError::ShapeMismatch("payload has no finite coordinates".into())),
    }
}

fn relation_columns(orders: &[num_bigint::BigInt]) -> crate::abgroup::IntMatrix {
    use num_traits::Zero;
    let m = orders.len();
    let mut rel_cols = Vec::new();
    for (i, d) in orders.iter().enumerate() {
        if !d.is_zero() {
            let mut col = vec![num_bigint::BigInt::zero(); m];
            col[i] = d.clone();
            rel_cols.push(col);
        }
    }
    crate::abgroup::IntMatrix::from_columns(m, &rel_cols)
}

/// Is `image(f) = kernel(g)` in the middle group? `None` when exact,
/// otherwise a witness vector (canonical middle-group coordinates).
fn exactness_at(
    f_mat: &crate::abgroup::IntMatrix,
    g_mat: &crate::abgroup::IntMatrix,
    mid_orders: &[num_bigint::BigInt],
    cod_orders: &[num_bigint::BigInt],
) -> Option<Vec<num_bigint::BigInt>> {
    use crate::abgroup::{in_column_span, kernel_basis, IntMatrix};
    use num_integer::Integer;
    use num_traits::Zero;

    let m = mid_orders.len();
    let mid_rel = relation_columns(mid_orders);
    let cod_rel = relation_columns(cod_orders);
    let image_lattice = f_mat.hstack(&mid_rel);

    // kernel lattice of g: projections of ker [g | cod_rel], plus mid_rel
    let stacked = g_mat.hstack(&cod_rel);
    let big_kernel = kernel_basis(&stacked);
    let mut kcols = Vec::new();
    for j in 0..big_kernel.cols() {
        kcols.push(big_kernel.column(j)[..m].to_vec());
    }
    for j in 0..mid_rel.cols() {
        kcols.push(mid_rel.column(j));
    }
    let kernel_lattice = IntMatrix::from_columns(m, &kcols);

    let canonical = |v: &[num_bigint::BigInt]| -> Vec<num_bigint::BigInt> {
        v.iter()
            .zip(mid_orders)
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect()
    };
    for j in 0..kernel_lattice.cols() {
        let col = kernel_lattice.column(j);
        if !in_column_span(&image_lattice, &col) {
            return Some(canonical(&col));
        }
    }
    for j in 0..image_lattice.cols() {
        let col = image_lattice.column(j);
        if !in_column_span(&kernel_lattice, &col) {
            return Some(canonical(&col));
        }
    }
    None
}

/// Full exactness on finite-generator levels, by lattice computations.
fn six_term_exact(
    label: &str,
    kj: &crate::groupexpr::GroupExpr,
    kother: &crate::groupexpr::GroupExpr,
    rho: &Hom,
    beta: &Hom,
    n: u64,
) -> Result<Vec<SubCheck>> {
    let scalar_n = |g: &crate::groupexpr::GroupExpr| Hom::scalar_int(g.clone(), n as i64);

    let mul_j = hom_to_matrix(&scalar_n(kj))?;
    let rho_m = hom_to_matrix(rho)?;
    let beta_m = hom_to_matrix(beta)?;
    let mul_o = hom_to_matrix(&scalar_n(kother))?;

    let mut out = Vec::new();
    let seq = [
        ("node K_j", &mul_j, &rho_m),
        ("node K_j(;Z_n)", &rho_m, &beta_m),
        ("node K_(1-j)", &beta_m, &mul_o),
    ];
    for (node, f, g) in seq {
        let verdict = exactness_at(&f.0, &g.0, &g.1, &g.2);
        let sublabel = format!("{} {}", label, node);
        match verdict {
            None => out.push(SubCheck::pass(sublabel, CheckMode::Exact)),
            Some(witness) => {
                let coords: Vec<String> = witness.iter().map(|c| c.to_string()).collect();
                let w = Witness {
                    location: sublabel.clone(),
                    element: format!("({})", coords.join(",")),
                    lhs: "lies in exactly one of image/kernel".into(),
                    rhs: String::new(),
                };
                out.push(SubCheck::fail(sublabel, CheckMode::Exact, vec![w]));
            }
        }
    }
    Ok(out)
}

/// Probe identities on structured levels: the three composites vanish and
/// the boundary image realizes the n-torsion.
#[allow(clippy::too_many_arguments)]
fn six_term_probe(
    label: &str,
    kj: &crate::groupexpr::GroupExpr,
    kjn: &crate::groupexpr::GroupExpr,
    kother: &crate::groupexpr::GroupExpr,
    rho: &Hom,
    beta: &Hom,
    n: u64,
    window: u64,
) -> Result<Vec<SubCheck>> {
    let mut out = Vec::new();
    let checks = [
        (
            "rho∘(×n) = 0",
            Hom::scalar_int(kj.clone(), n as i64).then(rho)?,
        ),
        ("beta∘rho = 0", rho.then(beta)?),
        (
            "(×n)∘beta = 0",
            beta.then(&Hom::scalar_int(kother.clone(), n as i64))?,
        ),
    ];
    for (name, composite) in checks {
        let zero = Hom::zero(composite.domain.clone(), composite.codomain.clone());
        let sublabel = format!("{} {}", label, name);
        match homs_equal(&composite, &zero, window)? {
            HomEquality::Equal => out.push(SubCheck::pass(sublabel, CheckMode::ProbeVerified)),
            HomEquality::Differ { witness, lhs, rhs } => {
                let w = Witness {
                    location: sublabel.clone(),
                    element: element::render(&composite.domain, &witness),
                    lhs: element::render(&composite.codomain, &lhs),
                    rhs: element::render(&composite.codomain, &rhs),
                };
                out.push(SubCheck::fail(sublabel, CheckMode::ProbeVerified, vec![w]));
            }
        }
    }
    // image(beta) must realize the n-torsion of K_{1-j}: the canonical
    // torsion embedding must factor through beta, via the canonical
    // preimages of the torsion generators
    let sublabel = format!("{} image(beta) = n-torsion", label);
    let embed = crate::groupexpr::reduce::tor_embed(kother, n)?;
    if embed.domain.is_trivial() {
        out.push(SubCheck::pass(sublabel, CheckMode::ProbeVerified));
        return Ok(out);
    }
    match beta_preimage(kjn, &embed.domain)? {
        Some(preimage) => {
            let via_beta = preimage.then(beta)?;
            match homs_equal(&via_beta, &embed, window)? {
                HomEquality::Equal => {
                    out.push(SubCheck::pass(sublabel, CheckMode::ProbeVerified))
                }
                HomEquality::Differ { witness, lhs, rhs } => {
                    let w = Witness {
                        location: sublabel.clone(),
                        element: element::render(&embed.domain, &witness),
                        lhs: element::render(kother, &lhs),
                        rhs: element::render(kother, &rhs),
                    };
                    out.push(SubCheck::fail(sublabel, CheckMode::ProbeVerified, vec![w]));
                }
            }
        }
        None => out.push(SubCheck::skipped(format!("{} (no canonical preimage)", sublabel))),
    }
    Ok(out)
}

/// Canonical right inverse of the boundary on the torsion presentation: into
/// the Tor summand of a builder level, through the section for bonded-tail
/// levels (whose coordinates then follow the rule, which the boundary
/// ignores).
fn beta_preimage(
    kjn: &crate::groupexpr::GroupExpr,
    tor_presentation: &crate::groupexpr::GroupExpr,
) -> Result<Option<Hom>> {
    match kjn {
        crate::groupexpr::GroupExpr::DirectSum(parts)
            if parts.len() == 2 && &parts[1] == tor_presentation =>
        {
            Ok(Some(Hom::inject(kjn.clone(), 1)?))
        }
        crate::groupexpr::GroupExpr::TailProduct(t) => {
            match beta_preimage(&t.base, tor_presentation)? {
                Some(inner) => {
                    let section = Hom::tail_section(kjn.clone())?;
                    Ok(Some(inner.then(&section)?))
                }
                None => Ok(None),
            }
        }
        _ => Ok(None),
    }
}
