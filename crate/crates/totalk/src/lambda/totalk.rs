//! The graded container `{K_j(·; Z_n)}` with its reduction, boundary, and
//! coefficient-change maps, and graded maps between containers.

use super::Result;
use crate::groupexpr::reduce::{
    coeff_reduce, tensor_hom, tensor_kappa_down, tensor_kappa_up, tor_embed, tor_hom,
    tor_kappa_down, tor_kappa_up,
};
use crate::groupexpr::{ExprError, GroupExpr, Hom};
use std::collections::BTreeMap;

/// Graded family `K[j][n]` for `j ∈ {0,1}` and `n ∈ {0} ∪ [2..bound]`
/// (`n = 0` is the integral level), with:
///
/// * `rho[j][n] : K_j → K_j(;Z_n)`: reduction,
/// * `beta[j][n] : K_j(;Z_n) → K_{1-j}`: boundary,
/// * `kappa_up[j][(m,n)] : K_j(;Z_m) → K_j(;Z_{mn})` and
///   `kappa_down[j][(n,m)] : K_j(;Z_{mn}) → K_j(;Z_n)`: coefficient changes.
///
/// Levels may be absent (`None`) for partially specified data; maps exist
/// only between present levels. Coefficient-change maps may be absent where
/// the componentwise construction is not well-defined.
#[derive(Debug, Clone)]
pub struct TotalK {
    bound: u64,
    groups: BTreeMap<(u8, u64), Option<GroupExpr>>,
    rho: BTreeMap<(u8, u64), Hom>,
    beta: BTreeMap<(u8, u64), Hom>,
    kappa_up: BTreeMap<(u8, u64, u64), Hom>,
    kappa_down: BTreeMap<(u8, u64, u64), Hom>,
}

impl TotalK {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Coefficient levels `2..=bound`.
    pub fn coeff_levels(&self) -> impl Iterator<Item = u64> {
        2..=self.bound
    }

    /// Pairs `(m, n)` with `m, n ≥ 2` and `m·n ≤ bound`, the applicable
    /// coefficient-change indices.
    pub fn kappa_pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for m in 2..=self.bound {
            for n in 2..=self.bound {
                if m * n <= self.bound {
                    out.push((m, n));
                }
            }
        }
        out
    }

    pub fn group(&self, j: u8, n: u64) -> Option<&GroupExpr> {
        self.groups.get(&(j, n)).and_then(|g| g.as_ref())
    }

    pub fn rho(&self, j: u8, n: u64) -> Option<&Hom> {
        self.rho.get(&(j, n))
    }

    pub fn beta(&self, j: u8, n: u64) -> Option<&Hom> {
        self.beta.get(&(j, n))
    }

    pub fn kappa_up(&self, j: u8, m: u64, n: u64) -> Option<&Hom> {
        self.kappa_up.get(&(j, m, n))
    }

    pub fn kappa_down(&self, j: u8, n: u64, m: u64) -> Option<&Hom> {
        self.kappa_down.get(&(j, n, m))
    }

    /// Assemble a container from parts (hand-built and partially specified
    /// data). Endpoint consistency of every map is validated.
    pub fn from_parts(
        bound: u64,
        groups: BTreeMap<(u8, u64), Option<GroupExpr>>,
        rho: BTreeMap<(u8, u64), Hom>,
        beta: BTreeMap<(u8, u64), Hom>,
        kappa_up: BTreeMap<(u8, u64, u64), Hom>,
        kappa_down: BTreeMap<(u8, u64, u64), Hom>,
    ) -> Result<TotalK> {
        let tk = TotalK { bound, groups, rho, beta, kappa_up, kappa_down };
        for ((j, n), h) in &tk.rho {
            let (Some(a), Some(b)) = (tk.group(*j, 0), tk.group(*j, *n)) else {
                return Err(ExprError::ShapeMismatch(format!(
                    "reduction at (j={}, n={}) references an absent level",
                    j, n
                )));
            };
            if &h.domain != a || &h.codomain != b {
                return Err(ExprError::DomainMismatch(format!(
                    "reduction at (j={}, n={}) has wrong endpoints",
                    j, n
                )));
            }
        }
        for ((j, n), h) in &tk.beta {
            let (Some(a), Some(b)) = (tk.group(*j, *n), tk.group(1 - *j, 0)) else {
                return Err(ExprError::ShapeMismatch(format!(
                    "boundary at (j={}, n={}) references an absent level",
                    j, n
                )));
            };
            if &h.domain != a || &h.codomain != b {
                return Err(ExprError::DomainMismatch(format!(
                    "boundary at (j={}, n={}) has wrong endpoints",
                    j, n
                )));
            }
        }
        for ((j, m, n), h) in &tk.kappa_up {
            let (Some(a), Some(b)) = (tk.group(*j, *m), tk.group(*j, m * n)) else {
                return Err(ExprError::ShapeMismatch("coefficient change off the grid".into()));
            };
            if &h.domain != a || &h.codomain != b {
                return Err(ExprError::DomainMismatch(format!(
                    "kappa-up at (j={}, m={}, n={}) has wrong endpoints",
                    j, m, n
                )));
            }
        }
        for ((j, n, m), h) in &tk.kappa_down {
            let (Some(a), Some(b)) = (tk.group(*j, m * n), tk.group(*j, *n)) else {
                return Err(ExprError::ShapeMismatch("coefficient change off the grid".into()));
            };
            if &h.domain != a || &h.codomain != b {
                return Err(ExprError::DomainMismatch(format!(
                    "kappa-down at (j={}, n={}, m={}) has wrong endpoints",
                    j, n, m
                )));
            }
        }
        Ok(tk)
    }
}

/// Build the container of a pair of integral groups:
/// `K_j(;Z_n) = (K_j ⊗ Z_n) ⊕ Tor(K_{1-j}, Z_n)` with
///
/// * reduction into the first summand,
/// * boundary = projection to the Tor summand followed by its embedding as
///   n-torsion of the other integral group,
/// * coefficient changes acting summandwise (tensor-functorially on the
///   first, Tor-functorially on the second).
///
/// The six-term sequences are exact by construction; callers re-verify via
/// [`super::check_six_term`].
pub fn build_total_k(k0: GroupExpr, k1: GroupExpr, bound: u64) -> Result<TotalK> {
    if bound < 2 {
        return Err(ExprError::ShapeMismatch("bound must be at least 2".into()));
    }
    let mut groups = BTreeMap::new();
    let mut rho = BTreeMap::new();
    let mut beta = BTreeMap::new();
    let mut kappa_up = BTreeMap::new();
    let mut kappa_down = BTreeMap::new();

    groups.insert((0u8, 0u64), Some(k0.clone()));
    groups.insert((1u8, 0u64), Some(k1.clone()));
    let integral = [k0, k1];

    for j in [0u8, 1] {
        let kj = &integral[j as usize];
        let kother = &integral[1 - j as usize];
        for n in 2..=bound {
            let red = coeff_reduce(kj, n)?;
            let tor_other = coeff_reduce(kother, n)?.tor;
            let level =
                GroupExpr::DirectSum(vec![red.tensor.clone(), tor_other.clone()]);
            groups.insert((j, n), Some(level.clone()));

            let rho_map = red.reduction.then(&Hom::inject(level.clone(), 0)?)?;
            rho.insert((j, n), rho_map);

            let beta_map =
                Hom::project(level.clone(), 1)?.then(&tor_embed(kother, n)?)?;
            beta.insert((j, n), beta_map);
        }
        for m in 2..=bound {
            for n in 2..=bound {
                if m * n > bound {
                    continue;
                }
                let dom = groups[&(j, m)].clone().expect("level built above");
                let cod = groups[&(j, m * n)].clone().expect("level built above");
                let up = Hom::sum_map(
                    dom.clone(),
                    cod.clone(),
                    vec![tensor_kappa_up(kj, m, n)?, tor_kappa_up(kother, m, n)?],
                )?;
                kappa_up.insert((j, m, n), up);
                let down = Hom::sum_map(
                    cod,
                    dom,
                    vec![tensor_kappa_down(kj, m, n)?, tor_kappa_down(kother, m, n)?],
                )?;
                kappa_down.insert((j, m, n), down);
            }
        }
    }
    TotalK::from_parts(bound, groups, rho, beta, kappa_up, kappa_down)
}

/// A graded map between two containers: one component per present level.
#[derive(Debug, Clone)]
pub struct GradedHom {
    bound: u64,
    components: BTreeMap<(u8, u64), Hom>,
}

impl GradedHom {
    pub fn new(bound: u64, components: BTreeMap<(u8, u64), Hom>) -> Self {
        GradedHom { bound, components }
    }

    /// Validate every component's endpoints against source and target.
    pub fn validated(self, source: &TotalK, target: &TotalK) -> Result<Self> {
        for ((j, n), h) in &self.components {
            let (Some(a), Some(b)) = (source.group(*j, *n), target.group(*j, *n)) else {
                return Err(ExprError::ShapeMismatch(format!(
                    "component (j={}, n={}) references an absent level",
                    j, n
                )));
            };
            if &h.domain != a || &h.codomain != b {
                return Err(ExprError::DomainMismatch(format!(
                    "component (j={}, n={}) has wrong endpoints",
                    j, n
                )));
            }
        }
        Ok(self)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn component(&self, j: u8, n: u64) -> Option<&Hom> {
        self.components.get(&(j, n))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(u8, u64), &Hom)> {
        self.components.iter()
    }

    pub fn insert(&mut self, j: u8, n: u64, h: Hom) {
        self.components.insert((j, n), h);
    }

    /// The identity graded map of a container.
    pub fn identity(tk: &TotalK) -> Self {
        let mut components = BTreeMap::new();
        for j in [0u8, 1] {
            for n in std::iter::once(0).chain(tk.coeff_levels()) {
                if let Some(g) = tk.group(j, n) {
                    components.insert((j, n), Hom::identity(g.clone()));
                }
            }
        }
        GradedHom { bound: tk.bound(), components }
    }
}

/// The graded map induced functorially by a pair of integral maps between
/// built containers: `(f_j ⊗ Z_n) ⊕ Tor(f_{1-j}, Z_n)` at each level.
pub fn induced_graded_hom(
    f0: &Hom,
    f1: &Hom,
    source: &TotalK,
    target: &TotalK,
) -> Result<GradedHom> {
    let mut components = BTreeMap::new();
    components.insert((0u8, 0u64), f0.clone());
    components.insert((1u8, 0u64), f1.clone());
    let f = [f0, f1];
    for j in [0u8, 1] {
        for n in source.coeff_levels() {
            let (Some(dom), Some(cod)) = (source.group(j, n), target.group(j, n)) else {
                continue;
            };
            let level = Hom::sum_map(
                dom.clone(),
                cod.clone(),
                vec![
                    tensor_hom(f[j as usize], n)?,
                    tor_hom(f[1 - j as usize], n)?,
                ],
            )?;
            components.insert((j, n), level);
        }
    }
    GradedHom::new(source.bound(), components).validated(source, target)
}
