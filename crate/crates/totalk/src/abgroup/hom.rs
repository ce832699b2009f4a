//! Homomorphisms of finitely generated abelian groups on canonical
//! generators.

use super::group::{FgAbGroup, SubgroupPresentation};
use super::matrix::{self, IntMatrix};
use super::{AbError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// A homomorphism between canonical-form groups, stored as the matrix whose
/// column `j` is the image of the `j`-th canonical domain generator.
///
/// Well-definedness (`dⱼ · column j = 0` in the codomain) is checked eagerly
/// at construction; torsion rows are kept reduced into `[0, dᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgHom {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl FgHom {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(AbError::ShapeMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.num_generators(),
                domain.num_generators()
            )));
        }
        for j in 0..domain.num_generators() {
            let dj = domain.generator_order(j);
            if dj.is_zero() {
                continue;
            }
            for i in 0..codomain.num_generators() {
                let ei = codomain.generator_order(i);
                let v = &dj * &matrix[(i, j)];
                let ok = if ei.is_zero() { v.is_zero() } else { v.mod_floor(&ei).is_zero() };
                if !ok {
                    return Err(AbError::WellDefinedness(format!(
                        "generator {} of order {} maps to a column not killed by it (row {})",
                        j, dj, i
                    )));
                }
            }
        }
        let canon = canonicalize_matrix(&codomain, &matrix);
        Ok(FgHom { domain, codomain, matrix: canon })
    }

    pub fn zero(domain: FgAbGroup, codomain: FgAbGroup) -> Self {
        let m = IntMatrix::zero(codomain.num_generators(), domain.num_generators());
        FgHom { domain, codomain, matrix: m }
    }

    pub fn identity(g: FgAbGroup) -> Self {
        let m = IntMatrix::identity(g.num_generators());
        FgHom { domain: g.clone(), codomain: g, matrix: m }
    }

    /// Multiplication by an integer scalar.
    pub fn scalar(g: FgAbGroup, c: &BigInt) -> Self {
        let m = IntMatrix::identity(g.num_generators()).scale(c);
        let canon = canonicalize_matrix(&g, &m);
        FgHom { domain: g.clone(), codomain: g, matrix: canon }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let image = self.matrix.mul_vec(coords);
        self.codomain.canonicalize(&image)
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn negate(&self) -> Self {
        let m = self.matrix.neg();
        let canon = canonicalize_matrix(&self.codomain, &m);
        FgHom { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: canon }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(AbError::DomainMismatch("sum of maps with different endpoints".into()));
        }
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m[(i, j)].clone() + &other.matrix[(i, j)];
                m[(i, j)] = v;
            }
        }
        Ok(FgHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: canonicalize_matrix(&self.codomain, &m),
        })
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.codomain != other.domain {
            return Err(AbError::DomainMismatch(format!(
                "cannot compose: codomain {} != domain {}",
                self.codomain, other.domain
            )));
        }
        let m = other.matrix.mul(&self.matrix);
        Ok(FgHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            matrix: canonicalize_matrix(&other.codomain, &m),
        })
    }

    /// Equality on canonical generators. Errors when the endpoints differ.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(AbError::DomainMismatch(
                "maps with different endpoints are never compared".into(),
            ));
        }
        Ok(self.matrix == other.matrix)
    }

    /// Is the induced map injective? Exact: the kernel presentation is
    /// computed and tested for triviality.
    pub fn is_injective(&self) -> bool {
        kernel_image(self).0.group.is_trivial()
    }

    /// Is the induced map surjective?
    pub fn is_surjective(&self) -> bool {
        // coker = codomain gens / (image + codomain relations)
        let big = self.matrix.hstack(&self.codomain.relation_matrix());
        super::group::cokernel_presentation(&big).is_trivial()
    }

    pub fn is_automorphism(&self) -> bool {
        self.domain == self.codomain && self.is_surjective() && self.is_injective()
    }
}

impl fmt::Display for FgHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} via\n{}", self.domain, self.codomain, self.matrix)
    }
}

fn canonicalize_matrix(codomain: &FgAbGroup, m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        let d = codomain.generator_order(i);
        if d.is_zero() {
            continue;
        }
        for j in 0..m.cols() {
            out[(i, j)] = out[(i, j)].mod_floor(&d);
        }
    }
    out
}

/// Kernel and image of an [`FgHom`], each as a canonical group plus the
/// subgroup presentation that carries its inclusion data.
pub fn kernel_image(h: &FgHom) -> (SubgroupPresentation, SubgroupPresentation) {
    let dom_rel = h.domain().relation_matrix();
    let cod_rel = h.codomain().relation_matrix();

    // kernel lattice: x with M·x in the codomain relation lattice,
    // computed as the projection of ker [M | R_cod] to the x block
    let stacked = h.matrix().hstack(&cod_rel);
    let big_kernel = matrix::kernel_basis(&stacked);
    let n = h.domain().num_generators();
    let mut cols = Vec::new();
    for j in 0..big_kernel.cols() {
        let col = big_kernel.column(j);
        cols.push(col[..n].to_vec());
    }
    // the domain relations always lie in the kernel lattice
    for j in 0..dom_rel.cols() {
        cols.push(dom_rel.column(j));
    }
    let kernel_lattice = IntMatrix::from_columns(n, &cols);
    let kernel = SubgroupPresentation::new(&kernel_lattice, &dom_rel);

    // image lattice: spanned by the matrix columns together with the
    // codomain relations, modulo those relations
    let image_lattice = h.matrix().hstack(&cod_rel);
    let image = SubgroupPresentation::new(&image_lattice, &cod_rel);

    (kernel, image)
}

/// Inclusion map of a kernel/image presentation back into its ambient group.
pub fn inclusion_hom(p: &SubgroupPresentation, ambient: &FgAbGroup) -> Result<FgHom> {
    FgHom::new(p.group.clone(), ambient.clone(), p.lift.clone())
}

/// Verdict of an exactness test at the middle group of `f : G → H`,
/// `g : H → K`.
#[derive(Debug, Clone)]
pub enum ExactnessVerdict {
    Exact,
    /// A witness element of `H` lying in exactly one of image(f), kernel(g).
    Failure {
        witness: Vec<BigInt>,
        in_image: bool,
        in_kernel: bool,
    },
}

impl ExactnessVerdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, ExactnessVerdict::Exact)
    }
}

/// Is `image(f) = kernel(g)` inside the middle group?
pub fn is_exact_at(f: &FgHom, g: &FgHom) -> Result<ExactnessVerdict> {
    if f.codomain() != g.domain() {
        return Err(AbError::DomainMismatch(format!(
            "exactness needs codomain(f) = domain(g), got {} and {}",
            f.codomain(),
            g.domain()
        )));
    }
    let h = f.codomain();
    let h_rel = h.relation_matrix();
    let n = h.num_generators();

    // image lattice of f and kernel lattice of g, both containing im(R_H)
    let image_lattice = f.matrix().hstack(&h_rel);
    let stacked = g.matrix().hstack(&g.codomain().relation_matrix());
    let big_kernel = matrix::kernel_basis(&stacked);
    let mut kcols = Vec::new();
    for j in 0..big_kernel.cols() {
        kcols.push(big_kernel.column(j)[..n].to_vec());
    }
    for j in 0..h_rel.cols() {
        kcols.push(h_rel.column(j));
    }
    let kernel_lattice = IntMatrix::from_columns(n, &kcols);

    // kernel generator not in the image lattice: in kernel, not image
    for j in 0..kernel_lattice.cols() {
        let col = kernel_lattice.column(j);
        if !matrix::in_column_span(&image_lattice, &col) {
            return Ok(ExactnessVerdict::Failure {
                witness: h.canonicalize(&col),
                in_image: false,
                in_kernel: true,
            });
        }
    }
    // image generator not in the kernel lattice: in image, not kernel
    for j in 0..image_lattice.cols() {
        let col = image_lattice.column(j);
        if !matrix::in_column_span(&kernel_lattice, &col) {
            return Ok(ExactnessVerdict::Failure {
                witness: h.canonicalize(&col),
                in_image: true,
                in_kernel: false,
            });
        }
    }
    Ok(ExactnessVerdict::Exact)
}

/// Exhaustive, duplicate-free list of automorphisms of a finite group, in a
/// deterministic (lexicographic matrix) order.
///
/// Brute force over candidate matrices with entries reduced modulo the
/// generator orders; `bound` caps the group order.
pub fn enumerate_automorphisms(g: &FgAbGroup, bound: u64) -> Result<Vec<FgHom>> {
    if g.free_rank() > 0 {
        return Err(AbError::InfiniteGroup(g.free_rank()));
    }
    let order = g.order().expect("finite group has an order");
    if order > BigInt::from(bound) {
        return Err(AbError::BoundExceeded { order: order.to_string(), bound });
    }
    let t = g.torsion().len();
    if t == 0 {
        return Ok(vec![FgHom::identity(g.clone())]);
    }

    // entry (i,j) ranges over multiples of dᵢ/gcd(dᵢ,dⱼ) in [0, dᵢ)
    let mut steps = Vec::with_capacity(t * t);
    let mut counts = Vec::with_capacity(t * t);
    let mut total = BigInt::one();
    for i in 0..t {
        for j in 0..t {
            let di = &g.torsion()[i];
            let dj = &g.torsion()[j];
            let gcd = di.gcd(dj);
            let step = di / &gcd;
            steps.push(step);
            counts.push(gcd.clone());
            total *= &gcd;
        }
    }
    // candidate space cap, independent of the group-order bound
    if total > BigInt::from(100_000_000u64) {
        return Err(AbError::BoundExceeded { order: total.to_string(), bound });
    }

    let counts_u64: Vec<u64> = counts
        .iter()
        .map(|c| u64::try_from(c).expect("candidate count fits in u64"))
        .collect();
    let mut out = Vec::new();
    let mut odometer = vec![0u64; t * t];
    loop {
        let entries: Vec<BigInt> =
            odometer.iter().zip(&steps).map(|(&k, step)| BigInt::from(k) * step).collect();
        let m = IntMatrix::new(t, t, entries);
        let h = FgHom::new(g.clone(), g.clone(), m).expect("entries respect relations");
        if h.is_automorphism() {
            out.push(h);
        }
        // advance odometer
        let mut pos = t * t;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < counts_u64[pos] {
                break;
            }
            odometer[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(dom: &FgAbGroup, cod: &FgAbGroup, entries: &[i64]) -> FgHom {
        let m = IntMatrix::from_i64(cod.num_generators(), dom.num_generators(), entries);
        FgHom::new(dom.clone(), cod.clone(), m).unwrap()
    }

    #[test]
    fn well_definedness_is_enforced() {
        // Z_3 -> Z_9 sending the generator to [1]_9 is not a homomorphism
        let z3 = FgAbGroup::cyclic(3);
        let z9 = FgAbGroup::cyclic(9);
        let m = IntMatrix::from_i64(1, 1, &[1]);
        assert!(matches!(
            FgHom::new(z3.clone(), z9.clone(), m),
            Err(AbError::WellDefinedness(_))
        ));
        // [x]_3 -> [3x]_9 is fine
        let m = IntMatrix::from_i64(1, 1, &[3]);
        assert!(FgHom::new(z3, z9, m).is_ok());
    }

    #[test]
    fn kernel_image_times_three() {
        // ×3 : Z -> Z has kernel 0 and image isomorphic to Z
        let z = FgAbGroup::free(1);
        let f = FgHom::scalar(z.clone(), &BigInt::from(3));
        let (ker, im) = kernel_image(&f);
        assert!(ker.group.is_trivial());
        assert_eq!(im.group, FgAbGroup::free(1));

        // ×3 : Z_9 -> Z_9 has kernel Z_3 and image Z_3
        let z9 = FgAbGroup::cyclic(9);
        let f = FgHom::scalar(z9.clone(), &BigInt::from(3));
        let (ker, im) = kernel_image(&f);
        assert_eq!(ker.group, FgAbGroup::cyclic(3));
        assert_eq!(im.group, FgAbGroup::cyclic(3));
        // inclusions are honest maps back into the ambient group
        let inc = inclusion_hom(&ker, &z9).unwrap();
        assert!(inc.is_injective());
    }

    #[test]
    fn kernel_image_projection_from_sum() {
        // (0, ι) : Z_3+Z_3 -> Z_3, ([x],[y]) -> [y]: kernel Z_3, image Z_3
        let dom = FgAbGroup::new(vec![BigInt::from(3), BigInt::from(3)], 0).unwrap();
        let cod = FgAbGroup::cyclic(3);
        let f = hom(&dom, &cod, &[0, 1]);
        let (ker, im) = kernel_image(&f);
        assert_eq!(ker.group, FgAbGroup::cyclic(3));
        assert_eq!(im.group, FgAbGroup::cyclic(3));
    }

    #[test]
    fn exactness_at_middle() {
        let z = FgAbGroup::free(1);
        let z3 = FgAbGroup::cyclic(3);
        let times3 = FgHom::scalar(z.clone(), &BigInt::from(3));
        let quot = hom(&z, &z3, &[1]);
        assert!(is_exact_at(&times3, &quot).unwrap().is_exact());

        // Z -×3-> Z -×3-> Z is not exact; 3 lies in the image, not the kernel
        let verdict = is_exact_at(&times3, &times3).unwrap();
        match verdict {
            ExactnessVerdict::Failure { witness, in_image, in_kernel } => {
                assert!(in_image && !in_kernel);
                assert_eq!(witness, vec![BigInt::from(3)]);
            }
            ExactnessVerdict::Exact => panic!("should not be exact"),
        }

        let mismatch = is_exact_at(&quot, &times3);
        assert!(matches!(mismatch, Err(AbError::DomainMismatch(_))));
    }

    #[test]
    fn automorphisms_of_cyclic_groups() {
        let z9 = FgAbGroup::cyclic(9);
        let autos = enumerate_automorphisms(&z9, 10_000).unwrap();
        let units: Vec<BigInt> =
            autos.iter().map(|a| a.matrix()[(0, 0)].clone()).collect();
        assert_eq!(
            units,
            [1, 2, 4, 5, 7, 8].iter().map(|&u| BigInt::from(u)).collect::<Vec<_>>()
        );

        let z3 = FgAbGroup::cyclic(3);
        let autos = enumerate_automorphisms(&z3, 10_000).unwrap();
        assert_eq!(autos.len(), 2); // id and -id

        let klein = FgAbGroup::new(vec![BigInt::from(2), BigInt::from(2)], 0).unwrap();
        let autos = enumerate_automorphisms(&klein, 10_000).unwrap();
        assert_eq!(autos.len(), 6); // |GL_2(F_2)|
    }

    #[test]
    fn automorphism_errors() {
        assert!(matches!(
            enumerate_automorphisms(&FgAbGroup::free(1), 100),
            Err(AbError::InfiniteGroup(1))
        ));
        assert!(matches!(
            enumerate_automorphisms(&FgAbGroup::cyclic(101), 100),
            Err(AbError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn composition_examples() {
        let z = FgAbGroup::free(1);
        let f = FgHom::scalar(z.clone(), &BigInt::from(3));
        let g = FgHom::scalar(z.clone(), &BigInt::from(2));
        let fg = f.then(&g).unwrap();
        assert!(fg.equal(&FgHom::scalar(z.clone(), &BigInt::from(6))).unwrap());

        // identities are neutral for arbitrary maps
        let dom = FgAbGroup::new(vec![BigInt::from(2), BigInt::from(4)], 1).unwrap();
        let m = IntMatrix::from_i64(3, 3, &[1, 0, 1, 2, 3, 2, 0, 0, 5]);
        let h = FgHom::new(dom.clone(), dom.clone(), m).unwrap();
        assert!(FgHom::identity(dom.clone()).then(&h).unwrap().equal(&h).unwrap());
        assert!(h.then(&FgHom::identity(dom)).unwrap().equal(&h).unwrap());

        // θ = -id on Z_9 composed with (3, ι): ([1]_9,[1]_3) -> -[6]_9 = [3]_9
        let dom = FgAbGroup::new(vec![BigInt::from(3), BigInt::from(9)], 0).unwrap();
        // canonical order puts Z_3 first; the displayed generators ([x]_9,[y]_3)
        // correspond to columns (Z_9, Z_3), i.e. matrix (3, ι) = [3·x + 3·y]
        let z9 = FgAbGroup::cyclic(9);
        let phi = hom(&dom, &z9, &[3, 3]); // columns: Z_3 gen ↦ [3]_9, Z_9 gen ↦ [3]_9
        let theta = FgHom::scalar(z9.clone(), &BigInt::from(-1));
        let both = phi.then(&theta).unwrap();
        // element ([1]_9, [1]_3) has canonical coordinates (1, 1) in Z_3+Z_9
        let image = both.apply(&[BigInt::one(), BigInt::one()]);
        assert_eq!(image, vec![BigInt::from(3)]); // -[6]_9 = [3]_9
    }
}
