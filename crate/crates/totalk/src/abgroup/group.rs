//! Finitely generated abelian groups in invariant-factor normal form.

use super::matrix::{self, invert_unimodular, IntMatrix, SmithNormalForm};
use super::{AbError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// A finitely generated abelian group `Z_{d₁} ⊕ … ⊕ Z_{d_t} ⊕ Z^r` with
/// `d₁ | d₂ | … | d_t` and every `dᵢ ≥ 2`.
///
/// Canonical generators are the torsion generators in chain order followed by
/// the free generators; the representation is unique, so structural equality
/// is isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FgAbGroup {
    /// Build from invariant factors; validates the divisibility chain.
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(AbError::ShapeMismatch(format!(
                    "invariant factor {} must be at least 2",
                    d
                )));
            }
            if i + 1 < torsion.len() && !torsion[i + 1].mod_floor(d).is_zero() {
                return Err(AbError::ShapeMismatch(format!(
                    "invariant factors must form a divisibility chain, got {} ∤ {}",
                    d,
                    torsion[i + 1]
                )));
            }
        }
        Ok(FgAbGroup { torsion, free_rank })
    }

    pub fn trivial() -> Self {
        FgAbGroup { torsion: vec![], free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { torsion: vec![], free_rank: rank }
    }

    /// The cyclic group `Z_n` (`n ≥ 2`), or the trivial group for `n = 1`.
    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FgAbGroup { torsion: vec![BigInt::from(n)], free_rank: 0 }
        }
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut diag: Vec<BigInt> = self.torsion.clone();
        diag.extend(other.torsion.iter().cloned());
        let free = self.free_rank + other.free_rank;
        let m = IntMatrix::diagonal(&diag);
        let mut g = cokernel_presentation(&m);
        g.free_rank += free;
        g
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order for finite groups.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Exponent of the torsion part (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Order of the `i`-th canonical generator: `dᵢ` for torsion, 0 for free.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.torsion.len() {
            self.torsion[i].clone()
        } else {
            BigInt::zero()
        }
    }

    /// Reduce a coordinate vector into canonical range (`[0, dᵢ)` on torsion
    /// coordinates, untouched on free coordinates).
    pub fn canonicalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.num_generators(), "coordinate length mismatch");
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i < self.torsion.len() {
                    c.mod_floor(&self.torsion[i])
                } else {
                    c.clone()
                }
            })
            .collect()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_generators()]
    }

    pub fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        self.canonicalize(coords).iter().all(Zero::is_zero)
    }

    /// Relation matrix on canonical generators: one column `dᵢ·eᵢ` per torsion
    /// generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let t = self.torsion.len();
        let mut m = IntMatrix::zero(n, t);
        for (j, d) in self.torsion.iter().enumerate() {
            m[(j, j)] = d.clone();
        }
        m
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if self.free_rank > 0 {
            return None;
        }
        let mut out: Vec<Vec<BigInt>> = vec![vec![]];
        for d in &self.torsion {
            let mut next = Vec::new();
            let mut c = BigInt::zero();
            while &c < d {
                for prefix in &out {
                    let mut e = prefix.clone();
                    e.push(c.clone());
                    next.push(e);
                }
                c += 1;
            }
            out = next;
        }
        Some(out)
    }

    /// The subgroup of elements killed by `n`, presented with its inclusion.
    /// Generator `i` of the result maps to `(dᵢ/gcd(dᵢ,n))·gᵢ`.
    pub fn torsion_subgroup_generators(&self, n: u64) -> Vec<(BigInt, Vec<BigInt>)> {
        let n = BigInt::from(n);
        let mut gens = Vec::new();
        for (i, d) in self.torsion.iter().enumerate() {
            let g = d.gcd(&n);
            if g >= BigInt::from(2) {
                let mut v = self.zero_element();
                v[i] = d / &g;
                gens.push((g, v));
            }
        }
        gens
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{}", d)).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Cokernel of `m : Z^cols → Z^rows` in canonical form.
pub fn cokernel_presentation(m: &IntMatrix) -> FgAbGroup {
    let snf = matrix::smith_normal_form(m);
    let diag = snf.diagonal();
    let torsion: Vec<BigInt> = diag.iter().filter(|d| **d >= BigInt::from(2)).cloned().collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    FgAbGroup { torsion, free_rank: m.rows() - rank }
}

/// A subquotient `V/W` of `Z^n` presented on canonical generators, where `V`
/// and `W ⊆ V` are integer lattices given by generating columns.
///
/// Keeps enough data to express arbitrary lattice elements in the canonical
/// coordinates of the quotient.
#[derive(Debug, Clone)]
pub struct SubgroupPresentation {
    pub group: FgAbGroup,
    /// Columns lift the canonical generators of `group` to `Z^n`.
    pub lift: IntMatrix,
    gens: IntMatrix,
    basis_change: SmithNormalForm,
    /// canonical index -> raw SNF coordinate index
    kept: Vec<usize>,
}

impl SubgroupPresentation {
    /// Present `span(gens)/span(rels)`. Panics if `rels` is not contained in
    /// the span of `gens`.
    pub fn new(gens: &IntMatrix, rels: &IntMatrix) -> Self {
        assert_eq!(gens.rows(), rels.rows(), "ambient dimension mismatch");
        let n = gens.rows();
        // reduce to an independent basis first; redundant generating columns
        // would otherwise show up as phantom free summands
        let gens = matrix::lattice_basis(gens);
        let k = gens.cols();
        // express rels in terms of gens
        let mut c_cols = Vec::with_capacity(rels.cols());
        for j in 0..rels.cols() {
            let col = rels.column(j);
            let sol = matrix::solve(&gens, &col)
                .expect("relation lattice must be contained in the generator lattice");
            c_cols.push(sol);
        }
        let c = IntMatrix::from_columns(k, &c_cols);
        let snf = matrix::smith_normal_form(&c);
        let diag = snf.diagonal();

        // The quotient Z^k / im(C) in coordinates w = U x is Z^k / im(S).
        // Generator i of the w-coordinates is U⁻¹ eᵢ; its order is S[i][i]
        // (0 meaning free). u_inv = generator lifts in x-coordinates.
        let u_inv = invert_unimodular(&snf.u);

        let mut torsion_idx: Vec<usize> = Vec::new();
        let mut free_idx: Vec<usize> = Vec::new();
        for i in 0..k {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                free_idx.push(i);
            } else if d >= BigInt::from(2) {
                torsion_idx.push(i);
            } // d == 1: dropped
        }
        let torsion: Vec<BigInt> = torsion_idx.iter().map(|&i| diag[i].clone()).collect();
        let group = FgAbGroup { torsion, free_rank: free_idx.len() };

        let mut kept = torsion_idx;
        kept.extend(free_idx);
        let lift_cols: Vec<Vec<BigInt>> =
            kept.iter().map(|&i| gens.mul_vec(&u_inv.column(i))).collect();
        let lift = IntMatrix::from_columns(n, &lift_cols);

        SubgroupPresentation { group, lift, gens, basis_change: snf, kept }
    }

    /// Canonical coordinates of an ambient vector, provided it lies in the
    /// generator lattice.
    pub fn coordinates_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = matrix::solve(&self.gens, x)?;
        let w = self.basis_change.u.mul_vec(&c);
        let coords: Vec<BigInt> = self.kept.iter().map(|&i| w[i].clone()).collect();
        Some(self.group.canonicalize(&coords))
    }
}

/// `G ⊗ Z_n`, `Tor(G, Z_n)`, and the reduction map `G → G ⊗ Z_n`.
#[derive(Debug, Clone)]
pub struct TensorTor {
    pub tensor: FgAbGroup,
    pub tor: FgAbGroup,
    /// Matrix of the reduction `G → G ⊗ Z_n` on canonical generators.
    pub reduction: IntMatrix,
    /// For each tensor generator, the index of the `G` generator it came from.
    pub tensor_origin: Vec<usize>,
    /// For each Tor generator, the index of the `G` generator it came from.
    pub tor_origin: Vec<usize>,
}

/// Tensor and Tor with the cyclic group `Z_n` (`n ≥ 2`), componentwise on the
/// canonical decomposition:
/// `Z ⊗ Z_n = Z_n`, `Z_m ⊗ Z_n = Z_{gcd(m,n)}`, `Tor(Z, Z_n) = 0`,
/// `Tor(Z_m, Z_n) = Z_{gcd(m,n)}`.
pub fn tensor_tor_cyclic(g: &FgAbGroup, n: u64) -> TensorTor {
    assert!(n >= 2, "modulus must be at least 2");
    let big_n = BigInt::from(n);

    let mut tensor_factors: Vec<BigInt> = Vec::new();
    let mut tensor_origin: Vec<usize> = Vec::new();
    let mut tor_factors: Vec<BigInt> = Vec::new();
    let mut tor_origin: Vec<usize> = Vec::new();

    for (i, d) in g.torsion().iter().enumerate() {
        let gcd = d.gcd(&big_n);
        if gcd >= BigInt::from(2) {
            tensor_factors.push(gcd.clone());
            tensor_origin.push(i);
            tor_factors.push(gcd);
            tor_origin.push(i);
        }
    }
    for r in 0..g.free_rank() {
        tensor_factors.push(big_n.clone());
        tensor_origin.push(g.torsion().len() + r);
    }

    let tensor = FgAbGroup { torsion: tensor_factors, free_rank: 0 };
    let tor = FgAbGroup { torsion: tor_factors, free_rank: 0 };

    let mut reduction = IntMatrix::zero(tensor.num_generators(), g.num_generators());
    for (row, &origin) in tensor_origin.iter().enumerate() {
        reduction[(row, origin)] = BigInt::one();
    }

    TensorTor { tensor, tor, reduction, tensor_origin, tor_origin }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        // coker [3] = Z_3
        let g = cokernel_presentation(&IntMatrix::from_i64(1, 1, &[3]));
        assert_eq!(g, FgAbGroup::cyclic(3));
        // coker diag(2,4) = Z_2 + Z_4
        let g = cokernel_presentation(&IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(4)]));
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(4)]);
        assert_eq!(g.free_rank(), 0);
        // no relations on Z^2
        let g = cokernel_presentation(&IntMatrix::zero(2, 0));
        assert_eq!(g, FgAbGroup::free(2));
    }

    #[test]
    fn cokernel_invariant_under_snf() {
        let m = IntMatrix::from_i64(3, 3, &[2, 4, 0, 6, 8, 2, 0, 10, 4]);
        let snf = matrix::smith_normal_form(&m);
        assert_eq!(cokernel_presentation(&m), cokernel_presentation(&snf.s));
    }

    #[test]
    fn non_canonical_sum_is_renormalized() {
        // Z_9 + Z_3 must canonicalize to torsion chain (3, 9)
        let g = FgAbGroup::cyclic(9).direct_sum(&FgAbGroup::cyclic(3));
        assert_eq!(g.torsion(), &[BigInt::from(3), BigInt::from(9)]);
        // Z_2 + Z_3 = Z_6
        let g = FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(3));
        assert_eq!(g.torsion(), &[BigInt::from(6)]);
    }

    #[test]
    fn tensor_tor_examples() {
        // (Z + Z_9) ⊗ Z_3 = Z_3 + Z_3, Tor = Z_3
        let g = FgAbGroup::new(vec![BigInt::from(9)], 1).unwrap();
        let tt = tensor_tor_cyclic(&g, 3);
        assert_eq!(tt.tensor.torsion(), &[BigInt::from(3), BigInt::from(3)]);
        assert_eq!(tt.tor, FgAbGroup::cyclic(3));
        // Z_4 ⊗ Z_3 = 0, Tor = 0
        let tt = tensor_tor_cyclic(&FgAbGroup::cyclic(4), 3);
        assert!(tt.tensor.is_trivial());
        assert!(tt.tor.is_trivial());
        // Z_3 ⊗ Z_9 = Z_3, Tor = Z_3
        let tt = tensor_tor_cyclic(&FgAbGroup::cyclic(3), 9);
        assert_eq!(tt.tensor, FgAbGroup::cyclic(3));
        assert_eq!(tt.tor, FgAbGroup::cyclic(3));
    }

    #[test]
    fn tensor_size_matches_enumeration() {
        // |G ⊗ Z_n| = |G/nG| by direct counting for small finite G
        for (tors, n) in [(vec![4u64, 8], 6u64), (vec![3, 9], 12), (vec![2, 2], 2), (vec![5], 7)] {
            let mut g = FgAbGroup::trivial();
            for t in &tors {
                g = g.direct_sum(&FgAbGroup::cyclic(*t));
            }
            let tt = tensor_tor_cyclic(&g, n);
            let elements = g.elements().unwrap();
            let mut images = std::collections::HashSet::new();
            for e in &elements {
                // reduce modulo n·G: coordinates mod gcd(dᵢ, n)
                let mut key = Vec::new();
                for (i, c) in e.iter().enumerate() {
                    let gcd = g.torsion()[i].gcd(&BigInt::from(n));
                    key.push(c.mod_floor(&gcd));
                }
                images.insert(key);
            }
            assert_eq!(BigInt::from(images.len()), tt.tensor.order().unwrap());
            // Tor(G, Z_n) = n-torsion: count elements killed by n
            let killed = elements
                .iter()
                .filter(|e| {
                    e.iter().enumerate().all(|(i, c)| {
                        (c * BigInt::from(n)).mod_floor(&g.torsion()[i]).is_zero()
                    })
                })
                .count();
            assert_eq!(BigInt::from(killed), tt.tor.order().unwrap());
        }
    }

    #[test]
    fn subgroup_presentation_of_index_two() {
        // 2Z inside Z: quotient Z/2Z of the generator lattice by relations
        let gens = IntMatrix::identity(1);
        let rels = IntMatrix::from_i64(1, 1, &[2]);
        let p = SubgroupPresentation::new(&gens, &rels);
        assert_eq!(p.group, FgAbGroup::cyclic(2));
        let coords = p.coordinates_of(&[BigInt::from(3)]).unwrap();
        assert_eq!(coords, vec![BigInt::one()]);
    }
}
