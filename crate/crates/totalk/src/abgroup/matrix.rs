//! Dense arbitrary-precision integer matrices and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Diagonal matrix with the given entries (square).
    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.rows, self.cols, self.entries.iter().map(|e| e * c).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut out = Self::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                out[(i, j)] = col[i].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    let tmp = a[(k, j)].clone();
                    a[(k, j)] = a[(swap, j)].clone();
                    a[(swap, j)] = tmp;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation: `s = u * m * v` with `u`, `v`
/// unimodular and `s` diagonal with a nonnegative divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries of `s`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries (the rank of the input).
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transforms. Total: any integer matrix, including
/// empty ones, has one.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..s.cols() {
            let tmp = s[(a, j)].clone();
            s[(a, j)] = s[(b, j)].clone();
            s[(b, j)] = tmp;
        }
        for j in 0..u.cols() {
            let tmp = u[(a, j)].clone();
            u[(a, j)] = u[(b, j)].clone();
            u[(b, j)] = tmp;
        }
    };
    let swap_cols = |s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..s.rows() {
            let tmp = s[(i, a)].clone();
            s[(i, a)] = s[(i, b)].clone();
            s[(i, b)] = tmp;
        }
        for i in 0..v.rows() {
            let tmp = v[(i, a)].clone();
            v[(i, a)] = v[(i, b)].clone();
            v[(i, b)] = tmp;
        }
    };
    // row[a] -= q * row[b], mirrored on u
    let add_row = |s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize, q: &BigInt| {
        for j in 0..s.cols() {
            let d = q * &s[(b, j)];
            s[(a, j)] -= d;
        }
        for j in 0..u.cols() {
            let d = q * &u[(b, j)];
            u[(a, j)] -= d;
        }
    };
    let add_col = |s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize, q: &BigInt| {
        for i in 0..s.rows() {
            let d = q * &s[(i, b)];
            s[(i, a)] -= d;
        }
        for i in 0..v.rows() {
            let d = q * &v[(i, b)];
            v[(i, a)] -= d;
        }
    };

    let n = rows.min(cols);
    for t in 0..n {
        'pivot: loop {
            // smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if s[(i, j)].abs() < s[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            swap_rows(&mut s, &mut u, t, pi);
            swap_cols(&mut s, &mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                add_row(&mut s, &mut u, i, t, &q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                add_col(&mut s, &mut v, j, t, &q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot divides the rest of the block?
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !s[(i, j)].mod_floor(&s[(t, t)]).is_zero() {
                        let minus_one = BigInt::from(-1);
                        add_row(&mut s, &mut u, t, i, &minus_one); // row t += row i
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if s[(t, t)].is_negative() {
            for j in 0..cols {
                let e = -s[(t, j)].clone();
                s[(t, j)] = e;
            }
            for j in 0..rows {
                let e = -u[(t, j)].clone();
                u[(t, j)] = e;
            }
        }
    }

    SmithNormalForm { u, s, v }
}

/// Solve `a * x = b` over the integers. Returns any solution, or `None` when
/// none exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, entry) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !entry.is_zero() {
                return None;
            }
        } else {
            let (q, r) = entry.div_mod_floor(&d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Basis (as columns) of the integer kernel `{x : a*x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let free: Vec<usize> = (0..a.cols())
        .filter(|&j| j >= diag.len() || diag[j].is_zero())
        .collect();
    let mut cols = Vec::with_capacity(free.len());
    for &j in &free {
        cols.push(snf.v.column(j));
    }
    IntMatrix::from_columns(a.cols(), &cols)
}

/// Does `x` lie in the integer column span of `a`?
pub fn in_column_span(a: &IntMatrix, x: &[BigInt]) -> bool {
    solve(a, x).is_some()
}

/// A basis (as columns, full column rank) of the lattice spanned by the
/// columns of `a`.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    // span(a) = span(U⁻¹ · S); the nonzero diagonal entries pick the basis
    let u_inv_s = invert_unimodular(&snf.u).mul(&snf.s);
    let diag = snf.diagonal();
    let cols: Vec<Vec<BigInt>> = (0..diag.len())
        .filter(|&i| !diag[i].is_zero())
        .map(|i| u_inv_s.column(i))
        .collect();
    IntMatrix::from_columns(a.rows(), &cols)
}

/// Inverse of a unimodular matrix (integer entries).
pub fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols(), "unimodular matrices are square");
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let col = solve(m, &e).expect("matrix is not unimodular");
        cols.push(col);
    }
    IntMatrix::from_columns(n, &cols)
}
