//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`BigInt`]) and
//! rationals ([`BigRational`]); nothing in the crate touches floating point.

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A dense integer vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Unit vector `e_index` of the given dimension.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, factor: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        assert_eq!(self.dim(), other.len(), "vector dimensions differ");
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Maximum absolute entry (zero for the empty vector).
    pub fn norm_inf(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Divides by the gcd of the entries; the zero vector is left untouched.
    pub fn primitive(&self) -> IntVector {
        let g = self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn to_rational(&self) -> RatVector {
        RatVector(self.0.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }
}

impl Deref for IntVector {
    type Target = [BigInt];

    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl FromIterator<BigInt> for IntVector {
    fn from_iter<T: IntoIterator<Item = BigInt>>(iter: T) -> Self {
        IntVector(iter.into_iter().collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A dense rational vector; entries are kept in lowest terms by [`BigRational`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatVector(Vec<BigRational>);

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Converts to an integer vector if every entry is integral.
    pub fn to_integer(&self) -> Option<IntVector> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntVector)
    }
}

impl Deref for RatVector {
    type Target = [BigRational];

    fn deref(&self) -> &[BigRational] {
        &self.0
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics on ragged or empty input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows).expect("well-formed literal matrix")
    }

    /// Builds a matrix from column vectors of equal dimension.
    pub fn from_columns(columns: &[IntVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, IntVector::dim);
        if rows == 0 || columns.is_empty() {
            return Err(Error::EmptyMatrix {
                rows,
                cols: columns.len(),
            });
        }
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.dim(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| IntVector(self.row(i).to_vec())).collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[BigInt]) -> IntVector {
        assert_eq!(x.len(), self.cols, "vector dimension must equal column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, x: &[BigRational]) -> RatVector {
        assert_eq!(x.len(), self.cols, "vector dimension must equal column count");
        RatVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x)
                        .map(|(a, b)| b * a)
                        .fold(BigRational::zero(), |acc, t| acc + t)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<IntMatrix> {
        let columns: Vec<IntVector> = cols.iter().map(|&j| self.column(j)).collect();
        IntMatrix::from_columns(&columns)
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Replaces columns `p` and `q` by `(x*p + y*q, z*p + w*q)`.
    fn combine_columns(&mut self, p: usize, q: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for i in 0..self.rows {
            let a = &self.data[i * self.cols + p];
            let b = &self.data[i * self.cols + q];
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let np = x * a + y * b;
            let nq = z * a + w * b;
            self.data[i * self.cols + p] = np;
            self.data[i * self.cols + q] = nq;
        }
    }

    /// `col[target] -= factor * col[source]`.
    fn sub_column_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let delta = factor * s;
                self.data[i * self.cols + target] -= delta;
            }
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", IntVector(self.row(i).to_vec()))?;
        }
        Ok(())
    }
}

/// Column Hermite normal form: returns `(H, U)` with `M * U = H` and `U` unimodular.
///
/// `H` is in column echelon form: the nonzero columns come first, each has a
/// positive pivot strictly below the previous column's pivot, and every entry
/// to the left of a pivot lies in `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pc = 0;
    for row in 0..rows {
        if pc == cols {
            break;
        }
        for j in pc + 1..cols {
            let b = h.get(row, j).clone();
            if b.is_zero() {
                continue;
            }
            let a = h.get(row, pc).clone();
            if a.is_zero() {
                h.swap_columns(pc, j);
                u.swap_columns(pc, j);
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let z = -(&b / &g);
            let w = &a / &g;
            h.combine_columns(pc, j, &x, &y, &z, &w);
            u.combine_columns(pc, j, &x, &y, &z, &w);
        }
        let pivot = h.get(row, pc).clone();
        if pivot.is_zero() {
            continue;
        }
        if pivot.is_negative() {
            h.negate_column(pc);
            u.negate_column(pc);
        }
        let pivot = h.get(row, pc).clone();
        for c in 0..pc {
            let q = h.get(row, c).div_floor(&pivot);
            h.sub_column_multiple(c, pc, &q);
            u.sub_column_multiple(c, pc, &q);
        }
        pc += 1;
    }
    (h, u)
}

/// A basis of the integer column span of a matrix, in column Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    basis: Vec<IntVector>,
    pivot_rows: Vec<usize>,
}

impl LatticeBasis {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// True when the lattice is all of `Z^d`.
    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim && self.pivot_rows.iter().enumerate().all(|(k, &r)| self.basis[k][r].is_one())
    }

    /// Integer coordinates of `z` with respect to the basis, if `z` lies in the lattice.
    pub fn coordinates(&self, z: &[BigInt]) -> Option<IntVector> {
        assert_eq!(z.len(), self.ambient_dim, "vector dimension must equal ambient dimension");
        let mut residual: Vec<BigInt> = z.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (col, &p) in self.basis.iter().zip(&self.pivot_rows) {
            let (q, r) = residual[p].div_rem(&col[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (ri, ci) in residual.iter_mut().zip(col.iter()) {
                    *ri -= &q * ci;
                }
            }
            coeffs.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(IntVector(coeffs))
    }

    /// Maps lattice coordinates back to the ambient space.
    pub fn point(&self, coords: &[BigInt]) -> IntVector {
        assert_eq!(coords.len(), self.rank());
        let mut out = IntVector::zeros(self.ambient_dim);
        for (c, col) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.0.iter_mut().zip(col.iter()) {
                *o += c * x;
            }
        }
        out
    }
}

/// Basis of the lattice generated by the columns of `a`.
pub fn lattice_basis(a: &IntMatrix) -> LatticeBasis {
    let (h, _) = hermite_normal_form(a);
    let mut basis = Vec::new();
    let mut pivot_rows = Vec::new();
    for j in 0..h.ncols() {
        if h.is_zero_column(j) {
            break;
        }
        let p = (0..h.nrows())
            .find(|&i| !h.get(i, j).is_zero())
            .expect("nonzero column has a pivot");
        basis.push(h.column(j));
        pivot_rows.push(p);
    }
    LatticeBasis {
        ambient_dim: a.nrows(),
        basis,
        pivot_rows,
    }
}

/// Lattice membership with the coordinate vector as witness.
pub fn lattice_contains(lattice: &LatticeBasis, z: &IntVector) -> Result<Option<IntVector>> {
    if z.dim() != lattice.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: lattice.ambient_dim(),
            found: z.dim(),
        });
    }
    Ok(lattice.coordinates(z))
}

/// Reduced row echelon form of a rational matrix; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rational_rows(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m = to_rational_rows(a);
    rref(&mut m, a.ncols()).len()
}

/// Solves `A x = b` over the rationals.
///
/// Returns `None` when the system is inconsistent, otherwise a particular
/// solution (free variables set to zero) and a basis of the kernel of `A`.
pub fn solve_rational_affine(a: &IntMatrix, b: &IntVector) -> Result<Option<(RatVector, Vec<RatVector>)>> {
    if b.dim() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    let n = a.ncols();
    let mut m = to_rational_rows(a);
    for (row, bi) in m.iter_mut().zip(b.iter()) {
        row.push(BigRational::from_integer(bi.clone()));
    }
    let pivots = rref(&mut m, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][n].clone();
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][free].clone();
            }
            RatVector(v)
        })
        .collect();
    Ok(Some((RatVector(particular), kernel)))
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant needs a square matrix");
    let n = m.nrows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Advances a sorted `k`-subset of `0..n` to its lexicographic successor; false after the last one.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] != i + n - k) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// `D(A)`: the largest absolute value of a maximal (d x d) minor of a full row rank matrix.
pub fn max_abs_subdeterminant(a: &IntMatrix, limits: &Limits) -> Result<BigInt> {
    let (d, n) = (a.nrows(), a.ncols());
    let r = rank(a);
    if r < d {
        return Err(Error::RankDeficient { rank: r, rows: d });
    }
    let subsets = binomial(n, d);
    if subsets > BigInt::from(limits.max_subsets) {
        return Err(Error::exhausted("max_subsets", limits.max_subsets));
    }
    let mut best = BigInt::zero();
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        let det = determinant(&a.select_columns(&combo)?).abs();
        if det > best {
            best = det;
        }
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    Ok(best)
}

/// `M_F(A)`: the largest absolute row sum of `a`.
///
/// Every point of the half-open zonotope has entries of absolute value below
/// this, and the hole bound needs `sum_j |A_ij| <= M_F(A)` for every row.
pub fn row_sum_bound(a: &IntMatrix) -> BigInt {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default()
}

/// Converts to `i64`, reporting values that do not fit.
pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::OutOfRange(format!("{x} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[0, 2, 3, 4]])
    }

    fn is_column_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for j in 0..h.ncols() {
            if h.is_zero_column(j) {
                seen_zero = true;
                continue;
            }
            if seen_zero {
                return false;
            }
            let p = (0..h.nrows()).find(|&i| !h[(i, j)].is_zero()).unwrap();
            if last_pivot.is_some_and(|lp| p <= lp) || !h[(p, j)].is_positive() {
                return false;
            }
            for c in 0..j {
                let v = &h[(p, c)];
                if v.is_negative() || v >= &h[(p, j)] {
                    return false;
                }
            }
            last_pivot = Some(p);
        }
        true
    }

    #[test]
    fn hnf_identity() {
        let i2 = IntMatrix::identity(2);
        let (h, u) = hermite_normal_form(&i2);
        assert_eq!(h, i2);
        assert_eq!(u, i2);
    }

    #[test]
    fn hnf_example_matrix() {
        let a = quartic();
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(a.mul(&u), h);
        assert!(is_column_hnf(&h));
        assert_eq!(determinant(&u).abs(), BigInt::one());
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
    }

    #[test]
    fn hnf_gcd_row() {
        let a = IntMatrix::from_i64_rows(&[&[2, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 0]]));
        assert_eq!(a.mul(&u), h);
    }

    #[test]
    fn lattice_bases() {
        let l = lattice_basis(&quartic());
        assert_eq!(l.rank(), 2);
        assert!(l.is_full());

        let l = lattice_basis(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]));
        assert_eq!(l.basis(), &[IntVector::from_i64s(&[2, 0]), IntVector::from_i64s(&[0, 2])]);

        let l = lattice_basis(&IntMatrix::from_i64_rows(&[&[2, 3]]));
        assert_eq!(l.basis(), &[IntVector::from_i64s(&[1])]);
    }

    #[test]
    fn lattice_membership() {
        let full = lattice_basis(&IntMatrix::identity(2));
        let w = lattice_contains(&full, &IntVector::from_i64s(&[1, 1])).unwrap();
        assert_eq!(w, Some(IntVector::from_i64s(&[1, 1])));

        let even = lattice_basis(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]));
        assert_eq!(lattice_contains(&even, &IntVector::from_i64s(&[1, 0])).unwrap(), None);

        let l = lattice_basis(&IntMatrix::from_i64_rows(&[&[2, 4]]));
        assert_eq!(l.basis(), &[IntVector::from_i64s(&[2])]);
        assert_eq!(lattice_contains(&l, &IntVector::from_i64s(&[3])).unwrap(), None);
        assert!(lattice_contains(&l, &IntVector::from_i64s(&[1, 2])).is_err());
    }

    #[test]
    fn lattice_in_lower_dimension() {
        // columns span the plane x = y inside Z^2 with index 3
        let a = IntMatrix::from_i64_rows(&[&[3, 6], &[3, 6]]);
        let l = lattice_basis(&a);
        assert_eq!(l.rank(), 1);
        assert!(l.coordinates(&IntVector::from_i64s(&[3, 3])).is_some());
        assert!(l.coordinates(&IntVector::from_i64s(&[3, 0])).is_none());
        assert!(l.coordinates(&IntVector::from_i64s(&[1, 1])).is_none());
    }

    #[test]
    fn rational_solve() {
        let id = IntMatrix::identity(3);
        let b = IntVector::from_i64s(&[4, -1, 7]);
        let (p, k) = solve_rational_affine(&id, &b).unwrap().unwrap();
        assert_eq!(p, b.to_rational());
        assert!(k.is_empty());

        let a = IntMatrix::from_i64_rows(&[&[1, 1]]);
        let (p, k) = solve_rational_affine(&a, &IntVector::from_i64s(&[1])).unwrap().unwrap();
        assert_eq!(p, IntVector::from_i64s(&[1, 0]).to_rational());
        assert_eq!(k, vec![IntVector::from_i64s(&[-1, 1]).to_rational()]);

        let a = IntMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert!(solve_rational_affine(&a, &IntVector::from_i64s(&[1, 3])).unwrap().is_none());
    }

    #[test]
    fn subdeterminants() {
        let lim = Limits::default();
        assert_eq!(max_abs_subdeterminant(&quartic(), &lim).unwrap(), BigInt::from(4));
        assert_eq!(max_abs_subdeterminant(&IntMatrix::identity(3), &lim).unwrap(), BigInt::one());
        let a = IntMatrix::from_i64_rows(&[&[2, 3]]);
        assert_eq!(max_abs_subdeterminant(&a, &lim).unwrap(), BigInt::from(3));

        let deficient = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            max_abs_subdeterminant(&deficient, &lim),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));

        let tight = Limits { max_subsets: 5, ..Limits::default() };
        assert!(max_abs_subdeterminant(&quartic(), &tight).unwrap_err().is_resource_exhausted());
    }

    #[test]
    fn row_sums() {
        assert_eq!(row_sum_bound(&quartic()), BigInt::from(9));
        assert_eq!(row_sum_bound(&IntMatrix::identity(3)), BigInt::one());
        assert_eq!(row_sum_bound(&IntMatrix::from_i64_rows(&[&[2, 3]])), BigInt::from(5));
        assert_eq!(row_sum_bound(&IntMatrix::from_i64_rows(&[&[-2, 3], &[1, 1]])), BigInt::from(5));
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 5]]);
        // expansion along the second row: -1 * (2*5 - 1*1) = -9
        assert_eq!(determinant(&m), BigInt::from(-9));
    }
}
