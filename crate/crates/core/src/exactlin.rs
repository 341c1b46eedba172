//! Exact rational linear algebra: dense matrices, row reduction, kernels,
//! linear solving and subspaces with canonical bases.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::LinError;

/// Exact rational scalar. Always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Dense column vector of rationals.
pub type Vector = Vec<Rational>;

/// Rational from an integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics on `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(s: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| s * x).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `a += s * b`, skipping the work when `s` is zero.
pub fn axpy(a: &mut [Rational], s: &Rational, b: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += s * y;
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, LinError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds from column vectors of common length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vector>) -> Result<Self, LinError> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinError::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    /// Integer shorthand, mainly for tests and fixed tables.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(cols, v).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Rational) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
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
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector, LinError> {
        if self.cols != v.len() {
            return Err(LinError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Square-matrix product. Panics on mismatch; used where shapes are already checked.
    pub fn dot(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("matrix shape mismatch")
    }

    /// Matrix-vector product. Panics on mismatch.
    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.mul_vec(v).expect("matrix/vector shape mismatch")
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| s * x).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Rational::one())
    }

    /// Commutator `self*other - other*self`.
    pub fn bracket(&self, other: &Matrix) -> Matrix {
        self.dot(other).sub(&other.dot(self))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.cols {
            return Err(LinError::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn rank(&self) -> usize {
        rref_with_pivots(self).1.len()
    }

    /// Determinant by fraction-exact elimination. Panics on non-square input.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for r in c + 1..n {
                let f = a.get(r, c) / &piv;
                if !f.is_zero() {
                    a.row_axpy(r, &-f, c);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, piv) = rref_with_pivots(&aug);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[dst] += s * row[src]
    fn row_axpy(&mut self, dst: usize, s: &Rational, src: usize) {
        for c in 0..self.cols {
            let v = self.data[src * self.cols + c].clone();
            if !v.is_zero() {
                self.data[dst * self.cols + c] += s * v;
            }
        }
    }

    fn row_scale(&mut self, r: usize, s: &Rational) {
        for c in 0..self.cols {
            let x = &mut self.data[r * self.cols + c];
            *x = &*x * s;
        }
    }
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref_with_pivots(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a.get(row, c).recip();
        a.row_scale(row, &inv);
        for r in 0..a.rows {
            if r != row {
                let f = a.get(r, c).clone();
                if !f.is_zero() {
                    a.row_axpy(r, &-f, row);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (a, pivots)
}

/// Reduced row echelon form; the row space is preserved.
pub fn rref(m: &Matrix) -> Matrix {
    rref_with_pivots(m).0
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (red, pivots) = rref_with_pivots(m);
    let n = m.cols;
    let mut is_pivot = vec![None; n];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
        let mut v = zero_vec(n);
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -red.get(r, free).clone();
        }
        basis.push(v);
    }
    Subspace::span(n, basis).expect("kernel vectors have ambient length")
}

/// Result of [`solve`]: a particular solution when one exists and the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vector>,
    pub kernel: Subspace,
}

/// Solves `m x = rhs`. Inconsistency is reported through `particular == None`.
pub fn solve(m: &Matrix, rhs: &[Rational]) -> Result<Solution, LinError> {
    if rhs.len() != m.rows {
        return Err(LinError::DimensionMismatch { expected: m.rows, found: rhs.len() });
    }
    let n = m.cols;
    let mut aug = Matrix::zeros(m.rows, n + 1);
    for r in 0..m.rows {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n, rhs[r].clone());
    }
    let (red, pivots) = rref_with_pivots(&aug);
    let particular = if pivots.last() == Some(&n) {
        None
    } else {
        let mut x = zero_vec(n);
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.get(r, n).clone();
        }
        Some(x)
    };
    Ok(Solution { particular, kernel: kernel(m) })
}

/// Solves a square nondegenerate system, returning the unique solution.
pub fn solve_unique(m: &Matrix, rhs: &[Rational]) -> Option<Vector> {
    let s = solve(m, rhs).ok()?;
    if s.kernel.dim() != 0 {
        return None;
    }
    s.particular
}

/// Linear subspace of `K^n`, stored by its canonical basis (RREF, zero rows removed).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, {:?})", self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Canonical span of the given vectors.
    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Self, LinError> {
        let m = Matrix::from_rows(ambient, vectors)?;
        Ok(Self::row_space(&m))
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        let (red, pivots) = rref_with_pivots(m);
        let rows = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        let basis = Matrix::from_rows(m.cols, rows).expect("rref rows");
        Subspace { ambient: m.cols, basis, pivots }
    }

    /// Span of the selected standard basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vecs = indices.iter().map(|&i| unit_vec(ambient, i)).collect();
        Self::span(ambient, vecs).expect("unit vectors")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vector> {
        self.basis.row_vecs()
    }

    /// Pivot columns of the canonical basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard basis indices that are not pivots, in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Subtracts the canonical basis so that the pivot coordinates vanish.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut w = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = w[c].clone();
            if !f.is_zero() {
                axpy(&mut w, &-f, self.basis.row(r));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient && is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    /// Rows spanning the annihilator `{c : c·v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Matrix {
        let k = kernel(&self.basis);
        k.basis
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        check_ambient(self, other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection, computed as the kernel of the stacked annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        intersect(self, other)
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<(), LinError> {
    if a.ambient != b.ambient {
        return Err(LinError::DimensionMismatch { expected: a.ambient, found: b.ambient });
    }
    Ok(())
}

/// `a ∩ b` with canonical basis.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinError> {
    check_ambient(a, b)?;
    let constraints = a.annihilator().vstack(&b.annihilator())?;
    Ok(kernel(&constraints))
}

/// Integer vector shorthand.
pub fn qv(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&Matrix::from_i64(&[&[0, 1], &[1, 0]])), Matrix::identity(2));
        assert_eq!(rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]])), Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(3)).is_zero());
        assert_eq!(kernel(&Matrix::zeros(2, 3)), Subspace::full(3));
        let k = kernel(&Matrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        assert_eq!(k, Subspace::span(3, vec![qv(&[1, -1, 0]), qv(&[0, 0, 1])]).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let e12 = Subspace::coordinate(3, &[0, 1]);
        let e23 = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(intersect(&e12, &e23).unwrap(), Subspace::coordinate(3, &[1]));
        assert!(intersect(&Subspace::coordinate(2, &[0]), &Subspace::coordinate(2, &[1])).unwrap().is_zero());
        assert!(intersect(&e12, &Subspace::full(2)).is_err());
    }

    #[test]
    fn solve_examples() {
        let s = solve(&Matrix::identity(2), &qv(&[3, 4])).unwrap();
        assert_eq!(s.particular, Some(qv(&[3, 4])));
        assert!(s.kernel.is_zero());
        let s = solve(&Matrix::zeros(2, 2), &qv(&[0, 0])).unwrap();
        assert_eq!(s.particular, Some(qv(&[0, 0])));
        assert_eq!(s.kernel.dim(), 2);
        let s = solve(&Matrix::from_i64(&[&[1], &[1]]), &qv(&[1, 2])).unwrap();
        assert!(s.particular.is_none());
        assert!(solve(&Matrix::identity(2), &qv(&[1])).is_err());
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.dot(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Matrix::from_i64(&[&[0, 1], &[1, 0]]).det(), q(-1));
    }

    #[test]
    fn reduce_and_coords() {
        let s = Subspace::span(3, vec![qv(&[1, 1, 0]), qv(&[0, 1, 1])]).unwrap();
        assert!(s.contains(&qv(&[1, 2, 1])));
        assert!(!s.contains(&qv(&[0, 0, 1])));
        assert_eq!(s.coords(&qv(&[1, 2, 1])), Some(qv(&[1, 2])));
        assert_eq!(s.complement_indices(), vec![2]);
    }
}
