//! Finite-dimensional algebras given by structure constants, with the Leibniz,
//! Lie and left-symmetric identity predicates, ideals, quotients, centers and
//! the derivation solver.

use num_traits::{One, Zero};

use crate::error::{Error, LinError, Result};
use crate::exactlin::{
    axpy, is_zero_vec, kernel, q, qf, unit_vec, vec_sub, zero_vec, Matrix, Rational, Subspace, Vector,
};

/// Algebra on `K^n` with `e_i • e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    c: Vec<Rational>,
}

/// Where an identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// First failing basis tuple (0-based, lexicographic order) and its nonzero defect.
    Witness { indices: Vec<usize>, defect: Vector },
    /// The form under test is degenerate.
    Degenerate,
}

/// Outcome of an identity check. `holds()` iff there is no failure.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IdentityReport {
    pub failure: Option<Failure>,
}

impl IdentityReport {
    pub fn pass() -> Self {
        IdentityReport { failure: None }
    }

    pub fn witness(indices: Vec<usize>, defect: Vector) -> Self {
        IdentityReport { failure: Some(Failure::Witness { indices, defect }) }
    }

    pub fn degenerate() -> Self {
        IdentityReport { failure: Some(Failure::Degenerate) }
    }

    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    /// First failure of `self`, otherwise `other`.
    pub fn and(self, other: impl FnOnce() -> IdentityReport) -> IdentityReport {
        if self.holds() {
            other()
        } else {
            self
        }
    }

    /// 1-based human-readable description of the failure.
    pub fn describe(&self) -> String {
        match &self.failure {
            None => "holds".to_string(),
            Some(Failure::Degenerate) => "form is degenerate".to_string(),
            Some(Failure::Witness { indices, defect }) => {
                let idx: Vec<String> = indices.iter().map(|i| format!("e{}", i + 1)).collect();
                let d: Vec<String> = defect.iter().map(|x| x.to_string()).collect();
                format!("fails at ({}) with defect [{}]", idx.join(","), d.join(", "))
            }
        }
    }
}

/// Scans `n^arity` index tuples in lexicographic order, returning the first nonzero defect.
pub(crate) fn scan<F>(n: usize, arity: usize, mut defect: F) -> IdentityReport
where
    F: FnMut(&[usize]) -> Vector,
{
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    let mut idx = vec![0usize; arity];
    for t in 0..total {
        let mut rem = t;
        for slot in (0..arity).rev() {
            idx[slot] = rem % n;
            rem /= n;
        }
        let d = defect(&idx);
        if !is_zero_vec(&d) {
            return IdentityReport::witness(idx.clone(), d);
        }
    }
    IdentityReport::pass()
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl Algebra {
    pub fn zero(dim: usize) -> Self {
        Algebra { dim, labels: default_labels(dim), c: vec![Rational::zero(); dim * dim * dim] }
    }

    /// Builds from a full tensor in `[i][j][k]` order.
    pub fn from_tensor(dim: usize, c: Vec<Rational>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(LinError::DimensionMismatch { expected: dim * dim * dim, found: c.len() }.into());
        }
        Ok(Algebra { dim, labels: default_labels(dim), c })
    }

    /// Builds from `e_i • e_j` for every pair.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut a = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "product vector length");
                a.set_product(i, j, v);
            }
        }
        a
    }

    /// Sparse table with 0-based indices; repeated pairs accumulate.
    pub fn from_products(dim: usize, entries: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut a = Self::zero(dim);
        for (i, j, v) in entries {
            if *i >= dim || *j >= dim {
                return Err(LinError::DimensionMismatch { expected: dim, found: (*i).max(*j) + 1 }.into());
            }
            if v.len() != dim {
                return Err(LinError::DimensionMismatch { expected: dim, found: v.len() }.into());
            }
            for (k, x) in v.iter().enumerate() {
                a.c[(i * dim + j) * dim + k] += x;
            }
        }
        Ok(a)
    }

    /// Integer table with 1-based indices, as printed in tables: `(i, j, &[(k, coeff)])`.
    pub fn from_table(dim: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let mut a = Self::zero(dim);
        for (i, j, terms) in entries {
            for (k, x) in terms.iter() {
                a.c[((i - 1) * dim + (j - 1)) * dim + (k - 1)] += q(*x);
            }
        }
        a
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "label count");
        self.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tensor(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// `e_i • e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        let s = (i * self.dim + j) * self.dim;
        &self.c[s..s + self.dim]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vector) {
        let s = (i * self.dim + j) * self.dim;
        for (k, x) in v.into_iter().enumerate() {
            self.c[s + k] = x;
        }
    }

    /// Adds `v` to `e_i • e_j`.
    pub fn add_product(&mut self, i: usize, j: usize, v: &[Rational]) {
        let s = (i * self.dim + j) * self.dim;
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                self.c[s + k] += x;
            }
        }
    }

    pub fn is_zero_product(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Bilinear product of arbitrary vectors.
    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Result<Vector> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.mul(u, v))
    }

    fn check_len(&self, u: &[Rational]) -> Result<()> {
        if u.len() != self.dim {
            return Err(LinError::DimensionMismatch { expected: self.dim, found: u.len() }.into());
        }
        Ok(())
    }

    /// Unchecked product; lengths must equal `dim`.
    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ui * vj), self.product(i, j));
            }
        }
        out
    }

    /// `e_i • v`.
    pub fn mul_basis_left(&self, i: usize, v: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (l, vl) in v.iter().enumerate() {
            axpy(&mut out, vl, self.product(i, l));
        }
        out
    }

    /// `v • e_k`.
    pub fn mul_basis_right(&self, v: &[Rational], k: usize) -> Vector {
        let mut out = zero_vec(self.dim);
        for (l, vl) in v.iter().enumerate() {
            axpy(&mut out, vl, self.product(l, k));
        }
        out
    }

    /// Matrix of `L_u : v ↦ u • v`.
    pub fn left_mult(&self, u: &[Rational]) -> Result<Matrix> {
        self.check_len(u)?;
        let cols = (0..self.dim).map(|j| self.mul_basis_right(u, j)).collect();
        Ok(Matrix::from_cols(self.dim, cols)?)
    }

    /// Matrix of `R_u : v ↦ v • u`.
    pub fn right_mult(&self, u: &[Rational]) -> Result<Matrix> {
        self.check_len(u)?;
        let cols = (0..self.dim).map(|j| self.mul_basis_left(j, u)).collect();
        Ok(Matrix::from_cols(self.dim, cols)?)
    }

    /// Opposite algebra `u •_opp v = v • u`.
    pub fn opposite(&self) -> Algebra {
        let mut a = Self::from_fn(self.dim, |i, j| self.product(j, i).to_vec());
        a.labels = self.labels.clone();
        a
    }

    /// `u•(v•w) = (u•v)•w + v•(u•w)` on all basis triples.
    pub fn is_left_leibniz(&self) -> IdentityReport {
        scan(self.dim, 3, |t| {
            let (i, j, k) = (t[0], t[1], t[2]);
            let lhs = self.mul_basis_left(i, self.product(j, k));
            let a = self.mul_basis_right(self.product(i, j), k);
            let b = self.mul_basis_left(j, self.product(i, k));
            let mut d = vec_sub(&lhs, &a);
            axpy(&mut d, &-Rational::one(), &b);
            d
        })
    }

    /// `(v•w)•u = (v•u)•w + v•(w•u)` on all basis triples `(u,v,w)`.
    pub fn is_right_leibniz(&self) -> IdentityReport {
        scan(self.dim, 3, |t| {
            let (u, v, w) = (t[0], t[1], t[2]);
            let lhs = self.mul_basis_right(self.product(v, w), u);
            let a = self.mul_basis_right(self.product(v, u), w);
            let b = self.mul_basis_left(v, self.product(w, u));
            let mut d = vec_sub(&lhs, &a);
            axpy(&mut d, &-Rational::one(), &b);
            d
        })
    }

    pub fn is_symmetric_leibniz(&self) -> IdentityReport {
        self.is_left_leibniz().and(|| self.is_right_leibniz())
    }

    /// `ass(u,v,w) = ass(v,u,w)` with `ass(u,v,w) = (u•v)•w − u•(v•w)`.
    pub fn is_left_symmetric(&self) -> IdentityReport {
        scan(self.dim, 3, |t| {
            let (i, j, k) = (t[0], t[1], t[2]);
            let ass_ijk = vec_sub(
                &self.mul_basis_right(self.product(i, j), k),
                &self.mul_basis_left(i, self.product(j, k)),
            );
            let ass_jik = vec_sub(
                &self.mul_basis_right(self.product(j, i), k),
                &self.mul_basis_left(j, self.product(i, k)),
            );
            vec_sub(&ass_ijk, &ass_jik)
        })
    }

    /// Antisymmetry on pairs, then the Jacobi identity on triples.
    pub fn is_lie(&self) -> IdentityReport {
        self.is_anticommutative().and(|| {
            scan(self.dim, 3, |t| {
                let (x, y, z) = (t[0], t[1], t[2]);
                let mut d = self.mul_basis_left(x, self.product(y, z));
                axpy(&mut d, &Rational::one(), &self.mul_basis_left(y, self.product(z, x)));
                axpy(&mut d, &Rational::one(), &self.mul_basis_left(z, self.product(x, y)));
                d
            })
        })
    }

    pub fn is_anticommutative(&self) -> IdentityReport {
        scan(self.dim, 2, |t| {
            let mut d = self.product(t[0], t[1]).to_vec();
            axpy(&mut d, &Rational::one(), self.product(t[1], t[0]));
            d
        })
    }

    pub fn is_commutative(&self) -> IdentityReport {
        scan(self.dim, 2, |t| vec_sub(self.product(t[0], t[1]), self.product(t[1], t[0])))
    }

    /// Commutator part `[u,v] = ½(u•v − v•u)` and symmetric part `u⋄v = ½(u•v + v•u)`.
    pub fn split(&self) -> (Algebra, Algebra) {
        let half = qf(1, 2);
        let comm = Self::from_fn(self.dim, |i, j| {
            vec_sub(self.product(i, j), self.product(j, i)).iter().map(|x| x * &half).collect()
        });
        let sym = Self::from_fn(self.dim, |i, j| {
            self.product(i, j).iter().zip(self.product(j, i)).map(|(a, b)| (a + b) * &half).collect()
        });
        (comm, sym)
    }

    /// `Leib(A) = span{e_i•e_j + e_j•e_i}`.
    pub fn leibniz_ideal(&self) -> Subspace {
        let mut vecs = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut v = self.product(i, j).to_vec();
                axpy(&mut v, &Rational::one(), self.product(j, i));
                if !is_zero_vec(&v) {
                    vecs.push(v);
                }
            }
        }
        Subspace::span(self.dim, vecs).expect("product vectors")
    }

    /// Two-sided annihilator `{u : u•v = v•u = 0 for all v}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // Row (j, k) of the left block: coefficient of u_l in (u•e_j)_k is c[l][j][k].
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|l| self.coeff(l, j, k).clone()).collect());
                rows.push((0..n).map(|l| self.coeff(j, l, k).clone()).collect());
            }
        }
        kernel(&Matrix::from_rows(n, rows).expect("rows of length n"))
    }

    /// `A•s ⊆ s` and `s•A ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.ideal_witness(s).is_none()
    }

    /// First `(basis index, subspace row, side)` violating the ideal property.
    pub fn ideal_witness(&self, s: &Subspace) -> Option<(usize, usize, bool)> {
        if s.ambient_dim() != self.dim {
            return Some((0, 0, true));
        }
        for r in 0..s.dim() {
            let v = s.basis().row(r);
            for i in 0..self.dim {
                if !s.contains(&self.mul_basis_left(i, v)) {
                    return Some((i, r, true));
                }
                if !s.contains(&self.mul_basis_right(v, i)) {
                    return Some((i, r, false));
                }
            }
        }
        None
    }

    /// Quotient by an ideal on the complement spanned by the non-pivot standard basis
    /// vectors; also returns the projection matrix `A → A/I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, Matrix)> {
        if ideal.ambient_dim() != self.dim {
            return Err(LinError::DimensionMismatch { expected: self.dim, found: ideal.ambient_dim() }.into());
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotIdeal);
        }
        let comp = ideal.complement_indices();
        let m = comp.len();
        let project = |v: &[Rational]| -> Vector {
            let red = ideal.reduce(v);
            comp.iter().map(|&c| red[c].clone()).collect()
        };
        let proj_cols = (0..self.dim).map(|j| project(&unit_vec(self.dim, j))).collect();
        let proj = Matrix::from_cols(m, proj_cols)?;
        let mut quo = Algebra::from_fn(m, |a, b| project(self.product(comp[a], comp[b])));
        quo.labels = comp.iter().map(|&c| self.labels[c].clone()).collect();
        Ok((quo, proj))
    }

    /// First basis pair `(i,j)` where `D(e_i•e_j) ≠ De_i•e_j + e_i•De_j`.
    pub fn derivation_defect(&self, d: &Matrix) -> Option<(usize, usize, Vector)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = d.apply(self.product(i, j));
                let a = self.mul_basis_right(&d.col(i), j);
                let b = self.mul_basis_left(i, &d.col(j));
                let mut diff = vec_sub(&lhs, &a);
                axpy(&mut diff, &-Rational::one(), &b);
                if !is_zero_vec(&diff) {
                    return Some((i, j, diff));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        d.rows() == self.dim && d.cols() == self.dim && self.derivation_defect(d).is_none()
    }

    /// Basis of `Der(A)` from the linear system in the `n²` entries of `D`.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        let var = |r: usize, s: usize| r * n + s;
        let mut rows = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = zero_vec(n * n);
                    for l in 0..n {
                        // D(e_i•e_j)_k = Σ_l c[i][j][l] D[k][l]
                        row[var(k, l)] += self.coeff(i, j, l);
                        // (De_i • e_j)_k = Σ_l D[l][i] c[l][j][k]
                        row[var(l, i)] -= self.coeff(l, j, k);
                        // (e_i • De_j)_k = Σ_l D[l][j] c[i][l][k]
                        row[var(l, j)] -= self.coeff(i, l, k);
                    }
                    rows.push(row);
                }
            }
        }
        let sol = kernel(&Matrix::from_rows(n * n, rows).expect("row length n²"));
        sol.basis_vecs()
            .into_iter()
            .map(|v| Matrix::from_rows(n, v.chunks(n).map(|c| c.to_vec()).collect()).expect("n×n"))
            .collect()
    }

    /// Inner derivation `ad_u = L_u` restricted to Lie algebras by the caller.
    pub fn ad(&self, u: &[Rational]) -> Matrix {
        self.left_mult(u).expect("vector length")
    }
}
