//! Skew forms, ω-adjoints, the symplectic conditions and their induced
//! left-symmetric products.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{scan, Algebra, IdentityReport};
use crate::error::{Error, LinError, Result};
use crate::exactlin::{kernel, q, qf, solve_unique, unit_vec, zero_vec, Matrix, Rational, Subspace, Vector};

/// Skew-symmetric bilinear form `ω(u,v) = uᵀ W v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewForm {
    w: Matrix,
    nondegenerate: bool,
}

impl SkewForm {
    pub fn new(w: Matrix) -> Result<Self> {
        if !w.is_square() {
            return Err(LinError::DimensionMismatch { expected: w.rows(), found: w.cols() }.into());
        }
        if w.transpose() != w.neg() {
            return Err(Error::NotSkew);
        }
        let nondegenerate = !w.det().is_zero();
        Ok(SkewForm { w, nondegenerate })
    }

    pub fn zero(n: usize) -> Self {
        SkewForm { w: Matrix::zeros(n, n), nondegenerate: n == 0 }
    }

    /// Sum of `c · e^{ij}` for 0-based `(i, j, c)` with `i != j`.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut w = Matrix::zeros(n, n);
        for (i, j, c) in entries {
            if *i >= n || *j >= n {
                return Err(LinError::DimensionMismatch { expected: n, found: (*i).max(*j) + 1 }.into());
            }
            w.add_at(*i, *j, c);
            w.add_at(*j, *i, &-c.clone());
        }
        Self::new(w)
    }

    /// Integer shorthand with 1-based indices: `&[(1, 4, 1), (2, 3, 1)]` is `e¹⁴ + e²³`.
    pub fn from_pairs(n: usize, entries: &[(usize, usize, i64)]) -> Self {
        let e: Vec<_> = entries.iter().map(|&(i, j, c)| (i - 1, j - 1, q(c))).collect();
        Self::from_entries(n, &e).expect("valid form entries")
    }

    /// From strict-upper-triangle coordinates in row-major order.
    pub fn from_upper(n: usize, coords: &[Rational]) -> Result<Self> {
        let idx = upper_index(n);
        if coords.len() != idx.len() {
            return Err(LinError::DimensionMismatch { expected: idx.len(), found: coords.len() }.into());
        }
        let entries: Vec<_> = idx.iter().zip(coords).map(|(&(i, j), c)| (i, j, c.clone())).collect();
        Self::from_entries(n, &entries)
    }

    pub fn upper_coords(&self) -> Vector {
        upper_index(self.dim()).into_iter().map(|(i, j)| self.w.get(i, j).clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.w.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.w
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let wij = self.w.get(i, j);
                if !vj.is_zero() && !wij.is_zero() {
                    acc += ui * wij * vj;
                }
            }
        }
        acc
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.w.get(i, j)
    }
}

/// Strict-upper-triangle index pairs in row-major order.
pub fn upper_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Which symplectic condition applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Bi,
}

/// An algebra together with a form satisfying the condition for `side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticAlgebra {
    pub algebra: Algebra,
    pub form: SkewForm,
    pub side: Side,
}

impl SymplecticAlgebra {
    pub fn new(algebra: Algebra, form: SkewForm, side: Side) -> Result<Self> {
        let rep = match side {
            Side::Left => is_symplectic_left(&algebra, &form),
            Side::Right => is_symplectic_right(&algebra, &form),
            Side::Bi => is_bi_symplectic(&algebra, &form),
        };
        if !rep.holds() {
            return Err(Error::NotSymplectic(rep.describe()));
        }
        Ok(SymplecticAlgebra { algebra, form, side })
    }
}

/// `m*` with `ω(m*u, v) = ω(u, m v)`, i.e. `m* = W⁻¹ mᵀ W`.
pub fn omega_adjoint(form: &SkewForm, m: &Matrix) -> Result<Matrix> {
    if !m.is_square() || m.rows() != form.dim() {
        return Err(LinError::DimensionMismatch { expected: form.dim(), found: m.rows() }.into());
    }
    let winv = form.w.inverse().ok_or(Error::DegenerateForm)?;
    Ok(winv.dot(&m.transpose()).dot(&form.w))
}

fn check_dims(a: &Algebra, form: &SkewForm) -> bool {
    a.dim() == form.dim()
}

fn scalar(x: Rational) -> Vector {
    vec![x]
}

fn nondeg_then(a: &Algebra, form: &SkewForm, body: impl FnOnce() -> IdentityReport) -> IdentityReport {
    if !check_dims(a, form) || !form.is_nondegenerate() {
        return IdentityReport::degenerate();
    }
    body()
}

/// (l1) on all basis triples, plus nondegeneracy.
pub fn is_symplectic_left(a: &Algebra, form: &SkewForm) -> IdentityReport {
    nondeg_then(a, form, || l1_defects(a, form))
}

/// The (l1) identity alone, without nondegeneracy.
pub fn l1_defects(a: &Algebra, form: &SkewForm) -> IdentityReport {
    let n = a.dim();
    let half = qf(1, 2);
    let e = |i| unit_vec(n, i);
    scan(n, 3, |t| {
        let (u, v, w) = (e(t[0]), e(t[1]), e(t[2]));
        let lhs = form.eval(&u, a.product(t[1], t[2])) - form.eval(&v, a.product(t[0], t[2]));
        let rhs = &half * (form.eval(a.product(t[0], t[1]), &w) - form.eval(a.product(t[1], t[0]), &w));
        scalar(lhs - rhs)
    })
}

/// (l2): `dω(u,v,w) = ω(v,u⋄w) − ω(u,v⋄w)`, plus nondegeneracy.
pub fn is_symplectic_left_l2(a: &Algebra, form: &SkewForm) -> IdentityReport {
    nondeg_then(a, form, || {
        let (br, sym) = a.split();
        let n = a.dim();
        scan(n, 3, |t| {
            let (u, v) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
            let rhs = form.eval(&v, sym.product(t[0], t[2])) - form.eval(&u, sym.product(t[1], t[2]));
            scalar(d_omega(&br, form, t[0], t[1], t[2]) - rhs)
        })
    })
}

/// (r1) on all basis triples, plus nondegeneracy.
pub fn is_symplectic_right(a: &Algebra, form: &SkewForm) -> IdentityReport {
    nondeg_then(a, form, || r1_defects(a, form))
}

/// The (r1) identity alone.
pub fn r1_defects(a: &Algebra, form: &SkewForm) -> IdentityReport {
    let n = a.dim();
    let half = qf(1, 2);
    let e = |i| unit_vec(n, i);
    scan(n, 3, |t| {
        let (u, v, w) = (e(t[0]), e(t[1]), e(t[2]));
        let lhs = form.eval(&u, a.product(t[2], t[1])) - form.eval(&v, a.product(t[2], t[0]));
        let rhs = &half * (form.eval(a.product(t[1], t[0]), &w) - form.eval(a.product(t[0], t[1]), &w));
        scalar(lhs - rhs)
    })
}

/// (r2): `dω(u,v,w) = ω(u,v⋄w) − ω(v,u⋄w)`, plus nondegeneracy.
pub fn is_symplectic_right_r2(a: &Algebra, form: &SkewForm) -> IdentityReport {
    nondeg_then(a, form, || {
        let (br, sym) = a.split();
        let n = a.dim();
        scan(n, 3, |t| {
            let (u, v) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
            let rhs = form.eval(&u, sym.product(t[1], t[2])) - form.eval(&v, sym.product(t[0], t[2]));
            scalar(d_omega(&br, form, t[0], t[1], t[2]) - rhs)
        })
    })
}

/// `dω(e_i,e_j,e_k) = ω(e_i,[e_j,e_k]) + ω(e_j,[e_k,e_i]) + ω(e_k,[e_i,e_j])` for a bracket algebra.
fn d_omega(br: &Algebra, form: &SkewForm, i: usize, j: usize, k: usize) -> Rational {
    let n = br.dim();
    let e = |x| unit_vec(n, x);
    form.eval(&e(i), br.product(j, k)) + form.eval(&e(j), br.product(k, i)) + form.eval(&e(k), br.product(i, j))
}

/// `dω = 0` and `ω(u⋄w, v) = ω(v⋄w, u)` on all basis triples, plus nondegeneracy.
pub fn is_bi_symplectic(a: &Algebra, form: &SkewForm) -> IdentityReport {
    nondeg_then(a, form, || {
        let (br, sym) = a.split();
        let n = a.dim();
        scan(n, 3, |t| scalar(d_omega(&br, form, t[0], t[1], t[2]))).and(|| {
            scan(n, 3, |t| {
                let (u, v) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
                scalar(form.eval(sym.product(t[0], t[2]), &v) - form.eval(sym.product(t[1], t[2]), &u))
            })
        })
    })
}

/// Row of coefficients of `ω(a, b)` in the strict-upper coordinates of `ω`.
fn form_coeffs(n: usize, a: &[Rational], b: &[Rational]) -> Vector {
    upper_index(n).into_iter().map(|(p, r)| &a[p] * &b[r] - &a[r] * &b[p]).collect()
}

/// All skew forms (nondegeneracy not imposed) satisfying (l1), (r1) or both, as a
/// subspace of strict-upper coordinates.
pub fn solve_symplectic_forms(a: &Algebra, side: Side) -> Subspace {
    let n = a.dim();
    let m = n * (n.saturating_sub(1)) / 2;
    let half = qf(1, 2);
    let mut rows = Vec::new();
    let lin = |x: Vector, y: Vector, s: &Rational, acc: &mut Vector| {
        for (t, c) in acc.iter_mut().zip(form_coeffs(n, &x, &y)) {
            *t += s * c;
        }
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (u, v, w) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                if side != Side::Right {
                    let mut row = zero_vec(m);
                    lin(u.clone(), a.product(j, k).to_vec(), &Rational::one(), &mut row);
                    lin(v.clone(), a.product(i, k).to_vec(), &-Rational::one(), &mut row);
                    lin(a.product(i, j).to_vec(), w.clone(), &-half.clone(), &mut row);
                    lin(a.product(j, i).to_vec(), w.clone(), &half, &mut row);
                    rows.push(row);
                }
                if side != Side::Left {
                    let mut row = zero_vec(m);
                    lin(u.clone(), a.product(k, j).to_vec(), &Rational::one(), &mut row);
                    lin(v.clone(), a.product(k, i).to_vec(), &-Rational::one(), &mut row);
                    lin(a.product(j, i).to_vec(), w.clone(), &-half.clone(), &mut row);
                    lin(a.product(i, j).to_vec(), w, &half, &mut row);
                    rows.push(row);
                }
            }
        }
    }
    kernel(&Matrix::from_rows(m, rows).expect("row length"))
}

/// Recovers `n` from `n(n−1)/2`.
pub fn form_dim_from_coords(m: usize) -> Option<usize> {
    (0..=m + 1).find(|n| n * n.saturating_sub(1) / 2 == m)
}

/// Number of random combinations tried by [`find_nondegenerate`].
pub const NONDEGENERATE_TRIES: usize = 128;

/// Random integer combinations (coefficients in `[−10, 10]`, seeded) of the basis of a
/// space of skew forms; returns the first nondegenerate one.
pub fn find_nondegenerate(space: &Subspace, seed: u64) -> Option<SkewForm> {
    let n = form_dim_from_coords(space.ambient_dim())?;
    if space.is_zero() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = space.basis_vecs();
    for _ in 0..NONDEGENERATE_TRIES {
        let mut coords = zero_vec(space.ambient_dim());
        for b in &basis {
            let c = q(rng.gen_range(-10..=10));
            crate::exactlin::axpy(&mut coords, &c, b);
        }
        let form = SkewForm::from_upper(n, &coords).ok()?;
        if form.is_nondegenerate() {
            return Some(form);
        }
    }
    None
}

/// `u ⋆ v = −L_u* v`, solved per basis pair from `ω(u⋆v, w) = −ω(v, u•w)`.
pub fn star_left(a: &Algebra, form: &SkewForm) -> Result<Algebra> {
    star_impl(a, form, |i, k| a.product(i, k).to_vec())
}

/// `u ⋆ v = −R_u* v`, solved per basis pair from `ω(u⋆v, w) = −ω(v, w•u)`.
pub fn star_right(a: &Algebra, form: &SkewForm) -> Result<Algebra> {
    star_impl(a, form, |i, k| a.product(k, i).to_vec())
}

fn star_impl(a: &Algebra, form: &SkewForm, prod: impl Fn(usize, usize) -> Vector) -> Result<Algebra> {
    let n = a.dim();
    if form.dim() != n {
        return Err(LinError::DimensionMismatch { expected: n, found: form.dim() }.into());
    }
    if !form.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    // ω(x, e_k) = (Wᵀ x)_k
    let wt = form.w.transpose();
    let mut out = Algebra::zero(n);
    for i in 0..n {
        for j in 0..n {
            let ej = unit_vec(n, j);
            let rhs: Vector = (0..n).map(|k| -form.eval(&ej, &prod(i, k))).collect();
            let x = solve_unique(&wt, &rhs).ok_or(Error::DegenerateForm)?;
            out.set_product(i, j, x);
        }
    }
    Ok(out.with_labels(a.labels().to_vec()))
}

/// `s⊥ = {v : ω(v, s) = 0}`.
pub fn orthogonal(form: &SkewForm, s: &Subspace) -> Subspace {
    let rows: Vec<Vector> = s.basis_vecs().iter().map(|b| form.w.apply(b)).collect();
    kernel(&Matrix::from_rows(form.dim(), rows).expect("row length"))
}

pub fn is_isotropic(form: &SkewForm, s: &Subspace) -> bool {
    s.is_subspace_of(&orthogonal(form, s))
}

pub fn is_lagrangian(form: &SkewForm, s: &Subspace) -> bool {
    *s == orthogonal(form, s)
}
