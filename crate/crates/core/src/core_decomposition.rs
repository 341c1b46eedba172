//! Core decomposition of a symplectic left Leibniz algebra: `I = Leib ∩ Leib⊥`,
//! `I⊥`, the symplectic Lie algebra `g = I⊥/I` and the trivial quotient `h = A/I⊥`.

use num_traits::Zero;

use crate::algebra::{Algebra, IdentityReport};
use crate::error::{Error, Result};
use crate::exactlin::{intersect, unit_vec, Matrix, Subspace, Vector};
use crate::report::CheckReport;
use crate::symplectic::{
    is_isotropic, is_symplectic_left, orthogonal, star_left, Side, SkewForm, SymplecticAlgebra,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub i: Subspace,
    pub iperp: Subspace,
    /// The quotient `I⊥/I` with bracket and induced form.
    pub g: SymplecticAlgebra,
    /// Rows are representatives in `A` of the basis of `g`.
    pub g_lift: Matrix,
    pub h_dim: usize,
    /// Rows are standard basis vectors spanning a complement of `I⊥`.
    pub h_lift: Matrix,
}

impl CoreDecomposition {
    pub fn i_dim(&self) -> usize {
        self.i.dim()
    }

    pub fn g_dim(&self) -> usize {
        self.g_lift.rows()
    }
}

/// Coordinates on `V/W` for `W ⊆ V`, with representatives chosen among the
/// canonical basis rows of `V`.
struct Section {
    v: Subspace,
    w_coords: Subspace,
    comp: Vec<usize>,
}

impl Section {
    fn new(v: &Subspace, w: &Subspace) -> Option<Self> {
        let coords = w.basis_vecs().iter().map(|x| v.coords(x)).collect::<Option<Vec<_>>>()?;
        let w_coords = Subspace::span(v.dim(), coords).ok()?;
        let comp = w_coords.complement_indices();
        Some(Section { v: v.clone(), w_coords, comp })
    }

    fn lifts(&self) -> Matrix {
        let rows = self.comp.iter().map(|&r| self.v.basis().row(r).to_vec()).collect();
        Matrix::from_rows(self.v.ambient_dim(), rows).expect("lift rows")
    }

    fn project(&self, x: &[crate::exactlin::Rational]) -> Option<Vector> {
        let c = self.v.coords(x)?;
        let red = self.w_coords.reduce(&c);
        Some(self.comp.iter().map(|&i| red[i].clone()).collect())
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::CoreAssertion(msg.into())
}

/// Computes the core; hard-fails if any structural property is violated.
pub fn core(a: &Algebra, form: &SkewForm) -> Result<CoreDecomposition> {
    let rep = is_symplectic_left(a, form);
    if !rep.holds() {
        return Err(Error::NotSymplectic(rep.describe()));
    }
    let n = a.dim();
    let leib = a.leibniz_ideal();
    let leib_perp = orthogonal(form, &leib);
    let i = intersect(&leib, &leib_perp)?;
    let iperp = orthogonal(form, &i);
    if !i.is_subspace_of(&iperp) {
        return Err(fail("I is not isotropic"));
    }
    if !a.is_ideal(&i) || !a.is_ideal(&iperp) {
        return Err(fail("I or I-perp is not an ideal"));
    }
    let sec = Section::new(&iperp, &i).ok_or_else(|| fail("I not contained in I-perp"))?;
    let g_lift = sec.lifts();
    let m = g_lift.rows();
    let mut g = Algebra::zero(m);
    for x in 0..m {
        for y in 0..m {
            let p = a.mul(g_lift.row(x), g_lift.row(y));
            let v = sec.project(&p).ok_or_else(|| fail("product of I-perp representatives leaves I-perp"))?;
            g.set_product(x, y, v);
        }
    }
    // Representative independence: ω(I, I⊥) = 0 and I•I⊥, I⊥•I ⊆ I.
    for iv in i.basis_vecs() {
        for pv in iperp.basis_vecs() {
            if !form.eval(&iv, &pv).is_zero() {
                return Err(fail("induced form depends on representatives"));
            }
            if !i.contains(&a.mul(&iv, &pv)) || !i.contains(&a.mul(&pv, &iv)) {
                return Err(fail("induced bracket depends on representatives"));
            }
        }
    }
    let mut wg = Matrix::zeros(m, m);
    for x in 0..m {
        for y in 0..m {
            wg.set(x, y, form.eval(g_lift.row(x), g_lift.row(y)));
        }
    }
    let g_form = SkewForm::new(wg)?;
    if !g_form.is_nondegenerate() {
        return Err(fail("induced form on g is degenerate"));
    }
    if !g.is_lie().holds() {
        return Err(fail(format!("g is not Lie: {}", g.is_lie().describe())));
    }
    let g_sym = SymplecticAlgebra::new(g, g_form, Side::Left).map_err(|e| fail(e.to_string()))?;
    let h_idx = iperp.complement_indices();
    let h_lift = Matrix::from_rows(n, h_idx.iter().map(|&c| unit_vec(n, c)).collect())?;
    let h_dim = h_idx.len();
    if i.dim() + m + h_dim != n || h_dim != i.dim() {
        return Err(fail("dimension count dim I + dim g + dim h = dim A fails"));
    }
    Ok(CoreDecomposition { i, iperp, g: g_sym, g_lift, h_dim, h_lift })
}

fn ideal_report(a: &Algebra, s: &Subspace) -> IdentityReport {
    match a.ideal_witness(s) {
        None => IdentityReport::pass(),
        Some((i, r, left)) => {
            let v = s.basis().row(r);
            let p = if left { a.mul_basis_left(i, v) } else { a.mul_basis_right(v, i) };
            IdentityReport::witness(vec![i, r], s.reduce(&p))
        }
    }
}

fn products_in(a: &Algebra, s: &Subspace) -> IdentityReport {
    crate::algebra::scan(a.dim(), 2, |t| s.reduce(a.product(t[0], t[1])))
}

fn annihilates(a: &Algebra, s: &Subspace) -> IdentityReport {
    let rows = s.basis_vecs();
    crate::algebra::scan(a.dim(), 1, |t| {
        for v in &rows {
            let left = a.mul_basis_left(t[0], v);
            if !crate::exactlin::is_zero_vec(&left) {
                return left;
            }
        }
        crate::exactlin::zero_vec(a.dim())
    })
}

/// Re-checks the structural statements (i)–(iv) on a given decomposition.
pub fn verify_core_properties(a: &Algebra, form: &SkewForm, dec: &CoreDecomposition) -> Result<CheckReport> {
    let star = star_left(a, form)?;
    let leib = a.leibniz_ideal();
    let mut r = CheckReport::new();
    r.push("i.leib-ideal-bullet", ideal_report(a, &leib));
    r.push("i.leib-ideal-star", ideal_report(&star, &leib));
    let iso = if dec.i.ambient_dim() == form.dim() && is_isotropic(form, &dec.i) {
        IdentityReport::pass()
    } else {
        IdentityReport::witness(vec![], vec![])
    };
    r.push("ii.I-isotropic", iso);
    r.push("ii.I-ideal-bullet", ideal_report(a, &dec.i));
    r.push("ii.I-ideal-star", ideal_report(&star, &dec.i));
    r.push("ii.Iperp-ideal-bullet", ideal_report(a, &dec.iperp));
    r.push("ii.Iperp-ideal-star", ideal_report(&star, &dec.iperp));
    r.push("ii.AA-in-Iperp-bullet", products_in(a, &dec.iperp));
    r.push("ii.AA-in-Iperp-star", products_in(&star, &dec.iperp));
    r.push("ii.A-bullet-I-zero", annihilates(a, &dec.i));
    r.push("ii.A-star-I-zero", annihilates(&star, &dec.i));
    r.push("iii.g-lie", dec.g.algebra.is_lie());
    r.push("iii.g-symplectic", is_symplectic_left(&dec.g.algebra, &dec.g.form));
    r.push("iv.h-star-trivial", products_in(&star, &dec.iperp));
    Ok(r)
}
