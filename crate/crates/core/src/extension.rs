//! Double extensions of symplectic Lie algebras: extension data, the full and
//! reduced compatibility systems, the builders for the Leibniz product and its
//! left-symmetric product, and the specialised constructions (Lagrangian,
//! isotropic, inner, rank one, bi-symplectic).
//!
//! Basis order of every built extension is `(𝔥, 𝔤, 𝔥*)`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{Algebra, IdentityReport};
use crate::error::{Error, LinError, Result};
use crate::exactlin::{
    axpy, is_zero_vec, kernel, qf, solve_unique, unit_vec, vec_add, vec_sub, zero_vec, Matrix, Rational, Subspace,
    Vector,
};
use crate::report::CheckReport;
use crate::symplectic::{is_bi_symplectic, is_symplectic_left, omega_adjoint, star_left, SkewForm};

/// `p × p` table of `𝔤`-vectors, indexed `[X][Y]`.
pub type Table = Vec<Vec<Vector>>;
/// `p × p × p` scalars, `cube[X][Y][Z] = Ω(X)(Y, Z)`.
pub type Cube = Vec<Vec<Vec<Rational>>>;

fn half() -> Rational {
    qf(1, 2)
}

fn flat(m: &Matrix) -> Vector {
    m.row_vecs().concat()
}

/// Lexicographic scan over a product of ranges; first nonzero defect wins.
fn scan_dims(dims: &[usize], mut defect: impl FnMut(&[usize]) -> Vector) -> IdentityReport {
    if dims.iter().any(|&d| d == 0) {
        return IdentityReport::pass();
    }
    let mut idx = vec![0usize; dims.len()];
    loop {
        let d = defect(&idx);
        if !is_zero_vec(&d) {
            return IdentityReport::witness(idx, d);
        }
        let mut slot = dims.len();
        loop {
            if slot == 0 {
                return IdentityReport::pass();
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < dims[slot] {
                break;
            }
            idx[slot] = 0;
        }
    }
}

fn zero_cube(p: usize) -> Cube {
    vec![vec![vec![Rational::zero(); p]; p]; p]
}

fn zero_table(p: usize, m: usize) -> Table {
    vec![vec![zero_vec(m); p]; p]
}

/// A symplectic Lie algebra `(𝔤, [,], ω)` with its cached left-symmetric product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticLie {
    g: Algebra,
    form: SkewForm,
    star: Algebra,
}

impl SymplecticLie {
    pub fn new(g: Algebra, form: SkewForm) -> Result<Self> {
        let lie = g.is_lie();
        if !lie.holds() {
            return Err(Error::Precondition(format!("g is not a Lie algebra: {}", lie.describe())));
        }
        let rep = is_symplectic_left(&g, &form);
        if !rep.holds() {
            return Err(Error::NotSymplectic(rep.describe()));
        }
        let star = star_left(&g, &form)?;
        let ls = star.is_left_symmetric();
        if !ls.holds() {
            return Err(Error::CoreAssertion(format!("star is not left symmetric: {}", ls.describe())));
        }
        let n = g.dim();
        for i in 0..n {
            for j in 0..n {
                if vec_sub(star.product(i, j), star.product(j, i)) != g.product(i, j) {
                    return Err(Error::CoreAssertion("star commutator differs from the bracket".into()));
                }
            }
        }
        Ok(SymplecticLie { g, form, star })
    }

    /// The zero-dimensional symplectic Lie algebra.
    pub fn trivial() -> Self {
        SymplecticLie { g: Algebra::zero(0), form: SkewForm::zero(0), star: Algebra::zero(0) }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.g
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn star(&self) -> &Algebra {
        &self.star
    }

    pub fn omega(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.form.eval(a, b)
    }

    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.g.mul(a, b)
    }

    pub fn star_mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.star.mul(a, b)
    }

    /// `ω`-adjoint of an endomorphism of `𝔤`.
    pub fn adjoint(&self, m: &Matrix) -> Matrix {
        if self.dim() == 0 {
            return Matrix::zeros(0, 0);
        }
        omega_adjoint(&self.form, m).expect("nondegenerate form of matching size")
    }

    /// `ad_c`, columns `[c, e_k]`.
    pub fn ad(&self, c: &[Rational]) -> Matrix {
        self.g.ad(c)
    }

    /// `R^⋆_c`, columns `e_k ⋆ c`.
    pub fn r_star(&self, c: &[Rational]) -> Matrix {
        self.star.right_mult(c).expect("vector length")
    }
}

/// Data `(F, G, θ, ψ, ξ, Ω)` of a double extension over `𝔥 = K^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    p: usize,
    f: Vec<Matrix>,
    g: Vec<Matrix>,
    theta: Table,
    psi: Table,
    xi: Table,
    omega: Cube,
}

fn check_table(name: &str, t: &Table, p: usize, m: usize) -> Result<()> {
    if t.len() != p || t.iter().any(|r| r.len() != p || r.iter().any(|v| v.len() != m)) {
        return Err(Error::Precondition(format!("{name} must be a {p}x{p} table of vectors of length {m}")));
    }
    Ok(())
}

fn check_cube(om: &Cube, p: usize) -> Result<()> {
    if om.len() != p || om.iter().any(|a| a.len() != p || a.iter().any(|b| b.len() != p)) {
        return Err(Error::Precondition(format!("omega must be a {p}x{p}x{p} array")));
    }
    Ok(())
}

fn check_derivations(gs: &SymplecticLie, name: &str, ms: &[Matrix]) -> Result<()> {
    let m = gs.dim();
    for (x, d) in ms.iter().enumerate() {
        if d.rows() != m || d.cols() != m {
            return Err(LinError::DimensionMismatch { expected: m, found: d.rows() }.into());
        }
        if let Some((i, j, _)) = gs.g.derivation_defect(d) {
            return Err(Error::Precondition(format!(
                "{name}(X{}) is not a derivation of g (fails on e{}, e{})",
                x + 1,
                i + 1,
                j + 1
            )));
        }
    }
    Ok(())
}

impl ExtensionData {
    pub fn new(
        gs: &SymplecticLie,
        f: Vec<Matrix>,
        g: Vec<Matrix>,
        theta: Table,
        psi: Table,
        xi: Table,
        omega: Cube,
    ) -> Result<Self> {
        let p = f.len();
        let m = gs.dim();
        if g.len() != p {
            return Err(LinError::DimensionMismatch { expected: p, found: g.len() }.into());
        }
        check_derivations(gs, "F", &f)?;
        check_derivations(gs, "G", &g)?;
        check_table("theta", &theta, p, m)?;
        check_table("psi", &psi, p, m)?;
        check_table("xi", &xi, p, m)?;
        check_cube(&omega, p)?;
        Ok(ExtensionData { p, f, g, theta, psi, xi, omega })
    }

    pub fn zero(gs: &SymplecticLie, p: usize) -> Self {
        let m = gs.dim();
        ExtensionData {
            p,
            f: vec![Matrix::zeros(m, m); p],
            g: vec![Matrix::zeros(m, m); p],
            theta: zero_table(p, m),
            psi: zero_table(p, m),
            xi: zero_table(p, m),
            omega: zero_cube(p),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn f(&self) -> &[Matrix] {
        &self.f
    }

    pub fn g(&self) -> &[Matrix] {
        &self.g
    }

    pub fn theta(&self) -> &Table {
        &self.theta
    }

    pub fn psi(&self) -> &Table {
        &self.psi
    }

    pub fn xi(&self) -> &Table {
        &self.xi
    }

    pub fn omega(&self) -> &Cube {
        &self.omega
    }

    /// `S(X) = F(X) + G(X)`.
    pub fn s(&self, x: usize) -> Matrix {
        self.f[x].add(&self.g[x])
    }

    /// `K(X) = ½S(X) − F(X) − F(X)*`.
    pub fn k(&self, gs: &SymplecticLie, x: usize) -> Matrix {
        self.s(x).scale(&half()).sub(&self.f[x]).sub(&gs.adjoint(&self.f[x]))
    }
}

/// Derived operators shared by the system checks.
struct Ctx<'a> {
    gs: &'a SymplecticLie,
    d: &'a ExtensionData,
    s: Vec<Matrix>,
    k: Vec<Matrix>,
    fa: Vec<Matrix>,
    ga: Vec<Matrix>,
    ka: Vec<Matrix>,
    sa: Vec<Matrix>,
}

impl<'a> Ctx<'a> {
    fn new(gs: &'a SymplecticLie, d: &'a ExtensionData) -> Self {
        let s: Vec<Matrix> = (0..d.p).map(|x| d.s(x)).collect();
        let k: Vec<Matrix> = (0..d.p).map(|x| d.k(gs, x)).collect();
        let adj = |v: &[Matrix]| v.iter().map(|m| gs.adjoint(m)).collect::<Vec<_>>();
        Ctx { gs, d, fa: adj(&d.f), ga: adj(&d.g), ka: adj(&k), sa: adj(&s), s, k }
    }

    fn m(&self) -> usize {
        self.gs.dim()
    }

    fn e(&self, a: usize) -> Vector {
        unit_vec(self.m(), a)
    }
}

type Check<'a> = (&'static str, Box<dyn Fn() -> IdentityReport + Send + Sync + 'a>);

/// Runs independent checks concurrently; the report keeps the listed order.
fn run(checks: Vec<Check<'_>>) -> CheckReport {
    let results: Vec<(&'static str, IdentityReport)> = checks.par_iter().map(|(n, f)| (*n, f())).collect();
    let mut r = CheckReport::new();
    for (n, rep) in results {
        r.push(n, rep);
    }
    r
}

/// `Ω(X)(Z,Y) − Ω(Y)(Z,X) = ½Ω(X)(Y,Z) − ½Ω(Y)(X,Z)` for all `X, Y, Z`.
pub fn omega_condition(om: &Cube) -> IdentityReport {
    let p = om.len();
    let h = half();
    scan_dims(&[p, p, p], |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        vec![&om[x][z][y] - &om[y][z][x] - &h * &om[x][y][z] + &h * &om[y][x][z]]
    })
}

fn cube_index(p: usize, x: usize, y: usize, z: usize) -> usize {
    (x * p + y) * p + z
}

/// Solution space of the Ω condition in coordinates `(X·p + Y)·p + Z`.
pub fn omega_condition_space(p: usize) -> Subspace {
    let n = p * p * p;
    let h = half();
    let mut rows = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let mut row = zero_vec(n);
                row[cube_index(p, x, z, y)] += Rational::one();
                row[cube_index(p, y, z, x)] -= Rational::one();
                row[cube_index(p, x, y, z)] -= &h;
                row[cube_index(p, y, x, z)] += &h;
                rows.push(row);
            }
        }
    }
    kernel(&Matrix::from_rows(n, rows).expect("row length p³"))
}

pub fn cube_from_coords(p: usize, v: &[Rational]) -> Cube {
    let mut c = zero_cube(p);
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                c[x][y][z] = v[cube_index(p, x, y, z)].clone();
            }
        }
    }
    c
}

pub fn cube_coords(c: &Cube) -> Vector {
    c.iter().flat_map(|a| a.iter().flat_map(|b| b.iter().cloned())).collect()
}

/// The 17 equations of the full system, each as a named check.
pub fn check_full_system(gs: &SymplecticLie, d: &ExtensionData) -> CheckReport {
    let c = Ctx::new(gs, d);
    let c = &c;
    let p = d.p;
    let m = gs.dim();
    let (f, g, th, ps, xi) = (&d.f, &d.g, &d.theta, &d.psi, &d.xi);
    let checks: Vec<Check> = vec![
        ("E1.omega-cube", Box::new(move || omega_condition(&d.omega))),
        (
            "E2.psi-theta-skew",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    let skew = vec_sub(&th[x][y], &th[y][x]);
                    let mut v = vec_sub(&ps[x][y], &ps[y][x]);
                    axpy(&mut v, &-half(), &skew);
                    v
                })
            }),
        ),
        ("E3.theta-xi-psi", Box::new(move || theta_xi_psi(c))),
        ("E4.omega-theta-xi-psi", Box::new(move || omega_theta_xi_psi(c))),
        (
            "E5.F-G-theta",
            Box::new(move || {
                scan_dims(&[p, p, p], |t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    let v = vec_sub(&f[x].apply(&th[y][z]), &f[y].apply(&th[x][z]));
                    vec_sub(&v, &g[z].apply(&th[x][y]))
                })
            }),
        ),
        ("E6.Fstar-psi-K-theta", Box::new(move || fstar_psi_k_theta(c))),
        (
            "E7.Fstar-xi-Gstar-psi-Kstar-theta",
            Box::new(move || {
                scan_dims(&[p, p, p], |t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    let v = vec_sub(&c.fa[x].apply(&xi[y][z]), &c.ga[y].apply(&ps[x][z]));
                    vec_sub(&v, &c.ka[z].apply(&th[x][y]))
                })
            }),
        ),
        ("E8.S-xi", Box::new(move || s_xi(c))),
        (
            "E9.Fstar-Gstar-S",
            Box::new(move || scan_dims(&[p], |t| flat(&c.fa[t[0]].add(&c.ga[t[0]]).add(&c.s[t[0]])))),
        ),
        ("E10.K-S", Box::new(move || scan_dims(&[p, p], |t| flat(&c.k[t[1]].dot(&c.s[t[0]]))))),
        ("E11.G-S", Box::new(move || scan_dims(&[p, p], |t| flat(&g[t[1]].dot(&c.s[t[0]]))))),
        (
            "E12.Rstar-psi",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    flat(&gs.r_star(&ps[x][y]).add(&c.k[y].dot(&f[x])).add(&c.fa[x].dot(&c.k[y])))
                })
            }),
        ),
        (
            "E13.Rstar-xi",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    flat(&gs.r_star(&xi[x][y]).add(&c.ka[y].dot(&g[x])).add(&c.ga[x].dot(&c.k[y])))
                })
            }),
        ),
        ("E14a.ad-theta-bracket-FF", Box::new(move || ad_theta_bracket(c))),
        (
            "E14b.ad-theta-bracket-FG",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    flat(&gs.ad(&th[x][y]).add(&f[x].bracket(&g[y])))
                })
            }),
        ),
        (
            "E15.ad-S",
            Box::new(move || scan_dims(&[p, m], |t| flat(&gs.ad(&c.s[t[0]].apply(&c.e(t[1])))))),
        ),
        (
            "E16.K-star-derivation",
            Box::new(move || {
                scan_dims(&[p, m, m], |t| {
                    let (x, a, b) = (t[0], c.e(t[1]), c.e(t[2]));
                    let k = &c.k[x];
                    let v = vec_sub(&k.apply(&gs.bracket(&a, &b)), &gs.star_mul(&a, &k.apply(&b)));
                    vec_add(&v, &gs.star_mul(&b, &k.apply(&a)))
                })
            }),
        ),
    ];
    run(checks)
}

fn theta_xi_psi(c: &Ctx) -> IdentityReport {
    let p = c.d.p;
    let (th, ps, xi) = (&c.d.theta, &c.d.psi, &c.d.xi);
    scan_dims(&[p, p], |t| {
        let (x, y) = (t[0], t[1]);
        let mut v = vec_sub(&th[x][y], &xi[y][x]);
        axpy(&mut v, &-half(), &ps[x][y]);
        axpy(&mut v, &half(), &xi[x][y]);
        v
    })
}

fn omega_theta_xi_psi(c: &Ctx) -> IdentityReport {
    let p = c.d.p;
    let (th, ps, xi) = (&c.d.theta, &c.d.psi, &c.d.xi);
    let om = |a: &Vector, b: &Vector| c.gs.omega(a, b);
    scan_dims(&[p, p, p, p], |t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        vec![om(&th[x][y], &xi[z][w]) - om(&th[y][z], &ps[x][w]) + om(&th[x][z], &ps[y][w])]
    })
}

fn fstar_psi_k_theta(c: &Ctx) -> IdentityReport {
    let p = c.d.p;
    let (th, ps) = (&c.d.theta, &c.d.psi);
    scan_dims(&[p, p, p], |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let v = vec_sub(&c.fa[x].apply(&ps[y][z]), &c.fa[y].apply(&ps[x][z]));
        vec_add(&v, &c.k[z].apply(&th[x][y]))
    })
}

fn s_xi(c: &Ctx) -> IdentityReport {
    let p = c.d.p;
    scan_dims(&[p, p, p], |t| c.s[t[0]].apply(&c.d.xi[t[1]][t[2]]))
}

fn ad_theta_bracket(c: &Ctx) -> IdentityReport {
    let p = c.d.p;
    let f = &c.d.f;
    scan_dims(&[p, p], |t| {
        let (x, y) = (t[0], t[1]);
        flat(&c.gs.ad(&c.d.theta[x][y]).sub(&f[x].bracket(&f[y])))
    })
}

/// The reduced system, each equation as a named check.
pub fn check_reduced_system(gs: &SymplecticLie, d: &ExtensionData) -> CheckReport {
    let c = Ctx::new(gs, d);
    let c = &c;
    let p = d.p;
    let m = gs.dim();
    let (f, th, ps, xi) = (&d.f, &d.theta, &d.psi, &d.xi);
    let checks: Vec<Check> = vec![
        ("R1.omega-cube", Box::new(move || omega_condition(&d.omega))),
        (
            "R2.psi-xi-skew",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    let v = vec_sub(&ps[x][y], &ps[y][x]);
                    vec_add(&vec_sub(&v, &xi[y][x]), &xi[x][y])
                })
            }),
        ),
        ("R3.theta-xi-psi", Box::new(move || theta_xi_psi(c))),
        ("R4.omega-theta-xi-psi", Box::new(move || omega_theta_xi_psi(c))),
        (
            "R5.F-theta-S",
            Box::new(move || {
                scan_dims(&[p, p, p], |t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    let v = vec_sub(&f[x].apply(&th[y][z]), &f[y].apply(&th[x][z]));
                    let v = vec_add(&v, &f[z].apply(&th[x][y]));
                    vec_sub(&v, &c.s[z].apply(&th[x][y]))
                })
            }),
        ),
        ("R6.Fstar-psi-K-theta", Box::new(move || fstar_psi_k_theta(c))),
        (
            "R7.Fstar-psi-xi-S",
            Box::new(move || {
                scan_dims(&[p, p, p], |t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    let v = c.fa[x].apply(&vec_add(&ps[y][z], &xi[y][z]));
                    let v = vec_add(&v, &c.s[y].apply(&ps[x][z]));
                    vec_add(&v, &c.s[z].apply(&th[x][y]))
                })
            }),
        ),
        ("R8.ad-theta-bracket", Box::new(move || ad_theta_bracket(c))),
        (
            "R9.Rstar-psi",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    let fy = f[y].add(&c.fa[y]);
                    let rhs = fy.dot(&f[x]).add(&c.fa[x].dot(&fy));
                    flat(&gs.r_star(&ps[x][y]).sub(&rhs))
                })
            }),
        ),
        (
            "R10.Rstar-psi-xi",
            Box::new(move || scan_dims(&[p, p], |t| flat(&gs.r_star(&vec_add(&ps[t[0]][t[1]], &xi[t[0]][t[1]]))))),
        ),
        (
            "R11a.S-star",
            Box::new(move || {
                scan_dims(&[p, m, m], |t| c.s[t[0]].apply(&gs.star_mul(&c.e(t[1]), &c.e(t[2]))))
            }),
        ),
        ("R11b.S-skew", Box::new(move || scan_dims(&[p], |t| flat(&c.sa[t[0]].add(&c.s[t[0]]))))),
        ("R11c.S-xi", Box::new(move || s_xi(c))),
        ("R11d.S-S", Box::new(move || scan_dims(&[p, p], |t| flat(&c.s[t[0]].dot(&c.s[t[1]]))))),
        ("R11e.F-S", Box::new(move || scan_dims(&[p, p], |t| flat(&f[t[0]].dot(&c.s[t[1]]))))),
        ("R11f.S-F", Box::new(move || scan_dims(&[p, p], |t| flat(&c.s[t[0]].dot(&f[t[1]]))))),
    ];
    run(checks)
}

/// Consequences of the reduced system: `θ(X,Y)+θ(Y,X) = ψ(X,Y)+ξ(X,Y)` lies in
/// `Z(𝔤)`, and `S(X)S(Y) = F(X)S(Y) = S(Y)F(X) = 0`.
pub fn derived_identities(gs: &SymplecticLie, d: &ExtensionData) -> CheckReport {
    let p = d.p;
    let s: Vec<Matrix> = (0..p).map(|x| d.s(x)).collect();
    let center = gs.g.center();
    let sym = |x: usize, y: usize| vec_add(&d.theta[x][y], &d.theta[y][x]);
    let mut r = CheckReport::new();
    r.push(
        "P1.theta-sym-psi-xi",
        scan_dims(&[p, p], |t| vec_sub(&sym(t[0], t[1]), &vec_add(&d.psi[t[0]][t[1]], &d.xi[t[0]][t[1]]))),
    );
    r.push("P2.theta-sym-central", scan_dims(&[p, p], |t| center.reduce(&sym(t[0], t[1]))));
    r.push("P3.S-S", scan_dims(&[p, p], |t| flat(&s[t[0]].dot(&s[t[1]]))));
    r.push("P4.F-S", scan_dims(&[p, p], |t| flat(&d.f[t[0]].dot(&s[t[1]]))));
    r.push("P5.S-F", scan_dims(&[p, p], |t| flat(&s[t[1]].dot(&d.f[t[0]]))));
    r
}

/// `(D+D*)[a,b] = a⋆(D+D*)b − b⋆(D+D*)a` on all basis pairs, for a derivation `D`.
pub fn derivation_star_identity(gs: &SymplecticLie, dm: &Matrix) -> IdentityReport {
    let m = gs.dim();
    let e = |a| unit_vec(m, a);
    let k = dm.add(&gs.adjoint(dm));
    scan_dims(&[m, m], |t| {
        let (a, b) = (e(t[0]), e(t[1]));
        let v = vec_sub(&k.apply(&gs.bracket(&a, &b)), &gs.star_mul(&a, &k.apply(&b)));
        vec_add(&v, &gs.star_mul(&b, &k.apply(&a)))
    })
}

/// Layout of `𝔥 ⊕ 𝔤 ⊕ 𝔥*`.
#[derive(Clone, Copy, Debug)]
struct Blocks {
    p: usize,
    m: usize,
}

impl Blocks {
    fn n(&self) -> usize {
        2 * self.p + self.m
    }

    fn h(&self, i: usize) -> usize {
        i
    }

    fn g(&self, a: usize) -> usize {
        self.p + a
    }

    fn dual(&self, k: usize) -> usize {
        self.p + self.m + k
    }

    /// Embeds `a ∈ 𝔤` plus `Σ_k coef_k α_k`.
    fn embed(&self, a: &[Rational], coef: impl Fn(usize) -> Rational) -> Vector {
        let mut v = zero_vec(self.n());
        for (i, x) in a.iter().enumerate() {
            v[self.g(i)] = x.clone();
        }
        for k in 0..self.p {
            v[self.dual(k)] = coef(k);
        }
        v
    }

    /// `ω_n(X+a+α, Y+b+β) = ⟨α,Y⟩ − ⟨β,X⟩ + ω_𝔤(a,b)`.
    fn form(&self, gform: &SkewForm) -> SkewForm {
        let n = self.n();
        let mut w = Matrix::zeros(n, n);
        for k in 0..self.p {
            w.set(self.h(k), self.dual(k), -Rational::one());
            w.set(self.dual(k), self.h(k), Rational::one());
        }
        for a in 0..self.m {
            for b in 0..self.m {
                w.set(self.g(a), self.g(b), gform.entry(a, b).clone());
            }
        }
        SkewForm::new(w).expect("block form is skew")
    }

    fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = (1..=self.p).map(|i| format!("X{i}")).collect();
        l.extend((1..=self.m).map(|a| format!("g{a}")));
        l.extend((1..=self.p).map(|k| format!("X{k}*")));
        l
    }
}

fn require(rep: &CheckReport) -> Result<()> {
    match rep.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::Precondition(format!("{} {}", c.name, c.report.describe()))),
    }
}

fn verify_left(a: &Algebra, w: &SkewForm) -> Result<()> {
    let ll = a.is_left_leibniz();
    if !ll.holds() {
        return Err(Error::CoreAssertion(format!("built product is not left Leibniz: {}", ll.describe())));
    }
    let sl = is_symplectic_left(a, w);
    if !sl.holds() {
        return Err(Error::CoreAssertion(format!("built pair is not symplectic: {}", sl.describe())));
    }
    Ok(())
}

/// The Leibniz product of the double extension and `ω_n`; the data must pass the
/// reduced system and the result is verified before returning.
pub fn build_double_extension(gs: &SymplecticLie, d: &ExtensionData) -> Result<(Algebra, SkewForm)> {
    require(&check_reduced_system(gs, d))?;
    let (a, w) = double_extension_unchecked(gs, d);
    verify_left(&a, &w)?;
    Ok((a, w))
}

/// The product table read off the data, without any verification.
pub fn double_extension_unchecked(gs: &SymplecticLie, d: &ExtensionData) -> (Algebra, SkewForm) {
    let (p, m) = (d.p, gs.dim());
    let bl = Blocks { p, m };
    let k: Vec<Matrix> = (0..p).map(|x| d.k(gs, x)).collect();
    let e = |a| unit_vec(m, a);
    let mut out = Algebra::zero(bl.n());
    for i in 0..p {
        for j in 0..p {
            out.set_product(bl.h(i), bl.h(j), bl.embed(&d.theta[i][j], |s| d.omega[i][j][s].clone()));
        }
    }
    for a in 0..m {
        for b in 0..m {
            let br = gs.bracket(&e(a), &e(b));
            out.set_product(bl.g(a), bl.g(b), bl.embed(&br, |s| gs.omega(&k[s].apply(&e(a)), &e(b))));
        }
    }
    for i in 0..p {
        for a in 0..m {
            let fa = d.f[i].apply(&e(a));
            out.set_product(bl.h(i), bl.g(a), bl.embed(&fa, |s| gs.omega(&d.psi[i][s], &e(a))));
            let ga = d.g[i].apply(&e(a));
            out.set_product(bl.g(a), bl.h(i), bl.embed(&ga, |s| gs.omega(&d.xi[i][s], &e(a))));
        }
    }
    (out.with_labels(bl.labels()), bl.form(&gs.form))
}

/// The left-symmetric product associated with the double extension, assembled
/// directly from the data.
pub fn build_left_symmetric(gs: &SymplecticLie, d: &ExtensionData) -> Result<Algebra> {
    require(&check_reduced_system(gs, d))?;
    let (p, m) = (d.p, gs.dim());
    let bl = Blocks { p, m };
    let k: Vec<Matrix> = (0..p).map(|x| d.k(gs, x)).collect();
    let e = |a| unit_vec(m, a);
    let mut out = Algebra::zero(bl.n());
    for i in 0..p {
        for j in 0..p {
            out.set_product(bl.h(i), bl.h(j), bl.embed(&d.psi[i][j], |s| d.omega[i][s][j].clone()));
        }
    }
    for a in 0..m {
        for b in 0..m {
            let st = gs.star_mul(&e(a), &e(b));
            out.set_product(bl.g(a), bl.g(b), bl.embed(&st, |s| gs.omega(&d.g[s].apply(&e(a)), &e(b))));
        }
    }
    for i in 0..p {
        let fstar = gs.adjoint(&d.f[i]);
        for a in 0..m {
            let xa = fstar.apply(&e(a)).into_iter().map(|v| -v).collect::<Vector>();
            out.set_product(bl.h(i), bl.g(a), bl.embed(&xa, |s| gs.omega(&d.theta[i][s], &e(a))));
            let ax = k[i].apply(&e(a));
            out.set_product(bl.g(a), bl.h(i), bl.embed(&ax, |s| gs.omega(&d.xi[s][i], &e(a))));
        }
    }
    let out = out.with_labels(bl.labels());
    let ls = out.is_left_symmetric();
    if !ls.holds() {
        return Err(Error::CoreAssertion(format!("assembled star is not left symmetric: {}", ls.describe())));
    }
    Ok(out)
}

/// Output of [`build_lagrangian`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianBuild {
    pub algebra: Algebra,
    pub form: SkewForm,
    pub star: Algebra,
    /// `Ω = 0`: the product vanishes and `Leib = {0}`.
    pub vacuous: bool,
    /// Whether `Leib(𝒜)` is Lagrangian for the built pair.
    pub leib_lagrangian: bool,
}

/// `(X+α)∘(Y+β) = Ω(X)(Y,·)` on `𝔥 ⊕ 𝔥*`.
pub fn build_lagrangian(p: usize, omega: &Cube) -> Result<LagrangianBuild> {
    check_cube(omega, p)?;
    let oc = omega_condition(omega);
    if !oc.holds() {
        return Err(Error::Precondition(format!("omega condition {}", oc.describe())));
    }
    let gs = SymplecticLie::trivial();
    let mut d = ExtensionData::zero(&gs, p);
    d.omega = omega.clone();
    let (algebra, form) = build_double_extension(&gs, &d)?;
    let star = star_left(&algebra, &form)?;
    let bl = Blocks { p, m: 0 };
    for i in 0..p {
        for j in 0..p {
            let expect = bl.embed(&[], |k| omega[i][k][j].clone());
            if star.product(bl.h(i), bl.h(j)) != expect.as_slice() {
                return Err(Error::CoreAssertion("star differs from Ω(X)(·,Y)".into()));
            }
        }
    }
    let vacuous = omega.iter().flatten().flatten().all(Zero::is_zero);
    let leib_lagrangian = crate::symplectic::is_lagrangian(&form, &algebra.leibniz_ideal());
    Ok(LagrangianBuild { algebra, form, star, vacuous, leib_lagrangian })
}

/// The system for a core with trivial center: `G = −F`, `ξ = −ψ`, `K = −F−F*`.
pub fn check_isotropic_system(
    gs: &SymplecticLie,
    f: &[Matrix],
    psi: &Table,
    theta: &Table,
    omega: &Cube,
) -> Result<CheckReport> {
    if !gs.g.center().is_zero() {
        return Err(Error::Precondition("g has nonzero center".into()));
    }
    let p = f.len();
    let m = gs.dim();
    check_derivations(gs, "F", f)?;
    check_table("psi", psi, p, m)?;
    check_table("theta", theta, p, m)?;
    check_cube(omega, p)?;
    let fa: Vec<Matrix> = f.iter().map(|x| gs.adjoint(x)).collect();
    let k: Vec<Matrix> = f.iter().zip(&fa).map(|(x, xa)| x.add(xa).neg()).collect();
    let (fa, k) = (&fa, &k);
    let om = |a: &Vector, b: &Vector| gs.omega(a, b);
    let checks: Vec<Check> = vec![
        ("I1.omega-cube", Box::new(move || omega_condition(omega))),
        (
            "I2.theta-psi-skew",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    vec_add(&vec_sub(&theta[t[0]][t[1]], &psi[t[0]][t[1]]), &psi[t[1]][t[0]])
                })
            }),
        ),
        (
            "I3.theta-psi-cyclic",
            Box::new(move || {
                scan_dims(&[p, p, p, p], |t| {
                    let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
                    vec![
                        om(&theta[x][y], &psi[z][w]) + om(&theta[y][z], &psi[x][w]) + om(&theta[z][x], &psi[y][w]),
                    ]
                })
            }),
        ),
        (
            "I4.Fstar-psi-K-theta",
            Box::new(move || {
                scan_dims(&[p, p, p], |t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    let v = vec_sub(&fa[x].apply(&psi[y][z]), &fa[y].apply(&psi[x][z]));
                    vec_add(&v, &k[z].apply(&theta[x][y]))
                })
            }),
        ),
        (
            "I5.Rstar-psi",
            Box::new(move || {
                scan_dims(&[p, p], |t| {
                    let (x, y) = (t[0], t[1]);
                    flat(&gs.r_star(&psi[x][y]).add(&k[y].dot(&f[x])).add(&fa[x].dot(&k[y])))
                })
            }),
        ),
        (
            "I6.ad-theta-bracket",
            Box::new(move || {
                scan_dims(&[p, p], |t| flat(&gs.ad(&theta[t[0]][t[1]]).sub(&f[t[0]].bracket(&f[t[1]]))))
            }),
        ),
    ];
    Ok(run(checks))
}

/// Extension data for the isotropic case, `G = −F`, `ξ = −ψ`.
pub fn isotropic_data(gs: &SymplecticLie, f: Vec<Matrix>, psi: Table, theta: Table, omega: Cube) -> Result<ExtensionData> {
    let g = f.iter().map(Matrix::neg).collect();
    let xi = psi.iter().map(|r| r.iter().map(|v| v.iter().map(|x| -x).collect()).collect()).collect();
    ExtensionData::new(gs, f, g, theta, psi, xi, omega)
}

/// Extension over a core whose derivations are all inner, in the coordinates
/// shifted by `H : 𝔥 → 𝔤` (rows of `h` are `H(X_i)`). Returns the product and `ω_H`.
pub fn build_inner_extension(gs: &SymplecticLie, h: &Matrix, psi: &Table, omega: &Cube) -> Result<(Algebra, SkewForm)> {
    let m = gs.dim();
    let p = h.rows();
    if h.cols() != m {
        return Err(LinError::DimensionMismatch { expected: m, found: h.cols() }.into());
    }
    check_table("psi", psi, p, m)?;
    check_cube(omega, p)?;
    let mut problems = Vec::new();
    let center = gs.g.center();
    if !center.is_zero() {
        problems.push("g has nonzero center".to_string());
    }
    if gs.g.derivations().len() != m - center.dim() {
        problems.push("g has outer derivations".to_string());
    }
    if let Some((x, y)) = (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).find(|&(x, y)| psi[x][y] != psi[y][x]) {
        problems.push(format!("psi is not symmetric at (X{}, X{})", x + 1, y + 1));
    }
    if let Some((x, y)) =
        (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).find(|&(x, y)| !gs.r_star(&psi[x][y]).is_zero())
    {
        problems.push(format!("R*_psi(X{}, X{}) is nonzero", x + 1, y + 1));
    }
    let oc = omega_condition(omega);
    if !oc.holds() {
        problems.push(format!("omega condition {}", oc.describe()));
    }
    if !problems.is_empty() {
        return Err(Error::Precondition(problems.join("; ")));
    }
    let bl = Blocks { p, m };
    let e = |a| unit_vec(m, a);
    let mut out = Algebra::zero(bl.n());
    for i in 0..p {
        for j in 0..p {
            out.set_product(bl.h(i), bl.h(j), bl.embed(&zero_vec(m), |k| omega[i][j][k].clone()));
        }
        for a in 0..m {
            let v = bl.embed(&zero_vec(m), |k| gs.omega(&psi[i][k], &e(a)));
            out.set_product(bl.g(a), bl.h(i), v.iter().map(|x| -x).collect());
            out.set_product(bl.h(i), bl.g(a), v);
        }
    }
    for a in 0..m {
        for b in 0..m {
            let br = gs.bracket(&e(a), &e(b));
            out.set_product(bl.g(a), bl.g(b), bl.embed(&br, |k| gs.omega(&br, h.row(k))));
        }
    }
    let n = bl.n();
    let shifted = |u: &[Rational]| -> Vector {
        let mut v = u.to_vec();
        for i in 0..p {
            for a in 0..m {
                v[bl.g(a)] -= &u[bl.h(i)] * h.get(i, a);
            }
        }
        v
    };
    let wn = bl.form(&gs.form);
    let mut w = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            w.set(r, c, wn.eval(&shifted(&unit_vec(n, r)), &shifted(&unit_vec(n, c))));
        }
    }
    let form = SkewForm::new(w)?;
    let out = out.with_labels(bl.labels());
    verify_left(&out, &form)?;
    Ok((out, form))
}

/// Data of an extension by a one-dimensional `𝔥 = Ke`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneData {
    pub f: Matrix,
    pub s: Matrix,
    pub a0: Vector,
    pub b0: Vector,
    pub lambda: Rational,
}

impl RankOneData {
    pub fn zero(m: usize) -> Self {
        RankOneData {
            f: Matrix::zeros(m, m),
            s: Matrix::zeros(m, m),
            a0: zero_vec(m),
            b0: zero_vec(m),
            lambda: Rational::zero(),
        }
    }

    /// `c₀ = ½(a₀ + b₀)`.
    pub fn c0(&self) -> Vector {
        vec_add(&self.a0, &self.b0).iter().map(|x| x * half()).collect()
    }

    /// `F(e) = F`, `G(e) = S − F`, `θ = c₀`, `ψ = a₀`, `ξ = b₀`, `Ω = λ`.
    pub fn to_extension_data(&self, gs: &SymplecticLie) -> Result<ExtensionData> {
        ExtensionData::new(
            gs,
            vec![self.f.clone()],
            vec![self.s.sub(&self.f)],
            vec![vec![self.c0()]],
            vec![vec![self.a0.clone()]],
            vec![vec![self.b0.clone()]],
            vec![vec![vec![self.lambda.clone()]]],
        )
    }
}

fn derivation_report(gs: &SymplecticLie, d: &Matrix) -> IdentityReport {
    match gs.g.derivation_defect(d) {
        None => IdentityReport::pass(),
        Some((i, j, v)) => IdentityReport::witness(vec![i, j], v),
    }
}

/// The rank-one system, plus the derivation property of `F` and `S`.
pub fn check_rank_one(gs: &SymplecticLie, r: &RankOneData) -> Result<CheckReport> {
    let m = gs.dim();
    for (name, mat) in [("F", &r.f), ("S", &r.s)] {
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::Precondition(format!("{name} must be {m}x{m}")));
        }
    }
    for (name, v) in [("a0", &r.a0), ("b0", &r.b0)] {
        if v.len() != m {
            return Err(Error::Precondition(format!("{name} must have length {m}")));
        }
    }
    let c0 = r.c0();
    let fa = gs.adjoint(&r.f);
    let sa = gs.adjoint(&r.s);
    let (f, s) = (&r.f, &r.s);
    let e = |a| unit_vec(m, a);
    let mut rep = CheckReport::new();
    rep.push("H1.omega-a0-b0", scan_dims(&[1], |_| vec![gs.omega(&r.a0, &r.b0)]));
    rep.push("H2.S-a0", scan_dims(&[1], |_| s.apply(&r.a0)));
    rep.push("H3.S-b0", scan_dims(&[1], |_| s.apply(&r.b0)));
    rep.push("H4.F-c0", scan_dims(&[1], |_| f.apply(&c0)));
    rep.push("H5.Fstar-c0", scan_dims(&[1], |_| fa.apply(&c0)));
    rep.push("H6.ad-c0", scan_dims(&[1], |_| flat(&gs.ad(&c0))));
    rep.push("H7.Rstar-c0", scan_dims(&[1], |_| flat(&gs.r_star(&c0))));
    let ffa = f.add(&fa);
    rep.push(
        "H8.Rstar-a0",
        scan_dims(&[1], |_| flat(&gs.r_star(&r.a0).sub(&ffa.dot(f).add(&fa.dot(&ffa))))),
    );
    rep.push("H9.S-star", scan_dims(&[m, m], |t| s.apply(&gs.star_mul(&e(t[0]), &e(t[1])))));
    rep.push("H10.S-skew", scan_dims(&[1], |_| flat(&sa.add(s))));
    rep.push("H11.S-S", scan_dims(&[1], |_| flat(&s.dot(s))));
    rep.push("H12.F-S", scan_dims(&[1], |_| flat(&f.dot(s))));
    rep.push("H13.S-F", scan_dims(&[1], |_| flat(&s.dot(f))));
    rep.push("H14.F-derivation", derivation_report(gs, f));
    rep.push("H15.S-derivation", derivation_report(gs, s));
    Ok(rep)
}

/// Output of [`build_rank_one`], basis `(e, 𝔤, e*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneBuild {
    pub algebra: Algebra,
    pub form: SkewForm,
    pub star: Algebra,
}

pub fn build_rank_one(gs: &SymplecticLie, r: &RankOneData) -> Result<RankOneBuild> {
    require(&check_rank_one(gs, r)?)?;
    let d = r.to_extension_data(gs)?;
    let (algebra, form) = build_double_extension(gs, &d)?;
    let star = build_left_symmetric(gs, &d)?;
    if star != star_left(&algebra, &form)? {
        return Err(Error::CoreAssertion("assembled star differs from the star of the built pair".into()));
    }
    let labels = {
        let mut l = vec!["e".to_string()];
        l.extend((1..=gs.dim()).map(|a| format!("g{a}")));
        l.push("e*".into());
        l
    };
    Ok(RankOneBuild {
        algebra: algebra.with_labels(labels.clone()),
        form,
        star: star.with_labels(labels),
    })
}

fn t_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

fn symmetric_tensor_report(n: usize, t: &[Rational]) -> IdentityReport {
    scan_dims(&[n, n, n], |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let v = &t[t_index(n, i, j, k)];
        vec![v - &t[t_index(n, j, i, k)], v - &t[t_index(n, i, k, j)]]
    })
}

/// `ρ(u, v)` from `ω(ρ(u,v), w) = T(u,v,w)`, added to the bracket of `𝔤`.
/// `t` is indexed `(i·n + j)·n + k`.
pub fn build_bisymplectic_from_t(gs: &SymplecticLie, ideal: &Subspace, t: &[Rational]) -> Result<Algebra> {
    let n = gs.dim();
    if t.len() != n * n * n || ideal.ambient_dim() != n {
        return Err(LinError::DimensionMismatch { expected: n * n * n, found: t.len() }.into());
    }
    let mut problems = Vec::new();
    if !ideal.is_subspace_of(&gs.g.center()) {
        problems.push("I is not central".to_string());
    }
    if !crate::symplectic::is_isotropic(&gs.form, ideal) {
        problems.push("I is not isotropic".to_string());
    }
    let sym = symmetric_tensor_report(n, t);
    if !sym.holds() {
        problems.push(format!("T is not symmetric: {}", sym.describe()));
    }
    let iperp = crate::symplectic::orthogonal(&gs.form, ideal);
    let tval = |u: &[Rational], v: &[Rational], w: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &t[t_index(n, i, j, k)];
                    if !c.is_zero() {
                        acc += c * &u[i] * &v[j] * &w[k];
                    }
                }
            }
        }
        acc
    };
    let e = |a| unit_vec(n, a);
    let perp = iperp.basis_vecs();
    let on_perp = scan_dims(&[n, n, perp.len()], |x| vec![tval(&e(x[0]), &e(x[1]), &perp[x[2]])]);
    if !on_perp.holds() {
        problems.push("T does not vanish on I-perp".to_string());
    }
    if !problems.is_empty() {
        return Err(Error::Precondition(problems.join("; ")));
    }
    let wt = gs.form.matrix().transpose();
    let mut out = gs.g.clone();
    for i in 0..n {
        for j in 0..n {
            let rhs: Vector = (0..n).map(|k| t[t_index(n, i, j, k)].clone()).collect();
            let rho = solve_unique(&wt, &rhs).ok_or(Error::DegenerateForm)?;
            if !ideal.contains(&rho) {
                return Err(Error::CoreAssertion("rho leaves I".into()));
            }
            out.add_product(i, j, &rho);
        }
    }
    let sl = out.is_symmetric_leibniz();
    if !sl.holds() {
        return Err(Error::CoreAssertion(format!("result is not symmetric Leibniz: {}", sl.describe())));
    }
    let bs = is_bi_symplectic(&out, &gs.form);
    if !bs.holds() {
        return Err(Error::CoreAssertion(format!("result is not bi-symplectic: {}", bs.describe())));
    }
    Ok(out)
}

/// Output of [`build_commutative_bisymplectic`], basis `(𝔥, B, 𝔥*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeBuild {
    pub algebra: Algebra,
    pub form: SkewForm,
    pub star: Algebra,
}

/// `X∘Y ∈ 𝔥*` with `⟨X∘Y, Z⟩ = T(X,Y,Z)`; every other product vanishes.
pub fn build_commutative_bisymplectic(h_dim: usize, b_form: &SkewForm, t: &[Rational]) -> Result<CommutativeBuild> {
    let p = h_dim;
    if t.len() != p * p * p {
        return Err(LinError::DimensionMismatch { expected: p * p * p, found: t.len() }.into());
    }
    if !b_form.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let sym = symmetric_tensor_report(p, t);
    if !sym.holds() {
        return Err(Error::Precondition(format!("T is not symmetric: {}", sym.describe())));
    }
    let bl = Blocks { p, m: b_form.dim() };
    let mut out = Algebra::zero(bl.n());
    for i in 0..p {
        for j in 0..p {
            out.set_product(bl.h(i), bl.h(j), bl.embed(&zero_vec(bl.m), |k| t[t_index(p, i, j, k)].clone()));
        }
    }
    let form = bl.form(b_form);
    let algebra = out.with_labels(bl.labels());
    for rep in [algebra.is_commutative(), algebra.is_symmetric_leibniz(), is_bi_symplectic(&algebra, &form)] {
        if !rep.holds() {
            return Err(Error::CoreAssertion(rep.describe()));
        }
    }
    let star = star_left(&algebra, &form)?;
    Ok(CommutativeBuild { algebra, form, star })
}
