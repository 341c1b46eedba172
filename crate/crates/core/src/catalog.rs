//! Parameterized families of symplectic Leibniz algebras with their claimed
//! properties, plus seeded random verification.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Algebra, IdentityReport};
use crate::error::{Error, Result};
use crate::exactlin::{q, zero_vec, Matrix, Rational, Vector};
use crate::extension::{
    build_double_extension, build_rank_one, cube_from_coords, isotropic_data, omega_condition_space, Cube,
    ExtensionData, RankOneData, SymplecticLie, Table,
};
use crate::symplectic::{is_bi_symplectic, is_symplectic_left, is_symplectic_right, SkewForm};

/// Parameter assignment, keyed by the family's parameter names.
pub type Params = BTreeMap<String, Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    LeftLeibniz,
    RightLeibniz,
    SymmetricLeibniz,
    LeftSymplectic,
    RightSymplectic,
    BiSymplectic,
    NonLie,
    Lie,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::LeftLeibniz,
        Claim::RightLeibniz,
        Claim::SymmetricLeibniz,
        Claim::LeftSymplectic,
        Claim::RightSymplectic,
        Claim::BiSymplectic,
        Claim::NonLie,
        Claim::Lie,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::LeftLeibniz => "left-leibniz",
            Claim::RightLeibniz => "right-leibniz",
            Claim::SymmetricLeibniz => "symmetric-leibniz",
            Claim::LeftSymplectic => "left-symplectic",
            Claim::RightSymplectic => "right-symplectic",
            Claim::BiSymplectic => "bi-symplectic",
            Claim::NonLie => "non-lie",
            Claim::Lie => "lie",
        }
    }

    pub fn evaluate(self, a: &Algebra, w: &SkewForm) -> IdentityReport {
        match self {
            Claim::LeftLeibniz => a.is_left_leibniz(),
            Claim::RightLeibniz => a.is_right_leibniz(),
            Claim::SymmetricLeibniz => a.is_symmetric_leibniz(),
            Claim::LeftSymplectic => is_symplectic_left(a, w),
            Claim::RightSymplectic => is_symplectic_right(a, w),
            Claim::BiSymplectic => is_bi_symplectic(a, w),
            Claim::Lie => a.is_lie(),
            Claim::NonLie => {
                if a.is_lie().holds() {
                    IdentityReport::witness(vec![], vec![])
                } else {
                    IdentityReport::pass()
                }
            }
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Claim::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// The polynomial must vanish.
    Zero,
    /// The polynomial must not vanish.
    NonZero,
}

#[derive(Clone)]
pub struct Constraint {
    pub label: &'static str,
    pub kind: ConstraintKind,
    eval: fn(&Params) -> Rational,
}

impl Constraint {
    pub fn holds(&self, p: &Params) -> bool {
        let v = (self.eval)(p);
        match self.kind {
            ConstraintKind::Zero => v.is_zero(),
            ConstraintKind::NonZero => !v.is_zero(),
        }
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

type Builder = fn(&Params) -> Result<(Algebra, SkewForm)>;
type Branch = fn(&mut Params, &mut ChaCha8Rng);

#[derive(Clone)]
pub struct FamilySpec {
    pub id: &'static str,
    pub description: &'static str,
    pub param_names: &'static [&'static str],
    pub defaults: &'static [i64],
    pub constraints: Vec<Constraint>,
    pub claims: &'static [Claim],
    builder: Builder,
    branch: Option<Branch>,
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilySpec")
            .field("id", &self.id)
            .field("param_names", &self.param_names)
            .field("constraints", &self.constraints)
            .field("claims", &self.claims)
            .finish()
    }
}

impl FamilySpec {
    pub fn default_params(&self) -> Params {
        self.param_names.iter().zip(self.defaults).map(|(n, v)| (n.to_string(), q(*v))).collect()
    }

    /// Checks names and constraints.
    pub fn validate(&self, p: &Params) -> Result<()> {
        if let Some(k) = p.keys().find(|k| !self.param_names.contains(&k.as_str())) {
            return Err(Error::UnknownParam(k.clone()));
        }
        if let Some(n) = self.param_names.iter().find(|n| !p.contains_key(**n)) {
            return Err(Error::MissingParam(n.to_string()));
        }
        match self.constraints.iter().find(|c| !c.holds(p)) {
            Some(c) => Err(Error::ConstraintViolated(c.label.to_string())),
            None => Ok(()),
        }
    }

    pub fn instantiate(&self, p: &Params) -> Result<(Algebra, SkewForm)> {
        self.validate(p)?;
        (self.builder)(p)
    }

    /// Integer parameters in `[−6, 6]`, redrawn until every constraint holds.
    pub fn sample_params(&self, rng: &mut ChaCha8Rng) -> Params {
        loop {
            let mut p: Params = self.param_names.iter().map(|n| (n.to_string(), q(rng.gen_range(-6..=6)))).collect();
            if let Some(b) = self.branch {
                b(&mut p, rng);
            }
            if self.constraints.iter().all(|c| c.holds(&p)) {
                return p;
            }
        }
    }
}

fn v(p: &Params, k: &str) -> Rational {
    p[k].clone()
}

fn nz(label: &'static str, eval: fn(&Params) -> Rational) -> Constraint {
    Constraint { label, kind: ConstraintKind::NonZero, eval }
}

fn eqz(label: &'static str, eval: fn(&Params) -> Rational) -> Constraint {
    Constraint { label, kind: ConstraintKind::Zero, eval }
}

fn x_nonzero() -> Constraint {
    nz("x != 0", |p| v(p, "x"))
}

fn aa_nonzero() -> Constraint {
    nz("aa != 0", |p| v(p, "aa"))
}

fn rr3_constraints() -> Vec<Constraint> {
    vec![eqz("z*x = 0", |p| v(p, "z") * v(p, "x")), eqz("z*s = 0", |p| v(p, "z") * v(p, "s"))]
}

/// Either `z = 0` or `x = s = 0`, chosen at random.
fn rr3_branch(p: &mut Params, rng: &mut ChaCha8Rng) {
    if rng.gen_bool(0.5) {
        p.insert("z".into(), Rational::zero());
    } else {
        p.insert("x".into(), Rational::zero());
        p.insert("s".into(), Rational::zero());
    }
}

fn sign_branch(p: &mut Params, rng: &mut ChaCha8Rng) {
    p.insert("sign".into(), q(if rng.gen_bool(0.5) { 1 } else { -1 }));
}

type Entry = (usize, usize, Vec<(usize, Rational)>);

/// 1-based product table.
fn table(n: usize, entries: Vec<Entry>) -> Algebra {
    let mut a = Algebra::zero(n);
    for (i, j, terms) in entries {
        let mut out = zero_vec(n);
        for (k, c) in terms {
            out[k - 1] += c;
        }
        a.add_product(i - 1, j - 1, &out);
    }
    a
}

/// 1-based `Σ c eⁱ∧eʲ`.
fn form(n: usize, entries: &[(usize, usize, Rational)]) -> Result<SkewForm> {
    let e: Vec<_> = entries.iter().map(|(i, j, c)| (i - 1, j - 1, c.clone())).collect();
    SkewForm::from_entries(n, &e)
}

fn one() -> Rational {
    Rational::one()
}

fn std4_14_23() -> Result<SkewForm> {
    form(4, &[(1, 4, one()), (2, 3, one())])
}

fn std4_12_34() -> Result<SkewForm> {
    form(4, &[(1, 2, one()), (3, 4, one())])
}

fn heis_12() -> Vec<Entry> {
    vec![(1, 2, vec![(2, one())]), (2, 1, vec![(2, -one())])]
}

/// `rr_{3,−1}`: `[e1,e2] = e2`, `[e1,e3] = −e3`, `ω = e¹⁴ + e²³`.
pub fn rr3_lie() -> SymplecticLie {
    let g = Algebra::from_table(4, &[(1, 2, &[(2, 1)]), (2, 1, &[(2, -1)]), (1, 3, &[(3, -1)]), (3, 1, &[(3, 1)])]);
    SymplecticLie::new(g, SkewForm::from_pairs(4, &[(1, 4, 1), (2, 3, 1)])).expect("rr3 is symplectic")
}

/// `[e, f] = λe`, `ω = e¹²`.
pub fn nonabelian2(lambda: &Rational) -> Result<SymplecticLie> {
    let g = table(2, vec![(1, 2, vec![(1, lambda.clone())]), (2, 1, vec![(1, -lambda.clone())])]);
    SymplecticLie::new(g, SkewForm::from_pairs(2, &[(1, 2, 1)]))
}

fn abelian2() -> SymplecticLie {
    SymplecticLie::new(Algebra::zero(2), SkewForm::from_pairs(2, &[(1, 2, 1)])).expect("abelian plane")
}

const OM: [&str; 6] = ["om1", "om2", "om3", "om4", "om5", "om6"];

/// `Ω` from coordinates on the canonical basis of the `p = 2` solution space.
fn omega_from(p: &Params) -> Cube {
    let basis = omega_condition_space(2).basis_vecs();
    let mut coords = zero_vec(8);
    for (name, b) in OM.iter().zip(&basis) {
        crate::exactlin::axpy(&mut coords, &v(p, name), b);
    }
    cube_from_coords(2, &coords)
}

fn mat2(a: Rational, b: Rational, c: Rational, d: Rational) -> Matrix {
    Matrix::from_rows(2, vec![vec![a, b], vec![c, d]]).expect("2x2")
}

fn core2_data(p: &Params) -> Result<(SymplecticLie, ExtensionData)> {
    let l = v(p, "lambda");
    let gs = nonabelian2(&l)?;
    let al = [v(p, "alpha1"), v(p, "alpha2")];
    let be = [v(p, "beta1"), v(p, "beta2")];
    let mu = [[v(p, "mu11"), v(p, "mu12")], [v(p, "mu12"), v(p, "mu22")]];
    let z = Rational::zero;
    let f = (0..2).map(|i| mat2(al[i].clone(), be[i].clone(), z(), z())).collect();
    let wedge = |i: usize, j: usize| &al[i] * &be[j] - &al[j] * &be[i];
    let theta: Table = (0..2).map(|i| (0..2).map(|j| vec![wedge(i, j) / &l, z()]).collect()).collect();
    let psi: Table = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| vec![wedge(i, j) / (q(2) * &l) + &mu[i][j], &al[i] * &al[j] / &l])
                .collect()
        })
        .collect();
    let d = isotropic_data(&gs, f, psi, theta, omega_from(p))?;
    Ok((gs, d))
}

fn abel2_case1_data(p: &Params) -> Result<(SymplecticLie, ExtensionData)> {
    let gs = abelian2();
    let z = Rational::zero;
    let al = [v(p, "alpha1"), v(p, "alpha2")];
    let be = [v(p, "beta1"), v(p, "beta2")];
    let f: Vec<Matrix> = (0..2).map(|i| mat2(z(), be[i].clone(), z(), z())).collect();
    let s: Vec<Matrix> = (0..2).map(|i| mat2(z(), al[i].clone(), z(), z())).collect();
    let g = (0..2).map(|i| s[i].sub(&f[i])).collect();
    let xi1 = [[v(p, "xi11"), v(p, "xi12")], [v(p, "xi21"), v(p, "xi22")]];
    let sym = [[v(p, "sym11"), v(p, "sym12")], [v(p, "sym12"), v(p, "sym22")]];
    let psi1 = |i: usize, j: usize| &sym[i][j] - &xi1[i][j];
    let h = crate::exactlin::qf(1, 2);
    let th1 = |i: usize, j: usize| &xi1[j][i] + &h * psi1(i, j) - &h * &xi1[i][j];
    let lift = |f: &dyn Fn(usize, usize) -> Rational| -> Table {
        (0..2).map(|i| (0..2).map(|j| vec![f(i, j), z()]).collect()).collect()
    };
    let theta = lift(&th1);
    let psi = lift(&psi1);
    let xi = lift(&|i, j| xi1[i][j].clone());
    let d = ExtensionData::new(&gs, f, g, theta, psi, xi, omega_from(p))?;
    Ok((gs, d))
}

fn abel2_case2_data(p: &Params) -> Result<(SymplecticLie, ExtensionData)> {
    let gs = abelian2();
    let a1 = v(p, "alpha1");
    let a = mat2(v(p, "a11"), v(p, "a12"), v(p, "a21"), -v(p, "a11"));
    let f = vec![a.scale(&a1), Matrix::zeros(2, 2)];
    let z2 = || zero_vec(2);
    let psi: Table =
        vec![vec![vec![v(p, "v11_1"), v(p, "v11_2")], vec![v(p, "v12_1"), v(p, "v12_2")]], vec![z2(), z2()]];
    let theta: Table = (0..2)
        .map(|i| (0..2).map(|j| crate::exactlin::vec_sub(&psi[i][j], &psi[j][i])).collect())
        .collect();
    let d = isotropic_data(&gs, f, psi, theta, omega_from(p))?;
    Ok((gs, d))
}

/// The rank-one solution family over `rr_{3,−1}`.
pub fn rr3_rank_one(p: &Params) -> RankOneData {
    let (b, b1, b2, b3) = (v(p, "b"), v(p, "b1"), v(p, "b2"), v(p, "b3"));
    let mut f = Matrix::zeros(4, 4);
    f.set(1, 0, b1.clone());
    f.set(2, 0, b2.clone());
    f.set(3, 0, b3);
    f.set(1, 1, -b.clone());
    f.set(2, 2, b.clone());
    let mut s = Matrix::zeros(4, 4);
    s.set(3, 0, v(p, "s"));
    let a0: Vector = vec![v(p, "z"), &b1 * &b, &b2 * &b, v(p, "y")];
    let x2 = q(2) * v(p, "x");
    let b0 = vec![-a0[0].clone(), -a0[1].clone(), -a0[2].clone(), x2 - &a0[3]];
    RankOneData { f, s, a0, b0, lambda: v(p, "lambda") }
}

/// Relabels basis vector `i` as `perm[i]`.
pub fn permute(a: &Algebra, w: &SkewForm, perm: &[usize]) -> Result<(Algebra, SkewForm)> {
    let n = a.dim();
    let mut out = Algebra::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut vv = zero_vec(n);
            for (k, c) in a.product(i, j).iter().enumerate() {
                vv[perm[k]] = c.clone();
            }
            out.set_product(perm[i], perm[j], vv);
        }
    }
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(perm[i], perm[j], w.entry(i, j).clone());
        }
    }
    Ok((out, SkewForm::new(m)?))
}

/// Built order `(e, g1..g4, e*)` to the printed order `e1..e4, e5 = e, e6 = e*`.
pub const RR3_DISPLAY_ORDER: [usize; 6] = [4, 0, 1, 2, 3, 5];

fn via_extension(f: fn(&Params) -> Result<(SymplecticLie, ExtensionData)>, p: &Params) -> Result<(Algebra, SkewForm)> {
    let (gs, d) = f(p)?;
    build_double_extension(&gs, &d)
}

fn rr3_b0_common(p: &Params) -> Vec<Entry> {
    let (s, x, z, l) = (v(p, "s"), v(p, "x"), v(p, "z"), v(p, "lambda"));
    let yy = v(p, "y") + q(2) * v(p, "b2") * v(p, "b1");
    let b3 = v(p, "b3");
    let mut e = heis_12();
    e.extend([
        (1, 3, vec![(3, -one())]),
        (3, 1, vec![(3, one())]),
        (1, 1, vec![(6, -s.clone() / q(2))]),
        (5, 5, vec![(4, x.clone()), (6, l)]),
        (5, 4, vec![(6, z.clone())]),
        (4, 5, vec![(6, -z)]),
        (5, 1, vec![(4, b3.clone()), (6, -yy.clone())]),
        (1, 5, vec![(4, s - b3), (6, yy - q(2) * x)]),
    ]);
    e
}

const LEFT: &[Claim] = &[Claim::LeftLeibniz, Claim::LeftSymplectic];
const BS: &[Claim] = &[Claim::SymmetricLeibniz, Claim::BiSymplectic];
const BS_NL: &[Claim] = &[Claim::SymmetricLeibniz, Claim::BiSymplectic, Claim::NonLie];

fn bs4(
    id: &'static str,
    description: &'static str,
    param_names: &'static [&'static str],
    defaults: &'static [i64],
    constraints: Vec<Constraint>,
    builder: Builder,
) -> FamilySpec {
    let claims = if constraints.is_empty() { BS } else { BS_NL };
    FamilySpec { id, description, param_names, defaults, constraints, claims, builder, branch: None }
}

/// Every family, in stable order.
pub fn families() -> Vec<FamilySpec> {
    let mut out = vec![
        FamilySpec {
            id: "DIM2_NONLIE",
            description: "e2∘e2 = x e1, ω = e12",
            param_names: &["x"],
            defaults: &[1],
            constraints: vec![x_nonzero()],
            claims: &[
                Claim::LeftLeibniz,
                Claim::RightLeibniz,
                Claim::SymmetricLeibniz,
                Claim::LeftSymplectic,
                Claim::RightSymplectic,
                Claim::BiSymplectic,
                Claim::NonLie,
            ],
            builder: |p| Ok((table(2, vec![(2, 2, vec![(1, v(p, "x"))])]), form(2, &[(1, 2, one())])?)),
            branch: None,
        },
        FamilySpec {
            id: "R4_LEFT",
            description: "left Leibniz on R^4 with ω = e14 + e23",
            param_names: &[],
            defaults: &[],
            constraints: vec![],
            claims: &[Claim::LeftLeibniz, Claim::LeftSymplectic, Claim::NonLie],
            builder: |_| {
                let a = Algebra::from_table(
                    4,
                    &[(1, 1, &[(4, 1)]), (1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (2, 1, &[(3, -1)]), (3, 1, &[(4, -1)])],
                );
                Ok((a, std4_14_23()?))
            },
            branch: None,
        },
        bs4("BS4_A", "abelian, ω = e13 + e24", &["x", "y", "z", "t"], &[1, 2, 3, 4], vec![], |p| {
            let (x, y, z, t) = (v(p, "x"), v(p, "y"), v(p, "z"), v(p, "t"));
            let a = table(
                4,
                vec![
                    (1, 1, vec![(3, x), (4, y.clone())]),
                    (1, 2, vec![(3, y.clone()), (4, z.clone())]),
                    (2, 1, vec![(3, y), (4, z.clone())]),
                    (2, 2, vec![(3, z), (4, t)]),
                ],
            );
            Ok((a, form(4, &[(1, 3, one()), (2, 4, one())])?))
        }),
        bs4("BS4_B", "abelian, ω = e14 + e23", &["x"], &[1], vec![x_nonzero()], |p| {
            Ok((table(4, vec![(1, 1, vec![(4, v(p, "x"))])]), std4_14_23()?))
        }),
        bs4("BS4_C", "Heisenberg, ω = e14 + e23", &["x", "y", "z", "t"], &[1, 2, 3, 4], vec![], |p| {
            let (x, y, z, t) = (v(p, "x"), v(p, "y"), v(p, "z"), v(p, "t"));
            let a = table(
                4,
                vec![
                    (1, 2, vec![(3, one() + &z), (4, y.clone())]),
                    (2, 1, vec![(3, &z - one()), (4, y.clone())]),
                    (1, 1, vec![(3, y), (4, x)]),
                    (2, 2, vec![(3, t), (4, z)]),
                ],
            );
            Ok((a, std4_14_23()?))
        }),
        bs4("BS4_D", "Heisenberg, ω = e14 + e23", &["x"], &[1], vec![x_nonzero()], |p| {
            let a = table(
                4,
                vec![(1, 2, vec![(3, one())]), (2, 1, vec![(3, -one())]), (2, 2, vec![(3, v(p, "x"))])],
            );
            Ok((a, std4_14_23()?))
        }),
        bs4("BS4_E", "Heisenberg, ω = e14 + e23", &["x", "aa"], &[1, 1], vec![x_nonzero(), aa_nonzero()], |p| {
            let (x, a) = (v(p, "x"), v(p, "aa"));
            let xa = &x / &a;
            let t = table(
                4,
                vec![
                    (1, 2, vec![(3, one() + &xa), (4, x.clone())]),
                    (2, 1, vec![(3, &xa - one()), (4, x.clone())]),
                    (1, 1, vec![(3, x.clone()), (4, &a * &x)]),
                    (2, 2, vec![(3, &xa / &a), (4, xa)]),
                ],
            );
            Ok((t, std4_14_23()?))
        }),
        bs4("BS4_F", "Heisenberg, ω = e14 + e23", &["x"], &[1], vec![x_nonzero()], |p| {
            let a = table(
                4,
                vec![(1, 2, vec![(3, one())]), (2, 1, vec![(3, -one())]), (1, 1, vec![(4, v(p, "x"))])],
            );
            Ok((a, std4_14_23()?))
        }),
        bs4("BS4_G", "Heisenberg, ω = e14 + e23", &["x", "aa"], &[1, 1], vec![x_nonzero(), aa_nonzero()], |p| {
            let (x, a) = (v(p, "x"), v(p, "aa"));
            let xa = &x / &a;
            let t = table(
                4,
                vec![
                    (1, 2, vec![(3, one() + &x), (4, xa.clone())]),
                    (2, 1, vec![(3, &x - one()), (4, xa.clone())]),
                    (1, 1, vec![(3, xa.clone()), (4, &xa / &a)]),
                    (2, 2, vec![(3, &a * &x), (4, x)]),
                ],
            );
            Ok((t, std4_14_23()?))
        }),
        bs4("BS4_H", "aff(1) ⊕ K^2, ω = e12 + e34", &["x"], &[1], vec![x_nonzero()], |p| {
            let mut e = heis_12();
            e.push((4, 4, vec![(3, v(p, "x"))]));
            Ok((table(4, e), std4_12_34()?))
        }),
        bs4("BS4_I", "aff(1) ⊕ K^2, ω = e12 + e34", &["x", "aa"], &[1, 1], vec![x_nonzero(), aa_nonzero()], |p| {
            let (x, a) = (v(p, "x"), v(p, "aa"));
            let xa = &x / &a;
            let mut e = heis_12();
            e.extend([
                (3, 3, vec![(3, x.clone()), (4, -(&a * &x))]),
                (3, 4, vec![(3, xa.clone()), (4, -x.clone())]),
                (4, 3, vec![(3, xa.clone()), (4, -x.clone())]),
                (4, 4, vec![(3, &xa / &a), (4, -xa)]),
            ]);
            Ok((table(4, e), std4_12_34()?))
        }),
        bs4("BS4_J", "aff(1) ⊕ K^2, ω = e12 + e34", &["x"], &[1], vec![x_nonzero()], |p| {
            let mut e = heis_12();
            e.push((3, 3, vec![(4, v(p, "x"))]));
            Ok((table(4, e), std4_12_34()?))
        }),
        bs4("BS4_K", "aff(1) ⊕ K^2, ω = e12 + e34", &["x", "aa"], &[1, 1], vec![x_nonzero(), aa_nonzero()], |p| {
            let (x, a) = (v(p, "x"), v(p, "aa"));
            let ax = &a * &x;
            let mut e = heis_12();
            e.extend([
                (3, 3, vec![(3, x.clone()), (4, -(&x / &a))]),
                (3, 4, vec![(3, ax.clone()), (4, -x.clone())]),
                (4, 3, vec![(3, ax.clone()), (4, -x.clone())]),
                (4, 4, vec![(3, &a * &ax), (4, -ax)]),
            ]);
            Ok((table(4, e), std4_12_34()?))
        }),
        bs4("BS4_L", "ω = e14 + e23", &["x"], &[1], vec![x_nonzero()], |p| {
            let mut e = heis_12();
            e.extend([(1, 3, vec![(3, -one())]), (3, 1, vec![(3, one())]), (1, 1, vec![(4, v(p, "x"))])]);
            Ok((table(4, e), std4_14_23()?))
        }),
        FamilySpec {
            id: "BS4_M",
            description: "ω = e14 + sign·e23, sign = ±1",
            param_names: &["x", "sign"],
            defaults: &[1, 1],
            constraints: vec![x_nonzero(), eqz("sign^2 = 1", |p| v(p, "sign") * v(p, "sign") - one())],
            claims: BS_NL,
            builder: |p| {
                let a = table(
                    4,
                    vec![
                        (4, 1, vec![(1, one())]),
                        (1, 4, vec![(1, -one())]),
                        (4, 3, vec![(2, one())]),
                        (3, 4, vec![(2, -one())]),
                        (3, 3, vec![(2, v(p, "x"))]),
                    ],
                );
                Ok((a, form(4, &[(1, 4, one()), (2, 3, v(p, "sign"))])?))
            },
            branch: Some(sign_branch),
        },
        bs4("BS4_N", "ω = e12 + e34", &["x"], &[1], vec![x_nonzero()], |p| {
            let a = table(
                4,
                vec![
                    (4, 1, vec![(2, one())]),
                    (1, 4, vec![(2, -one())]),
                    (4, 2, vec![(3, one())]),
                    (2, 4, vec![(3, -one())]),
                    (4, 4, vec![(3, v(p, "x"))]),
                ],
            );
            Ok((a, std4_12_34()?))
        }),
        FamilySpec {
            id: "LIE_RR3M1",
            description: "rr_{3,-1}: [e1,e2] = e2, [e1,e3] = -e3, ω = e14 + e23",
            param_names: &[],
            defaults: &[],
            constraints: vec![],
            claims: &[Claim::Lie, Claim::LeftSymplectic],
            builder: |_| {
                let gs = rr3_lie();
                Ok((gs.algebra().clone(), gs.form().clone()))
            },
            branch: None,
        },
        FamilySpec {
            id: "CORE2_NONABELIAN",
            description: "extension of [e,f] = λe by a 2-dim h; basis (X1, X2, e, f, X1*, X2*)",
            param_names: &[
                "lambda", "alpha1", "alpha2", "beta1", "beta2", "mu11", "mu12", "mu22", "om1", "om2", "om3", "om4",
                "om5", "om6",
            ],
            defaults: &[1, 1, 2, -1, 3, 1, 0, 2, 1, 0, -1, 2, 0, 1],
            constraints: vec![nz("lambda != 0", |p| v(p, "lambda"))],
            claims: LEFT,
            builder: |p| via_extension(core2_data, p),
            branch: None,
        },
        FamilySpec {
            id: "ABEL2_CASE1",
            description: "extension of the abelian plane with S(X) = [[0,α(X)],[0,0]], α ≠ 0",
            param_names: &[
                "alpha1", "alpha2", "beta1", "beta2", "xi11", "xi12", "xi21", "xi22", "sym11", "sym12", "sym22", "om1",
                "om2", "om3", "om4", "om5", "om6",
            ],
            defaults: &[1, 2, -1, 1, 1, 0, 2, -1, 1, 1, 0, 1, 0, -1, 2, 0, 1],
            constraints: vec![nz("alpha != 0", |p| v(p, "alpha1") * v(p, "alpha1") + v(p, "alpha2") * v(p, "alpha2"))],
            claims: LEFT,
            builder: |p| via_extension(abel2_case1_data, p),
            branch: None,
        },
        FamilySpec {
            id: "ABEL2_CASE2",
            description: "extension of the abelian plane with S = 0 and F(X1) = alpha1·A invertible",
            param_names: &[
                "alpha1", "a11", "a12", "a21", "v11_1", "v11_2", "v12_1", "v12_2", "om1", "om2", "om3", "om4", "om5",
                "om6",
            ],
            defaults: &[1, 2, 3, 1, 1, -1, 2, 1, 1, 0, -1, 2, 0, 1],
            constraints: vec![nz("alpha1*det(A) != 0", |p| {
                let a11 = v(p, "a11");
                v(p, "alpha1") * (-(&a11 * &a11) - v(p, "a12") * v(p, "a21"))
            })],
            claims: LEFT,
            builder: |p| via_extension(abel2_case2_data, p),
            branch: None,
        },
        FamilySpec {
            id: "RR3_SIXDIM_RAW",
            description: "rank-one extension of rr_{3,-1}, ω = e14 + e23 - e56",
            param_names: &["b", "b1", "b2", "b3", "s", "x", "y", "z", "lambda"],
            defaults: &[1, 2, -1, 3, 2, 1, 1, 0, 1],
            constraints: rr3_constraints(),
            claims: LEFT,
            builder: |p| {
                let b = build_rank_one(&rr3_lie(), &rr3_rank_one(p))?;
                permute(&b.algebra, &b.form, &RR3_DISPLAY_ORDER)
            },
            branch: Some(rr3_branch),
        },
        FamilySpec {
            id: "RR3_SIXDIM_B0",
            description: "b = 0 normal form, ω = e14 + e23 - e56 + 2b2 e25 + 2b1 e35",
            param_names: &["b1", "b2", "b3", "s", "x", "y", "z", "lambda"],
            defaults: &[0, 0, 3, 2, 1, 1, 0, 1],
            constraints: rr3_constraints(),
            claims: LEFT,
            builder: |p| {
                let (b1, b2) = (v(p, "b1"), v(p, "b2"));
                let w = form(
                    6,
                    &[(1, 4, one()), (2, 3, one()), (5, 6, -one()), (2, 5, q(2) * b2), (3, 5, q(2) * b1)],
                )?;
                Ok((table(6, rr3_b0_common(p)), w))
            },
            branch: Some(rr3_branch),
        },
        FamilySpec {
            id: "RR3_SIXDIM_BNE0",
            description: "b != 0 normal form, ω = b2 e12 + b1 e13 + e14 + e23 - e56 + b2 e25 + b1 e35",
            param_names: &["b1", "b2", "b3", "s", "x", "y", "z", "lambda"],
            defaults: &[2, -1, 3, 2, 1, 1, 0, 1],
            constraints: rr3_constraints(),
            claims: LEFT,
            builder: |p| {
                let (b1, b2) = (v(p, "b1"), v(p, "b2"));
                let mut e = rr3_b0_common(p);
                e.extend([
                    (5, 2, vec![(2, -one())]),
                    (2, 5, vec![(2, one())]),
                    (5, 3, vec![(3, one())]),
                    (3, 5, vec![(3, -one())]),
                ]);
                let w = form(
                    6,
                    &[
                        (1, 2, b2.clone()),
                        (1, 3, b1.clone()),
                        (1, 4, one()),
                        (2, 3, one()),
                        (5, 6, -one()),
                        (2, 5, b2),
                        (3, 5, b1),
                    ],
                )?;
                Ok((table(6, e), w))
            },
            branch: Some(rr3_branch),
        },
    ];
    out.shrink_to_fit();
    out
}

pub fn list_families() -> Vec<&'static str> {
    families().into_iter().map(|f| f.id).collect()
}

pub fn family(id: &str) -> Result<FamilySpec> {
    families().into_iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

pub fn instantiate(id: &str, params: &Params) -> Result<(Algebra, SkewForm)> {
    family(id)?.instantiate(params)
}

/// Extension data behind the families presented as solutions of the system.
pub fn extension_data(id: &str, params: &Params) -> Result<Option<(SymplecticLie, ExtensionData)>> {
    let f = family(id)?;
    f.validate(params)?;
    let gen: fn(&Params) -> Result<(SymplecticLie, ExtensionData)> = match id {
        "CORE2_NONABELIAN" => core2_data,
        "ABEL2_CASE1" => abel2_case1_data,
        "ABEL2_CASE2" => abel2_case2_data,
        "RR3_SIXDIM_RAW" => |p| {
            let gs = rr3_lie();
            let d = rr3_rank_one(p).to_extension_data(&gs)?;
            Ok((gs, d))
        },
        _ => return Ok(None),
    };
    gen(params).map(Some)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claims: Vec<(Claim, IdentityReport)>,
}

impl ClaimReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|(_, r)| r.holds())
    }
}

pub fn verify_instance(spec: &FamilySpec, a: &Algebra, w: &SkewForm) -> ClaimReport {
    ClaimReport { claims: spec.claims.iter().map(|c| (*c, c.evaluate(a, w))).collect() }
}

/// Evaluates every claim of the family on one parameter assignment.
pub fn verify(id: &str, params: &Params) -> Result<ClaimReport> {
    let spec = family(id)?;
    let (a, w) = spec.instantiate(params)?;
    Ok(verify_instance(&spec, &a, &w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleResult {
    pub index: usize,
    pub params: Params,
    /// `Err` when the builder rejected the parameters.
    pub outcome: std::result::Result<ClaimReport, String>,
}

impl SampleResult {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(r) if r.all_pass())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRun {
    pub id: String,
    pub seed: u64,
    pub samples: Vec<SampleResult>,
}

impl VerificationRun {
    pub fn passed(&self) -> usize {
        self.samples.iter().filter(|s| s.passed()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.samples.len()
    }
}

/// Draws `count` parameter sets sequentially from the seed, then verifies them in parallel.
pub fn sample_verify(id: &str, seed: u64, count: usize) -> Result<VerificationRun> {
    let spec = family(id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<Params> = (0..count).map(|_| spec.sample_params(&mut rng)).collect();
    let samples = params
        .into_par_iter()
        .enumerate()
        .map(|(index, p)| {
            let outcome = spec.instantiate(&p).map(|(a, w)| verify_instance(&spec, &a, &w)).map_err(|e| e.to_string());
            SampleResult { index, params: p, outcome }
        })
        .collect();
    Ok(VerificationRun { id: id.to_string(), seed, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qv;
    use crate::extension::{check_full_system, check_reduced_system};

    fn params(kv: &[(&str, i64)]) -> Params {
        kv.iter().map(|(k, x)| (k.to_string(), q(*x))).collect()
    }

    #[test]
    fn ids() {
        let ids = list_families();
        assert_eq!(ids.len(), 23);
        assert_eq!(ids, list_families());
        for f in families() {
            assert_eq!(f.param_names.len(), f.defaults.len(), "{}", f.id);
            let (a, w) = f.instantiate(&f.default_params()).unwrap_or_else(|e| panic!("{}: {e}", f.id));
            assert_eq!(a.dim(), w.dim());
        }
    }

    #[test]
    fn dim2_and_bs4_a() {
        let (a, w) = instantiate("DIM2_NONLIE", &params(&[("x", 1)])).unwrap();
        assert_eq!(a.product(1, 1), qv(&[1, 0]).as_slice());
        assert_eq!(w, SkewForm::from_pairs(2, &[(1, 2, 1)]));
        let (a, w) = instantiate("BS4_A", &params(&[("x", 1), ("y", 2), ("z", 3), ("t", 4)])).unwrap();
        assert_eq!(a.product(0, 0), qv(&[0, 0, 1, 2]).as_slice());
        assert_eq!(a.product(0, 1), qv(&[0, 0, 2, 3]).as_slice());
        assert_eq!(a.product(1, 0), qv(&[0, 0, 2, 3]).as_slice());
        assert_eq!(a.product(1, 1), qv(&[0, 0, 3, 4]).as_slice());
        assert_eq!(w, SkewForm::from_pairs(4, &[(1, 3, 1), (2, 4, 1)]));
    }

    #[test]
    fn constraints() {
        assert!(matches!(instantiate("BS4_E", &params(&[("x", 1), ("aa", 0)])), Err(Error::ConstraintViolated(_))));
        assert!(matches!(instantiate("BS4_B", &params(&[])), Err(Error::MissingParam(_))));
        assert!(matches!(instantiate("BS4_B", &params(&[("x", 1), ("q", 1)])), Err(Error::UnknownParam(_))));
        assert!(matches!(instantiate("NOPE", &params(&[])), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn verify_examples() {
        let r = verify("BS4_D", &params(&[("x", 5)])).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.claims.len(), 3);
        assert!(verify("LIE_RR3M1", &Params::new()).unwrap().all_pass());
    }

    #[test]
    fn rr3_raw_has_z_term() {
        let p = params(&[("b", 2), ("b1", 1), ("b2", -1), ("b3", 3), ("s", 0), ("x", 0), ("y", 4), ("z", 1), ("lambda", 2)]);
        let (a, _) = instantiate("RR3_SIXDIM_RAW", &p).unwrap();
        assert_eq!(a.product(4, 3), qv(&[0, 0, 0, 0, 0, 1]).as_slice());
        assert_eq!(a.product(3, 4), qv(&[0, 0, 0, 0, 0, -1]).as_slice());
    }

    #[test]
    fn sampled_runs() {
        let r = sample_verify("BS4_A", 7, 20).unwrap();
        assert_eq!(r.samples.len(), 20);
        assert!(r.all_pass());
        assert_eq!(r, sample_verify("BS4_A", 7, 20).unwrap());
        assert!(sample_verify("BS4_A", 7, 0).unwrap().samples.is_empty());
        assert!(sample_verify("RR3_SIXDIM_RAW", 1, 20).unwrap().all_pass());
    }

    #[test]
    fn generators_pass_systems() {
        for id in ["CORE2_NONABELIAN", "ABEL2_CASE1", "ABEL2_CASE2", "RR3_SIXDIM_RAW"] {
            let f = family(id).unwrap();
            let (gs, d) = extension_data(id, &f.default_params()).unwrap().unwrap();
            assert!(check_reduced_system(&gs, &d).all_pass(), "{id}");
            assert!(check_full_system(&gs, &d).all_pass(), "{id}");
        }
    }
}
