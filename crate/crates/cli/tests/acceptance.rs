//! Acceptance suite: one line per criterion. All comparisons are exact.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process fails if any criterion deviates from its expected status.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sympleib::catalog::{self, nonabelian2, permute, rr3_lie, rr3_rank_one, Claim, Params, RR3_DISPLAY_ORDER};
use sympleib::exactlin::{q, unit_vec, vec_sub, zero_vec, Matrix, Rational, Vector};
use sympleib::extension::{
    build_double_extension, build_left_symmetric, build_rank_one, check_full_system, check_rank_one,
    check_reduced_system, cube_from_coords, derivation_star_identity, derived_identities,
    omega_condition_space, ExtensionData, SymplecticLie,
};
use sympleib::symplectic::{
    is_bi_symplectic, is_symplectic_left, is_symplectic_left_l2, is_symplectic_right, is_symplectic_right_r2,
    orthogonal, solve_symplectic_forms, star_left, Side,
};
use sympleib::{core, verify_core_properties, Algebra, SkewForm};
use sympleib_cli::files::{parse_algebra, AlgebraFile, ExtensionFile};

const TRIALS: usize = 200;

struct Line {
    id: &'static str,
    ok: bool,
    detail: String,
}

fn line(id: &'static str, ok: bool, detail: impl Into<String>) -> Line {
    Line { id, ok, detail: detail.into() }
}

fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), q(*v))).collect()
}

/// Sparse 1-based table with rational coefficients.
fn table(n: usize, rows: &[(usize, usize, Vec<(usize, Rational)>)]) -> Algebra {
    let mut a = Algebra::zero(n);
    for (i, j, terms) in rows {
        let mut v = zero_vec(n);
        for (k, c) in terms {
            v[k - 1] += c;
        }
        a.add_product(i - 1, j - 1, &v);
    }
    a
}

fn e(n: usize, i: usize) -> Vector {
    unit_vec(n, i - 1)
}

/// Draws parameters of a family with a fixed seed.
fn draws(id: &str, seed: u64, count: usize) -> Vec<Params> {
    let spec = catalog::family(id).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| spec.sample_params(&mut rng)).collect()
}

/// Seeded catalog instances, `per` for every family.
fn catalog_instances(seed: u64, per: usize) -> Vec<(&'static str, Params, Algebra, SkewForm)> {
    catalog::list_families()
        .into_iter()
        .flat_map(|id| {
            draws(id, seed, per).into_iter().map(move |p| {
                let (a, w) = catalog::instantiate(id, &p).unwrap();
                (id, p, a, w)
            })
        })
        .collect()
}

fn left_symplectic(a: &Algebra, w: &SkewForm) -> bool {
    a.is_left_leibniz().holds() && is_symplectic_left(a, w).holds()
}

// AC1

fn ac1() -> Vec<Line> {
    let (a, w) = catalog::instantiate("R4_LEFT", &Params::new()).unwrap();
    let expected_form = SkewForm::from_pairs(4, &[(1, 4, 1), (2, 3, 1)]);
    let mut bad = Vec::new();
    if w != expected_form {
        bad.push("catalog form is not e14+e23".to_string());
    }
    if !a.is_left_leibniz().holds() {
        bad.push("not left Leibniz".into());
    }
    if !is_symplectic_left(&a, &w).holds() {
        bad.push("(l1) fails".into());
    }
    if !solve_symplectic_forms(&a, Side::Left).contains(&w.upper_coords()) {
        bad.push("form not in solution space".into());
    }
    let st = star_left(&a, &w).unwrap();
    let neg = |v: Vector| v.into_iter().map(|x| -x).collect::<Vector>();
    for (i, j, want) in [(1, 2, e(4, 3)), (2, 2, neg(e(4, 4))), (3, 1, neg(e(4, 4)))] {
        if st.product(i - 1, j - 1) != want.as_slice() {
            bad.push(format!("e{i}*e{j} mismatch"));
        }
    }
    // Defining relation: ω(e1⋆e1, e_k) = −ω(e1, e1•e_k) for every k.
    let satisfies = |c: &[Rational]| {
        (1..=4).all(|k| w.eval(c, &e(4, k)) == -w.eval(&e(4, 1), a.product(0, k - 1)))
    };
    let e11 = st.product(0, 0).to_vec();
    let printed = vec_sub(&e(4, 3), &e(4, 2));
    let recomputed = vec_sub(&e(4, 4), &e(4, 2));
    if e11 != recomputed || !satisfies(&e11) {
        bad.push("recomputed e1*e1 does not satisfy the defining relation".into());
    }
    let discrepancy = !satisfies(&printed);
    let mut lines = vec![line(
        "AC1",
        bad.is_empty(),
        if bad.is_empty() { "R4: left Leibniz, (l1), in solution space, star entries exact".into() } else { bad.join("; ") },
    )];
    lines.push(line(
        "AC1.note",
        true,
        format!(
            "recomputed e1*e1 = -e2+e4; printed -e2+e3 {} the defining relation",
            if discrepancy { "violates" } else { "satisfies" }
        ),
    ));
    lines
}

// AC2

fn ac2() -> Vec<Line> {
    let mut bad = Vec::new();
    let e12 = SkewForm::from_pairs(2, &[(1, 2, 1)]);
    let xs: Vec<i64> = (-6..=6).filter(|x| *x != 0).collect();
    for &x in &xs {
        let (a, w) = catalog::instantiate("DIM2_NONLIE", &params(&[("x", x)])).unwrap();
        for side in [Side::Left, Side::Right, Side::Bi] {
            let s = solve_symplectic_forms(&a, side);
            if s.dim() != 1 || !s.contains(&e12.upper_coords()) {
                bad.push(format!("x={x} {side:?}: solution space dim {}", s.dim()));
            }
        }
        if !a.is_symmetric_leibniz().holds() || !is_bi_symplectic(&a, &w).holds() || a.is_lie().holds() {
            bad.push(format!("x={x}: claims fail"));
        }
    }
    let ok = bad.is_empty();
    vec![line(
        "AC2",
        ok,
        if ok { format!("dim 2: span{{e12}} on all sides, symmetric Leibniz, bi-symplectic for {} values of x", xs.len()) } else { bad.join("; ") },
    )]
}

// AC3

fn ac3() -> Vec<Line> {
    let ids: Vec<&str> = catalog::list_families().into_iter().filter(|id| id.starts_with("BS4_")).collect();
    let mut bad = Vec::new();
    let mut total = 0;
    let mut signs = std::collections::BTreeSet::new();
    for id in &ids {
        let count = if *id == "BS4_M" { 20 } else { 10 };
        let run = catalog::sample_verify(id, 3, count).unwrap();
        let spec = catalog::family(id).unwrap();
        if !(spec.claims.contains(&Claim::SymmetricLeibniz) && spec.claims.contains(&Claim::BiSymplectic)) {
            bad.push(format!("{id}: claims incomplete"));
        }
        if !spec.constraints.is_empty() && !spec.claims.contains(&Claim::NonLie) {
            bad.push(format!("{id}: non-lie claim missing"));
        }
        for s in &run.samples {
            if *id == "BS4_M" {
                signs.insert(s.params["sign"].to_string());
            }
            if !s.passed() {
                bad.push(format!("{id} sample {}", s.index));
            }
        }
        total += run.samples.len();
    }
    if ids.len() != 14 {
        bad.push(format!("{} families", ids.len()));
    }
    if signs.len() != 2 {
        bad.push("BS4_M: both signs not sampled".into());
    }
    let ok = bad.is_empty();
    vec![line(
        "AC3",
        ok,
        if ok { format!("{} families, {total} samples, both BS4_M signs, 0 failures", ids.len()) } else { bad.join("; ") },
    )]
}

// AC4

/// The first displayed six-dimensional table, 1-based.
fn printed_rr3_table(p: &Params) -> (Algebra, SkewForm) {
    let g = |k: &str| p[k].clone();
    let (b, b1, b2, b3, s, x, y, z, l) =
        (g("b"), g("b1"), g("b2"), g("b3"), g("s"), g("x"), g("y"), g("z"), g("lambda"));
    let a = table(
        6,
        &[
            (5, 1, vec![(2, b1.clone()), (3, b2.clone()), (4, b3.clone()), (6, -y.clone())]),
            (5, 2, vec![(2, -b.clone()), (6, -&b2 * &b)]),
            (5, 3, vec![(3, b.clone()), (6, &b1 * &b)]),
            (1, 5, vec![(2, -b1.clone()), (3, -b2.clone()), (4, &s - &b3), (6, &y - q(2) * &x)]),
            (2, 5, vec![(2, b.clone()), (6, &b2 * &b)]),
            (3, 5, vec![(3, -b.clone()), (6, -&b1 * &b)]),
            (5, 4, vec![(6, z.clone())]),
            (4, 5, vec![(6, -z)]),
            (1, 2, vec![(2, q(1)), (6, b2.clone())]),
            (2, 1, vec![(2, q(-1)), (6, -b2)]),
            (1, 3, vec![(3, q(-1)), (6, -b1.clone())]),
            (3, 1, vec![(3, q(1)), (6, b1)]),
            (1, 1, vec![(6, -s / q(2))]),
            (5, 5, vec![(4, x), (6, l)]),
        ],
    );
    (a, SkewForm::from_pairs(6, &[(1, 4, 1), (2, 3, 1), (5, 6, -1)]))
}

fn ac4() -> Vec<Line> {
    let samples = draws("RR3_SIXDIM_RAW", 4, 12);
    let gs = rr3_lie();
    let mut sub = Vec::new();

    let mut bad_a = Vec::new();
    let mut bad_b = Vec::new();
    let mut bad_c = Vec::new();
    for p in &samples {
        let r = rr3_rank_one(p);
        let d = r.to_extension_data(&gs).unwrap();
        if !check_rank_one(&gs, &r).unwrap().all_pass() || !check_reduced_system(&gs, &d).all_pass() {
            bad_a.push(format!("{p:?}"));
            continue;
        }
        let built = build_rank_one(&gs, &r).unwrap();
        let (a, w) = permute(&built.algebra, &built.form, &RR3_DISPLAY_ORDER).unwrap();
        let (ta, tw) = printed_rr3_table(p);
        for i in 0..6 {
            for j in 0..6 {
                if a.product(i, j) != ta.product(i, j) {
                    bad_b.push(format!("e{}e{}", i + 1, j + 1));
                }
            }
        }
        if w != tw {
            bad_b.push("form".into());
        }
        if !a.is_left_leibniz().holds() || !is_symplectic_left(&a, &tw).holds() {
            bad_c.push(format!("{p:?}"));
        }
    }
    let n = samples.len();
    sub.push(line("AC4.a", bad_a.is_empty(), format!("rank-one and reduced checks on {n} samples with zx=zs=0 {}", fails(&bad_a))));
    sub.push(line("AC4.b", bad_b.is_empty(), format!("built table equals printed table entry-for-entry {}", fails(&bad_b))));
    sub.push(line("AC4.c", bad_c.is_empty(), format!("left Leibniz and (l1) with e14+e23-e56 {}", fails(&bad_c))));

    let bne0 = catalog::sample_verify("RR3_SIXDIM_BNE0", 4, 12).unwrap();
    sub.push(line(
        "AC4.d",
        bne0.all_pass(),
        format!("RR3_SIXDIM_BNE0 {}/{} samples pass with the displayed form", bne0.passed(), bne0.samples.len()),
    ));

    // The displayed B0 form carries 2b2 e25 + 2b1 e35; checked as stated.
    let mut b0 = catalog::sample_verify("RR3_SIXDIM_B0", 4, 12).unwrap();
    // Samples without the cross terms, where the displayed form reduces to e14+e23-e56.
    for (k, mut p) in draws("RR3_SIXDIM_B0", 40, 3).into_iter().enumerate() {
        p.insert("b1".into(), q(0));
        p.insert("b2".into(), q(0));
        let outcome = catalog::verify("RR3_SIXDIM_B0", &p).map_err(|e| e.to_string());
        b0.samples.push(catalog::SampleResult { index: 12 + k, params: p, outcome });
    }
    let corrected = SkewForm::from_pairs(6, &[(1, 4, 1), (2, 3, 1), (5, 6, -1)]);
    let mut pattern_ok = true;
    let mut corrected_ok = true;
    let mut cross = 0;
    for s in &b0.samples {
        let has_cross = !(s.params["b1"] == q(0) && s.params["b2"] == q(0));
        cross += usize::from(has_cross);
        pattern_ok &= s.passed() != has_cross;
        let (a, _) = catalog::instantiate("RR3_SIXDIM_B0", &s.params).unwrap();
        corrected_ok &= left_symplectic(&a, &corrected);
    }
    sub.push(line(
        "AC4.e",
        b0.all_pass(),
        format!(
            "RR3_SIXDIM_B0 {}/{} samples pass with the displayed form; failures exactly at (b1,b2) != 0: {}; e14+e23-e56 passes on all: {}",
            b0.passed(),
            b0.samples.len(),
            pattern_ok && cross > 0,
            corrected_ok
        ),
    ));
    let b0_as_analysed = !b0.all_pass() && pattern_ok && cross > 0 && corrected_ok;
    let others = sub[..4].iter().all(|l| l.ok);
    let mut out = vec![line(
        "AC4",
        sub.iter().all(|l| l.ok),
        format!("sub-checks a-d pass: {others}; B0 displayed form fails as analysed: {b0_as_analysed}"),
    )];
    out.extend(sub);
    out
}

fn fails(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!("(failures: {})", v.join(", "))
    }
}

// AC5

fn ac5() -> Vec<Line> {
    let mut bad = Vec::new();
    let (a, w) = catalog::instantiate("R4_LEFT", &Params::new()).unwrap();
    let d = core(&a, &w).unwrap();
    if !(d.i_dim() == 1
        && d.g_dim() == 2
        && d.g.algebra.is_zero_product()
        && d.g.form.is_nondegenerate()
        && d.h_dim == 1)
    {
        bad.push(format!("R4: dim I {}, dim g {}, h_dim {}", d.i_dim(), d.g_dim(), d.h_dim));
    }

    let gs = rr3_lie();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut rank_one = 0;
    for _ in 0..20 {
        let mut p: Params = ["b", "b1", "b2", "b3", "y", "z"].iter().map(|k| (k.to_string(), q(rng.gen_range(-6..=6)))).collect();
        p.insert("x".into(), q(0));
        p.insert("s".into(), q(0));
        p.insert("lambda".into(), q([-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)]));
        let built = build_rank_one(&gs, &rr3_rank_one(&p)).unwrap();
        let d = core(&built.algebra, &built.form).unwrap();
        if d.i_dim() != 1 || d.g_dim() != 4 {
            bad.push(format!("rank-one {p:?}: dim I {}, dim g {}", d.i_dim(), d.g_dim()));
        }
        rank_one += 1;
    }

    let inst = catalog_instances(6, 10);
    let checked: Vec<Result<bool, String>> = inst
        .par_iter()
        .filter(|(_, _, a, w)| left_symplectic(a, w))
        .map(|(id, _, a, w)| {
            let d = core(a, w).map_err(|e| format!("{id}: {e}"))?;
            let r = verify_core_properties(a, w, &d).map_err(|e| format!("{id}: {e}"))?;
            if r.all_pass() {
                Ok(true)
            } else {
                Err(format!("{id}: {}", r.summary()))
            }
        })
        .collect();
    let count = checked.len();
    bad.extend(checked.into_iter().filter_map(|r| r.err()));
    let ok = bad.is_empty();
    vec![line(
        "AC5",
        ok,
        if ok {
            format!("R4 core (1,2,1); {rank_one} rank-one builds with dim I = 1, dim g = 4; properties (i)-(iv) on {count} catalog instances")
        } else {
            bad.join("; ")
        },
    )]
}

// AC6

fn ac6a() -> Line {
    let inst: Vec<_> = catalog_instances(61, 12).into_iter().filter(|(_, _, a, w)| left_symplectic(a, w)).take(TRIALS).collect();
    let bad: Vec<String> = inst
        .par_iter()
        .filter_map(|(id, _, a, w)| {
            let st = star_left(a, w).ok()?;
            let (br, _) = a.split();
            let comm_ok = (0..a.dim()).all(|i| (0..a.dim()).all(|j| vec_sub(st.product(i, j), st.product(j, i)) == br.product(i, j)));
            if st.is_left_symmetric().holds() && comm_ok {
                None
            } else {
                Some(id.to_string())
            }
        })
        .collect();
    let ok = bad.is_empty() && inst.len() == TRIALS;
    line("AC6.a", ok, format!("star left-symmetric with commutator = bracket part: {} trials {}", inst.len(), fails(&bad)))
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Algebra, SkewForm) {
    let n = if rng.gen_bool(0.5) { 3 } else { 4 };
    let t: Vec<Rational> = (0..n * n * n).map(|_| if rng.gen_ratio(1, 6) { q(rng.gen_range(-2..=2)) } else { q(0) }).collect();
    let a = Algebra::from_tensor(n, t).unwrap();
    let w: Vec<Rational> = (0..n * (n - 1) / 2).map(|_| q(rng.gen_range(-2..=2))).collect();
    (a, SkewForm::from_upper(n, &w).unwrap())
}

fn ac6b() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let mut pairs: Vec<(Algebra, SkewForm)> = (0..TRIALS / 2).map(|_| random_pair(&mut rng)).collect();
    pairs.extend(catalog_instances(62, 5).into_iter().map(|(_, _, a, w)| (a, w)).take(TRIALS / 2));
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(a, w)| {
            let l = is_symplectic_left(a, w).holds() == is_symplectic_left_l2(a, w).holds();
            let r = is_symplectic_right(a, w).holds() == is_symplectic_right_r2(a, w).holds();
            (l && r, is_symplectic_left(a, w).holds() || is_symplectic_right(a, w).holds())
        })
        .collect();
    let agree = results.iter().filter(|r| r.0).count();
    let positive = results.iter().filter(|r| r.1).count();
    line(
        "AC6.b",
        agree == pairs.len() && pairs.len() == TRIALS,
        format!("(l1)<=>(l2), (r1)<=>(r2): {agree}/{} agree ({positive} symplectic on some side)", pairs.len()),
    )
}

/// Every symplectic Lie algebra the catalog exposes.
fn catalog_lie_algebras() -> Vec<(String, SymplecticLie)> {
    let mut out = vec![("rr3".to_string(), rr3_lie())];
    for l in -4..=4 {
        out.push((format!("nonabelian2({l})"), nonabelian2(&q(l)).unwrap()));
    }
    for p in draws("LIE_RR3M1", 63, 3) {
        let (a, w) = catalog::instantiate("LIE_RR3M1", &p).unwrap();
        out.push(("LIE_RR3M1".into(), SymplecticLie::new(a, w).unwrap()));
    }
    for id in ["CORE2_NONABELIAN", "ABEL2_CASE1", "ABEL2_CASE2"] {
        for p in draws(id, 63, 3) {
            let (gs, _) = catalog::extension_data(id, &p).unwrap().unwrap();
            out.push((id.into(), gs));
        }
    }
    out
}

fn ac6c() -> Line {
    let algebras = catalog_lie_algebras();
    let mut bad = Vec::new();
    let mut basis = 0;
    let mut combos = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    for (name, gs) in &algebras {
        let ders = gs.algebra().derivations();
        for d in &ders {
            basis += 1;
            if !derivation_star_identity(gs, d).holds() {
                bad.push(name.clone());
            }
        }
    }
    // Random integer combinations of basis derivations.
    while combos < TRIALS {
        let (name, gs) = &algebras[rng.gen_range(0..algebras.len())];
        let ders = gs.algebra().derivations();
        let m = gs.dim();
        let mut d = Matrix::zeros(m, m);
        for b in &ders {
            d = d.add(&b.scale(&q(rng.gen_range(-3..=3))));
        }
        combos += 1;
        if !gs.algebra().is_derivation(&d) || !derivation_star_identity(gs, &d).holds() {
            bad.push(name.clone());
        }
    }
    line(
        "AC6.c",
        bad.is_empty(),
        format!("derivation star identity: {basis} basis derivations over {} algebras, {combos} random combinations {}", algebras.len(), fails(&bad)),
    )
}

/// Catalog extension data, random Lagrangian data and random rank-one data.
fn extension_trials() -> Vec<(String, SymplecticLie, ExtensionData)> {
    let mut out = Vec::new();
    for id in ["CORE2_NONABELIAN", "ABEL2_CASE1", "ABEL2_CASE2", "RR3_SIXDIM_RAW"] {
        for p in draws(id, 64, 15) {
            let (gs, d) = catalog::extension_data(id, &p).unwrap().unwrap();
            out.push((id.to_string(), gs, d));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let trivial = SymplecticLie::trivial();
    for k in 0..70 {
        let p = 1 + k % 3;
        let space = omega_condition_space(p);
        let mut coords = zero_vec(p * p * p);
        for b in space.basis_vecs() {
            let c = q(rng.gen_range(-3..=3));
            for (x, y) in coords.iter_mut().zip(&b) {
                *x += &c * y;
            }
        }
        // Every third cube is perturbed off the solution space.
        if k % 3 == 2 {
            let i = rng.gen_range(0..coords.len());
            coords[i] += q(1);
        }
        let mut d = ExtensionData::zero(&trivial, p);
        let cube = cube_from_coords(p, &coords);
        d = ExtensionData::new(&trivial, d.f().to_vec(), d.g().to_vec(), d.theta().clone(), d.psi().clone(), d.xi().clone(), cube)
            .unwrap();
        out.push((format!("lagrangian p={p}"), trivial.clone(), d));
    }
    let gs = rr3_lie();
    let names = ["b", "b1", "b2", "b3", "s", "x", "y", "z", "lambda"];
    while out.len() < TRIALS {
        let p: Params = names.iter().map(|n| (n.to_string(), q(rng.gen_range(-4..=4)))).collect();
        let d = rr3_rank_one(&p).to_extension_data(&gs).unwrap();
        out.push(("rank-one".into(), gs.clone(), d));
    }
    out
}

fn ac6de() -> Vec<Line> {
    let trials = extension_trials();
    let results: Vec<(String, bool, bool, Option<bool>, Option<bool>)> = trials
        .par_iter()
        .map(|(name, gs, d)| {
            let full = check_full_system(gs, d).all_pass();
            let reduced = check_reduced_system(gs, d).all_pass();
            let derived = full.then(|| derived_identities(gs, d).all_pass());
            let star = full.then(|| {
                let (a, w) = build_double_extension(gs, d).unwrap();
                build_left_symmetric(gs, d).unwrap() == star_left(&a, &w).unwrap()
            });
            (name.clone(), full, reduced, derived, star)
        })
        .collect();
    let valid = results.iter().filter(|r| r.1).count();
    let bad_d: Vec<String> = results.iter().filter(|r| r.1 != r.2 || r.3 == Some(false)).map(|r| r.0.clone()).collect();
    let bad_e: Vec<String> = results.iter().filter(|r| r.4 == Some(false)).map(|r| r.0.clone()).collect();
    let n = trials.len();
    vec![
        line(
            "AC6.d",
            bad_d.is_empty() && n >= TRIALS && valid > 0 && valid < n,
            format!("full <=> reduced on {n} data sets ({valid} valid), derived identities on all valid {}", fails(&bad_d)),
        ),
        line(
            "AC6.e",
            bad_e.is_empty() && valid > 0,
            format!("assembled star = star of built pair on {valid} valid data sets {}", fails(&bad_e)),
        ),
    ]
}

fn ac6() -> Vec<Line> {
    let mut sub = vec![ac6a(), ac6b(), ac6c()];
    sub.extend(ac6de());
    let ok = sub.iter().all(|l| l.ok);
    let mut out = vec![line("AC6", ok, "property suites (a)-(e)")];
    out.extend(sub);
    out
}

// AC7

fn ac7() -> Vec<Line> {
    let inst = catalog_instances(7, 12);
    let results: Vec<Option<Result<(), String>>> = inst
        .par_iter()
        .map(|(id, p, a, w)| {
            if !left_symplectic(a, w) || a.is_lie().holds() {
                return None;
            }
            let leib = a.leibniz_ideal();
            let meet = leib.intersect(&orthogonal(w, &leib)).unwrap();
            Some(if meet.is_zero() { Err(format!("{id} {p:?}")) } else { Ok(()) })
        })
        .collect();
    let checked = results.iter().flatten().count();
    let bad: Vec<String> = results.into_iter().flatten().filter_map(|r| r.err()).collect();
    vec![line(
        "AC7",
        bad.is_empty() && checked > 0,
        format!("Leib meets its orthogonal on {checked} non-Lie symplectic instances {}", fails(&bad)),
    )]
}

// AC8

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bin(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sympleib")).args(args).output().expect("spawn");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn ac8_round_trip(dir: &Path) -> Line {
    let inst = catalog_instances(8, 4);
    let mut bad = Vec::new();
    for (id, _, a, w) in &inst {
        let text = AlgebraFile::from_algebra(a, Some(w)).to_json();
        let (a2, w2) = parse_algebra(&text).unwrap().to_algebra().unwrap();
        let text2 = AlgebraFile::from_algebra(&a2, w2.as_ref()).to_json();
        if a2.tensor() != a.tensor() || w2.as_ref() != Some(w) || text2 != text {
            bad.push(id.to_string());
        }
    }
    // The binary's export is the same text.
    let mut cli = 0;
    for id in catalog::list_families() {
        let p = &draws(id, 8, 1)[0];
        let kv: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut args = vec!["catalog", "build", id];
        if !kv.is_empty() {
            args.push("--params");
            args.extend(kv.iter().map(String::as_str));
        }
        let r = bin(&args);
        let (a, w) = catalog::instantiate(id, p).unwrap();
        if r.code != 0 || r.stdout.trim_end() != AlgebraFile::from_algebra(&a, Some(&w)).to_json() {
            bad.push(format!("{id} via binary"));
        }
        // Check the exported file reloads through the binary too.
        let path = write(dir, &format!("{id}.json"), &r.stdout);
        let again = bin(&["star", &path]);
        if left_symplectic(&a, &w) && again.code != 0 {
            bad.push(format!("{id} reload"));
        }
        cli += 1;
    }
    line("AC8.a", bad.is_empty(), format!("round trip bit-exact on {} library and {cli} binary exports {}", inst.len(), fails(&bad)))
}

fn ac8_exit_codes(dir: &Path) -> Line {
    let r4 = bin(&["catalog", "build", "R4_LEFT"]).stdout;
    let r4 = write(dir, "r4.json", &r4);
    let noform = write(dir, "noform.json", r#"{"dim": 2, "products": [{"left": 2, "right": 2, "value": ["1", 0]}]}"#);
    let broken = write(dir, "broken.json", "{\"dim\": 2,\n  \"products\": [}");
    let badidx = write(dir, "badidx.json", r#"{"dim": 2, "products": [{"left": 3, "right": 1, "value": [0, 0]}]}"#);
    let nonsym = write(
        dir,
        "nonsym.json",
        r#"{"dim": 2, "products": [{"left": 1, "right": 1, "value": [1, 0]}], "form": [{"i": 1, "j": 2, "value": "1"}]}"#,
    );

    let gs = rr3_lie();
    let good = rr3_rank_one(&params(&[("b", 1), ("b1", 2), ("b2", -1), ("b3", 3), ("s", 1), ("x", 2), ("y", 1), ("z", 0), ("lambda", 1)]));
    let bad_data = rr3_rank_one(&params(&[("b", 1), ("b1", 2), ("b2", -1), ("b3", 3), ("s", 1), ("x", 2), ("y", 1), ("z", 1), ("lambda", 1)]));
    let enc = |r: &sympleib::RankOneData| {
        let d = r.to_extension_data(&gs).unwrap();
        serde_json::to_string_pretty(&ExtensionFile::encode(gs.algebra(), gs.form(), &d)).unwrap()
    };
    let ext_ok = write(dir, "ext_ok.json", &enc(&good));
    let ext_bad = write(dir, "ext_bad.json", &enc(&bad_data));
    let mut shape: serde_json::Value = serde_json::from_str(&enc(&good)).unwrap();
    shape["p"] = serde_json::json!(2);
    let ext_shape = write(dir, "ext_shape.json", &shape.to_string());

    let cases: Vec<(&str, Vec<&str>, i32)> = vec![
        ("check holds", vec!["check", &r4, "--left"], 0),
        ("check fails", vec!["check", &r4, "--lie"], 1),
        ("check without flags", vec!["check", &r4], 2),
        ("omega verify", vec!["omega", &r4, "verify", "--side", "left"], 0),
        ("omega verify fails", vec!["omega", &nonsym, "verify", "--side", "left"], 1),
        ("omega verify no form", vec!["omega", &noform, "verify"], 2),
        ("omega solve", vec!["omega", &r4, "solve"], 0),
        ("star", vec!["star", &r4], 0),
        ("core", vec!["core", &r4], 0),
        ("core non-symplectic", vec!["core", &nonsym], 1),
        ("malformed json", vec!["check", &broken, "--left"], 2),
        ("index out of range", vec!["check", &badidx, "--left"], 2),
        ("missing file", vec!["check", "/nonexistent/x.json", "--left"], 2),
        ("extend valid", vec!["extend", &ext_ok, "--system", "full"], 0),
        ("extend build", vec!["extend", &ext_ok, "--build"], 0),
        ("extend invalid", vec!["extend", &ext_bad], 1),
        ("extend bad shape", vec!["extend", &ext_shape], 2),
        ("catalog list", vec!["catalog", "list"], 0),
        ("catalog unknown", vec!["catalog", "build", "NOPE"], 2),
        ("catalog bad param", vec!["catalog", "build", "BS4_B", "--params", "q=1"], 2),
        ("catalog constraint", vec!["catalog", "build", "BS4_B", "--params", "x=0"], 2),
        ("catalog verify", vec!["catalog", "verify", "BS4_B", "--samples", "3"], 0),
        ("unknown command", vec!["frobnicate"], 2),
        ("help", vec!["--help"], 0),
    ];
    let mut bad = Vec::new();
    for (name, args, want) in &cases {
        let r = bin(args);
        if r.code != *want {
            bad.push(format!("{name}: got {} want {want}", r.code));
        }
    }
    let parse = bin(&["check", &broken, "--left"]);
    if !parse.stderr.contains("parse error at line 2") {
        bad.push(format!("parse diagnostic: {}", parse.stderr.trim()));
    }
    let unknown = bin(&["catalog", "build", "NOPE"]);
    if !unknown.stderr.contains("BS4_A") {
        bad.push("unknown id does not list families".into());
    }
    line("AC8.b", bad.is_empty(), format!("exit codes on {} invocations {}", cases.len(), fails(&bad)))
}

fn ac8_seeded(dir: &Path) -> Line {
    let mut bad = Vec::new();
    let j1 = dir.join("v1.json");
    let j2 = dir.join("v2.json");
    let j3 = dir.join("v3.json");
    let run = |seed: &str, out: &Path| bin(&["catalog", "verify", "RR3_SIXDIM_RAW", "--samples", "6", "--seed", seed, "--json-out", out.to_str().unwrap()]);
    let (r1, r2, r3) = (run("11", &j1), run("11", &j2), run("12", &j3));
    let (f1, f2, f3) = (std::fs::read(&j1).unwrap(), std::fs::read(&j2).unwrap(), std::fs::read(&j3).unwrap());
    if r1.stdout != r2.stdout || f1 != f2 {
        bad.push("catalog verify differs across runs".into());
    }
    if f1 == f3 || r3.code != r1.code && r3.code != 1 {
        bad.push("seed has no effect".into());
    }
    let r4 = write(dir, "r4s.json", &bin(&["catalog", "build", "R4_LEFT"]).stdout);
    let s1 = bin(&["omega", &r4, "solve", "--seed", "5"]);
    let s2 = bin(&["omega", &r4, "solve", "--seed", "5"]);
    if s1.stdout != s2.stdout || s1.code != 0 {
        bad.push("omega solve differs across runs".into());
    }
    line("AC8.c", bad.is_empty() && r1.code == 0, format!("seeded runs byte-identical {}", fails(&bad)))
}

fn ac8() -> Vec<Line> {
    let dir = tempfile::tempdir().unwrap();
    let sub = vec![ac8_round_trip(dir.path()), ac8_exit_codes(dir.path()), ac8_seeded(dir.path())];
    let ok = sub.iter().all(|l| l.ok);
    let mut out = vec![line("AC8", ok, "file round trip, exit codes, seeded reproducibility")];
    out.extend(sub);
    out
}

fn main() {
    let criteria: [(&str, fn() -> Vec<Line>); 8] =
        [("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7), ("AC8", ac8)];
    // Criteria known to fail for reasons outside the implementation.
    let expected_fail = ["AC4", "AC4.e"];
    let mut unexpected = Vec::new();
    for (_, f) in criteria {
        let t = Instant::now();
        let lines = f();
        let ms = t.elapsed().as_millis();
        for (k, l) in lines.iter().enumerate() {
            let status = if l.ok { "PASS" } else { "FAIL" };
            let time = if k == 0 { format!(" [{ms} ms]") } else { String::new() };
            let indent = if l.id.contains('.') { "  " } else { "" };
            println!("{indent}{} {status}{time}: {}", l.id, l.detail);
            let want_fail = expected_fail.contains(&l.id);
            if l.ok == want_fail {
                unexpected.push(l.id);
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria at expected status (AC4 fails on the displayed RR3_SIXDIM_B0 form)");
    } else {
        println!("acceptance: unexpected status for {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
