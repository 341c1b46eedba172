//! Command-line front end: file formats and command implementations.
//!
//! Exit codes: 0 when every requested check holds, 1 when a mathematical check
//! fails, 2 on input or usage errors.

pub mod files;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use sympleib::catalog::{self, Params};
use sympleib::exactlin::Rational;
use sympleib::extension::{
    build_double_extension, build_left_symmetric, check_full_system, check_reduced_system, ExtensionData,
    SymplecticLie,
};
use sympleib::symplectic::{
    find_nondegenerate, is_bi_symplectic, is_symplectic_left, is_symplectic_right, solve_symplectic_forms,
    star_left, star_right, upper_index, Side,
};
use sympleib::{core, Algebra, CheckReport, IdentityReport, SkewForm};

use files::{parse_algebra, parse_extension, read, vec_strings, AlgebraFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Input(String),
    /// A mathematical check failed before a report could be produced.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sympleib", version, about = "Exact computations with symplectic Leibniz algebras")]
pub struct Cli {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write a machine-readable report to this path.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate algebra identities.
    Check(CheckArgs),
    /// Solve for or verify symplectic forms.
    Omega {
        file: PathBuf,
        #[arg(value_enum)]
        mode: OmegaMode,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Print the associated left-symmetric product as an algebra file.
    Star {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Compute the core decomposition.
    Core { file: PathBuf },
    /// Check or build a double extension.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SystemArg::Reduced)]
        system: SystemArg,
        /// Print the extended algebra file.
        #[arg(long)]
        build: bool,
        /// Print the left-symmetric product of the extension.
        #[arg(long)]
        star: bool,
    },
    /// Catalog of families.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub left: bool,
    #[arg(long)]
    pub right: bool,
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long)]
    pub lsym: bool,
    #[arg(long)]
    pub lie: bool,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    List,
    Build {
        id: String,
        #[arg(long, num_args = 0..)]
        params: Vec<String>,
    },
    Verify {
        id: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OmegaMode {
    Solve,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Bi,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
            SideArg::Bi => Side::Bi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Full,
    Reduced,
}

/// Result of one command: exit code, human output and structured report.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub json: Value,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            json: json!({ "error": e.to_string(), "exit_code": e.code() }),
        }
    }
}

/// Parses arguments and runs; clap errors map to exit code 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            Outcome { code, stdout, stderr, json: json!({ "exit_code": code }) }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Omega { file, mode, side } => cmd_omega(file, *mode, (*side).into(), cli.seed),
        Command::Star { file, side } => cmd_star(file, *side),
        Command::Core { file } => cmd_core(file),
        Command::Extend { file, system, build, star } => cmd_extend(file, *system, *build, *star),
        Command::Catalog(c) => cmd_catalog(c, cli.seed),
    };
    res.unwrap_or_else(|e| Outcome::error(&e))
}

fn load(path: &Path) -> Result<(Algebra, Option<SkewForm>), CliError> {
    parse_algebra(&read(path)?)?.to_algebra()
}

fn load_with_form(path: &Path) -> Result<(Algebra, SkewForm), CliError> {
    let (a, w) = load(path)?;
    let w = w.ok_or_else(|| CliError::Input(format!("{} has no form", path.display())))?;
    Ok((a, w))
}

fn report_json(r: &IdentityReport) -> Value {
    json!({ "holds": r.holds(), "detail": r.describe() })
}

fn checks_json(r: &CheckReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({ "name": c.name, "holds": c.passed(), "detail": c.report.describe() }))
            .collect(),
    )
}

fn checks_text(r: &CheckReport) -> String {
    r.checks
        .iter()
        .map(|c| format!("{}: {}\n", c.name, if c.passed() { "pass".to_string() } else { c.report.describe() }))
        .collect()
}

fn code_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

pub fn cmd_check(a: &CheckArgs) -> Result<Outcome, CliError> {
    let (alg, _) = load(&a.file)?;
    let wanted: Vec<(&str, fn(&Algebra) -> IdentityReport)> = [
        (a.left, "left-leibniz", Algebra::is_left_leibniz as fn(&Algebra) -> IdentityReport),
        (a.right, "right-leibniz", Algebra::is_right_leibniz),
        (a.symmetric, "symmetric-leibniz", Algebra::is_symmetric_leibniz),
        (a.lsym, "left-symmetric", Algebra::is_left_symmetric),
        (a.lie, "lie", Algebra::is_lie),
    ]
    .into_iter()
    .filter(|(on, _, _)| *on)
    .map(|(_, n, f)| (n, f))
    .collect();
    if wanted.is_empty() {
        return Err(CliError::Input("check needs at least one of --left --right --symmetric --lsym --lie".into()));
    }
    let mut out = String::new();
    let mut js = serde_json::Map::new();
    let mut ok = true;
    for (name, f) in wanted {
        let r = f(&alg);
        ok &= r.holds();
        let _ = writeln!(out, "{name}: {}", r.describe());
        js.insert(name.into(), report_json(&r));
    }
    Ok(Outcome { code: code_for(ok), stdout: out, stderr: String::new(), json: Value::Object(js) })
}

fn form_entries(w: &SkewForm) -> Value {
    let n = w.dim();
    Value::Array(
        upper_index(n)
            .into_iter()
            .filter(|&(i, j)| !num_traits::Zero::is_zero(w.entry(i, j)))
            .map(|(i, j)| json!({ "i": i + 1, "j": j + 1, "value": w.entry(i, j).to_string() }))
            .collect(),
    )
}

fn form_text(w: &SkewForm) -> String {
    let n = w.dim();
    let terms: Vec<String> = upper_index(n)
        .into_iter()
        .filter(|&(i, j)| !num_traits::Zero::is_zero(w.entry(i, j)))
        .map(|(i, j)| format!("({}) e{}^e{}", w.entry(i, j), i + 1, j + 1))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn cmd_omega(file: &Path, mode: OmegaMode, side: Side, seed: u64) -> Result<Outcome, CliError> {
    let (a, w) = load(file)?;
    let n = a.dim();
    match mode {
        OmegaMode::Solve => {
            let space = solve_symplectic_forms(&a, side);
            let basis: Vec<SkewForm> =
                space.basis_vecs().iter().map(|b| SkewForm::from_upper(n, b).expect("upper coords")).collect();
            let rep = find_nondegenerate(&space, seed);
            let mut out = format!("solution space dimension: {}\n", space.dim());
            for (k, b) in basis.iter().enumerate() {
                let _ = writeln!(out, "basis {}: {}", k + 1, form_text(b));
            }
            match &rep {
                Some(r) => {
                    let _ = writeln!(out, "nondegenerate representative: {}", form_text(r));
                }
                None => out.push_str("no nondegenerate representative found\n"),
            }
            let js = json!({
                "dimension": space.dim(),
                "basis": basis.iter().map(form_entries).collect::<Vec<_>>(),
                "representative": rep.as_ref().map(form_entries),
                "seed": seed,
            });
            Ok(Outcome { code: code_for(rep.is_some()), stdout: out, stderr: String::new(), json: js })
        }
        OmegaMode::Verify => {
            let w = w.ok_or_else(|| CliError::Input(format!("{} has no form", file.display())))?;
            let r = match side {
                Side::Left => is_symplectic_left(&a, &w),
                Side::Right => is_symplectic_right(&a, &w),
                Side::Bi => is_bi_symplectic(&a, &w),
            };
            Ok(Outcome {
                code: code_for(r.holds()),
                stdout: format!("{:?}-symplectic: {}\n", side, r.describe()).to_lowercase(),
                stderr: String::new(),
                json: report_json(&r),
            })
        }
    }
}

pub fn cmd_star(file: &Path, side: SideArg) -> Result<Outcome, CliError> {
    let (a, w) = load_with_form(file)?;
    let st = match side {
        SideArg::Left => star_left(&a, &w),
        SideArg::Right => star_right(&a, &w),
        SideArg::Bi => return Err(CliError::Input("star takes --side left or right".into())),
    }
    .map_err(|e| CliError::Failed(e.to_string()))?;
    let f = AlgebraFile::from_algebra(&st, Some(&w));
    Ok(Outcome {
        code: EXIT_OK,
        stdout: f.to_json() + "\n",
        stderr: String::new(),
        json: serde_json::to_value(&f).expect("serializable"),
    })
}

fn subspace_json(s: &sympleib::Subspace) -> Value {
    Value::Array(s.basis_vecs().iter().map(|v| json!(vec_strings(v))).collect())
}

pub fn cmd_core(file: &Path) -> Result<Outcome, CliError> {
    let (a, w) = load_with_form(file)?;
    let d = core(&a, &w).map_err(|e| CliError::Failed(e.to_string()))?;
    let g = AlgebraFile::from_algebra(&d.g.algebra, Some(&d.g.form));
    let mut out = String::new();
    let _ = writeln!(out, "dim I = {}", d.i_dim());
    for v in d.i.basis_vecs() {
        let _ = writeln!(out, "  I basis: [{}]", vec_strings(&v).join(", "));
    }
    let _ = writeln!(out, "dim I-perp = {}", d.iperp.dim());
    for v in d.iperp.basis_vecs() {
        let _ = writeln!(out, "  I-perp basis: [{}]", vec_strings(&v).join(", "));
    }
    let _ = writeln!(out, "dim g = {}", d.g_dim());
    let _ = writeln!(out, "g abelian: {}", d.g.algebra.is_zero_product());
    let _ = writeln!(out, "omega_g: {}", form_text(&d.g.form));
    let _ = writeln!(out, "h_dim = {}", d.h_dim);
    let js = json!({
        "i_dim": d.i_dim(),
        "i_basis": subspace_json(&d.i),
        "iperp_basis": subspace_json(&d.iperp),
        "g": g,
        "h_dim": d.h_dim,
    });
    Ok(Outcome { code: EXIT_OK, stdout: out, stderr: String::new(), json: js })
}

pub fn cmd_extend(file: &Path, system: SystemArg, build: bool, star: bool) -> Result<Outcome, CliError> {
    let ext = parse_extension(&read(file)?)?.decode(file.parent())?;
    let gs = SymplecticLie::new(ext.g, ext.form).map_err(|e| CliError::Failed(format!("g: {e}")))?;
    let d = ExtensionData::new(&gs, ext.f, ext.g_maps, ext.theta, ext.psi, ext.xi, ext.omega)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let rep = match system {
        SystemArg::Full => check_full_system(&gs, &d),
        SystemArg::Reduced => check_reduced_system(&gs, &d),
    };
    let mut js = json!({ "system": format!("{system:?}").to_lowercase(), "checks": checks_json(&rep) });
    let report = checks_text(&rep);
    if !rep.all_pass() {
        return Ok(Outcome { code: EXIT_FAIL, stdout: report, stderr: String::new(), json: js });
    }
    if !build && !star {
        return Ok(Outcome { code: EXIT_OK, stdout: report, stderr: String::new(), json: js });
    }
    let mut stdout = String::new();
    if build {
        let (a, w) = build_double_extension(&gs, &d).map_err(|e| CliError::Failed(e.to_string()))?;
        let f = AlgebraFile::from_algebra(&a, Some(&w));
        stdout.push_str(&f.to_json());
        stdout.push('\n');
        js["built"] = serde_json::to_value(&f).expect("serializable");
    }
    if star {
        let (_, w) = build_double_extension(&gs, &d).map_err(|e| CliError::Failed(e.to_string()))?;
        let s = build_left_symmetric(&gs, &d).map_err(|e| CliError::Failed(e.to_string()))?;
        let f = AlgebraFile::from_algebra(&s, Some(&w));
        stdout.push_str(&f.to_json());
        stdout.push('\n');
        js["star"] = serde_json::to_value(&f).expect("serializable");
    }
    Ok(Outcome { code: EXIT_OK, stdout, stderr: report, json: js })
}

fn parse_params(spec: &catalog::FamilySpec, kv: &[String]) -> Result<Params, CliError> {
    let mut p = spec.default_params();
    for item in kv {
        let (k, v) = item.split_once('=').ok_or_else(|| CliError::Input(format!("expected key=value, got `{item}`")))?;
        if !spec.param_names.contains(&k) {
            return Err(CliError::Input(format!(
                "unknown parameter `{k}` for {}; parameters: {}",
                spec.id,
                spec.param_names.join(", ")
            )));
        }
        let x: Rational = v.trim().parse().map_err(|_| CliError::Input(format!("bad rational `{v}`")))?;
        p.insert(k.to_string(), x);
    }
    Ok(p)
}

fn family(id: &str) -> Result<catalog::FamilySpec, CliError> {
    catalog::family(id)
        .map_err(|_| CliError::Input(format!("unknown family `{id}`; known: {}", catalog::list_families().join(", "))))
}

fn params_text(names: &[&str], p: &Params) -> String {
    names.iter().map(|n| format!("{n}={}", p[*n])).collect::<Vec<_>>().join(" ")
}

pub fn cmd_catalog(c: &CatalogCmd, seed: u64) -> Result<Outcome, CliError> {
    match c {
        CatalogCmd::List => {
            let mut out = String::new();
            let mut arr = Vec::new();
            for f in catalog::families() {
                let _ = writeln!(out, "{}  [{}]  {}", f.id, f.param_names.join(", "), f.description);
                arr.push(json!({
                    "id": f.id,
                    "params": f.param_names,
                    "constraints": f.constraints.iter().map(|c| c.label).collect::<Vec<_>>(),
                    "claims": f.claims.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
                }));
            }
            Ok(Outcome { code: EXIT_OK, stdout: out, stderr: String::new(), json: Value::Array(arr) })
        }
        CatalogCmd::Build { id, params } => {
            let spec = family(id)?;
            let p = parse_params(&spec, params)?;
            let (a, w) = spec.instantiate(&p).map_err(|e| CliError::Input(e.to_string()))?;
            let f = AlgebraFile::from_algebra(&a, Some(&w));
            Ok(Outcome {
                code: EXIT_OK,
                stdout: f.to_json() + "\n",
                stderr: String::new(),
                json: serde_json::to_value(&f).expect("serializable"),
            })
        }
        CatalogCmd::Verify { id, samples } => {
            let spec = family(id)?;
            let run = catalog::sample_verify(id, seed, *samples).map_err(|e| CliError::Input(e.to_string()))?;
            let mut out = String::new();
            let mut arr = Vec::new();
            for s in &run.samples {
                let ptxt = params_text(spec.param_names, &s.params);
                let (line, claims) = match &s.outcome {
                    Ok(r) => {
                        let failing: Vec<&str> =
                            r.claims.iter().filter(|(_, x)| !x.holds()).map(|(c, _)| c.as_str()).collect();
                        let status = if failing.is_empty() { "pass".into() } else { format!("FAIL {}", failing.join(",")) };
                        let cj: serde_json::Map<String, Value> =
                            r.claims.iter().map(|(c, x)| (c.as_str().to_string(), report_json(x))).collect();
                        (status, Value::Object(cj))
                    }
                    Err(e) => (format!("FAIL {e}"), json!({ "error": e })),
                };
                let _ = writeln!(out, "sample {}: {ptxt}: {line}", s.index + 1);
                let pj: serde_json::Map<String, Value> =
                    s.params.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect();
                arr.push(json!({ "index": s.index + 1, "params": pj, "claims": claims, "passed": s.passed() }));
            }
            let _ = writeln!(out, "{}: {}/{} samples pass (seed {})", id, run.passed(), run.samples.len(), seed);
            let js = json!({ "id": id, "seed": seed, "samples": arr, "passed": run.passed(), "count": run.samples.len() });
            Ok(Outcome { code: code_for(run.all_pass()), stdout: out, stderr: String::new(), json: js })
        }
    }
}
