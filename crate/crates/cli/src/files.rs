//! JSON file formats. Indices are 1-based; rationals are strings `"p/q"`, with
//! plain integers accepted on input.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use sympleib::exactlin::{Matrix, Rational, Vector};
use sympleib::extension::{Cube, Table};
use sympleib::{Algebra, SkewForm};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rat {
    Text(String),
    Int(i64),
}

impl Rat {
    pub fn value(&self) -> Result<Rational, CliError> {
        match self {
            Rat::Int(i) => Ok(Rational::from_integer((*i).into())),
            Rat::Text(s) => Rational::from_str(s.trim()).map_err(|e| CliError::Input(format!("bad rational `{s}`: {e}"))),
        }
    }
}

impl From<&Rational> for Rat {
    fn from(r: &Rational) -> Self {
        Rat::Text(r.to_string())
    }
}

fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().map(Rat::from).collect()
}

fn values(v: &[Rat]) -> Result<Vector, CliError> {
    v.iter().map(Rat::value).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub value: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub i: usize,
    pub j: usize,
    pub value: Rat,
}

/// Structure constants as a sparse list of products; unspecified products are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<FormEntry>>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra, form: Option<&SkewForm>) -> Self {
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = a.product(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    products.push(ProductEntry { left: i + 1, right: j + 1, value: rats(v) });
                }
            }
        }
        let form = form.map(|w| {
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let x = w.entry(i, j);
                    if !x.is_zero() {
                        out.push(FormEntry { i: i + 1, j: j + 1, value: Rat::from(x) });
                    }
                }
            }
            out
        });
        AlgebraFile { dim: n, labels: Some(a.labels().to_vec()), products, form }
    }

    pub fn to_algebra(&self) -> Result<(Algebra, Option<SkewForm>), CliError> {
        let n = self.dim;
        let bad = |m: String| CliError::Input(m);
        let mut a = Algebra::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.products {
            if p.left == 0 || p.left > n || p.right == 0 || p.right > n {
                return Err(bad(format!("product index ({}, {}) out of range 1..={n}", p.left, p.right)));
            }
            if !seen.insert((p.left, p.right)) {
                return Err(bad(format!("product ({}, {}) given twice", p.left, p.right)));
            }
            if p.value.len() != n {
                return Err(bad(format!("product ({}, {}) has {} entries, expected {n}", p.left, p.right, p.value.len())));
            }
            a.set_product(p.left - 1, p.right - 1, values(&p.value)?);
        }
        if let Some(l) = &self.labels {
            if l.len() != n {
                return Err(bad(format!("{} labels for dimension {n}", l.len())));
            }
            a = a.with_labels(l.clone());
        }
        let form = match &self.form {
            None => None,
            Some(entries) => {
                let mut w = Matrix::zeros(n, n);
                for e in entries {
                    if !(1 <= e.i && e.i < e.j && e.j <= n) {
                        return Err(bad(format!("form entry ({}, {}) must satisfy 1 <= i < j <= {n}", e.i, e.j)));
                    }
                    if !w.get(e.i - 1, e.j - 1).is_zero() {
                        return Err(bad(format!("form entry ({}, {}) given twice", e.i, e.j)));
                    }
                    let x = e.value.value()?;
                    w.set(e.j - 1, e.i - 1, -x.clone());
                    w.set(e.i - 1, e.j - 1, x);
                }
                Some(SkewForm::new(w).map_err(|e| bad(e.to_string()))?)
            }
        };
        Ok((a, form))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// `g` given inline or as a path relative to the extension file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AlgebraFile),
    Path { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub g: AlgebraRef,
    pub p: usize,
    /// `F[X]` as row lists.
    #[serde(rename = "F")]
    pub f: Vec<Vec<Vec<Rat>>>,
    #[serde(rename = "G")]
    pub g_maps: Vec<Vec<Vec<Rat>>>,
    pub theta: Vec<Vec<Vec<Rat>>>,
    pub psi: Vec<Vec<Vec<Rat>>>,
    pub xi: Vec<Vec<Vec<Rat>>>,
    pub omega: Vec<Vec<Vec<Rat>>>,
}

/// Decoded extension file.
pub struct Extension {
    pub g: Algebra,
    pub form: SkewForm,
    pub f: Vec<Matrix>,
    pub g_maps: Vec<Matrix>,
    pub theta: Table,
    pub psi: Table,
    pub xi: Table,
    pub omega: Cube,
}

fn grid(name: &str, v: &[Vec<Vec<Rat>>], a: usize, b: usize, c: usize) -> Result<Vec<Vec<Vector>>, CliError> {
    let shape_err = || CliError::Input(format!("`{name}` must have shape {a}x{b}x{c}"));
    if v.len() != a {
        return Err(shape_err());
    }
    v.iter()
        .map(|r| {
            if r.len() != b {
                return Err(shape_err());
            }
            r.iter().map(|x| if x.len() != c { Err(shape_err()) } else { values(x) }).collect()
        })
        .collect()
}

impl ExtensionFile {
    pub fn decode(&self, base: Option<&Path>) -> Result<Extension, CliError> {
        let gfile = match &self.g {
            AlgebraRef::Inline(f) => f.clone(),
            AlgebraRef::Path { path } => {
                let full = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                parse_algebra(&read(&full)?)?
            }
        };
        let (g, form) = gfile.to_algebra()?;
        let form = form.ok_or_else(|| CliError::Input("g needs a form".into()))?;
        let (p, m) = (self.p, g.dim());
        let mats = |name: &str, v: &[Vec<Vec<Rat>>]| -> Result<Vec<Matrix>, CliError> {
            grid(name, v, p, m, m)?
                .into_iter()
                .map(|rows| Matrix::from_rows(m, rows).map_err(|e| CliError::Input(e.to_string())))
                .collect()
        };
        Ok(Extension {
            f: mats("F", &self.f)?,
            g_maps: mats("G", &self.g_maps)?,
            theta: grid("theta", &self.theta, p, p, m)?,
            psi: grid("psi", &self.psi, p, p, m)?,
            xi: grid("xi", &self.xi, p, p, m)?,
            omega: grid("omega", &self.omega, p, p, p)?,
            g,
            form,
        })
    }

    pub fn encode(g: &Algebra, form: &SkewForm, d: &sympleib::ExtensionData) -> Self {
        let mats = |v: &[Matrix]| v.iter().map(|m| m.row_vecs().iter().map(|r| rats(r)).collect()).collect();
        let tab = |t: &Table| t.iter().map(|r| r.iter().map(|x| rats(x)).collect()).collect();
        ExtensionFile {
            g: AlgebraRef::Inline(AlgebraFile::from_algebra(g, Some(form))),
            p: d.p(),
            f: mats(d.f()),
            g_maps: mats(d.g()),
            theta: tab(d.theta()),
            psi: tab(d.psi()),
            xi: tab(d.xi()),
            omega: d.omega().iter().map(|a| a.iter().map(|b| rats(b)).collect()).collect(),
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, CliError> {
    parse(text)
}

pub fn parse_extension(text: &str) -> Result<ExtensionFile, CliError> {
    parse(text)
}

/// Dense `𝔤`-vector helper used by reports.
pub fn vec_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}
