//! Signed multiarrangements, inner products and the TOML spec format.
//!
//! ```toml
//! variables = ["x", "y"]
//! inner_product = [["1", "1"], ["1", "2"]]   # optional, identity when absent
//!
//! [[hyperplane]]
//! form = "x"
//! multiplicity = 1
//!
//! [[hyperplane]]
//! form = "y"
//! multiplicity = -1
//!
//! [coxeter]                                   # optional
//! type = "B2"                                 # or `invariants` + `roots`
//! ```

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::expr::{parse_poly, parse_ratfn, ParseError};
use crate::poly::linalg::{det_rational, identity, inverse, Matrix};
use crate::poly::{fmt_rational, LinForm, Poly, RatFn, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("hyperplane `{first}` and `{second}` are proportional")]
    Proportional { first: String, second: String },
    #[error("form has {found} coordinates, arrangement has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("arrangement needs at least one variable")]
    NoVariables,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InnerProductError {
    #[error("inner product must be a {expected}x{expected} matrix")]
    Shape { expected: usize },
    #[error("inner product is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("inner product is not positive definite (leading minor {order} is {minor})")]
    NotPositiveDefinite { order: usize, minor: String },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("malformed spec file: {0}")]
    Syntax(String),
    #[error("invalid expression in {location}: {source}")]
    Expression { location: String, source: ParseError },
    #[error("{location}: `{text}` is not a homogeneous linear form")]
    NotLinear { location: String, text: String },
    #[error("inner product entry ({row}, {col}): {message}")]
    BadEntry { row: usize, col: usize, message: String },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    InnerProduct(#[from] InnerProductError),
    #[error("coxeter section: {0}")]
    Coxeter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub form: LinForm,
    pub multiplicity: i64,
}

/// Central arrangement with an integer multiplicity on each hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMulti {
    vars: Vec<String>,
    hyperplanes: Vec<Hyperplane>,
}

impl SignedMulti {
    pub fn new(vars: Vec<String>, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        if vars.is_empty() {
            return Err(ArrangementError::NoVariables);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(ArrangementError::DuplicateVariable(v.clone()));
            }
        }
        let n = vars.len();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.form.nvars() != n {
                return Err(ArrangementError::DimensionMismatch {
                    expected: n,
                    found: h.form.nvars(),
                });
            }
            if let Some(prev) = hyperplanes[..i].iter().find(|p| p.form == h.form) {
                return Err(ArrangementError::Proportional {
                    first: prev.form.display(&vars).to_string(),
                    second: h.form.display(&vars).to_string(),
                });
            }
        }
        Ok(SignedMulti { vars, hyperplanes })
    }

    /// Parses `(form, multiplicity)` pairs written as expressions.
    pub fn from_strs(vars: &[&str], hyperplanes: &[(&str, i64)]) -> Result<Self, SpecError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut hs = Vec::new();
        for (i, (text, m)) in hyperplanes.iter().enumerate() {
            hs.push(Hyperplane {
                form: linform_at(text, &vars, &format!("hyperplane {}", i + 1))?,
                multiplicity: *m,
            });
        }
        Ok(SignedMulti::new(vars, hs)?)
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// All forms, for use as factoring hints.
    pub fn forms(&self) -> Vec<LinForm> {
        self.hyperplanes.iter().map(|h| h.form.clone()).collect()
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.hyperplanes.iter().map(|h| h.multiplicity).collect()
    }

    /// Hyperplanes of positive multiplicity with that multiplicity.
    pub fn plus(&self) -> impl Iterator<Item = (&LinForm, u32)> {
        self.hyperplanes
            .iter()
            .filter(|h| h.multiplicity > 0)
            .map(|h| (&h.form, h.multiplicity as u32))
    }

    /// Hyperplanes of negative multiplicity with the absolute multiplicity.
    pub fn minus(&self) -> impl Iterator<Item = (&LinForm, u32)> {
        self.hyperplanes
            .iter()
            .filter(|h| h.multiplicity < 0)
            .map(|h| (&h.form, h.multiplicity.unsigned_abs() as u32))
    }

    pub fn q_plus_factors(&self) -> BTreeMap<LinForm, u32> {
        self.plus().map(|(f, k)| (f.clone(), k)).collect()
    }

    pub fn q_minus_factors(&self) -> BTreeMap<LinForm, u32> {
        self.minus().map(|(f, k)| (f.clone(), k)).collect()
    }

    pub fn q_plus(&self) -> Poly {
        expand(&self.q_plus_factors(), self.dim())
    }

    pub fn q_minus(&self) -> Poly {
        expand(&self.q_minus_factors(), self.dim())
    }

    pub fn deg_q_plus(&self) -> i64 {
        self.plus().map(|(_, k)| k as i64).sum()
    }

    pub fn deg_q_minus(&self) -> i64 {
        self.minus().map(|(_, k)| k as i64).sum()
    }

    /// `deg Q+ - deg Q-`.
    pub fn m_abs(&self) -> i64 {
        self.deg_q_plus() - self.deg_q_minus()
    }

    /// The defining function `Q+ / Q-`.
    pub fn defining_function(&self) -> RatFn {
        RatFn::from_parts(self.q_plus(), self.q_minus_factors())
    }

    pub fn negate(&self) -> SignedMulti {
        self.map_multiplicities(|m| -m)
    }

    /// Same hyperplanes with multiplicities transformed by `f`.
    pub fn map_multiplicities(&self, f: impl Fn(i64) -> i64) -> SignedMulti {
        SignedMulti {
            vars: self.vars.clone(),
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| Hyperplane {
                    form: h.form.clone(),
                    multiplicity: f(h.multiplicity),
                })
                .collect(),
        }
    }

    /// Same hyperplanes with the given multiplicities, in order.
    pub fn with_multiplicities(&self, ms: &[i64]) -> SignedMulti {
        assert_eq!(ms.len(), self.hyperplanes.len());
        SignedMulti {
            vars: self.vars.clone(),
            hyperplanes: self
                .hyperplanes
                .iter()
                .zip(ms)
                .map(|(h, &m)| Hyperplane {
                    form: h.form.clone(),
                    multiplicity: m,
                })
                .collect(),
        }
    }
}

fn expand(factors: &BTreeMap<LinForm, u32>, n: usize) -> Poly {
    factors
        .iter()
        .fold(Poly::one(n), |acc, (f, &k)| &acc * &f.to_poly().pow(k))
}

/// Symmetric positive-definite Gram matrix on the coordinate differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerProduct {
    g: Matrix,
    inv: Matrix,
}

impl InnerProduct {
    pub fn new(g: Matrix) -> Result<Self, InnerProductError> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) || n == 0 {
            return Err(InnerProductError::Shape { expected: n.max(1) });
        }
        for i in 0..n {
            for j in i + 1..n {
                if g[i][j] != g[j][i] {
                    return Err(InnerProductError::NotSymmetric { row: i, col: j });
                }
            }
        }
        for k in 1..=n {
            let minor: Matrix = g[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = det_rational(&minor);
            if !d.is_positive() {
                return Err(InnerProductError::NotPositiveDefinite {
                    order: k,
                    minor: fmt_rational(&d),
                });
            }
        }
        let inv = inverse(&g).expect("positive definite matrices are invertible");
        Ok(InnerProduct { g, inv })
    }

    pub fn identity(n: usize) -> Self {
        InnerProduct {
            g: identity(n),
            inv: identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.g == identity(self.g.len())
    }
}

/// Raw `[coxeter]` section after expression parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSpec {
    pub kind: Option<String>,
    pub invariants: Option<Vec<Poly>>,
    pub roots: Option<Vec<LinForm>>,
}

/// Parsed and validated spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spec {
    pub arrangement: SignedMulti,
    pub inner_product: InnerProduct,
    pub coxeter: Option<CoxeterSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Str(String),
    Float(f64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperplane {
    form: String,
    multiplicity: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoxeter {
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_product: Option<Vec<Vec<Entry>>>,
    #[serde(default, rename = "hyperplane")]
    hyperplanes: Vec<RawHyperplane>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coxeter: Option<RawCoxeter>,
}

#[derive(Debug, Deserialize)]
struct RawMatrixOnly {
    inner_product: Vec<Vec<Entry>>,
}

fn linform_at(text: &str, vars: &[String], location: &str) -> Result<LinForm, SpecError> {
    let p = parse_poly(text, vars).map_err(|source| SpecError::Expression {
        location: location.to_string(),
        source,
    })?;
    match LinForm::from_poly(&p) {
        Some((f, _)) => Ok(f),
        None => Err(SpecError::NotLinear {
            location: location.to_string(),
            text: text.to_string(),
        }),
    }
}

fn entry_value(e: &Entry, row: usize, col: usize) -> Result<Rational, SpecError> {
    let bad = |message: String| SpecError::BadEntry { row, col, message };
    match e {
        Entry::Int(v) => Ok(Rational::from_integer((*v).into())),
        Entry::Float(_) => Err(bad("decimal numbers are not accepted; write a quotient string such as \"1/2\"".into())),
        Entry::Str(s) => {
            let r = parse_ratfn(s, &[], &[]).map_err(|e| bad(e.to_string()))?;
            r.constant_value()
                .ok_or_else(|| bad(format!("`{}` is not a rational number", s)))
        }
    }
}

fn matrix_from_entries(rows: &[Vec<Entry>]) -> Result<Matrix, SpecError> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, e)| entry_value(e, i, j)).collect())
        .collect()
}

/// Parses an inner product given either as a bare TOML array of arrays or
/// as a document with an `inner_product` key.
pub fn parse_inner_product(text: &str, dim: usize) -> Result<InnerProduct, SpecError> {
    let doc = if text.contains("inner_product") {
        text.to_string()
    } else {
        format!("inner_product = {}", text.trim())
    };
    let raw: RawMatrixOnly = toml::from_str(&doc).map_err(|e| SpecError::Syntax(e.message().to_string()))?;
    let g = matrix_from_entries(&raw.inner_product)?;
    if g.len() != dim {
        return Err(InnerProductError::Shape { expected: dim }.into());
    }
    Ok(InnerProduct::new(g)?)
}

pub fn load_spec(text: &str) -> Result<Spec, SpecError> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| SpecError::Syntax(e.message().to_string()))?;
    let vars = raw.variables;
    if vars.is_empty() {
        return Err(ArrangementError::NoVariables.into());
    }
    let mut hyperplanes = Vec::new();
    for (i, h) in raw.hyperplanes.iter().enumerate() {
        let form = linform_at(&h.form, &vars, &format!("hyperplane {}", i + 1))?;
        hyperplanes.push(Hyperplane {
            form,
            multiplicity: h.multiplicity,
        });
    }
    let arrangement = SignedMulti::new(vars.clone(), hyperplanes)?;
    let n = vars.len();
    let inner_product = match &raw.inner_product {
        None => InnerProduct::identity(n),
        Some(rows) => {
            let g = matrix_from_entries(rows)?;
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(InnerProductError::Shape { expected: n }.into());
            }
            InnerProduct::new(g)?
        }
    };
    let coxeter = match raw.coxeter {
        None => None,
        Some(c) => {
            let invariants = match &c.invariants {
                None => None,
                Some(list) => Some(
                    list.iter()
                        .enumerate()
                        .map(|(i, s)| {
                            parse_poly(s, &vars).map_err(|source| SpecError::Expression {
                                location: format!("coxeter invariant {}", i + 1),
                                source,
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            let roots = match &c.roots {
                None => None,
                Some(list) => Some(
                    list.iter()
                        .enumerate()
                        .map(|(i, s)| linform_at(s, &vars, &format!("coxeter root {}", i + 1)))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            if c.kind.is_none() && (invariants.is_none() || roots.is_none()) {
                return Err(SpecError::Coxeter(
                    "give either `type` or both `invariants` and `roots`".into(),
                ));
            }
            Some(CoxeterSpec {
                kind: c.kind,
                invariants,
                roots,
            })
        }
    };
    Ok(Spec {
        arrangement,
        inner_product,
        coxeter,
    })
}

/// Canonical text of a spec; [`load_spec`] inverts it.
pub fn emit_spec(spec: &Spec) -> String {
    let a = &spec.arrangement;
    let vars = a.vars();
    let inner_product = if spec.inner_product.is_identity() {
        None
    } else {
        Some(
            spec.inner_product
                .matrix()
                .iter()
                .map(|r| r.iter().map(|c| Entry::Str(fmt_rational(c))).collect())
                .collect(),
        )
    };
    let raw = RawSpec {
        variables: vars.to_vec(),
        inner_product,
        hyperplanes: a
            .hyperplanes()
            .iter()
            .map(|h| RawHyperplane {
                form: h.form.display(vars).to_string(),
                multiplicity: h.multiplicity,
            })
            .collect(),
        coxeter: spec.coxeter.as_ref().map(|c| RawCoxeter {
            kind: c.kind.clone(),
            invariants: c
                .invariants
                .as_ref()
                .map(|ps| ps.iter().map(|p| p.display(vars).to_string()).collect()),
            roots: c
                .roots
                .as_ref()
                .map(|rs| rs.iter().map(|r| r.display(vars).to_string()).collect()),
        }),
    };
    toml::to_string(&raw).expect("spec serialization cannot fail")
}

impl Spec {
    pub fn new(arrangement: SignedMulti) -> Self {
        let n = arrangement.dim();
        Spec {
            arrangement,
            inner_product: InnerProduct::identity(n),
            coxeter: None,
        }
    }
}
