//! Finite reflection groups, basic invariants, the primitive derivation
//! and the shift maps built from it.
//!
//! Group elements act on coefficient vectors of linear forms. A polynomial
//! is moved by substituting the image forms for the coordinates, and a
//! field by transporting its coefficients so that `(w.theta)(w.f) =
//! w.(theta f)`.

mod group;
mod shift;

use crate::arrangement::{CoxeterSpec, Hyperplane, InnerProduct, SignedMulti, Spec};
use crate::logmod::SaitoFailure;
use crate::poly::linalg::{det, Matrix};
use crate::poly::{int, rat, LinForm, Poly, RatFn};

pub use group::{act_field, act_poly, generate_group, reflection, reynolds, root_orbit, GROUP_BOUND};
pub use shift::{ek, ek_sequence, nabla, phi, primitive_derivation, shift_target, shift_verify, EkField, ShiftCertificate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("reflections did not close to a group within {bound} elements")]
    GroupNotFinite { bound: usize },
    #[error("unknown Coxeter type `{0}` (built-ins: A2, B2, A3)")]
    UnknownType(String),
    #[error("type {kind} needs {expected} variables, found {found}")]
    Dimension { kind: String, expected: usize, found: usize },
    #[error("type {kind} needs the inner product {expected}")]
    InnerProduct { kind: String, expected: String },
    #[error("expected {expected} invariants, found {found}")]
    InvariantCount { expected: usize, found: usize },
    #[error("invariant {index} is not homogeneous of positive degree")]
    InvariantDegree { index: usize },
    #[error("invariant degrees must be non-decreasing with a strictly largest last degree")]
    DegreeOrder,
    #[error("invariant {index} is not fixed by the group")]
    NotInvariant { index: usize },
    #[error("Jacobian determinant vanishes")]
    SingularJacobian,
    #[error("Jacobian determinant is not a multiple of the product of the roots")]
    JacobianMismatch,
    #[error("E_{k}: the linear system has no solution")]
    NoSolution { k: u32 },
    #[error("E_{k}: solution space has dimension {dim}, expected 1")]
    NonUnique { k: u32, dim: usize },
    #[error("E_{k} failed verification: {reason}")]
    Verification { k: u32, reason: String },
    #[error("multiplicity on `{form}` is {value}; shifts need values in -1, 0, 1")]
    MultiplicityRange { form: String, value: i64 },
    #[error("hyperplane `{0}` is not a reflecting hyperplane of the group")]
    ForeignHyperplane(String),
    #[error("input fields are not a basis: {0}")]
    SourceNotBasis(SaitoFailure),
    #[error("shifted fields are not a basis: {0}")]
    ImageNotBasis(SaitoFailure),
}

/// Reflection group with basic invariants.
#[derive(Debug, Clone)]
pub struct CoxeterData {
    /// Reflecting hyperplanes, each with multiplicity one.
    pub arrangement: SignedMulti,
    pub g: InnerProduct,
    pub group: Vec<Matrix>,
    /// Basic invariants in order of degree.
    pub invariants: Vec<Poly>,
    /// Coxeter number, the degree of the last invariant.
    pub h: u32,
    /// `det [dP_j/dx_i] = jacobian_scalar * prod alpha_H`.
    pub jacobian_scalar: crate::poly::Rational,
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

impl CoxeterData {
    /// Validates user data: closes the group, checks invariance, the
    /// degree pattern and the Jacobian.
    pub fn from_parts(
        vars: Vec<String>,
        roots: &[LinForm],
        invariants: Vec<Poly>,
        g: InnerProduct,
    ) -> Result<Self, CoxeterError> {
        let n = vars.len();
        let group = generate_group(roots, &g)?;
        let forms = root_orbit(roots, &group);
        let hyperplanes = forms
            .iter()
            .map(|f| Hyperplane {
                form: f.clone(),
                multiplicity: 1,
            })
            .collect();
        let arrangement = SignedMulti::new(vars, hyperplanes).expect("orbit forms are distinct");
        if invariants.len() != n {
            return Err(CoxeterError::InvariantCount {
                expected: n,
                found: invariants.len(),
            });
        }
        let mut degrees = Vec::new();
        for (index, p) in invariants.iter().enumerate() {
            match p.degree() {
                Some(d) if d > 0 && p.is_homogeneous() => degrees.push(d),
                _ => return Err(CoxeterError::InvariantDegree { index }),
            }
        }
        let ordered = degrees.windows(2).all(|w| w[0] <= w[1]);
        let top_strict = n < 2 || degrees[n - 2] < degrees[n - 1];
        if !ordered || !top_strict {
            return Err(CoxeterError::DegreeOrder);
        }
        for (index, p) in invariants.iter().enumerate() {
            if group.iter().any(|w| act_poly(w, p) != *p) {
                return Err(CoxeterError::NotInvariant { index });
            }
        }
        let jac = jacobian(&invariants);
        let d = det(&jac, n);
        if d.is_zero() {
            return Err(CoxeterError::SingularJacobian);
        }
        let prod = forms.iter().fold(Poly::one(n), |acc, f| &acc * &f.to_poly());
        let jacobian_scalar = crate::logmod::proportionality(&d, &RatFn::from_poly(prod))
            .ok_or(CoxeterError::JacobianMismatch)?;
        let h = degrees[n - 1];
        Ok(CoxeterData {
            arrangement,
            g,
            group,
            invariants,
            h,
            jacobian_scalar,
        })
    }

    /// Type A2 on the simple-root coordinates, with the Cartan matrix as the
    /// inner product.
    pub fn a2(vars: Vec<String>) -> Result<Self, CoxeterError> {
        let g = InnerProduct::new(vec![vec![int(2), int(-1)], vec![int(-1), int(2)]]).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p1 = &(&x.pow(2) + &(&x * &y)) + &y.pow(2);
        let p2 = &(&(&x - &y) * &(&x + &y.scale(&int(2)))) * &(&x.scale(&int(2)) + &y);
        let roots = [
            LinForm::coordinate(2, 0),
            LinForm::coordinate(2, 1),
            LinForm::new(vec![int(1), int(1)]).unwrap(),
        ];
        Self::from_parts(vars, &roots, vec![p1, p2], g)
    }

    /// Type B2 with `P1 = (x^2 + y^2)/2` and `P2 = (x^4 + y^4)/4`.
    pub fn b2(vars: Vec<String>) -> Result<Self, CoxeterError> {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p1 = (&x.pow(2) + &y.pow(2)).scale(&rat(1, 2));
        let p2 = (&x.pow(4) + &y.pow(4)).scale(&rat(1, 4));
        let roots = [
            LinForm::coordinate(2, 0),
            LinForm::coordinate(2, 1),
            LinForm::new(vec![int(1), int(-1)]).unwrap(),
            LinForm::new(vec![int(1), int(1)]).unwrap(),
        ];
        Self::from_parts(vars, &roots, vec![p1, p2], InnerProduct::identity(2))
    }

    /// Type A3 permuting four coordinates, with the elementary symmetric
    /// polynomials as invariants.
    pub fn a3(vars: Vec<String>) -> Result<Self, CoxeterError> {
        let n = 4;
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        let mut elementary = vec![Poly::one(n)];
        for x in &xs {
            let mut next = elementary.clone();
            next.push(Poly::zero(n));
            for k in 1..next.len() {
                next[k] = &elementary.get(k).cloned().unwrap_or_else(|| Poly::zero(n)) + &(&elementary[k - 1] * x);
            }
            elementary = next;
        }
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut c = vec![int(0); n];
                c[i] = int(1);
                c[j] = int(-1);
                roots.push(LinForm::new(c).unwrap());
            }
        }
        Self::from_parts(vars, &roots, elementary[1..].to_vec(), InnerProduct::identity(n))
    }

    pub fn builtin(kind: &str, vars: Vec<String>) -> Result<Self, CoxeterError> {
        let expected = match kind.to_ascii_uppercase().as_str() {
            "A2" | "B2" => 2,
            "A3" => 4,
            _ => return Err(CoxeterError::UnknownType(kind.to_string())),
        };
        if vars.len() != expected {
            return Err(CoxeterError::Dimension {
                kind: kind.to_string(),
                expected,
                found: vars.len(),
            });
        }
        match kind.to_ascii_uppercase().as_str() {
            "A2" => Self::a2(vars),
            "B2" => Self::b2(vars),
            _ => Self::a3(vars),
        }
    }

    pub fn b2_default() -> Self {
        Self::b2(names(&["x", "y"])).expect("built-in data is valid")
    }

    pub fn a2_default() -> Self {
        Self::a2(names(&["x", "y"])).expect("built-in data is valid")
    }

    pub fn a3_default() -> Self {
        Self::a3(names(&["x1", "x2", "x3", "x4"])).expect("built-in data is valid")
    }

    /// Resolves the `[coxeter]` section of a spec file. A built-in type must
    /// agree with the spec's inner product.
    pub fn from_spec(spec: &Spec) -> Result<Option<Self>, CoxeterError> {
        let Some(c) = &spec.coxeter else { return Ok(None) };
        let vars = spec.arrangement.vars().to_vec();
        let data = match c {
            CoxeterSpec {
                kind: Some(kind), ..
            } => {
                let data = Self::builtin(kind, vars)?;
                if data.g != spec.inner_product {
                    let shown: Vec<Vec<String>> = data
                        .g
                        .matrix()
                        .iter()
                        .map(|r| r.iter().map(crate::poly::fmt_rational).collect())
                        .collect();
                    return Err(CoxeterError::InnerProduct {
                        kind: kind.clone(),
                        expected: format!("{:?}", shown),
                    });
                }
                data
            }
            CoxeterSpec {
                kind: None,
                invariants: Some(inv),
                roots: Some(roots),
            } => Self::from_parts(vars, roots, inv.clone(), spec.inner_product.clone())?,
            _ => unreachable!("load_spec rejects incomplete sections"),
        };
        Ok(Some(data))
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim()
    }

    pub fn vars(&self) -> &[String] {
        self.arrangement.vars()
    }

    /// Aligns a multiplicity given on (a subset of) the reflecting
    /// hyperplanes with this arrangement; missing hyperplanes get 0.
    pub fn multiplicity(&self, m: &SignedMulti) -> Result<SignedMulti, CoxeterError> {
        let forms = self.arrangement.forms();
        let mut values = vec![0i64; forms.len()];
        for h in m.hyperplanes() {
            let Some(i) = forms.iter().position(|f| *f == h.form) else {
                return Err(CoxeterError::ForeignHyperplane(h.form.display(m.vars()).to_string()));
            };
            values[i] = h.multiplicity;
        }
        Ok(self.arrangement.with_multiplicities(&values))
    }
}

/// `[dP_j / dx_i]` with rows indexed by `j`.
pub fn jacobian(invariants: &[Poly]) -> Vec<Vec<RatFn>> {
    let n = invariants.first().map_or(0, Poly::nvars);
    invariants
        .iter()
        .map(|p| (0..n).map(|i| RatFn::from_poly(p.derivative(i))).collect())
        .collect()
}
