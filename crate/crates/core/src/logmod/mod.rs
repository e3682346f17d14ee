//! Vector fields with rational-function coefficients and the generalized
//! logarithmic module of a signed multiarrangement.
//!
//! A field `sum t_i d/dx_i` lives in the module when
//!
//! 1. every `Q- * t_i` is a polynomial,
//! 2. `alpha^m` divides `Q- * theta(alpha)` for each hyperplane of
//!    multiplicity `m > 0`, and
//! 3. for each hyperplane of multiplicity `m < 0`, with `g = G^-1 t` the
//!    coefficients on the form side, every minor `g_i a_j - g_j a_i` is
//!    regular along `alpha`.
//!
//! Membership is checked by [`is_member`]. Homogeneous pieces are computed
//! by [`graded_piece`] as the kernel of an exact linear system, and
//! [`find_basis`] searches for minimal generators degree by degree.

mod graded;
mod membership;
mod pairing;
mod saito;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::arrangement::InnerProduct;
use crate::expr::{parse_field, ParseError};
use crate::poly::linalg::mat_vec_ratfn;
use crate::poly::{LinForm, Poly, RatFn, Rational};

pub use graded::{find_basis, graded_piece, BasisCertificate, GradedPiece, NotFreeEvidence};
pub use membership::{is_member, omega_module_member, Condition, MembershipReport, Violation};
pub use pairing::{pairing, pairing_matrix, PairingError};
pub use saito::{degree_criterion, saito_check, saito_matrix, FreeBasis, SaitoFailure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("field has {found} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field {} is not homogeneous", .index + 1)]
    NotHomogeneous { index: usize },
    #[error("field {} is zero", .index + 1)]
    Zero { index: usize },
}

/// `sum t_i d/dx_i` with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LogVectorField {
    coeffs: Vec<RatFn>,
}

impl LogVectorField {
    pub fn new(coeffs: Vec<RatFn>) -> Self {
        assert!(!coeffs.is_empty(), "a field needs at least one coordinate");
        let n = coeffs[0].nvars();
        assert!(coeffs.iter().all(|c| c.nvars() == n), "mixed variable counts");
        assert_eq!(n, coeffs.len(), "coefficient count must match variable count");
        LogVectorField { coeffs }
    }

    pub fn from_polys(coeffs: Vec<Poly>) -> Self {
        Self::new(coeffs.into_iter().map(RatFn::from_poly).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![RatFn::zero(n); n])
    }

    /// `d/dx_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        let mut c = vec![RatFn::zero(n); n];
        c[i] = RatFn::one(n);
        Self::new(c)
    }

    /// `sum x_i d/dx_i`.
    pub fn euler(n: usize) -> Self {
        Self::from_polys((0..n).map(|i| Poly::var(n, i)).collect())
    }

    pub fn parse(src: &str, vars: &[String], hints: &[LinForm]) -> Result<Self, ParseError> {
        parse_field(src, vars, hints).map(Self::new)
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RatFn {
        &self.coeffs[i]
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_polynomial)
    }

    /// Common degree of the nonzero coefficients; `None` for the zero field
    /// and for non-homogeneous fields.
    pub fn degree(&self) -> Option<i64> {
        let mut out = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            let d = c.degree()?;
            match out {
                None => out = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// `theta(p) = sum t_i dp/dx_i`.
    pub fn apply(&self, p: &Poly) -> RatFn {
        let n = self.nvars();
        let mut acc = RatFn::zero(n);
        for (i, t) in self.coeffs.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let d = p.derivative(i);
            if d.is_zero() {
                continue;
            }
            acc = &acc + &t.mul_poly(&d);
        }
        acc
    }

    pub fn apply_ratfn(&self, r: &RatFn) -> RatFn {
        let n = self.nvars();
        let mut acc = RatFn::zero(n);
        for (i, t) in self.coeffs.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            acc = &acc + &(t * &r.derivative(i));
        }
        acc
    }

    /// `theta(alpha)` for a linear form.
    pub fn apply_form(&self, alpha: &LinForm) -> RatFn {
        let n = self.nvars();
        let mut acc = RatFn::zero(n);
        for (t, a) in self.coeffs.iter().zip(alpha.coeffs()) {
            if !a.is_zero() {
                acc = &acc + &t.scale(a);
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|t| t.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(self.coeffs.iter().map(|t| t.mul_poly(p)).collect())
    }

    pub fn mul_ratfn(&self, r: &RatFn) -> Self {
        Self::new(self.coeffs.iter().map(|t| t * r).collect())
    }

    /// Coefficients on the differential side, `g = G^-1 t`.
    pub fn to_form(&self, g: &InnerProduct) -> Self {
        Self::new(mat_vec_ratfn(g.inverse(), &self.coeffs))
    }

    /// Inverse of [`Self::to_form`], `t = G g`.
    pub fn from_form(&self, g: &InnerProduct) -> Self {
        Self::new(mat_vec_ratfn(g.matrix(), &self.coeffs))
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> FieldDisplay<'a> {
        FieldDisplay { field: self, vars }
    }
}

impl<'a> Add<&'a LogVectorField> for &'a LogVectorField {
    type Output = LogVectorField;
    fn add(self, rhs: &LogVectorField) -> LogVectorField {
        LogVectorField::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a LogVectorField> for &'a LogVectorField {
    type Output = LogVectorField;
    fn sub(self, rhs: &LogVectorField) -> LogVectorField {
        LogVectorField::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LogVectorField {
    type Output = LogVectorField;
    fn neg(self) -> LogVectorField {
        LogVectorField::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

pub struct FieldDisplay<'a> {
    field: &'a LogVectorField,
    vars: &'a [String],
}

/// Sign of the leading numerator coefficient.
fn leads_negative(r: &RatFn) -> bool {
    r.numer().leading_term().is_some_and(|(_, c)| c.is_negative())
}

impl fmt::Display for FieldDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, v) in self.field.coeffs.iter().zip(self.vars) {
            if t.is_zero() {
                continue;
            }
            let neg = leads_negative(t);
            let shown = if neg { -t } else { t.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if shown.as_poly().is_some_and(|p| *p == Poly::one(p.nvars())) {
                write!(f, "@{}", v)?;
            } else if shown.is_atomic() && !shown.constant_value().is_some_and(|c| !c.is_integer()) {
                write!(f, "{}@{}", shown.display(self.vars), v)?;
            } else {
                write!(f, "({})@{}", shown.display(self.vars), v)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Scalar factor `c` with `a = c * b`, when one exists.
pub(crate) fn proportionality(a: &RatFn, b: &RatFn) -> Option<Rational> {
    if b.is_zero() {
        return if a.is_zero() { Some(Rational::zero()) } else { None };
    }
    if a.den_factors() != b.den_factors() {
        return None;
    }
    let (ma, ca) = a.numer().leading_term()?;
    let (mb, cb) = b.numer().leading_term()?;
    if ma != mb {
        return None;
    }
    let c = ca / cb;
    if a.numer() == &b.numer().scale(&c) {
        Some(c)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn field(s: &str) -> LogVectorField {
        LogVectorField::parse(s, &vars(), &[]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(field("x@x").apply(&x), RatFn::from_poly(x.clone()));
        assert!(field("(1/x)@x").apply(&y).is_zero());
        // (x dx - y dy)/(x - y) applied to x - y gives (x + y)/(x - y)
        let r = field("(x/(x - y))@x - (y/(x - y))@y").apply(&(&x - &y));
        let expected = crate::expr::parse_ratfn("(x + y)/(x - y)", &vars(), &[]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn form_side_conversion() {
        let g = InnerProduct::new(vec![vec![int(1), int(1)], vec![int(1), int(2)]]).unwrap();
        assert_eq!(field("@y").to_form(&g), field("-1@x + @y"));
        assert_eq!(field("(x/y)@x + (2*x/y)@y").to_form(&g), field("(x/y)@y"));
        let t = field("(x/y)@x + (2*x/y)@y");
        assert_eq!(t.to_form(&g).from_form(&g), t);
        let id = InnerProduct::identity(2);
        assert_eq!(t.to_form(&id), t);
    }

    #[test]
    fn degrees() {
        assert_eq!(field("x@x + (1/y)@y").degree(), None);
        assert_eq!(field("(1/y)@y").degree(), Some(-1));
        assert_eq!(LogVectorField::zero(2).degree(), None);
        assert!(LogVectorField::zero(2).is_homogeneous());
        assert_eq!(LogVectorField::euler(2).degree(), Some(1));
    }

    #[test]
    fn display_reparses() {
        for s in [
            "x@x",
            "(1/x)@x",
            "-(1/15*x^5 - 1/3*x^3*y^2)@x + @y",
            "(x/(x - y))@x - (y/(x - y))@y",
            "(-1/2)@x",
            "0",
        ] {
            let f = field(s);
            let shown = f.display(&vars()).to_string();
            assert_eq!(field(&shown), f, "{}", shown);
        }
        assert_eq!(field("(1/y)@y").display(&vars()).to_string(), "(1/y)@y");
        assert_eq!(field("1@x").display(&vars()).to_string(), "@x");
    }
}
