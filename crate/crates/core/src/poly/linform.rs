use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Monomial, Poly, Rational};

/// Homogeneous linear form `sum a_i x_i`, scaled so that its first
/// nonzero coefficient is 1. Proportional forms therefore compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinForm {
    coeffs: Vec<Rational>,
}

impl LinForm {
    /// Normalizes `coeffs`; `None` when every coefficient is zero.
    pub fn new(coeffs: Vec<Rational>) -> Option<Self> {
        Self::normalized(coeffs).map(|(f, _)| f)
    }

    /// Returns the normalized form together with the scale `s` such that
    /// the input equals `s * form`.
    pub fn normalized(coeffs: Vec<Rational>) -> Option<(Self, Rational)> {
        let lead = coeffs.iter().find(|c| !c.is_zero())?.clone();
        let coeffs = coeffs.into_iter().map(|c| c / &lead).collect();
        Some((LinForm { coeffs }, lead))
    }

    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[i] = Rational::one();
        LinForm { coeffs }
    }

    /// Reads a homogeneous degree-one polynomial as `scale * form`.
    pub fn from_poly(p: &Poly) -> Option<(Self, Rational)> {
        if p.degree() != Some(1) || !p.is_homogeneous() {
            return None;
        }
        let n = p.nvars();
        let coeffs = (0..n).map(|i| p.coefficient(&Monomial::var(n, i))).collect();
        Self::normalized(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Index of the first nonzero coefficient (which is 1).
    pub fn pivot(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.coeffs)
    }

    /// `alpha - x_pivot`, the part of the form off the pivot variable.
    pub(crate) fn tail_poly(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c[self.pivot()] = Rational::zero();
        Poly::linear(&c)
    }

    /// Images for [`Poly::compose`] realizing the change of variables
    /// `x_pivot := x_pivot - tail`, under which this form becomes `x_pivot`.
    pub(crate) fn straightening(&self) -> Vec<Poly> {
        let n = self.nvars();
        let p = self.pivot();
        (0..n)
            .map(|j| {
                if j == p {
                    &Poly::var(n, p) - &self.tail_poly()
                } else {
                    Poly::var(n, j)
                }
            })
            .collect()
    }

    /// `true` when `alpha^k` divides `q`.
    pub fn divides_to_order(&self, q: &Poly, k: u32) -> bool {
        q.divide_linear(self).1.at_least(k)
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> LinFormDisplay<'a> {
        LinFormDisplay { form: self, vars }
    }
}

pub struct LinFormDisplay<'a> {
    form: &'a LinForm,
    vars: &'a [String],
}

impl fmt::Display for LinFormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in self.form.coeffs.iter().zip(self.vars) {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), v)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn proportional_forms_compare_equal() {
        let a = LinForm::new(vec![int(2), int(-2)]).unwrap();
        let b = LinForm::new(vec![int(-1), int(1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeffs(), &[int(1), int(-1)]);
    }

    #[test]
    fn zero_form_is_rejected() {
        assert!(LinForm::new(vec![int(0), int(0)]).is_none());
    }

    #[test]
    fn straightening_sends_form_to_pivot() {
        let a = LinForm::new(vec![int(0), int(1), int(3)]).unwrap();
        let img = a.to_poly().compose(&a.straightening());
        assert_eq!(img, Poly::var(3, 1));
    }
}
