//! Splitting polynomials that are products of homogeneous linear forms.
//!
//! Denominators in this crate are always such products, so no general
//! multivariate factorization is needed. Candidate forms come from the
//! caller (typically the hyperplanes of an arrangement); whatever is left
//! must be a single linear form or a binary form, which is split through
//! its rational roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LinForm, Poly, PolyError, Rational};

/// `scalar * prod form^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub scalar: Rational,
    pub factors: BTreeMap<LinForm, u32>,
}

pub fn factor_linear(p: &Poly, hints: &[LinForm]) -> Result<LinearFactorization, PolyError> {
    if p.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let n = p.nvars();
    let mut rest = p.clone();
    let mut factors: BTreeMap<LinForm, u32> = BTreeMap::new();

    let coords = (0..n).map(|i| LinForm::coordinate(n, i));
    for form in hints.iter().cloned().chain(coords) {
        if form.nvars() != n {
            continue;
        }
        let cap = rest.degree().unwrap_or(0);
        let (q, k) = rest.strip_linear(&form, cap);
        if k > 0 {
            *factors.entry(form).or_insert(0) += k;
            rest = q;
        }
    }

    if rest.degree() == Some(0) {
        return Ok(LinearFactorization {
            scalar: rest.constant_value().unwrap(),
            factors,
        });
    }
    if !rest.is_homogeneous() {
        return Err(PolyError::NotLinearProduct);
    }
    if let Some((form, scale)) = LinForm::from_poly(&rest) {
        *factors.entry(form).or_insert(0) += 1;
        return Ok(LinearFactorization { scalar: scale, factors });
    }
    let support = rest.support();
    if support.len() != 2 {
        return Err(PolyError::NotLinearProduct);
    }
    let (a, b) = (support[0], support[1]);
    for root in binary_form_roots(&rest, a)? {
        // x_a - root * x_b
        let mut c = vec![Rational::zero(); n];
        c[a] = Rational::one();
        c[b] = -root;
        let form = LinForm::new(c).unwrap();
        let cap = rest.degree().unwrap_or(0);
        let (q, k) = rest.strip_linear(&form, cap);
        if k > 0 {
            *factors.entry(form).or_insert(0) += k;
            rest = q;
        }
    }
    match rest.constant_value() {
        Some(c) => Ok(LinearFactorization { scalar: c, factors }),
        None => Err(PolyError::NotLinearProduct),
    }
}

/// Rational roots of `f(t) = p(x_a = t, x_b = 1)`.
fn binary_form_roots(p: &Poly, a: usize) -> Result<Vec<Rational>, PolyError> {
    let deg = p.degree().unwrap() as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponents()[a] as usize] += c;
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    let high = ints.iter().rposition(|c| !c.is_zero()).unwrap();
    let lead = &ints[high];
    let tail = &ints[low];
    let (Some(ps), Some(qs)) = (small_divisors(tail), small_divisors(lead)) else {
        return Err(PolyError::NotLinearProduct);
    };
    let mut roots = Vec::new();
    for num in &ps {
        for den in &qs {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(sign) * BigInt::from(*num), BigInt::from(*den));
                if roots.contains(&r) {
                    continue;
                }
                if eval(&ints, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

fn eval(coeffs: &[BigInt], t: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

impl LinearFactorization {
    /// Expands back to a polynomial.
    pub fn expand(&self, nvars: usize) -> Poly {
        let mut acc = Poly::constant(nvars, self.scalar.clone());
        for (f, &k) in &self.factors {
            acc = &acc * &f.to_poly().pow(k);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn vars2() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn splits_binary_form_without_hints() {
        let (x, y) = vars2();
        // x^3 y - x y^3 = x y (x - y)(x + y)
        let p = &(&x.pow(3) * &y) - &(&x * &y.pow(3));
        let f = factor_linear(&p, &[]).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert_eq!(f.expand(2), p);
    }

    #[test]
    fn uses_hints_in_more_variables() {
        let n = 4;
        let x: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        let forms: Vec<LinForm> = [(0, 3), (1, 3), (2, 3)]
            .iter()
            .map(|&(i, j)| LinForm::from_poly(&(&x[i] - &x[j])).unwrap().0)
            .collect();
        let p = forms
            .iter()
            .fold(Poly::constant(n, int(-3)), |acc, f| &acc * &f.to_poly());
        assert!(factor_linear(&p, &[]).is_err());
        let f = factor_linear(&p, &forms).unwrap();
        assert_eq!(f.scalar, int(-3));
        assert_eq!(f.expand(n), p);
    }

    #[test]
    fn rejects_irreducible_quadratic() {
        let (x, y) = vars2();
        let p = &x.pow(2) + &y.pow(2);
        assert_eq!(factor_linear(&p, &[]), Err(PolyError::NotLinearProduct));
    }

    #[test]
    fn rejects_affine_divisor() {
        let (x, _) = vars2();
        let p = &x + &Poly::one(2);
        assert_eq!(factor_linear(&p, &[]), Err(PolyError::NotLinearProduct));
    }
}
