use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factor_linear, LinForm, Poly, PolyError, Rational};

/// Reduced rational function whose denominator is a product of linear forms.
///
/// The denominator is stored factored, as normalized forms with positive
/// exponents, which makes it monic under graded-lex order. Reduction
/// cancels every form that still divides the numerator, so equal
/// functions have equal representations. Zero has an empty denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: BTreeMap<LinForm, u32>,
}

impl RatFn {
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFn {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `num / prod form^k`, reduced.
    pub fn from_parts(num: Poly, den: BTreeMap<LinForm, u32>) -> Self {
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    /// `1 / prod form^k`.
    pub fn inverse_of_forms(nvars: usize, den: BTreeMap<LinForm, u32>) -> Self {
        Self::from_parts(Poly::one(nvars), den)
    }

    fn reduce(&mut self) {
        self.den.retain(|_, k| *k > 0);
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut den = std::mem::take(&mut self.den);
        for (form, k) in den.iter_mut() {
            let (q, j) = self.num.strip_linear(form, *k);
            if j > 0 {
                self.num = q;
                *k -= j;
            }
        }
        den.retain(|_, k| *k > 0);
        self.den = den;
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &BTreeMap<LinForm, u32> {
        &self.den
    }

    /// Expanded denominator.
    pub fn denom(&self) -> Poly {
        let n = self.nvars();
        self.den
            .iter()
            .fold(Poly::one(n), |acc, (f, &k)| &acc * &f.to_poly().pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_poly().and_then(Poly::constant_value)
    }

    /// Degree `deg num - deg den` when homogeneous; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.num.is_zero() || !self.num.is_homogeneous() {
            return None;
        }
        let den: i64 = self.den.values().map(|&k| k as i64).sum();
        Some(self.num.degree().unwrap() as i64 - den)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.num.is_homogeneous()
    }

    /// Pole order along `alpha`: its exponent in the denominator minus its
    /// multiplicity in the numerator. Positive values are poles.
    pub fn pole_order(&self, alpha: &LinForm) -> Result<i64, PolyError> {
        if self.num.is_zero() {
            return Err(PolyError::ZeroFunction);
        }
        let den = self.den.get(alpha).copied().unwrap_or(0) as i64;
        let cap = self.num.degree().unwrap();
        let (_, num) = self.num.strip_linear(alpha, cap);
        Ok(den - num as i64)
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        RatFn::from_parts(&self.num * p, self.den.clone())
    }

    /// Multiplicative inverse, factoring the numerator with `hints`.
    pub fn recip(&self, hints: &[LinForm]) -> Result<RatFn, PolyError> {
        if self.num.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = factor_linear(&self.num, hints)?;
        let num = self.denom().scale(&(Rational::one() / &f.scalar));
        Ok(RatFn::from_parts(num, f.factors))
    }

    pub fn checked_div(&self, other: &RatFn, hints: &[LinForm]) -> Result<RatFn, PolyError> {
        Ok(self * &other.recip(hints)?)
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn {
            num: self.num.pow(e),
            den: self.den.iter().map(|(f, k)| (f.clone(), k * e)).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> RatFn {
        if self.den.is_empty() {
            return RatFn::from_poly(self.num.derivative(i));
        }
        let n = self.nvars();
        // d(N / prod a^k) = (N' * rad - N * sum k * a_i * rad / a) / (den * rad)
        let rad = self.den.keys().fold(Poly::one(n), |acc, f| &acc * &f.to_poly());
        let mut num = &self.num.derivative(i) * &rad;
        for (f, &k) in &self.den {
            let ai = &f.coeffs()[i];
            if ai.is_zero() {
                continue;
            }
            let others = self
                .den
                .keys()
                .filter(|g| *g != f)
                .fold(Poly::one(n), |acc, g| &acc * &g.to_poly());
            let c = ai * Rational::from_integer(BigInt::from(k));
            num = &num - &(&self.num * &others).scale(&c);
        }
        let den = self.den.iter().map(|(f, k)| (f.clone(), k + 1)).collect();
        RatFn::from_parts(num, den)
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> RatFnDisplay<'a> {
        RatFnDisplay { r: self, vars }
    }

    /// `true` when the display is a single token that needs no parentheses
    /// in a product.
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_empty() && self.num.len() <= 1
    }
}

fn lcm_den(a: &BTreeMap<LinForm, u32>, b: &BTreeMap<LinForm, u32>) -> BTreeMap<LinForm, u32> {
    let mut out = a.clone();
    for (f, &k) in b {
        let e = out.entry(f.clone()).or_insert(0);
        *e = (*e).max(k);
    }
    out
}

fn cofactor(full: &BTreeMap<LinForm, u32>, part: &BTreeMap<LinForm, u32>, nvars: usize) -> Poly {
    full.iter().fold(Poly::one(nvars), |acc, (f, &k)| {
        let have = part.get(f).copied().unwrap_or(0);
        &acc * &f.to_poly().pow(k - have)
    })
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den.is_empty() && rhs.den.is_empty() {
            return RatFn::from_poly(&self.num + &rhs.num);
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let n = self.nvars();
        let den = lcm_den(&self.den, &rhs.den);
        let a = &self.num * &cofactor(&den, &self.den, n);
        let b = &rhs.num * &cofactor(&den, &rhs.den, n);
        RatFn::from_parts(&a + &b, den)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (f, &k) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RatFn::from_parts(&self.num * &rhs.num, den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        &self + &rhs
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        &self - &rhs
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        &self * &rhs
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

pub struct RatFnDisplay<'a> {
    r: &'a RatFn,
    vars: &'a [String],
}

impl fmt::Display for RatFnDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.r.num.display(self.vars).to_string();
        if self.r.den.is_empty() {
            return write!(f, "{}", num);
        }
        if self.r.num.len() > 1 {
            write!(f, "({})", num)?;
        } else {
            write!(f, "{}", num)?;
        }
        let mut factors: Vec<(&LinForm, &u32)> = self.r.den.iter().collect();
        factors.sort_by(|a, b| {
            let sa = a.0.coeffs().iter().filter(|c| !c.is_zero()).count();
            let sb = b.0.coeffs().iter().filter(|c| !c.is_zero()).count();
            sa.cmp(&sb).then_with(|| b.0.cmp(a.0))
        });
        let mut parts = Vec::new();
        for (form, &k) in factors {
            let body = form.display(self.vars).to_string();
            let single = form.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            let base = if single { body } else { format!("({})", body) };
            if k == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{}^{}", base, k));
            }
        }
        let wrap = parts.len() > 1 || self.r.den.values().any(|&k| k > 1);
        if wrap {
            write!(f, "/({})", parts.join("*"))
        } else {
            write!(f, "/{}", parts[0])
        }
    }
}
