use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arrangement::SignedMulti;
use crate::logmod::{saito_check, FreeBasis, GradedPiece, LogVectorField};
use crate::poly::linalg::{det_poly, Echelon, SparseVec};
use crate::poly::{factor_linear, Monomial, Multiplicity, Poly, RatFn, Rational};

use super::{act_field, reynolds, CoxeterData, CoxeterError};

/// `D = (sum_i numer[i] d/dx_i) / delta` with `delta = det J`.
struct Primitive {
    numer: Vec<Poly>,
    delta: Poly,
}

fn primitive_parts(c: &CoxeterData) -> Result<Primitive, CoxeterError> {
    let n = c.dim();
    let jac: Vec<Vec<Poly>> = c
        .invariants
        .iter()
        .map(|p| (0..n).map(|i| p.derivative(i)).collect())
        .collect();
    let delta = det_poly(&jac, n);
    if delta.is_zero() {
        return Err(CoxeterError::SingularJacobian);
    }
    let last = n - 1;
    let numer = (0..n)
        .map(|i| {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != last)
                .map(|r| (0..n).filter(|&s| s != i).map(|s| jac[r][s].clone()).collect())
                .collect();
            let cof = if minor.is_empty() { Poly::one(n) } else { det_poly(&minor, n) };
            if (i + last) % 2 == 0 {
                cof
            } else {
                -&cof
            }
        })
        .collect();
    Ok(Primitive { numer, delta })
}

impl Primitive {
    fn apply(&self, p: &Poly) -> Poly {
        self.numer
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .fold(Poly::zero(p.nvars()), |acc, (i, d)| &acc + &(d * &p.derivative(i)))
    }
}

/// The derivation `D` with `D(P_j) = 0` for `j < l` and `D(P_l) = 1`.
pub fn primitive_derivation(c: &CoxeterData) -> Result<LogVectorField, CoxeterError> {
    let prim = primitive_parts(c)?;
    let f = factor_linear(&prim.delta, &c.arrangement.forms()).map_err(|_| CoxeterError::JacobianMismatch)?;
    let inv = Rational::one() / &f.scalar;
    Ok(LogVectorField::new(
        prim.numer
            .iter()
            .map(|d| RatFn::from_parts(d.scale(&inv), f.factors.clone()))
            .collect(),
    ))
}

/// `nabla_theta(phi) = sum_i theta(phi(x_i)) d/dx_i`.
pub fn nabla(theta: &LogVectorField, phi: &LogVectorField) -> LogVectorField {
    LogVectorField::new(phi.coeffs().iter().map(|c| theta.apply_ratfn(c)).collect())
}

/// Invariant polynomial field `E_k` of degree `k h + 1` with
/// `nabla_D E_k = E_(k-1)` and `E_0` the Euler field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkField {
    pub k: u32,
    pub field: LogVectorField,
}

/// `E_0, ..., E_k`.
pub fn ek_sequence(c: &CoxeterData, k: u32) -> Result<Vec<EkField>, CoxeterError> {
    let prim = primitive_parts(c)?;
    let d = primitive_derivation(c)?;
    let mut out = vec![EkField {
        k: 0,
        field: LogVectorField::euler(c.dim()),
    }];
    for j in 1..=k {
        let field = solve_step(c, &prim, &out[j as usize - 1].field, j)?;
        verify(c, &d, &out[j as usize - 1].field, &field, j)?;
        out.push(EkField { k: j, field });
    }
    Ok(out)
}

pub fn ek(c: &CoxeterData, k: u32) -> Result<EkField, CoxeterError> {
    Ok(ek_sequence(c, k)?.pop().expect("sequence starts with E_0"))
}

/// Solves `sum_s c_s nabla_D H_s = lambda E_(k-1)` over invariant members
/// `H_s` of `D(A, 2k+1)` in degree `k h + 1`, after multiplying through
/// by `det J`.
fn solve_step(c: &CoxeterData, prim: &Primitive, prev: &LogVectorField, k: u32) -> Result<LogVectorField, CoxeterError> {
    let n = c.dim();
    let target = c.arrangement.map_multiplicities(|_| 2 * k as i64 + 1);
    let piece = GradedPiece::compute(&target, &c.g, (k * c.h + 1) as i64);
    let mut seen = Echelon::new(piece.ambient_dim());
    let mut ansatz = Vec::new();
    for f in piece.fields() {
        let r = reynolds(&f, &c.group);
        if let Some(v) = piece.coords(&r) {
            if seen.insert(v) {
                ansatz.push(r);
            }
        }
    }
    if ansatz.is_empty() {
        return Err(CoxeterError::NoSolution { k });
    }
    let lambda = ansatz.len();
    let mut rows: BTreeMap<(usize, Monomial), SparseVec> = BTreeMap::new();
    let mut put = |col: usize, i: usize, p: &Poly| {
        for (mono, coef) in p.terms() {
            let row = rows.entry((i, mono.clone())).or_default();
            let e = row.entry(col).or_insert_with(Rational::zero);
            *e += coef;
            if e.is_zero() {
                row.remove(&col);
            }
        }
    };
    for (s, h) in ansatz.iter().enumerate() {
        for i in 0..n {
            let hi = h.coeff(i).as_poly().expect("ansatz fields are polynomial");
            put(s, i, &prim.apply(hi));
        }
    }
    for i in 0..n {
        let pi = prev.coeff(i).as_poly().expect("E_k is polynomial");
        put(lambda, i, &-&(&prim.delta * pi));
    }
    let mut system = Echelon::new(lambda + 1);
    for row in rows.into_values().filter(|r| !r.is_empty()) {
        system.insert(row);
    }
    let kernel = system.nullspace();
    match kernel.len() {
        0 => return Err(CoxeterError::NoSolution { k }),
        1 => {}
        dim => {
            if kernel.iter().all(|v| v[lambda].is_zero()) {
                return Err(CoxeterError::NoSolution { k });
            }
            return Err(CoxeterError::NonUnique { k, dim });
        }
    }
    let v = &kernel[0];
    if v[lambda].is_zero() {
        return Err(CoxeterError::NoSolution { k });
    }
    let mut out = LogVectorField::zero(n);
    for (s, h) in ansatz.iter().enumerate() {
        if !v[s].is_zero() {
            out = &out + &h.scale(&(&v[s] / &v[lambda]));
        }
    }
    Ok(out)
}

fn verify(c: &CoxeterData, d: &LogVectorField, prev: &LogVectorField, e: &LogVectorField, k: u32) -> Result<(), CoxeterError> {
    let fail = |reason: String| CoxeterError::Verification { k, reason };
    if !e.is_polynomial() {
        return Err(fail("coefficients are not polynomial".into()));
    }
    if e.degree() != Some((k * c.h + 1) as i64) {
        return Err(fail(format!("expected degree {}", k * c.h + 1)));
    }
    if c.group.iter().any(|w| act_field(w, e) != *e) {
        return Err(fail("field is not invariant".into()));
    }
    for alpha in c.arrangement.forms() {
        let value = e.apply_form(&alpha);
        let p = value.as_poly().expect("polynomial field");
        let (_, mult) = p.divide_linear(&alpha);
        if mult != Multiplicity::Finite(2 * k + 1) {
            return Err(fail(format!(
                "value on `{}` does not vanish to order exactly {}",
                alpha.display(c.vars()),
                2 * k + 1
            )));
        }
    }
    if nabla(d, e) != *prev {
        return Err(fail("nabla_D E_k differs from E_(k-1)".into()));
    }
    Ok(())
}

/// `Phi_k(theta) = nabla_theta E_k`.
pub fn phi(theta: &LogVectorField, e: &EkField) -> LogVectorField {
    nabla(theta, &e.field)
}

/// The arrangement `2k + m` on the reflecting hyperplanes.
pub fn shift_target(c: &CoxeterData, m: &SignedMulti, k: u32) -> Result<SignedMulti, CoxeterError> {
    let aligned = aligned_multiplicity(c, m)?;
    Ok(aligned.map_multiplicities(|v| 2 * k as i64 + v))
}

fn aligned_multiplicity(c: &CoxeterData, m: &SignedMulti) -> Result<SignedMulti, CoxeterError> {
    let aligned = c.multiplicity(m)?;
    for h in aligned.hyperplanes() {
        if !(-1..=1).contains(&h.multiplicity) {
            return Err(CoxeterError::MultiplicityRange {
                form: h.form.display(c.vars()).to_string(),
                value: h.multiplicity,
            });
        }
    }
    Ok(aligned)
}

/// Certified images of a basis under the shift map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCertificate {
    pub k: u32,
    pub ek: EkField,
    pub source: FreeBasis,
    pub target: SignedMulti,
    pub image: FreeBasis,
}

/// Checks that `basis` is a basis for `m`, then that its images under
/// `Phi_k` form a basis of `D(A, 2k + m)`.
pub fn shift_verify(
    c: &CoxeterData,
    m: &SignedMulti,
    k: u32,
    basis: &[LogVectorField],
) -> Result<ShiftCertificate, CoxeterError> {
    let aligned = aligned_multiplicity(c, m)?;
    let source = saito_check(basis, &aligned, &c.g).map_err(CoxeterError::SourceNotBasis)?;
    let e = ek(c, k)?;
    let images: Vec<LogVectorField> = basis.iter().map(|t| phi(t, &e)).collect();
    let target = aligned.map_multiplicities(|v| 2 * k as i64 + v);
    let image = saito_check(&images, &target, &c.g).map_err(CoxeterError::ImageNotBasis)?;
    Ok(ShiftCertificate {
        k,
        ek: e,
        source,
        target,
        image,
    })
}
