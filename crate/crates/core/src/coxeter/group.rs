use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::InnerProduct;
use crate::logmod::LogVectorField;
use crate::poly::linalg::{identity, inverse, mat_mul, mat_vec, transpose, Matrix};
use crate::poly::{LinForm, Poly, RatFn, Rational};

use super::CoxeterError;

/// Upper bound on the order of a generated group.
pub const GROUP_BOUND: usize = 5_000;

/// Reflection in the root `a`, acting on coefficient vectors of linear
/// forms: `b -> b - 2 (b^T G a) / (a^T G a) a`.
pub fn reflection(a: &LinForm, g: &InnerProduct) -> Matrix {
    let n = a.nvars();
    let gm = g.matrix();
    let ac = a.coeffs();
    let ga: Vec<Rational> = (0..n)
        .map(|i| (0..n).fold(Rational::zero(), |acc, j| acc + &gm[i][j] * &ac[j]))
        .collect();
    let norm = ac.iter().zip(&ga).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
    let two = Rational::from_integer(BigInt::from(2));
    let mut m = identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] -= &two * &ac[i] * &ga[j] / &norm;
        }
    }
    m
}

fn form_product(a: &LinForm, b: &LinForm, g: &InnerProduct) -> Rational {
    let gm = g.matrix();
    let (ac, bc) = (a.coeffs(), b.coeffs());
    let mut acc = Rational::zero();
    for i in 0..ac.len() {
        for j in 0..bc.len() {
            acc += &ac[i] * &gm[i][j] * &bc[j];
        }
    }
    acc
}

/// A product of two rational reflections has finite order only for the
/// squared cosines 0, 1/4, 1/2, 3/4 and 1.
fn pair_has_finite_order(a: &LinForm, b: &LinForm, g: &InnerProduct) -> bool {
    let ab = form_product(a, b, g);
    let cos2 = &ab * &ab / (form_product(a, a, g) * form_product(b, b, g));
    let four = &cos2 * Rational::from_integer(BigInt::from(4));
    four.is_integer() && four <= Rational::from_integer(BigInt::from(4))
}

/// Closure of the reflections in `roots`, identity first.
pub fn generate_group(roots: &[LinForm], g: &InnerProduct) -> Result<Vec<Matrix>, CoxeterError> {
    let n = g.dim();
    for (i, a) in roots.iter().enumerate() {
        if roots[i + 1..].iter().any(|b| !pair_has_finite_order(a, b, g)) {
            return Err(CoxeterError::GroupNotFinite { bound: GROUP_BOUND });
        }
    }
    let gens: Vec<Matrix> = roots.iter().map(|a| reflection(a, g)).collect();
    let id = identity(n);
    let mut seen: BTreeSet<Matrix> = BTreeSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for s in &gens {
            let next = mat_mul(s, &w);
            if seen.insert(next.clone()) {
                if out.len() >= GROUP_BOUND {
                    return Err(CoxeterError::GroupNotFinite { bound: GROUP_BOUND });
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// `w . p`: substitutes for each `x_j` the form with coefficients given by
/// column `j` of `w`.
pub fn act_poly(w: &Matrix, p: &Poly) -> Poly {
    let images: Vec<Poly> = transpose(w).iter().map(|col| Poly::linear(col)).collect();
    p.compose(&images)
}

pub fn act_ratfn(w: &Matrix, r: &RatFn) -> RatFn {
    if r.is_polynomial() {
        return RatFn::from_poly(act_poly(w, r.numer()));
    }
    let images: Vec<Poly> = transpose(w).iter().map(|col| Poly::linear(col)).collect();
    let num = r.numer().compose(&images);
    let mut den = std::collections::BTreeMap::new();
    let mut scale = Rational::from_integer(BigInt::from(1));
    for (f, &k) in r.den_factors() {
        let (form, s) = LinForm::from_poly(&f.to_poly().compose(&images)).expect("invertible action");
        *den.entry(form).or_insert(0) += k;
        for _ in 0..k {
            scale *= &s;
        }
    }
    RatFn::from_parts(num, den).scale(&(Rational::from_integer(BigInt::from(1)) / scale))
}

/// The field `w . theta`, characterized by `(w.theta)(w.f) = w.(theta f)`.
pub fn act_field(w: &Matrix, theta: &LogVectorField) -> LogVectorField {
    let moved: Vec<RatFn> = theta.coeffs().iter().map(|t| act_ratfn(w, t)).collect();
    let inv_t = transpose(&inverse(w).expect("group elements are invertible"));
    let n = moved.len();
    LogVectorField::new(
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !inv_t[i][j].is_zero())
                    .fold(RatFn::zero(n), |acc, j| &acc + &moved[j].scale(&inv_t[i][j]))
            })
            .collect(),
    )
}

/// Average of `w . theta` over the group.
pub fn reynolds(theta: &LogVectorField, group: &[Matrix]) -> LogVectorField {
    let n = theta.nvars();
    let mut acc = LogVectorField::zero(n);
    for w in group {
        acc = &acc + &act_field(w, theta);
    }
    acc.scale(&(Rational::from_integer(BigInt::from(1)) / Rational::from_integer(BigInt::from(group.len()))))
}

/// Orbit of the given forms under the group, in discovery order.
pub fn root_orbit(roots: &[LinForm], group: &[Matrix]) -> Vec<LinForm> {
    let mut out: Vec<LinForm> = Vec::new();
    for a in roots {
        for w in group {
            let image = LinForm::new(mat_vec(w, a.coeffs())).expect("invertible action");
            if !out.contains(&image) {
                out.push(image);
            }
        }
    }
    // Keep the given roots in front, in their original order.
    let mut ordered: Vec<LinForm> = roots.iter().filter(|r| out.contains(r)).cloned().collect();
    ordered.dedup();
    for f in out {
        if !ordered.contains(&f) {
            ordered.push(f);
        }
    }
    ordered
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn lf(c: &[i64]) -> LinForm {
        LinForm::new(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn group_orders() {
        let id = InnerProduct::identity(2);
        let b2 = [lf(&[1, 0]), lf(&[0, 1]), lf(&[1, -1]), lf(&[1, 1])];
        assert_eq!(generate_group(&b2, &id).unwrap().len(), 8);
        assert_eq!(generate_group(&[lf(&[1, 0])], &id).unwrap().len(), 2);
        let g = InnerProduct::new(vec![vec![int(2), int(-1)], vec![int(-1), int(2)]]).unwrap();
        assert_eq!(generate_group(&[lf(&[1, 0]), lf(&[0, 1]), lf(&[1, 1])], &g).unwrap().len(), 6);
    }

    #[test]
    fn non_crystallographic_angle_does_not_close() {
        let id = InnerProduct::identity(2);
        let roots = [lf(&[1, 0]), lf(&[1, 2])];
        assert!(matches!(generate_group(&roots, &id), Err(CoxeterError::GroupNotFinite { .. })));
    }

    #[test]
    fn reynolds_examples() {
        let id = InnerProduct::identity(2);
        let b2 = [lf(&[1, 0]), lf(&[0, 1]), lf(&[1, -1]), lf(&[1, 1])];
        let w = generate_group(&b2, &id).unwrap();
        let e = LogVectorField::euler(2);
        assert_eq!(reynolds(&e, &w), e);
        assert!(reynolds(&LogVectorField::partial(2, 0), &w).is_zero());
        let x3 = LogVectorField::from_polys(vec![Poly::var(2, 0).pow(3), Poly::zero(2)]);
        let r = reynolds(&x3, &w);
        assert_eq!(reynolds(&r, &w), r);
    }
}
