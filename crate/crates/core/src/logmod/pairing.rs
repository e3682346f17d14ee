use num_traits::Zero;

use crate::arrangement::InnerProduct;
use crate::poly::{LinForm, Poly, RatFn};

use super::LogVectorField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("pairing is not a polynomial; it has a pole along a hyperplane")]
    NotPolynomial { pole: LinForm, value: RatFn },
}

/// `<theta, omega> = t^T G^-1 u`, which is `sum t_i u_i` for the identity.
pub fn pairing(theta: &LogVectorField, omega: &LogVectorField, g: &InnerProduct) -> Result<Poly, PairingError> {
    let n = theta.nvars();
    let ginv = g.inverse();
    let mut acc = RatFn::zero(n);
    for i in 0..n {
        if theta.coeff(i).is_zero() {
            continue;
        }
        for j in 0..n {
            if ginv[i][j].is_zero() || omega.coeff(j).is_zero() {
                continue;
            }
            acc = &acc + &(theta.coeff(i) * omega.coeff(j)).scale(&ginv[i][j]);
        }
    }
    match acc.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(PairingError::NotPolynomial {
            pole: acc.den_factors().keys().next().unwrap().clone(),
            value: acc,
        }),
    }
}

/// Matrix of pairings `<thetas[i], omegas[j]>`.
pub fn pairing_matrix(
    thetas: &[LogVectorField],
    omegas: &[LogVectorField],
    g: &InnerProduct,
) -> Result<Vec<Vec<Poly>>, PairingError> {
    thetas
        .iter()
        .map(|t| omegas.iter().map(|o| pairing(t, o, g)).collect())
        .collect()
}
