use crate::arrangement::{InnerProduct, SignedMulti};
use crate::poly::linalg::det;
use crate::poly::{RatFn, Rational};

use super::{is_member, proportionality, FieldError, LogVectorField, MembershipReport};

/// Certified homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeBasis {
    pub basis: Vec<LogVectorField>,
    /// Degrees of the basis fields, ascending.
    pub exponents: Vec<i64>,
    /// `det M = scalar * Q+ / Q-`.
    pub scalar: Rational,
    pub determinant: RatFn,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SaitoFailure {
    #[error("expected {expected} fields, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("field {} is not a member", .index + 1)]
    NotMember { index: usize, report: MembershipReport },
    #[error("determinant vanishes; the fields are dependent")]
    Dependent,
    #[error("determinant is not a constant multiple of the defining function")]
    NotMultiple { determinant: RatFn },
}

/// Matrix with `(i, j)` entry `theta_j(x_i)`.
pub fn saito_matrix(thetas: &[LogVectorField]) -> Vec<Vec<RatFn>> {
    let n = thetas.first().map_or(0, LogVectorField::nvars);
    (0..n)
        .map(|i| thetas.iter().map(|t| t.coeff(i).clone()).collect())
        .collect()
}

fn homogeneous_degrees(thetas: &[LogVectorField]) -> Result<Vec<i64>, FieldError> {
    thetas
        .iter()
        .enumerate()
        .map(|(index, t)| {
            if t.is_zero() {
                return Err(FieldError::Zero { index });
            }
            t.degree().ok_or(FieldError::NotHomogeneous { index })
        })
        .collect()
}

pub fn saito_check(
    thetas: &[LogVectorField],
    a: &SignedMulti,
    g: &InnerProduct,
) -> Result<FreeBasis, SaitoFailure> {
    let n = a.dim();
    if thetas.len() != n {
        return Err(SaitoFailure::WrongCount {
            expected: n,
            found: thetas.len(),
        });
    }
    for t in thetas {
        if t.nvars() != n {
            return Err(FieldError::DimensionMismatch {
                expected: n,
                found: t.nvars(),
            }
            .into());
        }
    }
    let mut exponents = homogeneous_degrees(thetas)?;
    for (index, t) in thetas.iter().enumerate() {
        let report = is_member(t, a, g);
        if !report.is_member() {
            return Err(SaitoFailure::NotMember { index, report });
        }
    }
    let determinant = det(&saito_matrix(thetas), n);
    if determinant.is_zero() {
        return Err(SaitoFailure::Dependent);
    }
    let Some(scalar) = proportionality(&determinant, &a.defining_function()) else {
        return Err(SaitoFailure::NotMultiple { determinant });
    };
    exponents.sort_unstable();
    Ok(FreeBasis {
        basis: thetas.to_vec(),
        exponents,
        scalar,
        determinant,
    })
}

/// Independence plus the degree-sum condition for homogeneous members.
pub fn degree_criterion(
    thetas: &[LogVectorField],
    a: &SignedMulti,
    _g: &InnerProduct,
) -> Result<bool, FieldError> {
    let degrees = homogeneous_degrees(thetas)?;
    if thetas.len() != a.dim() {
        return Ok(false);
    }
    let independent = !det(&saito_matrix(thetas), a.dim()).is_zero();
    Ok(independent && degrees.iter().sum::<i64>() == a.m_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn fields(ss: &[&str]) -> Vec<LogVectorField> {
        ss.iter().map(|s| LogVectorField::parse(s, &vars(), &[]).unwrap()).collect()
    }

    fn two_lines() -> SignedMulti {
        SignedMulti::from_strs(&["x", "y"], &[("x", 1), ("y", -1)]).unwrap()
    }

    fn three_lines() -> SignedMulti {
        SignedMulti::from_strs(&["x", "y"], &[("y", 1), ("x", -1), ("x - y", -1)]).unwrap()
    }

    #[test]
    fn two_line_basis() {
        let id = InnerProduct::identity(2);
        let fb = saito_check(&fields(&["x@x", "(1/y)@y"]), &two_lines(), &id).unwrap();
        assert_eq!(fb.scalar, int(1));
        assert_eq!(fb.exponents, vec![-1, 1]);
    }

    #[test]
    fn three_line_basis() {
        let id = InnerProduct::identity(2);
        let fb = saito_check(&fields(&["(1/x)@x", "(x/(x - y))@x - (y/(x - y))@y"]), &three_lines(), &id).unwrap();
        assert_eq!(fb.scalar, int(-1));
        assert_eq!(fb.exponents, vec![-1, 0]);
    }

    #[test]
    fn mismatched_determinant() {
        let id = InnerProduct::identity(2);
        let err = saito_check(&fields(&["x@x", "x@y"]), &two_lines(), &id).unwrap_err();
        assert!(matches!(err, SaitoFailure::NotMultiple { .. }));
        let err = saito_check(&fields(&["x@x"]), &two_lines(), &id).unwrap_err();
        assert!(matches!(err, SaitoFailure::WrongCount { expected: 2, found: 1 }));
    }

    #[test]
    fn degree_criterion_examples() {
        let id = InnerProduct::identity(2);
        assert!(degree_criterion(&fields(&["x@x", "(1/y)@y"]), &two_lines(), &id).unwrap());
        assert!(degree_criterion(&fields(&["(1/x)@x", "(x/(x - y))@x - (y/(x - y))@y"]), &three_lines(), &id).unwrap());
        assert!(!degree_criterion(&fields(&["x@x", "(x/y)@y"]), &two_lines(), &id).unwrap());
        assert!(degree_criterion(&fields(&["x@x + @y", "@y"]), &two_lines(), &id).is_err());
    }
}
