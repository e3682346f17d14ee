use crate::arrangement::{InnerProduct, SignedMulti};
use crate::poly::{LinForm, RatFn};

use super::LogVectorField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `Q- * t_i` is not a polynomial.
    Denominator,
    /// `alpha^m` does not divide `Q- * theta(alpha)`.
    PlusDivisibility,
    /// A form-side minor has a pole along `alpha`.
    MinusRegularity,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Denominator => "denominator",
            Condition::PlusDivisibility => "plus-divisibility",
            Condition::MinusRegularity => "minus-regularity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The hyperplane, or for denominator violations the offending factor.
    pub hyperplane: LinForm,
    pub kind: Condition,
    pub witness: RatFn,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MembershipReport {
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_member(theta: &LogVectorField, a: &SignedMulti, g: &InnerProduct) -> MembershipReport {
    assert_eq!(theta.nvars(), a.dim(), "field and arrangement dimensions differ");
    let mut violations = Vec::new();
    if theta.is_zero() {
        return MembershipReport { violations };
    }
    let q_minus = RatFn::from_poly(a.q_minus());
    let allowed = a.q_minus_factors();

    for t in theta.coeffs() {
        for (form, &k) in t.den_factors() {
            if allowed.get(form).copied().unwrap_or(0) < k {
                violations.push(Violation {
                    hyperplane: form.clone(),
                    kind: Condition::Denominator,
                    witness: &q_minus * t,
                });
            }
        }
    }

    for (alpha, m0) in a.plus() {
        let w = &q_minus * &theta.apply_form(alpha);
        if w.is_zero() {
            continue;
        }
        let order = w.pole_order(alpha).expect("nonzero");
        if !w.is_polynomial() || order > -(m0 as i64) {
            violations.push(Violation {
                hyperplane: alpha.clone(),
                kind: Condition::PlusDivisibility,
                witness: w,
            });
        }
    }

    let form_side = theta.to_form(g);
    let gs = form_side.coeffs();
    for (alpha, _) in a.minus() {
        let ac = alpha.coeffs();
        'pairs: for i in 0..gs.len() {
            for j in i + 1..gs.len() {
                let minor = &gs[i].scale(&ac[j]) - &gs[j].scale(&ac[i]);
                if minor.is_zero() {
                    continue;
                }
                if minor.pole_order(alpha).expect("nonzero") > 0 {
                    violations.push(Violation {
                        hyperplane: alpha.clone(),
                        kind: Condition::MinusRegularity,
                        witness: minor,
                    });
                    break 'pairs;
                }
            }
        }
    }
    MembershipReport { violations }
}

/// Membership of a form-side element `omega` (coefficients on the
/// differentials) in the dual module, tested as membership of its field
/// image `G omega` against the negated multiplicity.
pub fn omega_module_member(omega: &LogVectorField, a: &SignedMulti, g: &InnerProduct) -> MembershipReport {
    is_member(&omega.from_form(g), &a.negate(), g)
}
