mod common;

use common::{field, fixture, xy, THREE_LINE_BASIS};
use genlog::arrangement::load_spec;
use genlog::coxeter::{act_field, ek, primitive_derivation, reynolds, shift_verify, CoxeterData, CoxeterError};
use genlog::logmod::{find_basis, LogVectorField};
use genlog::poly::linalg::{mat_mul, transpose};
use genlog::poly::{rat, Monomial, Poly};
use proptest::prelude::*;

fn builtins() -> Vec<CoxeterData> {
    vec![CoxeterData::a2_default(), CoxeterData::b2_default(), CoxeterData::a3_default()]
}

#[test]
fn groups_are_closed_and_preserve_the_inner_product() {
    for c in builtins() {
        let g = c.g.matrix();
        assert!(c.group.contains(&genlog::poly::linalg::identity(c.dim())));
        for u in &c.group {
            assert_eq!(&mat_mul(&mat_mul(&transpose(u), g), u), g);
            for w in &c.group {
                assert!(c.group.contains(&mat_mul(u, w)));
            }
        }
        assert_ne!(c.jacobian_scalar, rat(0, 1));
    }
}

#[test]
fn primitive_derivation_is_normalized() {
    for c in builtins() {
        let d = primitive_derivation(&c).unwrap();
        let l = c.invariants.len();
        for (j, p) in c.invariants.iter().enumerate() {
            let value = d.apply(p);
            if j + 1 == l {
                assert!(value.constant_value() == Some(rat(1, 1)));
            } else {
                assert!(value.is_zero());
            }
        }
    }
}

#[test]
fn b2_negated_and_constant_multiplicities() {
    let c = CoxeterData::b2_default();
    let m = c.multiplicity(&fixture("b2_shift.toml").arrangement).unwrap();
    let neg = m.negate();
    let found = find_basis(&neg, &c.g, 4);
    let basis = found.free().expect("the plane is always free").basis.clone();
    let cert = shift_verify(&c, &neg, 1, &basis).unwrap();
    assert_eq!(cert.image.exponents, vec![4, 5]);
    assert_eq!(cert.target.multiplicities(), vec![3, 1, 3, 2]);

    let zero = c.arrangement.map_multiplicities(|_| 0);
    let cert = shift_verify(&c, &zero, 1, &[field("@x", &xy()), field("@y", &xy())]).unwrap();
    assert_eq!(cert.image.exponents, vec![4, 4]);
    assert_eq!(cert.target.multiplicities(), vec![2, 2, 2, 2]);

    let cert = shift_verify(&c, &m, 2, &THREE_LINE_BASIS.map(|s| field(s, &xy()))).unwrap();
    assert_eq!(cert.image.exponents, vec![7, 8]);
}

#[test]
fn a2_shift_of_the_trivial_basis() {
    let c = CoxeterData::a2_default();
    let e1 = ek(&c, 1).unwrap();
    assert_eq!(e1.field.degree(), Some(4));
    let zero = c.arrangement.map_multiplicities(|_| 0);
    let cert = shift_verify(&c, &zero, 1, &[field("@x", &xy()), field("@y", &xy())]).unwrap();
    assert_eq!(cert.image.exponents, vec![3, 3]);
}

#[test]
fn spec_supplied_invariants_match_the_builtin() {
    let text = r#"
variables = ["x", "y"]

[[hyperplane]]
form = "x"
multiplicity = 1

[coxeter]
invariants = ["(x^2 + y^2)/2", "(x^4 + y^4)/4"]
roots = ["x", "y", "x - y", "x + y"]
"#;
    let spec = load_spec(text).unwrap();
    let c = CoxeterData::from_spec(&spec).unwrap().unwrap();
    let b2 = CoxeterData::b2_default();
    assert_eq!(c.group.len(), 8);
    assert_eq!(ek(&c, 1).unwrap(), ek(&b2, 1).unwrap());

    let wrong = text.replace("(x^4 + y^4)/4", "x^3*y");
    let spec = load_spec(&wrong).unwrap();
    assert!(matches!(CoxeterData::from_spec(&spec), Err(CoxeterError::NotInvariant { index: 1 })));
}

#[test]
fn builtin_type_requires_its_inner_product() {
    let text = r#"
variables = ["x", "y"]

[[hyperplane]]
form = "x"
multiplicity = 1

[coxeter]
type = "A2"
"#;
    let spec = load_spec(text).unwrap();
    assert!(matches!(CoxeterData::from_spec(&spec), Err(CoxeterError::InnerProduct { .. })));
    let fixed = text.replace("[[hyperplane]]", "inner_product = [[2, -1], [-1, 2]]\n\n[[hyperplane]]");
    let spec = load_spec(&fixed).unwrap();
    assert_eq!(CoxeterData::from_spec(&spec).unwrap().unwrap().group.len(), 6);
}

fn poly_field() -> impl Strategy<Value = LogVectorField> {
    prop::collection::vec(((0u32..4, 0u32..4), -3i64..=3), 1..6).prop_flat_map(|terms| {
        let a = Poly::from_terms(2, terms.iter().map(|((i, j), c)| (Monomial::new(vec![*i, *j]), rat(*c, 1))));
        (Just(a), prop::collection::vec(((0u32..4, 0u32..4), -3i64..=3), 1..6)).prop_map(|(a, terms)| {
            let b = Poly::from_terms(2, terms.iter().map(|((i, j), c)| (Monomial::new(vec![*i, *j]), rat(*c, 1))));
            LogVectorField::from_polys(vec![a, b])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reynolds_projects_onto_invariants(t in poly_field()) {
        let c = CoxeterData::b2_default();
        let r = reynolds(&t, &c.group);
        prop_assert_eq!(reynolds(&r, &c.group), r.clone());
        for w in &c.group {
            prop_assert_eq!(act_field(w, &r), r.clone());
        }
    }

    #[test]
    fn field_action_is_compatible_with_application(t in poly_field(), i in 0usize..8) {
        let c = CoxeterData::b2_default();
        let w = &c.group[i];
        let p = &c.invariants[1] * &Poly::var(2, 0);
        let lhs = act_field(w, &t).apply(&genlog::coxeter::act_poly(w, &p));
        let rhs = t.apply(&p);
        let moved = genlog::poly::RatFn::from_poly(genlog::coxeter::act_poly(w, rhs.as_poly().unwrap()));
        prop_assert_eq!(lhs, moved);
    }
}
