//! Certifying a basis with the determinant criterion.

use genlog::arrangement::{InnerProduct, SignedMulti};
use genlog::logmod::{degree_criterion, saito_check, LogVectorField};

fn main() {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let a = SignedMulti::from_strs(&["x", "y"], &[("y", 1), ("x", -1), ("x - y", -1)]).unwrap();
    let g = InnerProduct::identity(2);
    let basis: Vec<LogVectorField> = ["(1/x)@x", "(x/(x - y))@x - (y/(x - y))@y"]
        .iter()
        .map(|s| LogVectorField::parse(s, &vars, &a.forms()).unwrap())
        .collect();
    let fb = saito_check(&basis, &a, &g).unwrap();
    println!("determinant: {}", fb.determinant.display(&vars));
    println!("scalar: {}", fb.scalar);
    println!("exponents: {:?}", fb.exponents);
    println!("degree criterion: {}", degree_criterion(&basis, &a, &g).unwrap());

    let swapped = [basis[0].clone(), basis[0].clone()];
    println!("repeated field: {}", saito_check(&swapped, &a, &g).unwrap_err());
}
