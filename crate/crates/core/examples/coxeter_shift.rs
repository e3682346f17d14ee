//! Primitive derivation, the fields E_k and the shift of a basis for B2.

use genlog::arrangement::SignedMulti;
use genlog::coxeter::{ek_sequence, primitive_derivation, shift_verify, CoxeterData};
use genlog::logmod::LogVectorField;

fn main() {
    let c = CoxeterData::b2_default();
    let vars = c.vars().to_vec();
    let d = primitive_derivation(&c).unwrap();
    println!("D = {}", d.display(&vars));
    for e in ek_sequence(&c, 2).unwrap() {
        println!("E_{} = {}", e.k, e.field.display(&vars));
    }

    let m = SignedMulti::from_strs(&["x", "y"], &[("x", -1), ("y", 1), ("x - y", -1)]).unwrap();
    let basis: Vec<LogVectorField> = ["(1/x)@x", "(x/(x - y))@x - (y/(x - y))@y"]
        .iter()
        .map(|s| LogVectorField::parse(s, &vars, &[]).unwrap())
        .collect();
    for k in 1..=2 {
        let cert = shift_verify(&c, &m, k, &basis).unwrap();
        println!("k = {k}: target multiplicities {:?}", cert.target.multiplicities());
        println!("  image exponents {:?}", cert.image.exponents);
        for t in &cert.image.basis {
            println!("  {}", t.display(&vars));
        }
    }
}
