//! Dimensions of homogeneous pieces against the Hilbert function of a free
//! module with the same exponents.

use genlog::arrangement::{InnerProduct, SignedMulti};
use genlog::logmod::{find_basis, GradedPiece};
use genlog::poly::monomial_count;

fn main() {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let a = SignedMulti::from_strs(&["x", "y"], &[("x", 2), ("y", -1), ("x + y", 1)]).unwrap();
    let g = InnerProduct::identity(2);
    let fb = find_basis(&a, &g, a.deg_q_plus()).free().cloned().expect("plane arrangements are free");
    println!("exponents: {:?}", fb.exponents);
    for d in -a.deg_q_minus()..=4 {
        let piece = GradedPiece::compute(&a, &g, d);
        let hilbert: usize = fb.exponents.iter().map(|e| monomial_count(2, d - e)).sum();
        println!("degree {d:>2}: dim {} (free count {hilbert})", piece.dim());
        if d == -a.deg_q_minus() {
            for t in piece.fields() {
                println!("  {}", t.display(&vars));
            }
        }
    }
}
