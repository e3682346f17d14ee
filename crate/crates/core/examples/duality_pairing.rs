//! Pairing a basis for `m` against a basis for `-m`.

use genlog::arrangement::{InnerProduct, SignedMulti};
use genlog::logmod::{find_basis, pairing_matrix};
use genlog::poly::int;

fn main() {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let a = SignedMulti::from_strs(&["x", "y"], &[("x", 1), ("y", -1), ("x - y", 2)]).unwrap();
    let g = InnerProduct::new(vec![vec![int(1), int(1)], vec![int(1), int(2)]]).unwrap();
    let depth = a.deg_q_plus().max(a.deg_q_minus());
    let plus = find_basis(&a, &g, depth).free().cloned().unwrap();
    let minus = find_basis(&a.negate(), &g, depth).free().cloned().unwrap();
    println!("exponents for m: {:?}", plus.exponents);
    println!("exponents for -m: {:?}", minus.exponents);
    let m = pairing_matrix(&plus.basis, &minus.basis, &g).unwrap();
    for row in &m {
        let shown: Vec<String> = row.iter().map(|p| p.display(&vars).to_string()).collect();
        println!("[{}]", shown.join(", "));
    }
}
