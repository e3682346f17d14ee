//! Degree-by-degree basis search on the two braid multiplicities.

use genlog::arrangement::load_spec;
use genlog::logmod::{find_basis, BasisCertificate};

fn main() {
    for (name, depth) in [("braid_free.toml", 2), ("braid_not_free.toml", 4)] {
        let path = format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
        let spec = load_spec(&std::fs::read_to_string(path).unwrap()).unwrap();
        let vars = spec.arrangement.vars();
        match find_basis(&spec.arrangement, &spec.inner_product, depth) {
            BasisCertificate::Free(fb) => {
                println!("{name}: free with exponents {:?}", fb.exponents);
                for t in &fb.basis {
                    println!("  {}", t.display(vars));
                }
            }
            BasisCertificate::NotFree(ev) => {
                println!(
                    "{name}: not free, {} generators by degree {} (degrees {:?})",
                    ev.generators.len(),
                    ev.degree,
                    ev.generator_degrees
                );
            }
            BasisCertificate::Inconclusive { max_degree, .. } => {
                println!("{name}: undecided up to degree {max_degree}");
            }
        }
    }
}
