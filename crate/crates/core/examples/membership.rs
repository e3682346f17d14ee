//! Membership tests with per-hyperplane diagnostics.

use genlog::arrangement::{InnerProduct, SignedMulti};
use genlog::logmod::{is_member, LogVectorField};

fn main() {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let a = SignedMulti::from_strs(&["x", "y"], &[("x", 1), ("y", -1)]).unwrap();
    let g = InnerProduct::identity(2);
    for src in ["x@x", "(1/y)@y", "@x", "(1/(x + y))@x"] {
        let t = LogVectorField::parse(src, &vars, &a.forms()).unwrap();
        let report = is_member(&t, &a, &g);
        println!("{src}: member = {}", report.is_member());
        for v in &report.violations {
            println!(
                "  {} fails at {}: {}",
                v.kind.as_str(),
                v.hyperplane.display(&vars),
                v.witness.display(&vars)
            );
        }
    }
}
