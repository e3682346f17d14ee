//! Loading, overriding and re-emitting a spec file.

use genlog::arrangement::{emit_spec, load_spec, parse_inner_product};

const SPEC: &str = r#"
variables = ["x", "y"]

[[hyperplane]]
form = "x"
multiplicity = 1

[[hyperplane]]
form = "y"
multiplicity = -1
"#;

fn main() {
    let mut spec = load_spec(SPEC).unwrap();
    spec.inner_product = parse_inner_product("[[1, 1], [1, 2]]", spec.arrangement.dim()).unwrap();
    let text = emit_spec(&spec);
    print!("{text}");
    assert_eq!(load_spec(&text).unwrap(), spec);

    match load_spec(&SPEC.replace("form = \"y\"", "form = \"y +\"")) {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
