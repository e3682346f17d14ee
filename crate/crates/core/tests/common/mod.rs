#![allow(dead_code)]

use genlog::arrangement::{load_spec, InnerProduct, SignedMulti, Spec};
use genlog::logmod::LogVectorField;
use genlog::poly::{int, LinForm};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

pub fn fixture(name: &str) -> Spec {
    load_spec(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn field(s: &str, vars: &[String]) -> LogVectorField {
    LogVectorField::parse(s, vars, &[]).unwrap()
}

pub fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

pub const THREE_LINE_BASIS: [&str; 2] = ["(1/x)@x", "(x/(x - y))@x - (y/(x - y))@y"];

pub const BRAID_FREE_BASIS: [&str; 4] = [
    "@x1 + @x2 + @x3",
    "x1@x1 + x2@x2 + x3@x3",
    "@x4",
    "(1/(x1 - x4))@x1 + (1/(x2 - x4))@x2 + (1/(x3 - x4))@x3 - (1/(x1 - x4) + 1/(x2 - x4) + 1/(x3 - x4))@x4",
];

const FORM_POOL: [[i64; 2]; 8] = [[1, 0], [0, 1], [1, 1], [1, -1], [1, 2], [2, 1], [1, -2], [2, -1]];

/// Random signed arrangement in the plane with one to three hyperplanes.
pub fn random_plane_arrangement(rng: &mut StdRng) -> SignedMulti {
    let count = rng.gen_range(1..=3);
    let mut pool = FORM_POOL.to_vec();
    pool.shuffle(rng);
    let hyperplanes = pool[..count]
        .iter()
        .map(|c| genlog::arrangement::Hyperplane {
            form: LinForm::new(vec![int(c[0]), int(c[1])]).unwrap(),
            multiplicity: *[-2i64, -1, 1, 2].choose(rng).unwrap(),
        })
        .collect();
    SignedMulti::new(xy(), hyperplanes).unwrap()
}

pub fn random_plane_inner_product(rng: &mut StdRng) -> InnerProduct {
    let choices = [[[1, 0], [0, 1]], [[1, 1], [1, 2]], [[2, 1], [1, 1]], [[2, -1], [-1, 2]]];
    let g = choices.choose(rng).unwrap();
    InnerProduct::new(g.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
}
