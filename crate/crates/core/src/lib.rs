//! Exact arithmetic for logarithmic vector fields along signed
//! multiarrangements of hyperplanes over the rationals.

pub mod arrangement;
pub mod cli;
pub mod coxeter;
pub mod expr;
pub mod logmod;
pub mod poly;
