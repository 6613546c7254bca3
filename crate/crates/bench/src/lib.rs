//! Shared fixtures for the pipeline benchmarks.

use hhd_lyap::poly::{PolyVectorField, Polynomial};

pub fn giesl_field() -> PolyVectorField {
    let p = |src| Polynomial::parse(src, &["x", "y"]).unwrap();
    PolyVectorField::new(vec![
        p("-x + 4*x^3 + 1/4*x*y^2 + 1/8*y^3"),
        p("-y + 5/2*x^2*y + 3/8*y^3 - 6*x^3"),
    ])
    .unwrap()
}

pub fn hopf_field() -> PolyVectorField {
    let p = |src| Polynomial::parse(src, &["x", "y"]).unwrap();
    PolyVectorField::new(vec![
        p("x + y - x^3 - x*y^2"),
        p("-x + y - x^2*y - y^3"),
    ])
    .unwrap()
}
