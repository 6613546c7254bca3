//! Shared test fixtures: reference fields, seeded random generators, and
//! independent oracles (quadratic-formula eigenvalues, exact-rational
//! finite differences of the Poisson kernel).
//!
//! Each integration-test target compiles this module separately, so not
//! every helper is used everywhere.
#![allow(dead_code)]

use hhd_lyap::poly::{PolyVectorField, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::One;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn p2(src: &str) -> Polynomial {
    Polynomial::parse(src, &["x", "y"]).unwrap()
}

pub fn field2(fx: &str, fy: &str) -> PolyVectorField {
    PolyVectorField::new(vec![p2(fx), p2(fy)]).unwrap()
}

/// The reference cubic field with linear part -I.
pub fn giesl_field() -> PolyVectorField {
    field2(
        "-x + 4*x^3 + 1/4*x*y^2 + 1/8*y^3",
        "-y + 5/2*x^2*y + 3/8*y^3 - 6*x^3",
    )
}

pub fn giesl_v1() -> Polynomial {
    p2("1/2*x^2 + 1/2*y^2 - 29/24*x^4 - 11/96*y^4")
}

/// Hopf normal form with mu = 1, omega = -1.
pub fn hopf_field() -> PolyVectorField {
    field2("x + y - x^3 - x*y^2", "-x + y - x^2*y - y^3")
}

pub fn hopf_potential() -> Polynomial {
    p2("-1/2*x^2 - 1/2*y^2 + 1/4*x^4 + 1/2*x^2*y^2 + 1/4*y^4")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numerator = rng.gen_range(-8i64..=8);
    let denominator = *[1i64, 2, 3, 4, 8].choose(rng).unwrap();
    Rational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Random planar polynomial of total degree <= `max_degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: u32) -> Polynomial {
    let mut terms = Vec::new();
    for d in 0..=max_degree {
        for mono in hhd_lyap::Monomial::enumerate_degree(2, d) {
            if rng.gen_bool(0.6) {
                terms.push((mono, random_rational(rng)));
            }
        }
    }
    Polynomial::from_terms(2, terms).unwrap()
}

/// Random planar cubic field vanishing at the origin, with the linear
/// diagonal pushed negative so the divergence condition holds.
pub fn random_equilibrium_field(rng: &mut ChaCha8Rng) -> PolyVectorField {
    loop {
        let mut components = Vec::new();
        for axis in 0..2 {
            let mut p = random_polynomial(rng, 3);
            // drop the constant term: F(0) = 0
            p = p
                .checked_sub(&Polynomial::constant(2, p.constant_term()))
                .unwrap();
            // bias the linear diagonal toward strict contraction
            let pull = Rational::new(BigInt::from(rng.gen_range(2i64..=5)), BigInt::one());
            let x = Polynomial::variable(2, axis).unwrap();
            p = p.checked_sub(&x.scale(&pull)).unwrap();
            components.push(p);
        }
        let field = PolyVectorField::new(components).unwrap();
        if field
            .divergence()
            .constant_term()
            < Rational::from_integer(BigInt::from(0))
        {
            return field;
        }
    }
}

/// Eigenvalues of a symmetric 2x2 matrix by the quadratic formula.
pub fn eig2_oracle(a: f64, b: f64, d: f64) -> [f64; 2] {
    let tr = a + d;
    let det = a * d - b * b;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    [(tr - disc) / 2.0, (tr + disc) / 2.0]
}

/// Exact-rational Poisson kernel: K(x, y, theta) with cos/sin passed as
/// exact float-to-rational conversions. All arithmetic is exact, so finite
/// differences built on this carry truncation error only.
pub fn kernel_rational(x: &Rational, y: &Rational, cos_t: &Rational, sin_t: &Rational) -> Rational {
    let one = Rational::one();
    let numerator = &one - x * x - y * y;
    let dx = x - cos_t;
    let dy = y - sin_t;
    numerator / (&dx * &dx + &dy * &dy)
}

pub fn to_rational(v: f64) -> Rational {
    Rational::from_float(v).unwrap()
}
