//! Helmholtz-Hodge decompositions of polynomial vector fields, Lyapunov
//! function synthesis from potential functions, and planar phase-portrait
//! analysis on the unit disk.
//!
//! The pipeline: decompose `F = -grad V + u` with `div u = 0` by solving the
//! polynomial Poisson equation exactly, adjust the potential by harmonic
//! gauge terms until its Hessian data certifies stability, then check the
//! certificate numerically (eigen/singular values, basin grid scans, flow
//! integration).

// index loops mirror the written matrix formulas in the numeric kernels
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod flow;
pub mod harmonic;
pub mod hhd;
pub mod linalg;
pub mod lyapunov;
pub mod planar;
pub mod poly;

mod ratmat;

pub use error::{Error, Result};
pub use flow::{Theorem3Report, Trajectory};
pub use harmonic::HarmonicBasis;
pub use hhd::{Circle, Decomposition};
pub use linalg::{Definiteness, SquareMatrix};
pub use lyapunov::{BasinEstimate, Certificate, GridSpec, SignGrid};
pub use planar::{FourierBoundary, HdotJet, PlanarJet};
pub use poly::{
    CompiledField, CompiledPolynomial, Monomial, ParseError, PolyVectorField, Polynomial, Rational,
};
