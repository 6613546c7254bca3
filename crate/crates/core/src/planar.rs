//! Planar analysis on the unit disk: the Poisson kernel, harmonic extensions
//! of boundary data, and closed-form jets of the extension and its orbital
//! derivative at the origin.
//!
//! Fourier convention: `a_k = (1/2pi) int alpha cos(k theta)`,
//! `b_k = (1/2pi) int alpha sin(k theta)`, so the boundary function
//! reconstructs as `alpha = a0 + sum_k 2 a_k cos(k theta) + 2 b_k sin(k theta)`.
//! Under this normalization the extension of `cos theta` is exactly `x` and
//! the first-derivative jet formula `dh/dx(0) = 2 a_1` holds verbatim; the
//! quadrature cross-checks in the test suite pin the convention down.

use crate::error::{Error, Result};
use crate::poly::{PolyVectorField, Rational};
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

/// Boundary data on the unit circle as Fourier coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBoundary {
    pub a0: f64,
    /// a_1 .. a_K
    pub a: Vec<f64>,
    /// b_1 .. b_K
    pub b: Vec<f64>,
}

impl FourierBoundary {
    /// Builds boundary data, zero-padding so both coefficient lists share a
    /// length of at least 2 (the jet formulas read up to k = 2).
    pub fn new(a0: f64, mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Self> {
        if !a0.is_finite() || a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Parameter("Fourier coefficients must be finite".into()));
        }
        let len = a.len().max(b.len()).max(2);
        a.resize(len, 0.0);
        b.resize(len, 0.0);
        Ok(FourierBoundary { a0, a, b })
    }

    pub fn constant(a0: f64) -> Self {
        FourierBoundary::new(a0, Vec::new(), Vec::new()).expect("finite")
    }

    /// Single cosine mode `alpha = cos(k theta)`, i.e. `a_k = 1/2`.
    pub fn cosine(k: usize) -> Self {
        assert!(k >= 1);
        let mut a = vec![0.0; k.max(2)];
        a[k - 1] = 0.5;
        FourierBoundary::new(0.0, a, Vec::new()).expect("finite")
    }

    /// Single sine mode `alpha = sin(k theta)`, i.e. `b_k = 1/2`.
    pub fn sine(k: usize) -> Self {
        assert!(k >= 1);
        let mut b = vec![0.0; k.max(2)];
        b[k - 1] = 0.5;
        FourierBoundary::new(0.0, Vec::new(), b).expect("finite")
    }

    /// Coefficients of equispaced samples `(theta_j, alpha(theta_j))` by
    /// discrete quadrature. Samples must cover `[0, 2pi)` uniformly.
    pub fn from_samples(samples: &[(f64, f64)], modes: usize) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::Parameter("need at least 4 boundary samples".into()));
        }
        let n = samples.len();
        let step = 2.0 * PI / n as f64;
        for (j, &(theta, value)) in samples.iter().enumerate() {
            if !theta.is_finite() || !value.is_finite() {
                return Err(Error::Parameter("boundary samples must be finite".into()));
            }
            if (theta - j as f64 * step).abs() > 1e-9 {
                return Err(Error::Parameter(
                    "boundary samples must be equispaced on [0, 2pi) starting at 0".into(),
                ));
            }
        }
        let mean = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
            let mut acc = KahanSum::default();
            for &(theta, value) in samples {
                acc.add(f(theta, value));
            }
            acc.total() / n as f64
        };
        let a0 = mean(&|_, v| v);
        let mut a = Vec::with_capacity(modes);
        let mut b = Vec::with_capacity(modes);
        for k in 1..=modes {
            a.push(mean(&|t, v| v * (k as f64 * t).cos()));
            b.push(mean(&|t, v| v * (k as f64 * t).sin()));
        }
        FourierBoundary::new(a0, a, b)
    }

    /// Reconstructs `alpha(theta)` from the coefficients.
    pub fn evaluate(&self, theta: f64) -> f64 {
        let mut value = self.a0;
        for (k, (&ak, &bk)) in self.a.iter().zip(&self.b).enumerate() {
            let angle = (k + 1) as f64 * theta;
            value += 2.0 * ak * angle.cos() + 2.0 * bk * angle.sin();
        }
        value
    }
}

/// Compensated accumulator; the jet cross-checks difference quadrature values
/// at step 1e-4, which leaves no room for summation noise.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum
    }
}

fn require_interior(x: f64, y: f64) -> Result<()> {
    if x * x + y * y < 1.0 {
        Ok(())
    } else {
        Err(Error::PointNotInterior)
    }
}

/// The Poisson kernel of the unit disk:
/// `K(x, y, theta) = (1 - x^2 - y^2) / ((x - cos theta)^2 + (y - sin theta)^2)`.
pub fn poisson_kernel(x: f64, y: f64, theta: f64) -> Result<f64> {
    require_interior(x, y)?;
    let (sin, cos) = theta.sin_cos();
    let dx = x - cos;
    let dy = y - sin;
    Ok((1.0 - x * x - y * y) / (dx * dx + dy * dy))
}

/// `L[F] = f1 dK/dx + f2 dK/dy` in its closed form
/// `2 (-(1 + K) x + K e_theta) . F / |x - e_theta|^2`.
pub fn l_of_f(field: &PolyVectorField, x: f64, y: f64, theta: f64) -> Result<f64> {
    if field.dimension() != 2 {
        return Err(Error::NotPlanar);
    }
    require_interior(x, y)?;
    let (sin, cos) = theta.sin_cos();
    let dx = x - cos;
    let dy = y - sin;
    let dist2 = dx * dx + dy * dy;
    let k = (1.0 - x * x - y * y) / dist2;
    let f = field.evaluate(&[x, y])?;
    let gx = 2.0 * (-(1.0 + k) * x + k * cos) / dist2;
    let gy = 2.0 * (-(1.0 + k) * y + k * sin) / dist2;
    Ok(gx * f[0] + gy * f[1])
}

/// Harmonic extension of the boundary data by trapezoid quadrature of
/// `(1/2pi) int alpha(theta) K(x, y, theta) dtheta` over equispaced nodes
/// (spectrally accurate for trigonometric-polynomial data).
pub fn harmonic_extension(
    alpha: &FourierBoundary,
    x: f64,
    y: f64,
    quadrature_nodes: usize,
) -> Result<f64> {
    require_interior(x, y)?;
    if quadrature_nodes < 4 {
        return Err(Error::Parameter("need at least 4 quadrature nodes".into()));
    }
    let mut acc = KahanSum::default();
    for j in 0..quadrature_nodes {
        let theta = 2.0 * PI * j as f64 / quadrature_nodes as f64;
        acc.add(alpha.evaluate(theta) * poisson_kernel(x, y, theta)?);
    }
    Ok(acc.total() / quadrature_nodes as f64)
}

/// Orbital derivative of the harmonic extension, as the quadrature of
/// `alpha L[F]`.
pub fn hdot_extension(
    alpha: &FourierBoundary,
    field: &PolyVectorField,
    x: f64,
    y: f64,
    quadrature_nodes: usize,
) -> Result<f64> {
    require_interior(x, y)?;
    if quadrature_nodes < 4 {
        return Err(Error::Parameter("need at least 4 quadrature nodes".into()));
    }
    let mut acc = KahanSum::default();
    for j in 0..quadrature_nodes {
        let theta = 2.0 * PI * j as f64 / quadrature_nodes as f64;
        acc.add(alpha.evaluate(theta) * l_of_f(field, x, y, theta)?);
    }
    Ok(acc.total() / quadrature_nodes as f64)
}

/// Closed-form first and second derivatives of the harmonic extension at the
/// origin: gradient `(2 a1, 2 b1)`, Hessian `[[4 a2, 4 b2], [4 b2, -4 a2]]`.
pub fn h_jet_at_origin(alpha: &FourierBoundary) -> ([f64; 2], [[f64; 2]; 2]) {
    let gradient = [2.0 * alpha.a[0], 2.0 * alpha.b[0]];
    let hessian = [
        [4.0 * alpha.a[1], 4.0 * alpha.b[1]],
        [4.0 * alpha.b[1], -4.0 * alpha.a[1]],
    ];
    (gradient, hessian)
}

/// First and second partials of a planar field's components at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarJet {
    /// J[i][j] = d f_{i+1} / d x_{j+1} at 0.
    pub jacobian: [[f64; 2]; 2],
    /// Second partials of f_1 at 0 (symmetric).
    pub hess_f1: [[f64; 2]; 2],
    /// Second partials of f_2 at 0 (symmetric).
    pub hess_f2: [[f64; 2]; 2],
}

impl PlanarJet {
    /// Extracts the jet of a planar field at the origin. The origin must be
    /// an equilibrium; the jet formulas downstream assume it.
    pub fn at_origin(field: &PolyVectorField) -> Result<Self> {
        if field.dimension() != 2 {
            return Err(Error::NotPlanar);
        }
        let origin = vec![Rational::zero(); 2];
        if field
            .evaluate_rational(&origin)?
            .iter()
            .any(|v| !v.is_zero())
        {
            return Err(Error::NotEquilibrium);
        }
        let partial = |i: usize, j: usize| -> Result<f64> {
            Ok(field
                .component(i)
                .partial_derivative(j)?
                .constant_term()
                .to_f64()
                .unwrap_or(f64::NAN))
        };
        let second = |i: usize, j: usize, k: usize| -> Result<f64> {
            Ok(field
                .component(i)
                .partial_derivative(j)?
                .partial_derivative(k)?
                .constant_term()
                .to_f64()
                .unwrap_or(f64::NAN))
        };
        Ok(PlanarJet {
            jacobian: [
                [partial(0, 0)?, partial(0, 1)?],
                [partial(1, 0)?, partial(1, 1)?],
            ],
            hess_f1: [
                [second(0, 0, 0)?, second(0, 0, 1)?],
                [second(0, 0, 1)?, second(0, 1, 1)?],
            ],
            hess_f2: [
                [second(1, 0, 0)?, second(1, 0, 1)?],
                [second(1, 0, 1)?, second(1, 1, 1)?],
            ],
        })
    }
}

/// Jet of the orbital derivative of the harmonic extension at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct HdotJet {
    /// Always zero at an equilibrium.
    pub value: f64,
    pub gradient: [f64; 2],
    pub hessian: [[f64; 2]; 2],
}

/// Closed-form jet of `hdot` at the origin from the boundary coefficients
/// and the field jet.
pub fn hdot_jet_at_origin(alpha: &FourierBoundary, jet: &PlanarJet) -> HdotJet {
    let (a1, b1) = (alpha.a[0], alpha.b[0]);
    let (a2, b2) = (alpha.a[1], alpha.b[1]);
    let j = &jet.jacobian;
    let s1 = &jet.hess_f1;
    let s2 = &jet.hess_f2;

    let gradient = [
        2.0 * (a1 * j[0][0] + b1 * j[1][0]),
        2.0 * (a1 * j[0][1] + b1 * j[1][1]),
    ];
    let dxx = 8.0 * (a2 * j[0][0] + b2 * j[1][0]) + 2.0 * (a1 * s1[0][0] + b1 * s2[0][0]);
    let dxy = 4.0 * a2 * (j[0][1] - j[1][0])
        + 4.0 * b2 * (j[0][0] + j[1][1])
        + 2.0 * (a1 * s1[0][1] + b1 * s2[0][1]);
    // yy row from differentiating L[F] = f1 K_x + f2 K_y twice in y and
    // reading off the second-order kernel jet: the degree-2 modes enter as
    // 8 (b2 df1/dy - a2 df2/dy). The quadrature cross-check in the tests
    // pins this down.
    let dyy = 8.0 * (b2 * j[0][1] - a2 * j[1][1]) + 2.0 * (a1 * s1[1][1] + b1 * s2[1][1]);
    HdotJet {
        value: 0.0,
        gradient,
        hessian: [[dxx, dxy], [dxy, dyy]],
    }
}

/// Feasibility of the degree-2 coefficients: keeps the gauge-shifted
/// potential at a strict minimum. Requires the theorem-1 regime
/// `trace(D F_0) < 0`; the bound is `a2^2 + b2^2 < trace^2 / 64`.
pub fn coefficient_feasible(a2: f64, b2: f64, trace_df0: f64) -> Result<bool> {
    if trace_df0.is_nan() || trace_df0 >= 0.0 {
        return Err(Error::NonNegativeTrace);
    }
    Ok(a2 * a2 + b2 * b2 < trace_df0 * trace_df0 / 64.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn field2(fx: &str, fy: &str) -> PolyVectorField {
        PolyVectorField::new(vec![
            Polynomial::parse(fx, &["x", "y"]).unwrap(),
            Polynomial::parse(fy, &["x", "y"]).unwrap(),
        ])
        .unwrap()
    }

    fn giesl_field() -> PolyVectorField {
        field2(
            "-x + 4*x^3 + 1/4*x*y^2 + 1/8*y^3",
            "-y + 5/2*x^2*y + 3/8*y^3 - 6*x^3",
        )
    }

    #[test]
    fn kernel_at_center_is_one() {
        for k in 0..8 {
            let theta = k as f64 * 0.7;
            assert!((poisson_kernel(0.0, 0.0, theta).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_direct_substitution() {
        assert!((poisson_kernel(0.5, 0.0, 0.0).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_mean_is_one() {
        // harmonic extension of the constant 1
        let n = 512;
        let mut acc = 0.0;
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            acc += poisson_kernel(0.3, -0.4, theta).unwrap();
        }
        assert!((acc / n as f64 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_rejects_exterior_points() {
        assert_eq!(poisson_kernel(1.0, 0.0, 0.3).unwrap_err(), Error::PointNotInterior);
        assert_eq!(poisson_kernel(0.8, 0.7, 0.3).unwrap_err(), Error::PointNotInterior);
    }

    #[test]
    fn l_of_f_vanishes_at_equilibrium_origin() {
        let f = giesl_field();
        for k in 0..8 {
            let theta = k as f64;
            assert_eq!(l_of_f(&f, 0.0, 0.0, theta).unwrap(), 0.0);
        }
    }

    #[test]
    fn l_of_f_reproduces_kernel_gradient_at_origin() {
        let ex = field2("1", "0");
        let ey = field2("0", "1");
        for k in 0..12 {
            let theta = 0.5 * k as f64;
            let lx = l_of_f(&ex, 0.0, 0.0, theta).unwrap();
            let ly = l_of_f(&ey, 0.0, 0.0, theta).unwrap();
            assert!((lx - 2.0 * theta.cos()).abs() < 1e-14);
            assert!((ly - 2.0 * theta.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn l_of_f_matches_kernel_gradient_identity() {
        use num_bigint::BigInt;
        // defining identity L[F] = f1 dK/dx + f2 dK/dy, with the kernel
        // derivatives taken by exact-rational central differences (the
        // difference quotient then carries truncation error only)
        let kernel = |x: &Rational, y: &Rational, c: &Rational, s: &Rational| -> Rational {
            let one = Rational::from_integer(BigInt::from(1));
            let dx = x - c;
            let dy = y - s;
            (&one - x * x - y * y) / (&dx * &dx + &dy * &dy)
        };
        let h = Rational::from_float(1e-6).unwrap();
        let two_h = &h + &h;
        let fields = [
            giesl_field(),
            field2("x^2 - y", "x + y^2 - 2*x*y"),
        ];
        for field in &fields {
            for &(x, y) in &[(0.3, -0.2), (0.1, 0.45), (-0.5, 0.1)] {
                for k in 0..5 {
                    let theta = 1.3 * k as f64;
                    let c = Rational::from_float(theta.cos()).unwrap();
                    let s = Rational::from_float(theta.sin()).unwrap();
                    let xr = Rational::from_float(x).unwrap();
                    let yr = Rational::from_float(y).unwrap();
                    let dkdx = ((kernel(&(&xr + &h), &yr, &c, &s)
                        - kernel(&(&xr - &h), &yr, &c, &s))
                        / &two_h)
                        .to_f64()
                        .unwrap();
                    let dkdy = ((kernel(&xr, &(&yr + &h), &c, &s)
                        - kernel(&xr, &(&yr - &h), &c, &s))
                        / &two_h)
                        .to_f64()
                        .unwrap();
                    let f = field.evaluate(&[x, y]).unwrap();
                    let expected = f[0] * dkdx + f[1] * dkdy;
                    let got = l_of_f(field, x, y, theta).unwrap();
                    assert!(
                        (got - expected).abs() < 1e-10,
                        "L[F]({x}, {y}, {theta}) = {got} vs {expected}"
                    );
                }
            }
        }
    }

    #[test]
    fn extension_of_constant_data() {
        let alpha = FourierBoundary::constant(1.0);
        for &(x, y) in &[(0.0, 0.0), (0.3, 0.4), (-0.7, 0.1)] {
            let h = harmonic_extension(&alpha, x, y, 256).unwrap();
            assert!((h - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn extension_of_first_cosine_is_x() {
        let alpha = FourierBoundary::cosine(1);
        let h = harmonic_extension(&alpha, 0.3, 0.4, 512).unwrap();
        assert!((h - 0.3).abs() < 1e-12);
    }

    #[test]
    fn extension_of_second_cosine_is_x2_minus_y2() {
        let alpha = FourierBoundary::cosine(2);
        let h = harmonic_extension(&alpha, 0.3, 0.4, 512).unwrap();
        assert!((h - (-0.07)).abs() < 1e-12);
    }

    #[test]
    fn mean_value_property() {
        for alpha in [
            FourierBoundary::constant(0.7),
            FourierBoundary::new(0.4, vec![0.3, -0.2], vec![0.1, 0.25]).unwrap(),
        ] {
            let h = harmonic_extension(&alpha, 0.0, 0.0, 1024).unwrap();
            assert!((h - alpha.a0).abs() < 1e-12);
        }
    }

    #[test]
    fn h_jet_zero_data() {
        let alpha = FourierBoundary::constant(3.0);
        let (grad, hess) = h_jet_at_origin(&alpha);
        assert_eq!(grad, [0.0, 0.0]);
        assert_eq!(hess, [[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn h_jet_matches_quadratic_extension() {
        // alpha = cos(2 theta): extension x^2 - y^2, Hessian diag(2, -2)
        let (grad, hess) = h_jet_at_origin(&FourierBoundary::cosine(2));
        assert_eq!(grad, [0.0, 0.0]);
        assert_eq!(hess, [[2.0, 0.0], [0.0, -2.0]]);
        // alpha = cos(theta): extension x, gradient (1, 0)
        let (grad, _) = h_jet_at_origin(&FourierBoundary::cosine(1));
        assert_eq!(grad, [1.0, 0.0]);
    }

    #[test]
    fn h_jet_matches_finite_differences_of_quadrature() {
        let nodes = 2048;
        let step = 1e-4;
        for alpha in [
            FourierBoundary::cosine(1),
            FourierBoundary::sine(1),
            FourierBoundary::cosine(2),
            FourierBoundary::sine(2),
        ] {
            let (grad, hess) = h_jet_at_origin(&alpha);
            let h = |x: f64, y: f64| harmonic_extension(&alpha, x, y, nodes).unwrap();
            let gx = (h(step, 0.0) - h(-step, 0.0)) / (2.0 * step);
            let gy = (h(0.0, step) - h(0.0, -step)) / (2.0 * step);
            assert!((gx - grad[0]).abs() < 1e-6);
            assert!((gy - grad[1]).abs() < 1e-6);
            let hxx = (h(step, 0.0) - 2.0 * h(0.0, 0.0) + h(-step, 0.0)) / (step * step);
            let hyy = (h(0.0, step) - 2.0 * h(0.0, 0.0) + h(0.0, -step)) / (step * step);
            let hxy = (h(step, step) - h(step, -step) - h(-step, step) + h(-step, -step))
                / (4.0 * step * step);
            assert!((hxx - hess[0][0]).abs() < 1e-6, "hxx {hxx} vs {}", hess[0][0]);
            assert!((hxy - hess[0][1]).abs() < 1e-6);
            assert!((hyy - hess[1][1]).abs() < 1e-6);
        }
    }

    #[test]
    fn planar_jet_of_giesl() {
        let jet = PlanarJet::at_origin(&giesl_field()).unwrap();
        assert_eq!(jet.jacobian, [[-1.0, 0.0], [0.0, -1.0]]);
        assert_eq!(jet.hess_f1, [[0.0, 0.0], [0.0, 0.0]]);
        assert_eq!(jet.hess_f2, [[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn planar_jet_requires_equilibrium() {
        let f = field2("1 - x", "-y");
        assert_eq!(PlanarJet::at_origin(&f).unwrap_err(), Error::NotEquilibrium);
    }

    #[test]
    fn hdot_jet_zero_data() {
        let jet = PlanarJet::at_origin(&giesl_field()).unwrap();
        let out = hdot_jet_at_origin(&FourierBoundary::constant(0.0), &jet);
        assert_eq!(out.value, 0.0);
        assert_eq!(out.gradient, [0.0, 0.0]);
        assert_eq!(out.hessian, [[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn hdot_jet_on_giesl_with_a2_half() {
        let jet = PlanarJet::at_origin(&giesl_field()).unwrap();
        // a2 = 1/2 means h = x^2 - y^2, so hdot = 2x f1 - 2y f2 and at the
        // origin d2/dx2 = 4 df1/dx = -4, d2/dy2 = -4 df2/dy = 4, cross
        // 2 (df1/dy - df2/dx) = 0.
        let out = hdot_jet_at_origin(&FourierBoundary::cosine(2), &jet);
        assert_eq!(out.hessian[0][0], -4.0);
        assert_eq!(out.hessian[1][1], 4.0);
        assert_eq!(out.hessian[0][1], 0.0);
        assert_eq!(out.gradient, [0.0, 0.0]);
    }

    #[test]
    fn hdot_jet_matches_quadrature_finite_differences() {
        let f = giesl_field();
        let jet = PlanarJet::at_origin(&f).unwrap();
        let nodes = 2048;
        let step = 1e-4;
        for alpha in [
            FourierBoundary::cosine(1),
            FourierBoundary::sine(2),
            FourierBoundary::new(0.2, vec![0.3, -0.1], vec![-0.2, 0.15]).unwrap(),
        ] {
            let out = hdot_jet_at_origin(&alpha, &jet);
            let hd = |x: f64, y: f64| hdot_extension(&alpha, &f, x, y, nodes).unwrap();
            assert!(hd(0.0, 0.0).abs() < 1e-12);
            let gx = (hd(step, 0.0) - hd(-step, 0.0)) / (2.0 * step);
            let gy = (hd(0.0, step) - hd(0.0, -step)) / (2.0 * step);
            assert!((gx - out.gradient[0]).abs() < 1e-5);
            assert!((gy - out.gradient[1]).abs() < 1e-5);
            let hxx = (hd(step, 0.0) - 2.0 * hd(0.0, 0.0) + hd(-step, 0.0)) / (step * step);
            let hyy = (hd(0.0, step) - 2.0 * hd(0.0, 0.0) + hd(0.0, -step)) / (step * step);
            let hxy = (hd(step, step) - hd(step, -step) - hd(-step, step) + hd(-step, -step))
                / (4.0 * step * step);
            assert!((hxx - out.hessian[0][0]).abs() < 1e-5);
            assert!((hxy - out.hessian[0][1]).abs() < 1e-5);
            assert!((hyy - out.hessian[1][1]).abs() < 1e-5);
        }
    }

    #[test]
    fn feasibility_region() {
        // trace -2: bound 4/64 = 1/16
        assert!(coefficient_feasible(0.2, 0.1, -2.0).unwrap());
        assert!(!coefficient_feasible(0.25, 0.0, -2.0).unwrap());
        assert!(coefficient_feasible(0.0, 0.0, -2.0).unwrap());
        assert_eq!(
            coefficient_feasible(0.0, 0.0, 0.0).unwrap_err(),
            Error::NonNegativeTrace
        );
    }

    #[test]
    fn feasible_coefficients_keep_hessian_positive_definite() {
        use num_bigint::BigInt;
        // exact determinant/trace check of [[rho/2 + 4 a2, 4 b2], [4 b2, rho/2 - 4 a2]]
        let cases = [(0.2, 0.1, -2.0), (0.1, -0.2, -2.0), (0.0, 0.0, -3.5)];
        for &(a2, b2, tr) in &cases {
            assert!(coefficient_feasible(a2, b2, tr).unwrap());
            let rho = Rational::from_float(-tr).unwrap();
            let a2r = Rational::from_float(a2).unwrap();
            let b2r = Rational::from_float(b2).unwrap();
            let four = Rational::from_integer(BigInt::from(4));
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let m11 = &rho * &half + &four * &a2r;
            let m22 = &rho * &half - &four * &a2r;
            let m12 = &four * &b2r;
            use num_traits::Signed;
            let det = &m11 * &m22 - &m12 * &m12;
            let trace = m11 + m22;
            assert!(det.is_positive());
            assert!(trace.is_positive());
        }
    }

    #[test]
    fn from_samples_recovers_modes() {
        let n = 256;
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / n as f64;
                (theta, 0.5 + theta.cos() - 2.0 * (2.0 * theta).sin())
            })
            .collect();
        let alpha = FourierBoundary::from_samples(&samples, 4).unwrap();
        assert!((alpha.a0 - 0.5).abs() < 1e-12);
        assert!((alpha.a[0] - 0.5).abs() < 1e-12);
        assert!((alpha.b[1] - (-1.0)).abs() < 1e-12);
        assert!(alpha.a[1].abs() < 1e-12);
    }
}
