//! Helmholtz-Hodge decompositions of polynomial vector fields.
//!
//! `F = -grad V + u` with `div u = 0`. Taking divergences turns the
//! decomposition into the Poisson equation `lap V = -div F`, which is solved
//! exactly on monomial bases. The decomposition is only unique up to a
//! harmonic gauge term, so a deterministic representative is fixed here: no
//! constant or linear part, minimum coefficient norm per homogeneous degree.

use crate::error::{Error, Result};
use crate::poly::{rational_from_f64, Monomial, PolyVectorField, Polynomial, Rational};
use crate::ratmat::RationalMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A certified decomposition: both invariants (`F = -grad V + u` and
/// `div u = 0`) hold as exact term-map identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    field: PolyVectorField,
    potential: Polynomial,
    rotational: PolyVectorField,
}

impl Decomposition {
    /// Verifies both invariants exactly before accepting the parts.
    pub fn new(
        field: PolyVectorField,
        potential: Polynomial,
        rotational: PolyVectorField,
    ) -> Result<Self> {
        if potential.dimension() != field.dimension() {
            return Err(Error::DimensionMismatch(
                potential.dimension(),
                field.dimension(),
            ));
        }
        let rebuilt = rotational.checked_sub(&potential.gradient())?;
        if rebuilt != field {
            return Err(Error::Internal(
                "decomposition identity F = -grad V + u failed".into(),
            ));
        }
        if !rotational.divergence().is_zero() {
            return Err(Error::Internal("rotational part is not divergence-free".into()));
        }
        Ok(Decomposition {
            field,
            potential,
            rotational,
        })
    }

    pub fn field(&self) -> &PolyVectorField {
        &self.field
    }

    pub fn potential(&self) -> &Polynomial {
        &self.potential
    }

    pub fn rotational(&self) -> &PolyVectorField {
        &self.rotational
    }

    pub fn dimension(&self) -> usize {
        self.field.dimension()
    }
}

/// Exact polynomial solution of `lap V = rhs`.
///
/// The representative is pinned: V has no constant or linear part, and within
/// each homogeneous degree it is the minimum-coefficient-norm preimage of the
/// Laplacian (exact rational normal equations). `rhs = 2` in the plane yields
/// the symmetric bowl `(x^2 + y^2) / 2`.
pub fn poisson_solve(rhs: &Polynomial) -> Polynomial {
    let n = rhs.dimension();
    let mut solution = Polynomial::zero(n);
    for degree in 0..=rhs.degree() {
        let part = rhs.homogeneous_component(degree);
        if part.is_zero() {
            continue;
        }
        let block = solve_homogeneous_block(&part, degree);
        solution = solution.checked_add(&block).expect("same dimension");
    }
    solution
}

/// Minimum-norm homogeneous V_{d+2} with lap V_{d+2} = rhs_d.
fn solve_homogeneous_block(rhs: &Polynomial, degree: u32) -> Polynomial {
    let n = rhs.dimension();
    let cols = Monomial::enumerate_degree(n, degree + 2);
    let rows = Monomial::enumerate_degree(n, degree);
    let row_index: std::collections::HashMap<&Monomial, usize> =
        rows.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut matrix = RationalMatrix::zero(rows.len(), cols.len());
    for (c, mono) in cols.iter().enumerate() {
        for axis in 0..n {
            let e = mono.exponents()[axis];
            if e < 2 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[axis] = e - 2;
            let target = Monomial::new(exps);
            let r = row_index[&target];
            let coeff = Rational::from_integer(BigInt::from(e) * BigInt::from(e - 1));
            let updated = matrix.get(r, c) + coeff;
            matrix.set(r, c, updated);
        }
    }

    let rhs_vec: Vec<Rational> = rows.iter().map(|m| rhs.coefficient(m)).collect();
    let coeffs = matrix
        .min_norm_solve(&rhs_vec)
        .expect("Laplacian restricted to homogeneous degrees is surjective");
    Polynomial::from_terms(n, cols.into_iter().zip(coeffs))
        .expect("basis monomials share the dimension")
}

/// Decomposes `F` by the Poisson route: `V = poisson_solve(-div F)`,
/// `u = F + grad V`, with the invariants re-checked exactly.
pub fn decompose(field: &PolyVectorField) -> Result<Decomposition> {
    let rhs = -field.divergence();
    let potential = poisson_solve(&rhs);
    let rotational = field.checked_add(&potential.gradient())?;
    Decomposition::new(field.clone(), potential, rotational)
}

/// Gauge change: `(V, u) -> (V + h, u + grad h)` for harmonic `h`.
pub fn add_harmonic(d: &Decomposition, h: &Polynomial) -> Result<Decomposition> {
    if h.dimension() != d.dimension() {
        return Err(Error::DimensionMismatch(h.dimension(), d.dimension()));
    }
    if !h.laplacian().is_zero() {
        return Err(Error::NotHarmonic);
    }
    let potential = d.potential().checked_add(h)?;
    let rotational = d.rotational().checked_add(&h.gradient())?;
    Decomposition::new(d.field().clone(), potential, rotational)
}

/// Removes the potential gradient at `at` by adding the linear harmonic
/// `-grad V(at) . x`; the returned potential has a critical point at `at`.
pub fn normalize_center(d: &Decomposition, at: &[f64]) -> Result<Decomposition> {
    let n = d.dimension();
    if at.len() != n {
        return Err(Error::DimensionMismatch(at.len(), n));
    }
    let point: Vec<Rational> = at
        .iter()
        .map(|&v| rational_from_f64(v))
        .collect::<Result<_>>()?;
    let gradient = d.potential().gradient().evaluate_rational(&point)?;
    let mut h = Polynomial::zero(n);
    for (axis, g) in gradient.iter().enumerate() {
        let x = Polynomial::variable(n, axis)?;
        h = h.checked_sub(&x.scale(g))?;
    }
    add_harmonic(d, &h)
}

/// Exact Hessian entries of a polynomial at the origin.
pub(crate) fn hessian_rational_at_origin(p: &Polynomial) -> Vec<Vec<Rational>> {
    let n = p.dimension();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    p.partial_derivative(i)
                        .and_then(|d| d.partial_derivative(j))
                        .expect("axes in range")
                        .constant_term()
                })
                .collect()
        })
        .collect()
}

/// Potential construction for a strict-divergence equilibrium: returns a
/// decomposition whose potential has a critical point at the origin with
/// Hessian (rho / n) I, rho = -div F(0) > 0.
///
/// Steps: decompose, drop the gradient at the origin, then add the harmonic
/// quadratic `q` with `Hess q = -Hess V(0) + (rho / n) I` (a trace-free
/// symmetric form, hence harmonic).
pub fn theorem1_construction(field: &PolyVectorField) -> Result<Decomposition> {
    let n = field.dimension();
    let origin = vec![Rational::zero(); n];
    let at_origin = field.evaluate_rational(&origin)?;
    if at_origin.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotEquilibrium);
    }
    let divergence_at_origin = field.divergence().constant_term();
    if !divergence_at_origin.is_negative() {
        return Err(Error::DivergenceNotNegative);
    }

    let centered = normalize_center(&decompose(field)?, &vec![0.0; n])?;
    let hessian = hessian_rational_at_origin(centered.potential());
    let rho: Rational = (0..n).map(|i| hessian[i][i].clone()).sum();
    if rho != -divergence_at_origin.clone() {
        return Err(Error::Internal(
            "trace of the potential Hessian must equal -div F(0)".into(),
        ));
    }
    let target = rho.clone() / Rational::from_integer(BigInt::from(n as i64));

    // q = sum_{i<j} A_ij x_i x_j + sum_i A_ii x_i^2 / 2 with
    // A = -Hess V(0) + (rho/n) I, so that Hess q = A exactly.
    let mut q = Polynomial::zero(n);
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    for i in 0..n {
        for j in i..n {
            let a_ij = if i == j {
                (&target - &hessian[i][j]) * &half
            } else {
                -hessian[i][j].clone()
            };
            if a_ij.is_zero() {
                continue;
            }
            let xi = Polynomial::variable(n, i)?;
            let xj = Polynomial::variable(n, j)?;
            q = q.checked_add(&xi.checked_mul(&xj)?.scale(&a_ij))?;
        }
    }

    let result = add_harmonic(&centered, &q)?;
    let final_hessian = hessian_rational_at_origin(result.potential());
    for (i, row) in final_hessian.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let expected = if i == j { target.clone() } else { Rational::zero() };
            if *entry != expected {
                return Err(Error::Internal(
                    "constructed potential Hessian is not (rho/n) I".into(),
                ));
            }
        }
    }
    Ok(result)
}

/// Decides `grad V . u = 0` as a polynomial identity (orthogonality holds
/// everywhere, hence on any candidate region).
pub fn is_strictly_orthogonal(d: &Decomposition) -> bool {
    d.potential()
        .gradient()
        .dot(d.rotational())
        .expect("same dimension")
        .is_zero()
}

/// A circle in the plane, used for boundary flux sampling.
#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Samples `u . n` of the rotational part (n the outward unit normal) at
/// equispaced points of the circle and returns the largest absolute value.
pub fn boundary_flux_check(d: &Decomposition, circle: Circle, samples: usize) -> Result<f64> {
    max_normal_flux(d.rotational(), circle, samples)
}

/// The same sampling for an arbitrary planar field.
pub fn max_normal_flux(u: &PolyVectorField, circle: Circle, samples: usize) -> Result<f64> {
    if u.dimension() != 2 {
        return Err(Error::NotPlanar);
    }
    if samples == 0 {
        return Err(Error::Parameter("need at least one boundary sample".into()));
    }
    let u = u.compile();
    let mut max_flux: f64 = 0.0;
    let mut value = [0.0_f64; 2];
    for k in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (samples as f64);
        let (sin, cos) = theta.sin_cos();
        let point = [
            circle.center[0] + circle.radius * cos,
            circle.center[1] + circle.radius * sin,
        ];
        u.evaluate_into(&point, &mut value);
        let flux = value[0] * cos + value[1] * sin;
        max_flux = max_flux.max(flux.abs());
    }
    Ok(max_flux)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(src: &str) -> Polynomial {
        Polynomial::parse(src, &["x", "y"]).unwrap()
    }

    fn field2(fx: &str, fy: &str) -> PolyVectorField {
        PolyVectorField::new(vec![p2(fx), p2(fy)]).unwrap()
    }

    fn giesl_field() -> PolyVectorField {
        field2(
            "-x + 4*x^3 + 1/4*x*y^2 + 1/8*y^3",
            "-y + 5/2*x^2*y + 3/8*y^3 - 6*x^3",
        )
    }

    fn hopf_field() -> PolyVectorField {
        // mu = 1, omega = -1
        field2(
            "x + y - x^3 - x*y^2",
            "-x + y - x^2*y - y^3",
        )
    }

    #[test]
    fn poisson_zero_rhs() {
        assert!(poisson_solve(&Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn poisson_constant_rhs_gives_symmetric_bowl() {
        let v = poisson_solve(&p2("2"));
        assert_eq!(v, p2("1/2*x^2 + 1/2*y^2"));
    }

    #[test]
    fn poisson_giesl_rhs_residual_zero() {
        let rhs = p2("2 - 29/2*x^2 - 11/8*y^2");
        let v = poisson_solve(&rhs);
        assert_eq!(v.laplacian(), rhs);
        // the closed-form representative integrating each term twice also
        // solves the same equation
        let v1 = p2("1/2*x^2 + 1/2*y^2 - 29/24*x^4 - 11/96*y^4");
        assert!(v1.laplacian().checked_sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn poisson_is_deterministic() {
        let rhs = p2("3*x^2*y - 7 + y^3");
        assert_eq!(poisson_solve(&rhs), poisson_solve(&rhs));
    }

    #[test]
    fn decompose_pure_gradient_field() {
        let f = field2("-x", "-y");
        let d = decompose(&f).unwrap();
        assert!(d.rotational().divergence().is_zero());
        let rebuilt = d.rotational().checked_sub(&d.potential().gradient()).unwrap();
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn decompose_giesl_satisfies_poisson_equation() {
        let d = decompose(&giesl_field()).unwrap();
        assert_eq!(d.potential().laplacian(), p2("2 - 29/2*x^2 - 11/8*y^2"));
    }

    #[test]
    fn hopf_reference_pair_is_valid_and_gauge_equivalent() {
        let f = hopf_field();
        let d = decompose(&f).unwrap();
        // the closed-form strictly orthogonal pair
        let v = p2("-1/2*x^2 - 1/2*y^2 + 1/4*x^4 + 1/2*x^2*y^2 + 1/4*y^4");
        let u = field2("y", "-x");
        let reference = Decomposition::new(f, v.clone(), u).unwrap();
        assert!(is_strictly_orthogonal(&reference));
        // the two potentials differ by a harmonic gauge term
        let gauge = v.checked_sub(d.potential()).unwrap();
        assert!(gauge.laplacian().is_zero());
    }

    #[test]
    fn add_harmonic_identity_and_quartic() {
        let d = decompose(&giesl_field()).unwrap();
        let same = add_harmonic(&d, &Polynomial::zero(2)).unwrap();
        assert_eq!(same.potential(), d.potential());

        let quartic = p2("0.5*x^4 - 3*x^2*y^2 + 0.5*y^4");
        let shifted = add_harmonic(&d, &quartic).unwrap();
        assert_eq!(
            shifted.potential().checked_sub(d.potential()).unwrap(),
            quartic
        );

        let linear = p2("x");
        let with_linear = add_harmonic(&d, &linear).unwrap();
        assert_eq!(
            with_linear.rotational().checked_sub(d.rotational()).unwrap(),
            field2("1", "0")
        );
    }

    #[test]
    fn add_harmonic_rejects_non_harmonic() {
        let d = decompose(&giesl_field()).unwrap();
        assert_eq!(
            add_harmonic(&d, &p2("x^2")).unwrap_err(),
            Error::NotHarmonic
        );
    }

    #[test]
    fn normalize_center_removes_linear_part() {
        let f = field2("-x", "-y");
        let d = decompose(&f).unwrap();
        let tilted = add_harmonic(&d, &p2("x")).unwrap();
        let centered = normalize_center(&tilted, &[0.0, 0.0]).unwrap();
        assert_eq!(centered.potential(), d.potential());
        // already centered -> unchanged
        let again = normalize_center(&centered, &[0.0, 0.0]).unwrap();
        assert_eq!(again.potential(), centered.potential());
    }

    #[test]
    fn normalize_center_leaves_giesl_unchanged() {
        let d = decompose(&giesl_field()).unwrap();
        let grad0 = d
            .potential()
            .gradient()
            .evaluate_rational(&[Rational::zero(), Rational::zero()])
            .unwrap();
        assert!(grad0.iter().all(|g| g.is_zero()));
        let centered = normalize_center(&d, &[0.0, 0.0]).unwrap();
        assert_eq!(centered.potential(), d.potential());
    }

    #[test]
    fn theorem1_on_giesl() {
        let d = theorem1_construction(&giesl_field()).unwrap();
        let hess = hessian_rational_at_origin(d.potential());
        let one = Rational::from_integer(BigInt::from(1));
        assert_eq!(hess[0][0], one);
        assert_eq!(hess[1][1], one);
        assert!(hess[0][1].is_zero());
        // quadratic part is the bowl (x^2 + y^2) / 2
        assert_eq!(
            d.potential().homogeneous_component(2),
            p2("1/2*x^2 + 1/2*y^2")
        );
    }

    #[test]
    fn theorem1_one_dimensional() {
        let f = PolyVectorField::new(vec![Polynomial::parse("-x", &["x"]).unwrap()]).unwrap();
        let d = theorem1_construction(&f).unwrap();
        assert_eq!(
            d.potential(),
            &Polynomial::parse("1/2*x^2", &["x"]).unwrap()
        );
    }

    #[test]
    fn theorem1_rejects_zero_divergence_rotation() {
        let f = field2("-y", "x");
        assert_eq!(
            theorem1_construction(&f).unwrap_err(),
            Error::DivergenceNotNegative
        );
    }

    #[test]
    fn theorem1_rejects_non_equilibrium() {
        let f = field2("1 - x", "-y");
        assert_eq!(theorem1_construction(&f).unwrap_err(), Error::NotEquilibrium);
    }

    #[test]
    fn strict_orthogonality_cases() {
        // gradient field: u = 0
        let d = decompose(&field2("-x", "-y")).unwrap();
        let pure = Decomposition::new(
            d.field().clone(),
            d.potential().clone(),
            d.rotational().clone(),
        )
        .unwrap();
        assert!(is_strictly_orthogonal(&pure));

        // diagonal-term pair with (a, b, c) = (3, 2, 1): grad V . u = 8 x y
        let v = p2("3/2*x^2 + y^2");
        let u = field2("2*y", "x");
        let f = u.checked_sub(&v.gradient()).unwrap();
        let diag = Decomposition::new(f, v.clone(), u.clone()).unwrap();
        assert!(!is_strictly_orthogonal(&diag));
        assert_eq!(v.gradient().dot(&u).unwrap(), p2("8*x*y"));
    }

    #[test]
    fn boundary_flux_on_unit_circle() {
        let unit = Circle {
            center: [0.0, 0.0],
            radius: 1.0,
        };
        // Hopf rotational part is tangent to every circle about the origin
        let f = hopf_field();
        let v = p2("-1/2*x^2 - 1/2*y^2 + 1/4*x^4 + 1/2*x^2*y^2 + 1/4*y^4");
        let u = field2("y", "-x");
        let d = Decomposition::new(f, v, u).unwrap();
        assert_eq!(boundary_flux_check(&d, unit, 256).unwrap(), 0.0);

        // radial u = (x, y) coincides with the outward normal: flux 1
        let flux = max_normal_flux(&field2("x", "y"), unit, 64).unwrap();
        assert!((flux - 1.0).abs() < 1e-15);

        // u = (2y, x): flux 3 sin(theta) cos(theta), max 3/2
        let vb = p2("3/2*x^2 + y^2");
        let ub = field2("2*y", "x");
        let fb = ub.checked_sub(&vb.gradient()).unwrap();
        let db = Decomposition::new(fb, vb, ub).unwrap();
        let flux = boundary_flux_check(&db, unit, 720).unwrap();
        assert!((flux - 1.5).abs() < 1e-12);
    }

    #[test]
    fn boundary_flux_requires_planar_field() {
        let f3 = PolyVectorField::new(vec![
            Polynomial::parse("-x1", &["x1", "x2", "x3"]).unwrap(),
            Polynomial::parse("-x2", &["x1", "x2", "x3"]).unwrap(),
            Polynomial::parse("-x3", &["x1", "x2", "x3"]).unwrap(),
        ])
        .unwrap();
        let d = decompose(&f3).unwrap();
        let err = boundary_flux_check(
            &d,
            Circle {
                center: [0.0, 0.0],
                radius: 1.0,
            },
            16,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotPlanar);
    }
}
