//! Harmonic polynomial bases and derivative-free search over harmonic gauge
//! terms.
//!
//! Only the quadratic part of a harmonic addition moves the certificate
//! quantities (the rotational Jacobian and the potential Hessian at the
//! origin), so the certificate search runs over the quadratic harmonic
//! basis. Quartic additions leave the certificate fixed but reshape sublevel
//! sets, which is what the basin scan exploits.

use crate::error::{Error, Result};
use crate::hhd::{self, hessian_rational_at_origin, Decomposition};
use crate::linalg::{self, Definiteness, SquareMatrix};
use crate::lyapunov::{self, BasinEstimate, Certificate, GridSpec};
use crate::poly::{rational_from_f64, Monomial, PolyVectorField, Polynomial, Rational};
use crate::ratmat::RationalMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Exact basis of the harmonic polynomials homogeneous of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicBasis {
    dimension: usize,
    degree: u32,
    elements: Vec<Polynomial>,
}

impl HarmonicBasis {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The exact combination `sum_i coefficients[i] * basis[i]` with float
    /// coefficients converted exactly to rationals.
    pub fn combination(&self, coefficients: &[f64]) -> Result<Polynomial> {
        if coefficients.len() != self.elements.len() {
            return Err(Error::DimensionMismatch(
                coefficients.len(),
                self.elements.len(),
            ));
        }
        let mut out = Polynomial::zero(self.dimension);
        for (c, b) in coefficients.iter().zip(&self.elements) {
            if *c == 0.0 {
                continue;
            }
            out = out.checked_add(&b.scale(&rational_from_f64(*c)?))?;
        }
        Ok(out)
    }
}

/// Kernel of the Laplacian on homogeneous degree-`degree` polynomials,
/// computed by exact rational null-space reduction on the monomial basis.
///
/// The basis is canonical: primitive integer coefficient vectors, positive
/// leading coefficient, ordered by descending leading monomial. In the plane
/// this puts `x^2 - y^2` before `x*y` and `x^4 - 6 x^2 y^2 + y^4` before
/// `x^3 y - x y^3`.
pub fn harmonic_basis(dimension: usize, degree: u32) -> HarmonicBasis {
    assert!(dimension >= 1, "dimension must be at least 1");
    let cols = Monomial::enumerate_degree(dimension, degree);
    let elements = if degree < 2 {
        // no Laplacian constraint below degree 2
        cols.into_iter()
            .map(|m| {
                Polynomial::from_terms(dimension, [(m, Rational::from_integer(BigInt::from(1)))])
                    .expect("dimension consistent")
            })
            .collect()
    } else {
        let rows = Monomial::enumerate_degree(dimension, degree - 2);
        let row_index: std::collections::HashMap<&Monomial, usize> =
            rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = RationalMatrix::zero(rows.len(), cols.len());
        for (c, mono) in cols.iter().enumerate() {
            for axis in 0..dimension {
                let e = mono.exponents()[axis];
                if e < 2 {
                    continue;
                }
                let mut exps = mono.exponents().to_vec();
                exps[axis] = e - 2;
                let r = row_index[&Monomial::new(exps)];
                let coeff = Rational::from_integer(BigInt::from(e) * BigInt::from(e - 1));
                let updated = matrix.get(r, c) + coeff;
                matrix.set(r, c, updated);
            }
        }
        let mut polys: Vec<Polynomial> = matrix
            .kernel_basis()
            .into_iter()
            .map(|coeffs| {
                normalize_primitive(
                    &Polynomial::from_terms(dimension, cols.iter().cloned().zip(coeffs))
                        .expect("dimension consistent"),
                )
            })
            .collect();
        polys.sort_by_key(|p| std::cmp::Reverse(leading_monomial(p)));
        polys
    };
    let basis = HarmonicBasis {
        dimension,
        degree,
        elements,
    };
    debug_assert!(basis.elements.iter().all(|p| p.laplacian().is_zero()));
    basis
}

fn leading_monomial(p: &Polynomial) -> Monomial {
    p.terms()
        .last()
        .map(|(m, _)| m.clone())
        .expect("basis elements are nonzero")
}

/// Clears denominators, divides by the content, and flips the sign so the
/// leading coefficient is positive.
fn normalize_primitive(p: &Polynomial) -> Polynomial {
    let mut denominator_lcm = BigInt::from(1);
    let mut numerator_gcd = BigInt::from(0);
    for (_, c) in p.terms() {
        denominator_lcm = denominator_lcm.lcm(c.denom());
        numerator_gcd = numerator_gcd.gcd(c.numer());
    }
    if numerator_gcd.is_zero() {
        return p.clone();
    }
    let mut factor = Rational::new(denominator_lcm, numerator_gcd);
    let leading = p
        .terms()
        .last()
        .map(|(_, c)| c.clone())
        .expect("nonzero polynomial");
    if (leading * &factor).is_negative() {
        factor = -factor;
    }
    p.scale(&factor)
}

/// Result of the quadratic-gauge certificate search.
#[derive(Debug, Clone)]
pub struct QuadraticSearch {
    pub decomposition: Decomposition,
    pub certificate: Certificate,
    /// Coefficients of the quadratic harmonic basis at the optimum.
    pub coefficients: Vec<f64>,
    /// Objective evaluations actually spent.
    pub evaluations: usize,
}

/// One scanned quartic gauge candidate.
#[derive(Debug, Clone)]
pub struct QuarticCandidate {
    pub coefficients: Vec<f64>,
    pub estimate: BasinEstimate,
}

/// Nelder-Mead over quadratic harmonic gauge coefficients, minimizing
/// `lambda_{u + grad h}^2 - mu_{V + h}^2` with an infinite penalty whenever
/// `Hess(V + h)(0)` loses positive definiteness.
///
/// Deterministic: the start simplex is fixed (radius 0.1 rho around the
/// incumbent) and no randomness enters. The incumbent is always a candidate,
/// so the returned criterion value never exceeds the incumbent's.
pub fn optimize_quadratic(
    field: &PolyVectorField,
    incumbent: &Decomposition,
    budget: usize,
) -> Result<QuadraticSearch> {
    let n = field.dimension();
    if incumbent.dimension() != n {
        return Err(Error::DimensionMismatch(incumbent.dimension(), n));
    }
    let origin = vec![Rational::zero(); n];
    if field.evaluate_rational(&origin)?.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotEquilibrium);
    }
    if incumbent
        .potential()
        .gradient()
        .evaluate_rational(&origin)?
        .iter()
        .any(|v| !v.is_zero())
    {
        return Err(Error::GradientNotZeroAtOrigin);
    }

    let basis = harmonic_basis(n, 2);
    let k = basis.len();

    // Only Hess h(0) moves the certificate matrices; precompute the float
    // images of the basis Hessians once.
    let hess_v = to_float_matrix(&hessian_rational_at_origin(incumbent.potential()));
    let du = to_float_matrix(&incumbent.rotational().jacobian_rational_at_origin());
    let basis_hessians: Vec<SquareMatrix> = basis
        .elements()
        .iter()
        .map(|b| to_float_matrix(&hessian_rational_at_origin(b)))
        .collect();

    let objective = |c: &[f64]| -> f64 {
        let mut hess = hess_v.clone();
        let mut ju = du.clone();
        for (weight, bh) in c.iter().zip(&basis_hessians) {
            if *weight == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    hess.set(i, j, hess.get(i, j) + weight * bh.get(i, j));
                    ju.set(i, j, ju.get(i, j) + weight * bh.get(i, j));
                }
            }
        }
        match linalg::definiteness(&hess) {
            Ok(Definiteness::Positive) => {}
            _ => return f64::INFINITY,
        }
        let lambda = *linalg::singular_values(&ju).last().expect("order >= 1");
        let mu_v = linalg::symmetric_eigenvalues(&hess).expect("symmetric")[0];
        lambda * lambda - mu_v * mu_v
    };

    let rho = -incumbent.field().divergence().constant_term().to_f64().unwrap_or(0.0);
    let radius = if rho.abs() > 0.0 { 0.1 * rho.abs() } else { 0.1 };

    let mut evaluations = 0usize;
    let mut best_point = vec![0.0; k];
    let mut best_value;
    let spend = |c: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        objective(c)
    };

    if budget > 0 {
        best_value = spend(&best_point, &mut evaluations);
        // initial simplex around the incumbent
        let mut simplex: Vec<(Vec<f64>, f64)> = vec![(best_point.clone(), best_value)];
        for i in 0..k {
            if evaluations >= budget {
                break;
            }
            let mut p = vec![0.0; k];
            p[i] = radius;
            let value = spend(&p, &mut evaluations);
            if value < best_value {
                best_value = value;
                best_point = p.clone();
            }
            simplex.push((p, value));
        }

        if simplex.len() == k + 1 {
            // standard Nelder-Mead: reflection 1, expansion 2,
            // contraction 1/2, shrink 1/2
            while evaluations < budget {
                simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
                let spread = simplex[k].1 - simplex[0].1;
                if spread.is_finite() && spread < 1e-14 {
                    break;
                }
                let centroid: Vec<f64> = (0..k)
                    .map(|d| simplex[..k].iter().map(|(p, _)| p[d]).sum::<f64>() / k as f64)
                    .collect();
                let worst = simplex[k].clone();
                let reflect: Vec<f64> = (0..k)
                    .map(|d| centroid[d] + (centroid[d] - worst.0[d]))
                    .collect();
                let fr = spend(&reflect, &mut evaluations);
                if fr < best_value {
                    best_value = fr;
                    best_point = reflect.clone();
                }

                if fr < simplex[0].1 && evaluations < budget {
                    let expand: Vec<f64> = (0..k)
                        .map(|d| centroid[d] + 2.0 * (centroid[d] - worst.0[d]))
                        .collect();
                    let fe = spend(&expand, &mut evaluations);
                    if fe < best_value {
                        best_value = fe;
                        best_point = expand.clone();
                    }
                    simplex[k] = if fe < fr { (expand, fe) } else { (reflect, fr) };
                    continue;
                }
                if fr < simplex[k - 1].1 {
                    simplex[k] = (reflect, fr);
                    continue;
                }
                if evaluations >= budget {
                    break;
                }
                let contract: Vec<f64> = (0..k)
                    .map(|d| centroid[d] + 0.5 * (worst.0[d] - centroid[d]))
                    .collect();
                let fc = spend(&contract, &mut evaluations);
                if fc < best_value {
                    best_value = fc;
                    best_point = contract.clone();
                }
                if fc < worst.1 {
                    simplex[k] = (contract, fc);
                    continue;
                }
                // shrink toward the best vertex
                let anchor = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    if evaluations >= budget {
                        break;
                    }
                    for d in 0..k {
                        vertex.0[d] = anchor[d] + 0.5 * (vertex.0[d] - anchor[d]);
                    }
                    vertex.1 = spend(&vertex.0, &mut evaluations);
                    if vertex.1 < best_value {
                        best_value = vertex.1;
                        best_point = vertex.0.clone();
                    }
                }
            }
        }
    } else {
        best_value = objective(&best_point);
    }

    if !best_value.is_finite() {
        return Err(Error::NoFeasiblePoint);
    }

    let h = basis.combination(&best_point)?;
    let decomposition = hhd::add_harmonic(incumbent, &h)?;
    let certificate = lyapunov::theorem2_certify(&decomposition)?;
    Ok(QuadraticSearch {
        decomposition,
        certificate,
        coefficients: best_point,
        evaluations,
    })
}

fn to_float_matrix(entries: &[Vec<Rational>]) -> SquareMatrix {
    let n = entries.len();
    let mut m = SquareMatrix::zero(n);
    for (i, row) in entries.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.to_f64().unwrap_or(f64::NAN));
        }
    }
    m
}

/// Grid scan over quartic harmonic gauge coefficients, ranked by basin level
/// (descending; ties keep scan order). Each candidate is checked exactly to
/// leave the certificate data at the origin untouched.
pub fn quartic_basin_search(
    field: &PolyVectorField,
    incumbent: &Decomposition,
    coefficient_vectors: &[Vec<f64>],
    grid: &GridSpec,
    epsilon: f64,
) -> Result<Vec<QuarticCandidate>> {
    let n = field.dimension();
    if n != 2 {
        return Err(Error::NotPlanar);
    }
    if incumbent.dimension() != n {
        return Err(Error::DimensionMismatch(incumbent.dimension(), n));
    }
    let basis = harmonic_basis(2, 4);
    for vector in coefficient_vectors {
        if vector.len() != basis.len() {
            return Err(Error::DimensionMismatch(vector.len(), basis.len()));
        }
    }

    let mut ranked: Vec<(usize, QuarticCandidate)> = coefficient_vectors
        .par_iter()
        .enumerate()
        .map(|(index, coefficients)| -> Result<(usize, QuarticCandidate)> {
            let h = basis.combination(coefficients)?;
            // quartic additions must not move Du_0 or Hess V(0)
            let hess_h = hessian_rational_at_origin(&h);
            if hess_h.iter().flatten().any(|v| !v.is_zero()) {
                return Err(Error::Internal(
                    "quartic harmonic changed the origin Hessian".into(),
                ));
            }
            let grad_h_jacobian = h.gradient().jacobian_rational_at_origin();
            if grad_h_jacobian.iter().flatten().any(|v| !v.is_zero()) {
                return Err(Error::Internal(
                    "quartic harmonic changed the rotational Jacobian".into(),
                ));
            }
            let potential = incumbent.potential().checked_add(&h)?;
            let estimate = lyapunov::basin_estimate(&potential, field, grid, epsilon)?;
            Ok((
                index,
                QuarticCandidate {
                    coefficients: coefficients.clone(),
                    estimate,
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    ranked.sort_by(|(ia, a), (ib, b)| {
        b.estimate
            .level
            .partial_cmp(&a.estimate.level)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(ia.cmp(ib))
    });
    Ok(ranked.into_iter().map(|(_, c)| c).collect())
}
