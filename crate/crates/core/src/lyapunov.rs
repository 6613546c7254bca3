//! Orbital derivatives, stability certificates, and basin estimation.
//!
//! The certificate compares the largest singular value of the rotational
//! Jacobian against the smallest Hessian eigenvalue and the smallest field
//! singular value at the origin; strict inequality makes the potential a
//! local Lyapunov function. Differentiation is exact, so only eigensolver
//! error enters the numbers.

use crate::error::{Error, Result};
use crate::hhd::{hessian_rational_at_origin, Decomposition};
use crate::linalg::{self, Definiteness, SquareMatrix};
use crate::poly::{rational_from_f64, PolyVectorField, Polynomial, Rational};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

/// Stability certificate data: passes when
/// `lambda_u^2 - mu_V^2 < mu_F^2 - margin`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Largest singular value of the rotational Jacobian at the origin.
    pub lambda_u: f64,
    /// Smallest singular value of the field Jacobian at the origin.
    pub mu_f: f64,
    /// Smallest eigenvalue of the potential Hessian at the origin.
    pub mu_v: f64,
    /// lambda_u^2 - mu_V^2 - mu_F^2.
    pub criterion_value: f64,
    pub passed: bool,
}

/// Margin making the strict inequality conservative under roundoff.
const CERTIFICATE_MARGIN_RTOL: f64 = 1e-10;

/// Rectangular evaluation grid: `resolution` nodes per axis, endpoints
/// included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub bounds: Vec<(f64, f64)>,
    pub resolution: usize,
}

impl GridSpec {
    pub fn square(lo: f64, hi: f64, dimension: usize, resolution: usize) -> Self {
        GridSpec {
            bounds: vec![(lo, hi); dimension],
            resolution,
        }
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::Parameter("grid needs at least 2 nodes per axis".into()));
        }
        for &(lo, hi) in &self.bounds {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::Parameter("grid bounds must be finite with lo < hi".into()));
            }
        }
        Ok(())
    }

    fn node_count(&self) -> usize {
        self.resolution.pow(self.dimension() as u32)
    }

    fn coordinate(&self, axis: usize, index: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        lo + (hi - lo) * (index as f64) / ((self.resolution - 1) as f64)
    }

    /// Multi-index of a flat node id (first axis slowest).
    fn unravel(&self, mut id: usize, out: &mut [usize]) {
        for axis in (0..self.dimension()).rev() {
            out[axis] = id % self.resolution;
            id /= self.resolution;
        }
    }

    fn point(&self, id: usize, out: &mut [f64]) {
        let n = self.dimension();
        let mut idx = vec![0usize; n];
        self.unravel(id, &mut idx);
        for axis in 0..n {
            out[axis] = self.coordinate(axis, idx[axis]);
        }
    }

    /// Default exclusion radius: 1% of the bounds diagonal.
    pub fn default_epsilon(&self) -> f64 {
        let diag: f64 = self
            .bounds
            .iter()
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt();
        0.01 * diag
    }
}

/// Result of the sublevel-set scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BasinEstimate {
    /// Largest certified level c (0 when no level is feasible).
    pub level: f64,
    pub grid: GridSpec,
    /// Radius of the ball around the origin excluded from the decrease test.
    pub excluded_radius: f64,
    /// Nodes violating the decrease condition inside the reported sublevel
    /// component (0 whenever `level > 0`).
    pub violations: usize,
}

/// Signs of a scalar polynomial on a planar grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SignGrid {
    pub grid: GridSpec,
    /// Row-major over (ix, iy), iy fastest; entries in {-1, 0, +1}.
    pub signs: Vec<i8>,
}

const SIGN_ZERO_THRESHOLD: f64 = 1e-12;

/// The orbital derivative `grad V . F`, exactly.
pub fn orbital_derivative(v: &Polynomial, f: &PolyVectorField) -> Result<Polynomial> {
    if v.dimension() != f.dimension() {
        return Err(Error::DimensionMismatch(v.dimension(), f.dimension()));
    }
    v.gradient().dot(f)
}

/// The Jacobian of `f` at `point`: exact partial derivatives evaluated at an
/// exact rational image of the point, converted to float at the end.
pub fn jacobian_at(f: &PolyVectorField, point: &[f64]) -> Result<SquareMatrix> {
    let n = f.dimension();
    if point.len() != n {
        return Err(Error::DimensionMismatch(point.len(), n));
    }
    let exact: Vec<Rational> = point
        .iter()
        .map(|&v| rational_from_f64(v))
        .collect::<Result<_>>()?;
    let mut m = SquareMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let value = f
                .component(i)
                .partial_derivative(j)?
                .evaluate_rational(&exact)?;
            m.set(i, j, value.to_f64().unwrap_or(f64::NAN));
        }
    }
    Ok(m)
}

fn rational_matrix_to_float(entries: &[Vec<Rational>]) -> SquareMatrix {
    let n = entries.len();
    let mut m = SquareMatrix::zero(n);
    for (i, row) in entries.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.to_f64().unwrap_or(f64::NAN));
        }
    }
    m
}

fn require_origin_critical(d: &Decomposition) -> Result<()> {
    let origin = vec![Rational::zero(); d.dimension()];
    let grad = d.potential().gradient().evaluate_rational(&origin)?;
    if grad.iter().any(|g| !g.is_zero()) {
        return Err(Error::GradientNotZeroAtOrigin);
    }
    Ok(())
}

fn require_equilibrium(f: &PolyVectorField) -> Result<()> {
    let origin = vec![Rational::zero(); f.dimension()];
    let value = f.evaluate_rational(&origin)?;
    if value.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotEquilibrium);
    }
    Ok(())
}

/// Hessian of the orbital derivative at the origin:
/// `(D F_0)^t H + H (D F_0)` with `H = Hess V(0)`. Requires the potential to
/// have a critical point at the origin.
pub fn hess_vdot_at_origin(d: &Decomposition) -> Result<SquareMatrix> {
    require_origin_critical(d)?;
    let h = rational_matrix_to_float(&hessian_rational_at_origin(d.potential()));
    let jf = rational_matrix_to_float(&d.field().jacobian_rational_at_origin());
    Ok(jf.transpose().matmul(&h).add(&h.matmul(&jf)))
}

/// Builds the stability certificate for a decomposition whose potential has
/// a positive-definite critical point at the equilibrium origin.
pub fn theorem2_certify(d: &Decomposition) -> Result<Certificate> {
    require_equilibrium(d.field())?;
    require_origin_critical(d)?;
    let hess = rational_matrix_to_float(&hessian_rational_at_origin(d.potential()));
    if linalg::definiteness(&hess)? != Definiteness::Positive {
        return Err(Error::HessianNotPositiveDefinite);
    }
    let du = rational_matrix_to_float(&d.rotational().jacobian_rational_at_origin());
    let df = rational_matrix_to_float(&d.field().jacobian_rational_at_origin());

    let lambda_u = *linalg::singular_values(&du)
        .last()
        .expect("matrix order is at least 1");
    let mu_f = linalg::singular_values(&df)[0];
    let mu_v = linalg::symmetric_eigenvalues(&hess)?[0];

    let criterion_value = lambda_u * lambda_u - mu_v * mu_v - mu_f * mu_f;
    let margin = CERTIFICATE_MARGIN_RTOL * (mu_f * mu_f).max(1.0);
    let passed = lambda_u * lambda_u - mu_v * mu_v < mu_f * mu_f - margin;
    Ok(Certificate {
        lambda_u,
        mu_f,
        mu_v,
        criterion_value,
        passed,
    })
}

/// True when `D F_0 + (D F_0)^t` is negative definite; in that regime the
/// constructed potential is automatically a Lyapunov function.
pub fn corollary_check(f: &PolyVectorField) -> Result<bool> {
    require_equilibrium(f)?;
    let jf = rational_matrix_to_float(&f.jacobian_rational_at_origin());
    let sym = jf.add(&jf.transpose());
    Ok(linalg::definiteness(&sym)? == Definiteness::Negative)
}

/// Scans the grid for the largest level `c` such that every node of the
/// origin-connected component of `{V <= c}` lying outside the excluded ball
/// has a strictly negative orbital derivative.
///
/// The restriction to the connected component matters: gauge-shifted
/// potentials routinely go negative far from the equilibrium, and those
/// remote pockets say nothing about the basin around the origin. Candidate
/// levels come from the grid values themselves (capped by the boundary ring,
/// beyond which the sublevel set leaves the window), found by bisection.
pub fn basin_estimate(
    v: &Polynomial,
    f: &PolyVectorField,
    grid: &GridSpec,
    epsilon: f64,
) -> Result<BasinEstimate> {
    grid.validate()?;
    let n = v.dimension();
    if f.dimension() != n {
        return Err(Error::DimensionMismatch(f.dimension(), n));
    }
    if grid.dimension() != n {
        return Err(Error::DimensionMismatch(grid.dimension(), n));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Parameter("epsilon must be positive".into()));
    }

    // normalize V(0) to zero, exactly
    let origin = vec![Rational::zero(); n];
    let v0 = v.evaluate_rational(&origin)?;
    let centered = v.checked_sub(&Polynomial::constant(n, v0))?;
    let vdot = orbital_derivative(&centered, f)?;

    let cv = centered.compile();
    let cw = vdot.compile();
    let total = grid.node_count();
    let resolution = grid.resolution;

    struct Node {
        value: f64,
        bad: bool,
        ring: bool,
    }
    let nodes: Vec<Node> = (0..total)
        .into_par_iter()
        .map(|id| {
            let mut point = vec![0.0; n];
            grid.point(id, &mut point);
            let mut idx = vec![0usize; n];
            grid.unravel(id, &mut idx);
            let radius = point.iter().map(|x| x * x).sum::<f64>().sqrt();
            let value = cv.evaluate(&point);
            let bad = radius > epsilon && cw.evaluate(&point) >= 0.0;
            let ring = idx.iter().any(|&i| i == 0 || i == resolution - 1);
            Node { value, bad, ring }
        })
        .collect();

    // start from the node closest to the origin
    let start = {
        let mut idx = vec![0usize; n];
        for (axis, slot) in idx.iter_mut().enumerate() {
            let mut best = 0usize;
            let mut best_abs = f64::INFINITY;
            for i in 0..resolution {
                let c = grid.coordinate(axis, i).abs();
                if c < best_abs {
                    best_abs = c;
                    best = i;
                }
            }
            *slot = best;
        }
        idx.iter().fold(0usize, |acc, &i| acc * resolution + i)
    };

    let ring_cap = nodes
        .iter()
        .filter(|node| node.ring)
        .map(|node| node.value)
        .fold(f64::NEG_INFINITY, f64::max);

    let mut candidates: Vec<f64> = nodes
        .iter()
        .map(|node| node.value)
        .filter(|&value| value > 0.0 && value <= ring_cap)
        .collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite grid values"));
    candidates.dedup();

    // flood fill of the origin component of {V <= c}; counts bad nodes
    let component_violations = |level: f64, visited: &mut [bool]| -> usize {
        visited.iter_mut().for_each(|v| *v = false);
        if nodes[start].value > level {
            return 0;
        }
        let mut violations = 0;
        let mut stack = vec![start];
        visited[start] = true;
        let mut idx = vec![0usize; n];
        while let Some(id) = stack.pop() {
            if nodes[id].bad {
                violations += 1;
            }
            grid.unravel(id, &mut idx);
            for axis in 0..n {
                let stride = resolution.pow((n - 1 - axis) as u32);
                if idx[axis] > 0 {
                    let nb = id - stride;
                    if !visited[nb] && nodes[nb].value <= level {
                        visited[nb] = true;
                        stack.push(nb);
                    }
                }
                if idx[axis] + 1 < resolution {
                    let nb = id + stride;
                    if !visited[nb] && nodes[nb].value <= level {
                        visited[nb] = true;
                        stack.push(nb);
                    }
                }
            }
        }
        violations
    };

    let mut visited = vec![false; total];
    let mut best: Option<f64> = None;
    let (mut lo, mut hi) = (0isize, candidates.len() as isize - 1);
    while lo <= hi {
        let mid = (lo + hi) / 2;
        let level = candidates[mid as usize];
        if component_violations(level, &mut visited) == 0 {
            best = Some(level);
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }

    let (level, violations) = match best {
        Some(level) => (level, 0),
        None => {
            let probe = candidates.first().copied().unwrap_or(0.0);
            (0.0, component_violations(probe, &mut visited))
        }
    };
    Ok(BasinEstimate {
        level,
        grid: grid.clone(),
        excluded_radius: epsilon,
        violations,
    })
}

/// Sign of `g` at every node of a planar grid (zero threshold 1e-12).
pub fn sign_grid(g: &Polynomial, grid: &GridSpec) -> Result<SignGrid> {
    grid.validate()?;
    if g.dimension() != 2 || grid.dimension() != 2 {
        return Err(Error::NotPlanar);
    }
    let compiled = g.compile();
    let resolution = grid.resolution;
    let signs: Vec<i8> = (0..resolution * resolution)
        .into_par_iter()
        .map(|id| {
            let (ix, iy) = (id / resolution, id % resolution);
            let point = [grid.coordinate(0, ix), grid.coordinate(1, iy)];
            let value = compiled.evaluate(&point);
            if value.abs() <= SIGN_ZERO_THRESHOLD {
                0
            } else if value > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(SignGrid {
        grid: grid.clone(),
        signs,
    })
}

impl SignGrid {
    pub fn sign_at(&self, ix: usize, iy: usize) -> i8 {
        self.signs[ix * self.grid.resolution + iy]
    }
}
