//! Fixed-step flow integration and empirical limit-set checks.
//!
//! For strictly orthogonal decompositions every omega-limit point is a
//! critical point of the potential. The check here is numeric: integrate,
//! keep a clustered trajectory tail as the omega-set surrogate, sample the
//! critical set `{grad V = 0}` by damped Gauss-Newton refinement from a grid
//! (and from the tail points themselves, which keeps the sample dense near
//! where it matters), and report the worst distance.

use crate::error::{Error, Result};
use crate::hhd::{self, Decomposition};
use crate::linalg::{solve_dense, SquareMatrix};
use crate::poly::{CompiledPolynomial, PolyVectorField};
use rayon::prelude::*;

/// Default integration step.
pub const DEFAULT_STEP: f64 = 1e-3;
/// State-norm guard beyond which integration aborts as divergent.
const DIVERGENCE_GUARD: f64 = 1e6;
/// Cluster radius for thinning trajectory tails.
const OMEGA_MERGE_RADIUS: f64 = 1e-3;
/// Gradient norm at which a refined point counts as a critical-set sample.
const CRITICAL_TOLERANCE: f64 = 1e-6;

/// A fixed-step trajectory: strictly increasing times with constant spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    step: f64,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least one state")
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Classical fourth-order Runge-Kutta with fixed step `dt` up to `horizon`.
/// Aborts with the last valid state if the state norm passes the guard.
pub fn integrate(field: &PolyVectorField, x0: &[f64], horizon: f64, dt: f64) -> Result<Trajectory> {
    let n = field.dimension();
    if x0.len() != n {
        return Err(Error::DimensionMismatch(x0.len(), n));
    }
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::Parameter("step must be positive".into()));
    }
    if horizon < dt {
        return Err(Error::Parameter("horizon must be at least one step".into()));
    }
    let compiled = field.compile();
    let steps = (horizon / dt).round().max(1.0) as usize;

    let mut states = Vec::with_capacity(steps + 1);
    let mut times = Vec::with_capacity(steps + 1);
    let mut state = x0.to_vec();
    if norm(&state) > DIVERGENCE_GUARD {
        return Err(Error::Diverged {
            time: 0.0,
            state,
        });
    }
    states.push(state.clone());
    times.push(0.0);

    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut scratch = vec![0.0; n];

    for step_index in 1..=steps {
        compiled.evaluate_into(&state, &mut k1);
        for i in 0..n {
            scratch[i] = state[i] + 0.5 * dt * k1[i];
        }
        compiled.evaluate_into(&scratch, &mut k2);
        for i in 0..n {
            scratch[i] = state[i] + 0.5 * dt * k2[i];
        }
        compiled.evaluate_into(&scratch, &mut k3);
        for i in 0..n {
            scratch[i] = state[i] + dt * k3[i];
        }
        compiled.evaluate_into(&scratch, &mut k4);
        for i in 0..n {
            state[i] += dt * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        }
        let t = step_index as f64 * dt;
        if !state.iter().all(|v| v.is_finite()) || norm(&state) > DIVERGENCE_GUARD {
            return Err(Error::Diverged {
                time: t,
                state: states.last().expect("nonempty").clone(),
            });
        }
        states.push(state.clone());
        times.push(t);
    }
    Ok(Trajectory {
        times,
        states,
        step: dt,
    })
}

/// Omega-limit surrogate: trajectory tail after discarding the transient
/// fraction, thinned by greedy clustering at the merge radius.
pub fn omega_limit_estimate(
    field: &PolyVectorField,
    x0: &[f64],
    horizon: f64,
    transient_fraction: f64,
) -> Result<Vec<Vec<f64>>> {
    if !(0.0..1.0).contains(&transient_fraction) {
        return Err(Error::Parameter(
            "transient fraction must lie in [0, 1)".into(),
        ));
    }
    let trajectory = integrate(field, x0, horizon, DEFAULT_STEP)?;
    let cut = ((trajectory.len() as f64) * transient_fraction).floor() as usize;
    let mut representatives: Vec<Vec<f64>> = Vec::new();
    for state in &trajectory.states()[cut.min(trajectory.len() - 1)..] {
        if representatives
            .iter()
            .all(|r| distance(r, state) > OMEGA_MERGE_RADIUS)
        {
            representatives.push(state.clone());
        }
    }
    Ok(representatives)
}

/// Report of the limit-set containment check.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Report {
    /// Worst distance over all seeds and omega points.
    pub max_distance: f64,
    pub per_seed: Vec<SeedDistance>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedDistance {
    pub x0: Vec<f64>,
    pub distance: f64,
    pub omega_points: usize,
}

/// Checks that every estimated omega-limit point of every seed sits near the
/// critical set of the potential. Requires the decomposition to be strictly
/// orthogonal (the theorem hypothesis); violation is an error, not a skip.
pub fn verify_theorem3(
    field: &PolyVectorField,
    decomposition: &Decomposition,
    seeds: &[Vec<f64>],
    horizon: f64,
) -> Result<Theorem3Report> {
    if !hhd::is_strictly_orthogonal(decomposition) {
        return Err(Error::NotStrictlyOrthogonal);
    }
    if decomposition.field() != field {
        return Err(Error::Parameter(
            "decomposition does not belong to the given field".into(),
        ));
    }
    let n = field.dimension();
    let omegas: Vec<Vec<Vec<f64>>> = seeds
        .par_iter()
        .map(|seed| omega_limit_estimate(field, seed, horizon, 0.5))
        .collect::<Result<Vec<_>>>()?;

    let refiner = CriticalSetRefiner::new(decomposition.potential().gradient());

    // global samples from a coarse window around everything seen
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for point in omegas.iter().flatten().chain(std::iter::once(&vec![0.0; n])) {
        for axis in 0..n {
            lo[axis] = lo[axis].min(point[axis]);
            hi[axis] = hi[axis].max(point[axis]);
        }
    }
    for axis in 0..n {
        let pad = 0.25 * (hi[axis] - lo[axis]).max(0.5);
        lo[axis] -= pad;
        hi[axis] += pad;
    }
    let per_axis: usize = match n {
        1 => 257,
        2 => 33,
        _ => 9,
    };
    let grid_seeds: Vec<Vec<f64>> = (0..per_axis.pow(n as u32))
        .map(|mut id| {
            let mut point = vec![0.0; n];
            for axis in (0..n).rev() {
                let i = id % per_axis;
                id /= per_axis;
                point[axis] = lo[axis] + (hi[axis] - lo[axis]) * (i as f64) / ((per_axis - 1) as f64);
            }
            point
        })
        .collect();
    let mut samples: Vec<Vec<f64>> = grid_seeds
        .par_iter()
        .filter_map(|seed| refiner.refine(seed))
        .collect();
    samples.dedup_by(|a, b| distance(a, b) < 1e-12);

    let mut per_seed = Vec::with_capacity(seeds.len());
    let mut max_distance: f64 = 0.0;
    for (seed, omega) in seeds.iter().zip(&omegas) {
        let mut worst: f64 = 0.0;
        for point in omega {
            // refining from the point itself keeps the sample dense exactly
            // where the tail accumulates
            let mut best = refiner
                .refine(point)
                .map(|z| distance(point, &z))
                .unwrap_or(f64::INFINITY);
            for z in &samples {
                best = best.min(distance(point, z));
            }
            worst = worst.max(best);
        }
        max_distance = max_distance.max(worst);
        per_seed.push(SeedDistance {
            x0: seed.clone(),
            distance: worst,
            omega_points: omega.len(),
        });
    }
    Ok(Theorem3Report {
        max_distance,
        per_seed,
    })
}

/// Damped Gauss-Newton projection onto `{grad V = 0}`.
struct CriticalSetRefiner {
    gradient: Vec<CompiledPolynomial>,
    hessian: Vec<CompiledPolynomial>,
    dimension: usize,
}

impl CriticalSetRefiner {
    fn new(gradient: PolyVectorField) -> Self {
        let n = gradient.dimension();
        let mut hessian = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                hessian.push(
                    gradient
                        .component(i)
                        .partial_derivative(j)
                        .expect("axis in range")
                        .compile(),
                );
            }
        }
        CriticalSetRefiner {
            gradient: gradient.components().iter().map(|c| c.compile()).collect(),
            hessian,
            dimension: n,
        }
    }

    fn gradient_at(&self, x: &[f64], out: &mut [f64]) {
        for (slot, g) in out.iter_mut().zip(&self.gradient) {
            *slot = g.evaluate(x);
        }
    }

    fn refine(&self, start: &[f64]) -> Option<Vec<f64>> {
        let n = self.dimension;
        let mut x = start.to_vec();
        let mut residual = vec![0.0; n];
        self.gradient_at(&x, &mut residual);
        let mut res_norm = norm(&residual);
        let mut damping = 1e-8;
        for _ in 0..120 {
            if res_norm < CRITICAL_TOLERANCE {
                return Some(x);
            }
            // J = Hess V(x); solve (J^t J + damping I) s = -J^t r
            let mut jac = SquareMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    jac.set(i, j, self.hessian[i * n + j].evaluate(&x));
                }
            }
            let jt = jac.transpose();
            let mut normal = jt.matmul(&jac);
            let scale = normal.trace().abs().max(1e-12) / n as f64;
            for i in 0..n {
                normal.set(i, i, normal.get(i, i) + damping * scale);
            }
            let mut rhs = vec![0.0; n];
            for i in 0..n {
                rhs[i] = -(0..n).map(|k| jt.get(i, k) * residual[k]).sum::<f64>();
            }
            let step = solve_dense(&normal, &rhs)?;
            let candidate: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + s).collect();
            let mut cand_res = vec![0.0; n];
            self.gradient_at(&candidate, &mut cand_res);
            let cand_norm = norm(&cand_res);
            if cand_norm < res_norm {
                x = candidate;
                residual = cand_res;
                res_norm = cand_norm;
                damping = (damping / 4.0).max(1e-12);
            } else {
                damping *= 10.0;
                if damping > 1e8 {
                    break;
                }
            }
        }
        (res_norm < CRITICAL_TOLERANCE).then_some(x)
    }
}
