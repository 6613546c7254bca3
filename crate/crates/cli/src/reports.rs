//! Serializable report shapes. Field order is the declaration order, which
//! together with the fixed float formatting makes artifacts byte-stable.

use serde::Serialize;

#[derive(Serialize)]
pub struct DecompositionReport {
    pub variables: Vec<String>,
    pub potential: String,
    pub rotational: Vec<String>,
    /// div u as an exact rational polynomial string; "0" for a valid result.
    pub divergence_residual: String,
    pub strictly_orthogonal: bool,
}

#[derive(Serialize)]
pub struct CertificateReport {
    pub lambda_u: f64,
    #[serde(rename = "mu_F")]
    pub mu_f: f64,
    #[serde(rename = "mu_V")]
    pub mu_v: f64,
    pub criterion_value: f64,
    pub passed: bool,
}

impl From<&hhd_lyap::Certificate> for CertificateReport {
    fn from(c: &hhd_lyap::Certificate) -> Self {
        CertificateReport {
            lambda_u: c.lambda_u,
            mu_f: c.mu_f,
            mu_v: c.mu_v,
            criterion_value: c.criterion_value,
            passed: c.passed,
        }
    }
}

#[derive(Serialize)]
pub struct BasinReport {
    pub level: f64,
    pub epsilon: f64,
    pub resolution: usize,
    pub violations: usize,
}

#[derive(Serialize)]
pub struct SearchCandidate {
    pub coefficients: Vec<f64>,
    pub certificate: Option<CertificateReport>,
    pub basin_level: Option<f64>,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub mode: String,
    pub candidates: Vec<SearchCandidate>,
    pub best_index: usize,
    pub evaluations: Option<usize>,
}

#[derive(Serialize)]
pub struct PlanarJetReport {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub h_gradient: [f64; 2],
    pub h_hessian: [[f64; 2]; 2],
    pub hdot_value: f64,
    pub hdot_gradient: [f64; 2],
    pub hdot_hessian: [[f64; 2]; 2],
    pub trace_df0: f64,
    pub feasible: bool,
    /// Quadrature value of hdot at the origin; a consistency signal, zero up
    /// to quadrature roundoff.
    pub hdot_quadrature_at_origin: f64,
}

#[derive(Serialize)]
pub struct SeedReport {
    pub x0: Vec<f64>,
    pub distance: f64,
    pub omega_points: usize,
}

#[derive(Serialize)]
pub struct Theorem3JsonReport {
    pub max_distance: f64,
    pub seeds: Vec<SeedReport>,
}

#[derive(Serialize)]
pub struct OmegaReport {
    pub points: Vec<Vec<f64>>,
}
