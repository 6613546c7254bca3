//! Command-line front door: parse vector fields, run decompositions,
//! certificates, gauge searches, basin scans, planar jets, and flow
//! integrations; emit JSON reports, CSV grids, and SVG contour plots.

mod contour;
mod json;
mod reports;

use clap::{Parser, Subcommand};
use contour::ScalarGrid;
use hhd_lyap::poly::{PolyVectorField, Polynomial};
use hhd_lyap::{flow, harmonic, hhd, lyapunov, planar};
use hhd_lyap::{Decomposition, FourierBoundary, GridSpec, PlanarJet};
use reports::*;
use serde::Deserialize;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hhd-lyap",
    version,
    about = "Decompose polynomial vector fields and certify Lyapunov potentials"
)]
struct Cli {
    /// Vector field JSON: {"variables": ["x","y"], "components": ["...", "..."]}
    #[arg(long, global = true)]
    field: Option<PathBuf>,
    /// Output directory for artifacts
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a decomposition F = -grad V + u with div u = 0
    Decompose {
        /// Center the potential so Hess V(0) = (rho/n) I (needs F(0) = 0 and
        /// div F(0) < 0)
        #[arg(long)]
        theorem1: bool,
    },
    /// Build the stability certificate of a decomposition
    Certify {
        #[arg(long)]
        theorem1: bool,
        /// Certify an explicit potential (must solve lap V = -div F)
        #[arg(long, allow_hyphen_values = true)]
        potential: Option<String>,
    },
    /// Search harmonic gauge terms: quadratic Nelder-Mead or a quartic scan
    Search {
        /// Objective evaluation budget for the quadratic search
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long)]
        theorem1: bool,
        /// Quartic coefficients to scan: "0,0.25,0.5" (first basis element)
        /// or "a:b" pairs for full vectors
        #[arg(long, allow_hyphen_values = true)]
        quartic_scan: Option<String>,
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Largest sublevel set of a potential on which V decreases
    Basin {
        /// Potential to scan (default: the computed decomposition potential)
        #[arg(long, allow_hyphen_values = true)]
        potential: Option<String>,
        #[arg(long)]
        theorem1: bool,
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Jets of the harmonic extension of boundary data and of its orbital
    /// derivative at the origin
    PlanarJet {
        /// Boundary coefficients JSON: {"a0": .., "a": [..], "b": [..]}
        #[arg(long)]
        alpha: Option<PathBuf>,
        /// Equispaced boundary samples CSV with rows theta,value
        #[arg(long)]
        boundary_samples: Option<PathBuf>,
        /// Quadrature nodes for the consistency value
        #[arg(long, default_value_t = 2048)]
        nodes: usize,
        /// Fourier modes extracted from samples
        #[arg(long, default_value_t = 8)]
        modes: usize,
    },
    /// Integrate the flow; optionally estimate limit sets
    Flow {
        /// Initial state, e.g. "0.1,0"
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, default_value_t = 50.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Also write the clustered omega-limit estimate
        #[arg(long)]
        omega: bool,
        #[arg(long, default_value_t = 0.5)]
        transient: f64,
        /// Check omega-limit containment in {grad V = 0} over seeded starts
        /// (requires --potential with a strictly orthogonal decomposition)
        #[arg(long)]
        theorem3: bool,
        #[arg(long, allow_hyphen_values = true)]
        potential: Option<String>,
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        /// Seed annulus radii "rmin,rmax"
        #[arg(long, default_value = "0.25,1.95")]
        annulus: String,
    },
    /// Sign grid of a scalar (CSV), plus contour SVG at given levels
    Grid {
        /// Scalar polynomial to scan
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        /// Potential whose orbital derivative is scanned instead
        #[arg(long, allow_hyphen_values = true)]
        potential: Option<String>,
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
        /// Contour levels, e.g. "0.02,0.05,0.09"
        #[arg(long, allow_hyphen_values = true)]
        levels: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Core(hhd_lyap::Error),
    Parse(hhd_lyap::ParseError),
    Io(std::io::Error),
    Json(serde_json::Error),
    Contour(contour::ContourError),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "{e}"),
            CliError::Contour(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_hypothesis_failure() => 2,
            _ => 1,
        }
    }
}

impl From<hhd_lyap::Error> for CliError {
    fn from(e: hhd_lyap::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<hhd_lyap::ParseError> for CliError {
    fn from(e: hhd_lyap::ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<contour::ContourError> for CliError {
    fn from(e: contour::ContourError) -> Self {
        CliError::Contour(e)
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Deserialize)]
struct FieldSpec {
    variables: Vec<String>,
    components: Vec<String>,
}

#[derive(Deserialize)]
struct AlphaSpec {
    #[serde(default)]
    a0: f64,
    #[serde(default)]
    a: Vec<f64>,
    #[serde(default)]
    b: Vec<f64>,
}

struct LoadedField {
    variables: Vec<String>,
    field: PolyVectorField,
}

impl LoadedField {
    fn names(&self) -> Vec<&str> {
        self.variables.iter().map(String::as_str).collect()
    }
}

fn load_field(path: &Option<PathBuf>) -> CliResult<LoadedField> {
    let path = path
        .as_ref()
        .ok_or_else(|| CliError::Usage("--field <file.json> is required".into()))?;
    let text = fs::read_to_string(path)?;
    let spec: FieldSpec = serde_json::from_str(&text)?;
    if spec.variables.is_empty() || spec.components.len() != spec.variables.len() {
        return Err(CliError::Usage(
            "field spec needs matching variable and component counts".into(),
        ));
    }
    let names: Vec<&str> = spec.variables.iter().map(String::as_str).collect();
    let components = spec
        .components
        .iter()
        .map(|src| Polynomial::parse(src, &names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LoadedField {
        variables: spec.variables,
        field: PolyVectorField::new(components)?,
    })
}

fn parse_scalar_list(text: &str, what: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("invalid {what} entry '{part}'")))
        })
        .collect()
}

fn parse_bounds(text: &str, dimension: usize) -> CliResult<Vec<(f64, f64)>> {
    let values = parse_scalar_list(text, "bounds")?;
    let pairs: Vec<(f64, f64)> = match values.len() {
        2 => vec![(values[0], values[1]); dimension],
        n if n == 2 * dimension => values.chunks(2).map(|c| (c[0], c[1])).collect(),
        _ => {
            return Err(CliError::Usage(
                "bounds must be 'lo,hi' or one pair per axis".into(),
            ))
        }
    };
    for &(lo, hi) in &pairs {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(CliError::Usage("bounds must satisfy lo < hi".into()));
        }
    }
    Ok(pairs)
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn base_decomposition(loaded: &LoadedField, theorem1: bool) -> CliResult<Decomposition> {
    let d = if theorem1 {
        hhd::theorem1_construction(&loaded.field)?
    } else {
        hhd::decompose(&loaded.field)?
    };
    Ok(d)
}

fn potential_decomposition(loaded: &LoadedField, potential: &str) -> CliResult<Decomposition> {
    let names = loaded.names();
    let v = Polynomial::parse(potential, &names)?;
    let u = loaded.field.checked_add(&v.gradient())?;
    if !u.divergence().is_zero() {
        return Err(CliError::Usage(
            "the given potential does not solve lap V = -div F for this field".into(),
        ));
    }
    Ok(Decomposition::new(loaded.field.clone(), v, u)?)
}

fn decomposition_report(loaded: &LoadedField, d: &Decomposition) -> DecompositionReport {
    DecompositionReport {
        variables: loaded.variables.clone(),
        potential: d.potential().display_with(&loaded.variables).to_string(),
        rotational: d
            .rotational()
            .components()
            .iter()
            .map(|c| c.display_with(&loaded.variables).to_string())
            .collect(),
        divergence_residual: d
            .rotational()
            .divergence()
            .display_with(&loaded.variables)
            .to_string(),
        strictly_orthogonal: hhd::is_strictly_orthogonal(d),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Decompose { theorem1 } => {
            let loaded = load_field(&cli.field)?;
            let d = base_decomposition(&loaded, theorem1)?;
            let report = decomposition_report(&loaded, &d);
            write_artifact(&cli.out, "decomposition.json", &json::to_string(&report)?)?;
            Ok(())
        }
        Command::Certify {
            theorem1,
            potential,
        } => {
            let loaded = load_field(&cli.field)?;
            let d = match &potential {
                Some(v) => potential_decomposition(&loaded, v)?,
                None => base_decomposition(&loaded, theorem1)?,
            };
            let cert = lyapunov::theorem2_certify(&d)?;
            let report = CertificateReport::from(&cert);
            write_artifact(&cli.out, "certificate.json", &json::to_string(&report)?)?;
            println!(
                "certificate: lambda_u = {}, mu_F = {}, mu_V = {}, passed = {}",
                cert.lambda_u, cert.mu_f, cert.mu_v, cert.passed
            );
            Ok(())
        }
        Command::Search {
            budget,
            theorem1,
            quartic_scan,
            bounds,
            resolution,
            epsilon,
        } => {
            let loaded = load_field(&cli.field)?;
            let d = base_decomposition(&loaded, theorem1)?;
            let d = hhd::normalize_center(&d, &vec![0.0; loaded.field.dimension()])?;
            let report = match quartic_scan {
                None => {
                    let incumbent_cert = lyapunov::theorem2_certify(&d)?;
                    let out = harmonic::optimize_quadratic(&loaded.field, &d, budget)?;
                    let k = out.coefficients.len();
                    SearchReport {
                        mode: "quadratic".into(),
                        candidates: vec![
                            SearchCandidate {
                                coefficients: vec![0.0; k],
                                certificate: Some(CertificateReport::from(&incumbent_cert)),
                                basin_level: None,
                            },
                            SearchCandidate {
                                coefficients: out.coefficients.clone(),
                                certificate: Some(CertificateReport::from(&out.certificate)),
                                basin_level: None,
                            },
                        ],
                        best_index: 1,
                        evaluations: Some(out.evaluations),
                    }
                }
                Some(scan) => {
                    let basis = harmonic::harmonic_basis(2, 4);
                    let vectors = parse_quartic_scan(&scan, basis.len())?;
                    let grid = GridSpec {
                        bounds: parse_bounds(&bounds, 2)?,
                        resolution,
                    };
                    let eps = epsilon.unwrap_or_else(|| grid.default_epsilon());
                    let ranked = harmonic::quartic_basin_search(
                        &loaded.field,
                        &d,
                        &vectors,
                        &grid,
                        eps,
                    )?;
                    let candidates = ranked
                        .iter()
                        .map(|cand| -> CliResult<SearchCandidate> {
                            let h = basis.combination(&cand.coefficients)?;
                            let shifted = hhd::add_harmonic(&d, &h)?;
                            let cert = lyapunov::theorem2_certify(&shifted)?;
                            Ok(SearchCandidate {
                                coefficients: cand.coefficients.clone(),
                                certificate: Some(CertificateReport::from(&cert)),
                                basin_level: Some(cand.estimate.level),
                            })
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    SearchReport {
                        mode: "quartic".into(),
                        candidates,
                        best_index: 0,
                        evaluations: None,
                    }
                }
            };
            write_artifact(&cli.out, "search.json", &json::to_string(&report)?)?;
            Ok(())
        }
        Command::Basin {
            potential,
            theorem1,
            bounds,
            resolution,
            epsilon,
        } => {
            let loaded = load_field(&cli.field)?;
            let names = loaded.names();
            let v = match &potential {
                Some(src) => Polynomial::parse(src, &names)?,
                None => base_decomposition(&loaded, theorem1)?.potential().clone(),
            };
            let grid = GridSpec {
                bounds: parse_bounds(&bounds, loaded.field.dimension())?,
                resolution,
            };
            let eps = epsilon.unwrap_or_else(|| grid.default_epsilon());
            let estimate = lyapunov::basin_estimate(&v, &loaded.field, &grid, eps)?;
            let report = BasinReport {
                level: estimate.level,
                epsilon: estimate.excluded_radius,
                resolution: estimate.grid.resolution,
                violations: estimate.violations,
            };
            write_artifact(&cli.out, "basin.json", &json::to_string(&report)?)?;
            println!("basin level: {}", estimate.level);
            Ok(())
        }
        Command::PlanarJet {
            alpha,
            boundary_samples,
            nodes,
            modes,
        } => {
            let loaded = load_field(&cli.field)?;
            let alpha = load_boundary(&alpha, &boundary_samples, modes)?;
            let jet = PlanarJet::at_origin(&loaded.field)?;
            let (h_gradient, h_hessian) = planar::h_jet_at_origin(&alpha);
            let hdot = planar::hdot_jet_at_origin(&alpha, &jet);
            let trace_df0 = jet.jacobian[0][0] + jet.jacobian[1][1];
            let feasible = planar::coefficient_feasible(alpha.a[1], alpha.b[1], trace_df0)?;
            let quadrature =
                planar::hdot_extension(&alpha, &loaded.field, 0.0, 0.0, nodes)?;
            let report = PlanarJetReport {
                a0: alpha.a0,
                a: alpha.a.clone(),
                b: alpha.b.clone(),
                h_gradient,
                h_hessian,
                hdot_value: hdot.value,
                hdot_gradient: hdot.gradient,
                hdot_hessian: hdot.hessian,
                trace_df0,
                feasible,
                hdot_quadrature_at_origin: quadrature,
            };
            write_artifact(&cli.out, "planar_jet.json", &json::to_string(&report)?)?;
            Ok(())
        }
        Command::Flow {
            x0,
            horizon,
            dt,
            omega,
            transient,
            theorem3,
            potential,
            seeds,
            annulus,
        } => {
            let loaded = load_field(&cli.field)?;
            if theorem3 {
                let potential = potential.ok_or_else(|| {
                    CliError::Usage("--theorem3 needs --potential for the decomposition".into())
                })?;
                let d = potential_decomposition(&loaded, &potential)?;
                let radii = parse_scalar_list(&annulus, "annulus")?;
                if radii.len() != 2 || !(0.0 < radii[0] && radii[0] < radii[1]) {
                    return Err(CliError::Usage("annulus must be 'rmin,rmax'".into()));
                }
                let seed_points: Vec<Vec<f64>> = (0..seeds)
                    .map(|i| {
                        let angle =
                            2.0 * std::f64::consts::PI * (i as f64) / (seeds.max(1) as f64) + 0.05;
                        let radius = radii[0]
                            + (radii[1] - radii[0]) * (i as f64) / ((seeds.max(2) - 1) as f64);
                        vec![radius * angle.cos(), radius * angle.sin()]
                    })
                    .collect();
                let report = flow::verify_theorem3(&loaded.field, &d, &seed_points, horizon)?;
                let out = Theorem3JsonReport {
                    max_distance: report.max_distance,
                    seeds: report
                        .per_seed
                        .iter()
                        .map(|s| SeedReport {
                            x0: s.x0.clone(),
                            distance: s.distance,
                            omega_points: s.omega_points,
                        })
                        .collect(),
                };
                write_artifact(&cli.out, "theorem3.json", &json::to_string(&out)?)?;
                println!("max distance to critical set: {}", report.max_distance);
                return Ok(());
            }

            let x0 = x0.ok_or_else(|| CliError::Usage("--x0 is required".into()))?;
            let start = parse_scalar_list(&x0, "x0")?;
            let trajectory = flow::integrate(&loaded.field, &start, horizon, dt)?;
            let mut csv = String::from("t");
            for name in &loaded.variables {
                csv.push(',');
                csv.push_str(name);
            }
            csv.push('\n');
            for (t, state) in trajectory.times().iter().zip(trajectory.states()) {
                csv.push_str(&json::float17(*t));
                for v in state {
                    csv.push(',');
                    csv.push_str(&json::float17(*v));
                }
                csv.push('\n');
            }
            write_artifact(&cli.out, "trajectory.csv", &csv)?;
            if omega {
                let points =
                    flow::omega_limit_estimate(&loaded.field, &start, horizon, transient)?;
                write_artifact(
                    &cli.out,
                    "omega.json",
                    &json::to_string(&OmegaReport { points })?,
                )?;
            }
            Ok(())
        }
        Command::Grid {
            expr,
            potential,
            bounds,
            resolution,
            levels,
        } => {
            let loaded = load_field(&cli.field)?;
            let names = loaded.names();
            let g = match (&expr, &potential) {
                (Some(src), None) => Polynomial::parse(src, &names)?,
                (None, Some(src)) => {
                    let v = Polynomial::parse(src, &names)?;
                    lyapunov::orbital_derivative(&v, &loaded.field)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "grid needs exactly one of --expr or --potential".into(),
                    ))
                }
            };
            let grid = GridSpec {
                bounds: parse_bounds(&bounds, 2)?,
                resolution,
            };
            let signs = lyapunov::sign_grid(&g, &grid)?;
            let mut csv = String::from("x,y,sign\n");
            for ix in 0..resolution {
                for iy in 0..resolution {
                    let x = grid.bounds[0].0
                        + (grid.bounds[0].1 - grid.bounds[0].0) * (ix as f64)
                            / ((resolution - 1) as f64);
                    let y = grid.bounds[1].0
                        + (grid.bounds[1].1 - grid.bounds[1].0) * (iy as f64)
                            / ((resolution - 1) as f64);
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        json::float17(x),
                        json::float17(y),
                        signs.sign_at(ix, iy)
                    ));
                }
            }
            write_artifact(&cli.out, "grid.csv", &csv)?;

            if let Some(levels) = levels {
                let levels = parse_scalar_list(&levels, "levels")?;
                let compiled = g.compile();
                let mut values = Vec::with_capacity(resolution * resolution);
                for ix in 0..resolution {
                    for iy in 0..resolution {
                        let x = grid.bounds[0].0
                            + (grid.bounds[0].1 - grid.bounds[0].0) * (ix as f64)
                                / ((resolution - 1) as f64);
                        let y = grid.bounds[1].0
                            + (grid.bounds[1].1 - grid.bounds[1].0) * (iy as f64)
                                / ((resolution - 1) as f64);
                        values.push(compiled.evaluate(&[x, y]));
                    }
                }
                let scalar = ScalarGrid {
                    bounds: [grid.bounds[0], grid.bounds[1]],
                    resolution,
                    values,
                };
                let svg = contour::render_contours(&scalar, &levels)?;
                write_artifact(&cli.out, "contours.svg", &svg)?;
            }
            Ok(())
        }
    }
}

fn parse_quartic_scan(text: &str, basis_len: usize) -> CliResult<Vec<Vec<f64>>> {
    text.split(',')
        .map(|entry| {
            let entry = entry.trim();
            let mut vector = vec![0.0; basis_len];
            if entry.contains(':') {
                let parts: Vec<&str> = entry.split(':').collect();
                if parts.len() > basis_len {
                    return Err(CliError::Usage(format!(
                        "quartic vector '{entry}' has more than {basis_len} entries"
                    )));
                }
                for (slot, part) in vector.iter_mut().zip(&parts) {
                    *slot = part.trim().parse::<f64>().map_err(|_| {
                        CliError::Usage(format!("invalid quartic coefficient '{part}'"))
                    })?;
                }
            } else {
                vector[0] = entry.parse::<f64>().map_err(|_| {
                    CliError::Usage(format!("invalid quartic coefficient '{entry}'"))
                })?;
            }
            Ok(vector)
        })
        .collect()
}

fn load_boundary(
    alpha: &Option<PathBuf>,
    samples: &Option<PathBuf>,
    modes: usize,
) -> CliResult<FourierBoundary> {
    match (alpha, samples) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)?;
            let spec: AlphaSpec = serde_json::from_str(&text)?;
            Ok(FourierBoundary::new(spec.a0, spec.a, spec.b)?)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let mut rows = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let parts: Vec<&str> = line.split(',').collect();
                if parts.len() != 2 {
                    return Err(CliError::Usage(format!(
                        "boundary sample row '{line}' is not 'theta,value'"
                    )));
                }
                match (parts[0].trim().parse::<f64>(), parts[1].trim().parse::<f64>()) {
                    (Ok(theta), Ok(value)) => rows.push((theta, value)),
                    _ if rows.is_empty() => continue, // header row
                    _ => {
                        return Err(CliError::Usage(format!(
                            "invalid boundary sample row '{line}'"
                        )))
                    }
                }
            }
            Ok(FourierBoundary::from_samples(&rows, modes)?)
        }
        _ => Err(CliError::Usage(
            "planar-jet needs exactly one of --alpha or --boundary-samples".into(),
        )),
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("HHD_LYAP_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            // --help and --version print and succeed; real usage errors
            // exit 1 (2 is reserved for hypothesis failures)
            use clap::error::ErrorKind;
            let _ = error.print();
            return match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::FAILURE,
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
