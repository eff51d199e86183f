use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use wickwalk_core::clifford::{ComplexScalar, GammaBasis};
use wickwalk_core::geometry::{
    circle_quantization_residual, length_quantization_check, oscillator_volumes, sphere_map,
    sphere_map_square, CircleModel, LengthQuantization, OscillatorSpec,
};
use wickwalk_core::stochastic::{check_unit_constraint, UnitConstraint};

use crate::artifacts::ArtifactWriter;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const CIRCLE_TOL: f64 = 1e-10;
pub const OSCILLATOR_TOL: f64 = 1e-12;
pub const SPHERE_TOL: f64 = 1e-12;
pub const LENGTH_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GeometryReportKind {
    Circle,
    Oscillator,
    Sphere,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometryParams {
    pub report: GeometryReportKind,
    pub n_points: usize,
    pub max_quanta: u32,
    pub omega: f64,
    pub hbar: f64,
    pub sphere_samples: usize,
}

impl Default for GeometryParams {
    fn default() -> Self {
        Self {
            report: GeometryReportKind::All,
            n_points: 64,
            max_quanta: 10,
            omega: 1.0,
            hbar: 1.0,
            sphere_samples: 1000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthCheck {
    pub length: f64,
    pub result: LengthQuantization,
}

#[derive(Clone, Debug, Serialize)]
pub struct CircleSection {
    pub n_points: usize,
    pub interior_residual: f64,
    pub wrap_value: i64,
    pub wrap_numeric: ComplexScalar,
    pub lengths: Vec<LengthCheck>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OscillatorRow {
    pub n: u32,
    pub energy: f64,
    pub semi_axes: (f64, f64),
    pub classical_volume: f64,
    pub quantized_volume: f64,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OscillatorSection {
    pub omega: f64,
    pub hbar: f64,
    pub rows: Vec<OscillatorRow>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereSection {
    pub samples: usize,
    /// Fraction with `u₃² > u₁² + u₂²`, i.e. `Y² ∝ +I`.
    pub plus_one_fraction: f64,
    pub minus_one_fraction: f64,
    /// For uniform directions on the unit sphere, `1 − 1/√2`.
    pub expected_plus_one_fraction: f64,
    pub max_scalar_error: f64,
    pub max_offdiag: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GeometryReport {
    pub circle: Option<CircleSection>,
    pub oscillator: Option<OscillatorSection>,
    pub sphere: Option<SphereSection>,
    pub passed: bool,
}

pub fn circle_section(n_points: usize) -> CliResult<CircleSection> {
    let model = CircleModel::new(n_points)?;
    let q = circle_quantization_residual(&model);
    let lengths: Vec<LengthCheck> = [TAU, 2.0 * TAU, 7.0]
        .into_iter()
        .map(|length| Ok(LengthCheck { length, result: length_quantization_check(length, LENGTH_TOL)? }))
        .collect::<CliResult<_>>()?;
    let lengths_ok = lengths[0].result == LengthQuantization::Quantized(1)
        && lengths[1].result == LengthQuantization::Quantized(2)
        && lengths[2].result == LengthQuantization::NotQuantized;
    Ok(CircleSection {
        n_points,
        interior_residual: q.interior_residual,
        wrap_value: q.wrap_value,
        wrap_numeric: q.wrap_numeric,
        passed: q.interior_residual <= CIRCLE_TOL && q.wrap_value == 1 - n_points as i64 && lengths_ok,
        lengths,
    })
}

pub fn oscillator_section(max_quanta: u32, omega: f64, hbar: f64) -> CliResult<OscillatorSection> {
    let rows: Vec<OscillatorRow> = (0..=max_quanta)
        .map(|n| {
            let spec = OscillatorSpec::on_level(n, omega, hbar)?;
            let v = oscillator_volumes(&spec);
            Ok(OscillatorRow {
                n,
                energy: spec.energy,
                semi_axes: v.semi_axes,
                classical_volume: v.classical_volume,
                quantized_volume: v.quantized_volume,
                abs_diff: (v.classical_volume - v.quantized_volume).abs(),
            })
        })
        .collect::<CliResult<_>>()?;
    let passed = rows.iter().all(|r| r.abs_diff <= OSCILLATOR_TOL * r.quantized_volume.max(1.0));
    Ok(OscillatorSection { omega, hbar, rows, passed })
}

/// Uniform directions on the unit sphere (normalized Gaussian triples).
pub fn random_directions(seed: u64, count: usize) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r > 1e-12 {
            out.push(v.map(|c| c / r));
        }
    }
    out
}

pub fn sphere_section(seed: u64, samples: usize) -> CliResult<SphereSection> {
    if samples == 0 {
        return Err(CliError::Usage("sphere census needs at least one sample".into()));
    }
    let gammas = GammaBasis::default();
    let (mut plus, mut minus) = (0usize, 0usize);
    let (mut max_scalar_error, mut max_offdiag) = (0.0f64, 0.0f64);
    for u in random_directions(seed, samples) {
        let (scalar, offdiag) = sphere_map_square(u, &gammas);
        let want = u[2] * u[2] - u[0] * u[0] - u[1] * u[1];
        max_scalar_error = max_scalar_error.max((scalar - want).norm());
        max_offdiag = max_offdiag.max(offdiag);
        if want == 0.0 {
            continue;
        }
        let y = sphere_map(u, &gammas).scale((1.0 / want.abs().sqrt()).into());
        match check_unit_constraint(&y, 1e-9) {
            UnitConstraint::PlusOne => plus += 1,
            UnitConstraint::MinusOne => minus += 1,
            UnitConstraint::Violated(_) => {}
        }
    }
    Ok(SphereSection {
        samples,
        plus_one_fraction: plus as f64 / samples as f64,
        minus_one_fraction: minus as f64 / samples as f64,
        expected_plus_one_fraction: 1.0 - std::f64::consts::FRAC_1_SQRT_2,
        max_scalar_error,
        max_offdiag,
        passed: max_scalar_error <= SPHERE_TOL && max_offdiag <= SPHERE_TOL,
    })
}

pub fn run_geometry(config: &RunConfig, params: &GeometryParams) -> CliResult<GeometryReport> {
    use GeometryReportKind::*;
    let want = |k| params.report == k || params.report == All;
    let mut report = GeometryReport::default();
    if want(Circle) {
        report.circle = Some(circle_section(params.n_points)?);
    }
    if want(Oscillator) {
        report.oscillator = Some(oscillator_section(params.max_quanta, params.omega, params.hbar)?);
    }
    if want(Sphere) {
        report.sphere = Some(sphere_section(config.seed, params.sphere_samples)?);
    }
    report.passed = report.circle.as_ref().is_none_or(|c| c.passed)
        && report.oscillator.as_ref().is_none_or(|o| o.passed)
        && report.sphere.as_ref().is_none_or(|s| s.passed);

    let mut out = ArtifactWriter::new(&config.output_dir)?;
    out.write_json("geometry_report.json", &report)?;
    out.finish("geometry", config, params)?;
    Ok(report)
}
