//! Wiener ensembles and the square root of Brownian motion.
//!
//! The signs of the Brownian steps form a Bernoulli process `B ∈ {+1, −1}`.
//! The parcel process `Φ = (1+B)/2 + i(1−B)/2` takes the values `1` and `i`
//! and satisfies `Φ² = B`. The square-root increment `ΔY = Φ·|ΔW|^(1/2)`
//! then squares back to `ΔW` step by step.
//!
//! Every trial draws from its own ChaCha8 stream (`stream = trial index`)
//! keyed by the ensemble seed, so results do not depend on how trials are
//! scheduled across threads.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordElement, ComplexScalar, GammaBasis, I, ONE};
use crate::error::{Error, Result};
use crate::stats;

/// Minimum number of trials for endpoint statistics.
pub const MIN_STAT_TRIALS: usize = 100;

/// `e^(−iπ/4)`: sends the parcel directions `1` and `i` to mirror images
/// about the real axis.
pub const WICK_ROTATION: ComplexScalar = Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathEnsemble {
    pub seed: u64,
    pub trials: usize,
    pub steps: usize,
    pub horizon: f64,
}

/// Per-trial reduction of a Brownian path and its square root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialSummary {
    /// `W_T`.
    pub endpoint: f64,
    /// `Y_T = Σ ΔY`.
    pub sqrt_endpoint: ComplexScalar,
    /// `max_j |ΔYⱼ² − ΔWⱼ| / max(1, |ΔWⱼ|)`.
    pub max_step_residual: f64,
    /// `|Σ ΔYⱼ² − W_T|`.
    pub path_residual: f64,
}

impl PathEnsemble {
    /// Validates the ensemble parameters. Increments are drawn on demand.
    pub fn new(seed: u64, trials: usize, steps: usize, horizon: f64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::domain("trials must be positive"));
        }
        if steps == 0 {
            return Err(Error::domain("steps must be positive"));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::domain(format!("horizon must be positive and finite, got {horizon}")));
        }
        Ok(Self { seed, trials, steps, horizon })
    }

    pub fn step_variance(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    fn rng_for(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// Brownian increments `ΔW` of one trial.
    ///
    /// # Panics
    ///
    /// If `trial >= self.trials`.
    pub fn trial_increments(&self, trial: usize) -> Vec<f64> {
        assert!(trial < self.trials, "trial {trial} out of range 0..{}", self.trials);
        let scale = self.step_variance().sqrt();
        let mut rng = self.rng_for(trial);
        (0..self.steps)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                z * scale
            })
            .collect()
    }

    /// Full `trials × steps` increment array. Only sensible for small ensembles.
    pub fn increments(&self) -> Vec<Vec<f64>> {
        (0..self.trials).into_par_iter().map(|t| self.trial_increments(t)).collect()
    }

    pub fn trial_summary(&self, trial: usize) -> TrialSummary {
        summarize_path(&self.trial_increments(trial))
    }

    /// Summaries of all trials, in trial order.
    pub fn summaries(&self) -> Vec<TrialSummary> {
        (0..self.trials).into_par_iter().map(|t| self.trial_summary(t)).collect()
    }

    /// Brownian endpoints `W_T`, in trial order.
    pub fn endpoints(&self) -> Vec<f64> {
        (0..self.trials)
            .into_par_iter()
            .map(|t| self.trial_increments(t).iter().sum())
            .collect()
    }
}

/// Builds a validated ensemble of Brownian paths on `[0, horizon]`.
pub fn brownian_increments(seed: u64, trials: usize, steps: usize, horizon: f64) -> Result<PathEnsemble> {
    PathEnsemble::new(seed, trials, steps, horizon)
}

/// Sign of a step with `sign(0) = +1`.
#[inline]
pub fn sign(x: f64) -> i8 {
    if x >= 0.0 || x.is_nan() {
        1
    } else {
        -1
    }
}

pub fn signs_to_bernoulli(increments: &[f64]) -> Vec<i8> {
    increments.iter().map(|&x| sign(x)).collect()
}

#[inline]
fn parcel(b: i8) -> ComplexScalar {
    if b > 0 {
        ONE
    } else {
        I
    }
}

/// `Φ = (1+B)/2 + i(1−B)/2`: `+1 ↦ 1`, `−1 ↦ i`.
pub fn parcel_from_bernoulli(bernoulli: &[i8]) -> Result<Vec<ComplexScalar>> {
    bernoulli
        .iter()
        .map(|&b| match b {
            1 | -1 => Ok(parcel(b)),
            other => Err(Error::domain(format!("bernoulli value {other} is not ±1"))),
        })
        .collect()
}

/// `Φ·|ΔW|^(1/2)` for a single step.
#[inline]
pub fn sqrt_increment(dw: f64) -> ComplexScalar {
    parcel(sign(dw)) * dw.abs().sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqrtPath {
    pub bernoulli: Vec<i8>,
    pub parcel: Vec<ComplexScalar>,
    pub sqrt_increments: Vec<ComplexScalar>,
    pub partial_sums: Vec<ComplexScalar>,
}

impl SqrtPath {
    pub fn endpoint(&self) -> ComplexScalar {
        self.partial_sums.last().copied().unwrap_or_default()
    }
}

pub fn sqrt_path(increments: &[f64]) -> SqrtPath {
    let bernoulli = signs_to_bernoulli(increments);
    let parcel: Vec<_> = bernoulli.iter().map(|&b| self::parcel(b)).collect();
    let sqrt_increments: Vec<_> = increments.iter().map(|&dw| sqrt_increment(dw)).collect();
    let partial_sums = sqrt_increments
        .iter()
        .scan(Complex64::new(0.0, 0.0), |acc, &dy| {
            *acc += dy;
            Some(*acc)
        })
        .collect();
    SqrtPath { bernoulli, parcel, sqrt_increments, partial_sums }
}

/// Walks a path once, accumulating `W_T`, `Y_T` and the square-identity
/// residuals without storing the intermediate arrays.
pub fn summarize_path(increments: &[f64]) -> TrialSummary {
    let mut endpoint = 0.0;
    let mut sqrt_endpoint = Complex64::new(0.0, 0.0);
    let mut square_sum = Complex64::new(0.0, 0.0);
    let mut max_step_residual = 0.0f64;
    for &dw in increments {
        let dy = sqrt_increment(dw);
        let sq = dy * dy;
        max_step_residual = max_step_residual.max((sq - dw).norm() / dw.abs().max(1.0));
        endpoint += dw;
        sqrt_endpoint += dy;
        square_sum += sq;
    }
    TrialSummary {
        endpoint,
        sqrt_endpoint,
        max_step_residual,
        path_residual: (square_sum - endpoint).norm(),
    }
}

/// Multiplies every sample by `e^(−iπ/4)`.
pub fn wick_rotate_samples(z: &[ComplexScalar]) -> Vec<ComplexScalar> {
    z.iter().map(|&v| v * WICK_ROTATION).collect()
}

/// Wick-rotates the square-root endpoints and returns the standardized
/// real and imaginary channels.
pub fn endpoint_channels(sqrt_endpoints: &[ComplexScalar]) -> Result<(Vec<f64>, Vec<f64>)> {
    if sqrt_endpoints.len() < MIN_STAT_TRIALS {
        return Err(Error::domain(format!(
            "endpoint statistics need at least {MIN_STAT_TRIALS} trials, got {}",
            sqrt_endpoints.len()
        )));
    }
    let rotated = wick_rotate_samples(sqrt_endpoints);
    let re: Vec<f64> = rotated.iter().map(|z| z.re).collect();
    let im: Vec<f64> = rotated.iter().map(|z| z.im).collect();
    Ok((stats::standardize(&re)?, stats::standardize(&im)?))
}

pub fn sqrt_endpoint_statistics(ensemble: &PathEnsemble) -> Result<(Vec<f64>, Vec<f64>)> {
    if ensemble.trials < MIN_STAT_TRIALS {
        return Err(Error::domain(format!(
            "endpoint statistics need at least {MIN_STAT_TRIALS} trials, got {}",
            ensemble.trials
        )));
    }
    let endpoints: Vec<_> = ensemble.summaries().iter().map(|s| s.sqrt_endpoint).collect();
    endpoint_channels(&endpoints)
}

/// Coefficients of the sphere step. All zero by default; `dt` defaults to
/// `1e-3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereStepParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub k: f64,
    pub m: f64,
    pub dt: f64,
}

impl Default for SphereStepParams {
    fn default() -> Self {
        Self { a: 0.0, b: 0.0, c: 0.0, e: 0.0, f: 0.0, g: 0.0, k: 0.0, m: 0.0, dt: 1e-3 }
    }
}

impl SphereStepParams {
    fn validate(&self) -> Result<()> {
        let all = [self.a, self.b, self.c, self.e, self.f, self.g, self.k, self.m, self.dt];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("sphere step coefficients must be finite"));
        }
        if self.dt <= 0.0 {
            return Err(Error::domain(format!("dt must be positive, got {}", self.dt)));
        }
        Ok(())
    }
}

/// One step of the square-root process on the sphere,
///
/// `dY = γ₂(k + a·dt − i·b·dU₂·B₂)Φ₂ + γ₁(m + c·dt − i·e·dU₁·B₁)Φ₁ + iγ₀(f·Φ₁ + g·Φ₂)`
///
/// with `Bᵢ = sign(dUᵢ)` and `Φᵢ` the matching parcel value.
pub fn sphere_sqrt_step(
    params: &SphereStepParams,
    gammas: &GammaBasis,
    du1: f64,
    du2: f64,
) -> Result<CliffordElement> {
    params.validate()?;
    let p = params;
    let (b1, b2) = (sign(du1), sign(du2));
    let (phi1, phi2) = (parcel(b1), parcel(b2));
    let coeff2 = Complex64::new(p.k + p.a * p.dt, -p.b * du2 * b2 as f64) * phi2;
    let coeff1 = Complex64::new(p.m + p.c * p.dt, -p.e * du1 * b1 as f64) * phi1;
    let coeff0 = I * (phi1 * p.f + phi2 * p.g);
    Ok(gammas.gamma2.scale(coeff2) + gammas.gamma1.scale(coeff1) + gammas.gamma0.scale(coeff0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "residual")]
pub enum UnitConstraint {
    PlusOne,
    MinusOne,
    Violated(f64),
}

/// Classifies `Y²` as `+I`, `−I`, or neither (with the smaller of the two
/// entrywise distances).
pub fn check_unit_constraint(y: &CliffordElement, tol: f64) -> UnitConstraint {
    let sq = *y * *y;
    let id = CliffordElement::identity();
    let to_plus = (sq - id).max_abs();
    let to_minus = (sq + id).max_abs();
    if to_plus <= tol {
        UnitConstraint::PlusOne
    } else if to_minus <= tol {
        UnitConstraint::MinusOne
    } else {
        UnitConstraint::Violated(to_plus.min(to_minus))
    }
}
