//! Quantization identities on small geometries.
//!
//! * Circle: `Y = e^{iθ}` on an `N`-point grid and the spectral derivative
//!   `D` with integer eigenvalues satisfy `Y†[D, Y] = 1` on every Fourier
//!   mode except the one where `Y` wraps the top mode to the bottom, which
//!   picks up `1 − N`.
//! * Lengths: `|M| ∈ 2πℕ`.
//! * Oscillator: the phase-space ellipse with semi-axes `√(2E)` and
//!   `√(2E/ω²)` has area `2πE/ω`, equal to `2π(n + 1/2)ℏ` at `E = (n + 1/2)ℏω`.
//! * Sphere: `Y = −iγ₁u₁ − iγ₂u₂ + γ₃u₃` squares to `(u₃² − u₁² − u₂²)·I`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordElement, ComplexScalar, GammaBasis};
use crate::error::{Error, Result};

pub fn circle_distance(theta1: f64, theta2: f64) -> f64 {
    2.0 * (0.5 * (theta1 - theta2)).sin().abs()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleModel {
    n_points: usize,
}

impl CircleModel {
    pub fn new(n_points: usize) -> Result<Self> {
        if n_points < 4 {
            return Err(Error::domain(format!("circle grid needs N >= 4, got {n_points}")));
        }
        Ok(Self { n_points })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// `θⱼ = 2πj/N`.
    pub fn thetas(&self) -> Vec<f64> {
        let n = self.n_points as f64;
        (0..self.n_points).map(|j| TAU * j as f64 / n).collect()
    }

    /// Integer eigenvalue of `D` on DFT bin `idx`, in FFT order
    /// `0, 1, …, ⌈N/2⌉−1, −⌊N/2⌋, …, −1`.
    pub fn mode_label(&self, idx: usize) -> i64 {
        let n = self.n_points;
        if idx < n.div_ceil(2) {
            idx as i64
        } else {
            idx as i64 - n as i64
        }
    }

    /// DFT bin of the highest mode, the one `Y` sends around the wrap.
    pub fn wrap_index(&self) -> usize {
        self.n_points.div_ceil(2) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleQuantization {
    /// Largest entrywise deviation of `Y†[D, Y]` from the identity over the
    /// `N − 1` rows of non-wrapping modes.
    pub interior_residual: f64,
    /// Eigenvalue jump on the wrapping mode, from integer mode labels.
    pub wrap_value: i64,
    /// Numerically assembled diagonal entry on the wrapping mode.
    pub wrap_numeric: ComplexScalar,
}

/// Builds `M = Y†(DY − YD)` in the discrete Fourier basis and compares it
/// with the identity.
///
/// `Y` is assembled from the DFT of the sampled `e^{iθⱼ}` (a circulant in
/// mode space), `D` is diagonal with integer labels.
pub fn circle_quantization_residual(model: &CircleModel) -> CircleQuantization {
    let n = model.n_points();
    let mut coeffs: Vec<Complex64> = model.thetas().iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut coeffs);
    for c in &mut coeffs {
        *c /= n as f64;
    }

    // Multiplication by Σ cₛ e^{isθ} maps bin l to bin (l + s) mod N.
    let y = |row: usize, col: usize| coeffs[(row + n - col) % n];
    let labels: Vec<f64> = (0..n).map(|i| model.mode_label(i) as f64).collect();

    // [D, Y]_{rc} = (label_r − label_c)·Y_{rc}; then M = Y†·[D, Y].
    let mut commutator = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for c in 0..n {
            commutator[r * n + c] = y(r, c) * (labels[r] - labels[c]);
        }
    }
    let mut interior_residual = 0.0f64;
    let mut wrap_numeric = Complex64::new(0.0, 0.0);
    let wrap = model.wrap_index();
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += y(k, r).conj() * commutator[k * n + c];
            }
            if r == wrap {
                if c == wrap {
                    wrap_numeric = acc;
                }
                continue;
            }
            let target = if r == c { 1.0 } else { 0.0 };
            interior_residual = interior_residual.max((acc - target).norm());
        }
    }

    let wrap_value = model.mode_label((wrap + 1) % n) - model.mode_label(wrap);
    CircleQuantization { interior_residual, wrap_value, wrap_numeric }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "n")]
pub enum LengthQuantization {
    Quantized(u64),
    NotQuantized,
}

/// Whether `length` lies within `tol` of `2πn` for some positive integer `n`.
pub fn length_quantization_check(length: f64, tol: f64) -> Result<LengthQuantization> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::domain(format!("length must be positive, got {length}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let n = (length / TAU).round().max(1.0);
    if (length - TAU * n).abs() <= tol {
        Ok(LengthQuantization::Quantized(n as u64))
    } else {
        Ok(LengthQuantization::NotQuantized)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub energy: f64,
    pub omega: f64,
    pub hbar: f64,
    pub n_quanta: u32,
}

impl OscillatorSpec {
    pub fn new(energy: f64, omega: f64, hbar: f64, n_quanta: u32) -> Result<Self> {
        for (name, v) in [("energy", energy), ("omega", omega), ("hbar", hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { energy, omega, hbar, n_quanta })
    }

    /// The spec whose energy sits on the `n`-th level, `E = (n + 1/2)ℏω`.
    pub fn on_level(n_quanta: u32, omega: f64, hbar: f64) -> Result<Self> {
        Self::new((n_quanta as f64 + 0.5) * hbar * omega, omega, hbar, n_quanta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorVolumes {
    pub classical_volume: f64,
    pub quantized_volume: f64,
    pub semi_axes: (f64, f64),
}

pub fn oscillator_volumes(spec: &OscillatorSpec) -> OscillatorVolumes {
    let a = (2.0 * spec.energy).sqrt();
    let b = (2.0 * spec.energy / (spec.omega * spec.omega)).sqrt();
    OscillatorVolumes {
        classical_volume: PI * a * b,
        quantized_volume: TAU * (spec.n_quanta as f64 + 0.5) * spec.hbar,
        semi_axes: (a, b),
    }
}

/// `Y = −iγ₁u₁ − iγ₂u₂ + γ₃u₃`.
pub fn sphere_map(u: [f64; 3], gammas: &GammaBasis) -> CliffordElement {
    let minus_i = Complex64::new(0.0, -1.0);
    gammas.gamma1.scale(minus_i * u[0]) + gammas.gamma2.scale(minus_i * u[1]) + u[2] * gammas.gamma3
}

/// Identity coefficient of `Y²` and the size of its remainder.
pub fn sphere_map_square(u: [f64; 3], gammas: &GammaBasis) -> (ComplexScalar, f64) {
    let y = sphere_map(u, gammas);
    (y * y).scalar_decomposition()
}
