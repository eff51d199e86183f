//! Heat and free-particle Schrödinger kernels.
//!
//! ```text
//! P(x, t) = (4πDt)^(−1/2) exp(−x²/(4Dt))              ∂ₜP = D ∂ₓₓP
//! K(x, t) = (m/(2πiℏt))^(1/2) exp(i m x²/(2ℏt))       iℏ ∂ₜK = −(ℏ²/2m) ∂ₓₓK
//! ```
//!
//! Substituting `t → it` in `P` gives `K` when `D = ℏ/(2m)`. Complex square
//! roots are taken on the principal branch, so `√i = e^(iπ/4)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::ComplexScalar;
use crate::error::{Error, Result};

/// Relative tolerance on `D = ℏ/(2m)` for the Wick dictionary.
pub const DICTIONARY_RTOL: f64 = 1e-12;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatKernel {
    diffusion: f64,
}

impl HeatKernel {
    pub fn new(diffusion: f64) -> Result<Self> {
        Ok(Self { diffusion: positive("diffusion coefficient", diffusion)? })
    }

    pub fn diffusion(&self) -> f64 {
        self.diffusion
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::domain(format!("heat kernel needs t > 0, got {t}")));
        }
        let four_dt = 4.0 * self.diffusion * t;
        Ok((PI * four_dt).sqrt().recip() * (-x * x / four_dt).exp())
    }

    /// Analytic continuation to complex time `τ` (principal branch).
    pub fn eval_complex(&self, x: f64, tau: ComplexScalar) -> Result<ComplexScalar> {
        if tau.norm() == 0.0 {
            return Err(Error::domain("heat kernel is singular at τ = 0"));
        }
        let four_dtau = tau * (4.0 * self.diffusion);
        Ok((four_dtau * PI).sqrt().inv() * (-(x * x) / four_dtau).exp())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchrodingerKernel {
    hbar: f64,
    mass: f64,
}

impl SchrodingerKernel {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        Ok(Self { hbar: positive("hbar", hbar)?, mass: positive("mass", mass)? })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The diffusion coefficient `ℏ/(2m)` whose heat kernel continues to
    /// this propagator.
    pub fn matching_diffusion(&self) -> f64 {
        self.hbar / (2.0 * self.mass)
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<ComplexScalar> {
        if t == 0.0 || !t.is_finite() {
            return Err(Error::domain(format!("Schrödinger kernel needs finite t ≠ 0, got {t}")));
        }
        let i = Complex64::i();
        let prefactor = (Complex64::new(self.mass, 0.0) / (i * (2.0 * PI * self.hbar * t))).sqrt();
        let phase = self.mass * x * x / (2.0 * self.hbar * t);
        Ok(prefactor * Complex64::from_polar(1.0, phase))
    }

    /// `|K(x, t)| = (m/(2πℏ|t|))^(1/2)`, independent of `x`.
    pub fn modulus(&self, t: f64) -> f64 {
        (self.mass / (2.0 * PI * self.hbar * t.abs())).sqrt()
    }
}

pub fn heat_kernel(spec: &HeatKernel, x: f64, t: f64) -> Result<f64> {
    spec.eval(x, t)
}

pub fn schrodinger_kernel(spec: &SchrodingerKernel, x: f64, t: f64) -> Result<ComplexScalar> {
    spec.eval(x, t)
}

/// `max |P(x, it) − K(x, t)|` over the grid.
pub fn wick_identity_residual(
    heat: &HeatKernel,
    schrodinger: &SchrodingerKernel,
    grid: &[(f64, f64)],
) -> Result<f64> {
    let want = schrodinger.matching_diffusion();
    if ((heat.diffusion() - want) / want).abs() > DICTIONARY_RTOL {
        return Err(Error::Precondition(format!(
            "diffusion {} does not match ħ/(2m) = {want}",
            heat.diffusion()
        )));
    }
    let mut worst = 0.0f64;
    for &(x, t) in grid {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::Precondition(format!("grid time must be positive, got {t}")));
        }
        let continued = heat.eval_complex(x, Complex64::new(0.0, t))?;
        worst = worst.max((continued - schrodinger.eval(x, t)?).norm());
    }
    Ok(worst)
}

/// `|∂ₜP − D∂ₓₓP|` by central differences with step `h` in both variables.
pub fn heat_pde_residual(spec: &HeatKernel, x: f64, t: f64, h: f64) -> Result<f64> {
    let p = |x, t| spec.eval(x, t);
    let dt = (p(x, t + h)? - p(x, t - h)?) / (2.0 * h);
    let dxx = (p(x + h, t)? - 2.0 * p(x, t)? + p(x - h, t)?) / (h * h);
    Ok((dt - spec.diffusion() * dxx).abs())
}

/// `|iℏ∂ₜK + (ℏ²/2m)∂ₓₓK|` by central differences with step `h`.
pub fn schrodinger_pde_residual(spec: &SchrodingerKernel, x: f64, t: f64, h: f64) -> Result<f64> {
    let k = |x, t| spec.eval(x, t);
    let dt = (k(x, t + h)? - k(x, t - h)?) / (2.0 * h);
    let dxx = (k(x + h, t)? - k(x, t)? * 2.0 + k(x - h, t)?) / (h * h);
    let hbar = spec.hbar();
    let lhs = Complex64::i() * hbar * dt;
    let rhs = dxx * (-hbar * hbar / (2.0 * spec.mass()));
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn grid(nx: usize, nt: usize) -> Vec<(f64, f64)> {
        let mut g = Vec::with_capacity(nx * nt);
        for i in 0..nx {
            for j in 0..nt {
                let x = -5.0 + 10.0 * i as f64 / (nx - 1) as f64;
                let t = 0.5 + 1.5 * j as f64 / (nt - 1) as f64;
                g.push((x, t));
            }
        }
        g
    }

    #[test]
    fn heat_kernel_examples() {
        let h = HeatKernel::new(0.5).unwrap();
        assert_abs_diff_eq!(heat_kernel(&h, 0.0, 1.0).unwrap(), 0.398942280401433, epsilon = 1e-15);
        assert_eq!(h.eval(1.3, 0.7).unwrap(), h.eval(-1.3, 0.7).unwrap());
        assert!(h.eval(0.0, 0.0).is_err());
        assert!(h.eval(0.0, -1.0).is_err());
        assert!(HeatKernel::new(0.0).is_err());
    }

    #[test]
    fn heat_kernel_integrates_to_one() {
        // Trapezoid over ±10σ.
        for (d, t) in [(0.5, 1.0), (2.0, 0.3), (0.1, 5.0)] {
            let h = HeatKernel::new(d).unwrap();
            let sigma = (2.0 * d * t).sqrt();
            let n = 20_000;
            let (lo, hi) = (-10.0 * sigma, 10.0 * sigma);
            let dx = (hi - lo) / n as f64;
            let mut sum = 0.5 * (h.eval(lo, t).unwrap() + h.eval(hi, t).unwrap());
            for i in 1..n {
                sum += h.eval(lo + i as f64 * dx, t).unwrap();
            }
            assert_abs_diff_eq!(sum * dx, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn schrodinger_kernel_examples() {
        let k = SchrodingerKernel::new(1.0, 1.0).unwrap();
        let want = (Complex64::new(0.0, 2.0 * PI)).sqrt().inv();
        assert_abs_diff_eq!((k.eval(0.0, 1.0).unwrap() - want).norm(), 0.0, epsilon = 1e-15);
        assert_eq!(k.eval(0.8, 1.5).unwrap(), k.eval(-0.8, 1.5).unwrap());
        assert!(k.eval(0.0, 0.0).is_err());
        assert!(SchrodingerKernel::new(1.0, -1.0).is_err());
    }

    #[test]
    fn wick_identity_on_a_thousand_points() {
        let h = HeatKernel::new(0.5).unwrap();
        let k = SchrodingerKernel::new(1.0, 1.0).unwrap();
        let g = grid(40, 25);
        assert_eq!(g.len(), 1000);
        assert!(wick_identity_residual(&h, &k, &g).unwrap() <= 1e-12);
        assert!(wick_identity_residual(&h, &k, &[(0.0, 1.0)]).unwrap() <= 1e-16);
    }

    #[test]
    fn wick_identity_guards() {
        let k = SchrodingerKernel::new(1.0, 1.0).unwrap();
        let wrong = HeatKernel::new(1.0).unwrap();
        assert!(matches!(wick_identity_residual(&wrong, &k, &[(0.0, 1.0)]), Err(Error::Precondition(_))));
        let h = HeatKernel::new(0.5).unwrap();
        assert!(matches!(wick_identity_residual(&h, &k, &[(0.0, -1.0)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn kernels_solve_their_equations() {
        let h = HeatKernel::new(0.5).unwrap();
        let k = SchrodingerKernel::new(1.0, 1.0).unwrap();
        for i in 0..=10 {
            for j in 0..=5 {
                let (x, t) = (-2.0 + 0.4 * i as f64, 1.0 + 0.2 * j as f64);
                assert!(heat_pde_residual(&h, x, t, 1e-4).unwrap() <= 1e-6);
                assert!(schrodinger_pde_residual(&k, x, t, 1e-4).unwrap() <= 1e-6);
            }
        }
    }

    proptest! {
        #[test]
        fn schrodinger_modulus_is_flat(x in -5.0..5.0f64, t in 0.1..10.0f64, m in 0.1..5.0f64) {
            let k = SchrodingerKernel::new(1.0, m).unwrap();
            let z = k.eval(x, t).unwrap();
            prop_assert!((z.norm() - k.modulus(t)).abs() <= 1e-13 * k.modulus(t));
        }

        #[test]
        fn wick_identity_for_any_matching_constants(
            hbar in 0.2..3.0f64, mass in 0.2..3.0f64, x in -4.0..4.0f64, t in 0.5..3.0f64,
        ) {
            let k = SchrodingerKernel::new(hbar, mass).unwrap();
            let h = HeatKernel::new(k.matching_diffusion()).unwrap();
            prop_assert!(wick_identity_residual(&h, &k, &[(x, t)]).unwrap() <= 1e-12);
        }
    }
}
