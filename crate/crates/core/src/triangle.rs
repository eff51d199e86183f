//! Classical and quantum Tartaglia-Pascal triangles.
//!
//! The classical row `n` holds the binomial coefficients `C(n, k)`. The
//! quantum row holds complex amplitudes
//! `ψₙₖ = √C(n,k) · 2^(−n/2) · exp(i·φ(n,k))` whose squared moduli are the
//! binomial probabilities `C(n,k)·2⁻ⁿ`. Both rows approach the
//! de Moivre-Laplace Gaussian with mean `n/2` and variance `n/4`.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::clifford::ComplexScalar;
use crate::error::{Error, Result};

pub const MAX_ROW: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Classical,
    Quantum,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RowValues {
    Classical(Vec<BigUint>),
    Quantum(Vec<ComplexScalar>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleRow {
    pub n: u32,
    pub values: RowValues,
}

impl TriangleRow {
    pub fn kind(&self) -> RowKind {
        match self.values {
            RowValues::Classical(_) => RowKind::Classical,
            RowValues::Quantum(_) => RowKind::Quantum,
        }
    }

    pub fn len(&self) -> usize {
        match &self.values {
            RowValues::Classical(v) => v.len(),
            RowValues::Quantum(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Probability mass per entry: `C(n,k)·2⁻ⁿ` or `|ψₙₖ|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        match &self.values {
            RowValues::Classical(v) => {
                let scale = 2f64.powi(-(self.n as i32));
                v.iter().map(|c| big_to_f64(c) * scale).collect()
            }
            RowValues::Quantum(v) => v.iter().map(|z| z.norm_sqr()).collect(),
        }
    }

    pub fn classical_values(&self) -> Option<&[BigUint]> {
        match &self.values {
            RowValues::Classical(v) => Some(v),
            RowValues::Quantum(_) => None,
        }
    }

    pub fn quantum_values(&self) -> Option<&[ComplexScalar]> {
        match &self.values {
            RowValues::Quantum(v) => Some(v),
            RowValues::Classical(_) => None,
        }
    }
}

fn check_row(n: u32) -> Result<()> {
    if n > MAX_ROW {
        return Err(Error::domain(format!("row index {n} exceeds {MAX_ROW}")));
    }
    Ok(())
}

fn big_to_f64(c: &BigUint) -> f64 {
    // C(1000, 500) ≈ 2.7e299 is still finite.
    c.to_f64().unwrap_or(f64::INFINITY)
}

/// Exact binomial coefficients of row `n`, built multiplicatively.
fn binomial_row(n: u32) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 1..=n {
        c = c * (n - k + 1) / k;
        row.push(c.clone());
    }
    row
}

pub fn classical_row(n: u32) -> Result<TriangleRow> {
    check_row(n)?;
    Ok(TriangleRow { n, values: RowValues::Classical(binomial_row(n)) })
}

/// `C(n,k)·2⁻ⁿ` in double precision.
pub fn binomial_pmf(n: u32, k: u32) -> Result<f64> {
    check_row(n)?;
    if k > n {
        return Err(Error::domain(format!("k = {k} exceeds n = {n}")));
    }
    let row = binomial_row(n);
    Ok(big_to_f64(&row[k as usize]) * 2f64.powi(-(n as i32)))
}

/// Phase of the quantum amplitude,
/// `((k − n/2)/n) · √((n−1)/4) · arctan(√((n−1)/4))`.
///
/// Only the product grouping of the factors is implemented; swapping the
/// reading means changing this one function. Row 0 has phase 0.
pub fn qtpt_phase(n: u32, k: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let offset = (k as f64 - nf / 2.0) / nf;
    let root = ((nf - 1.0) / 4.0).sqrt();
    offset * root * root.atan()
}

fn amplitude_from_pmf(pmf: f64, n: u32, k: u32) -> ComplexScalar {
    Complex64::from_polar(pmf.sqrt(), qtpt_phase(n, k))
}

pub fn qtpt_amplitude(n: u32, k: u32) -> Result<ComplexScalar> {
    if n == 0 && k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let pmf = binomial_pmf(n, k)?;
    Ok(amplitude_from_pmf(pmf, n, k))
}

pub fn qtpt_row(n: u32) -> Result<TriangleRow> {
    if n == 0 {
        return Err(Error::domain("quantum rows start at n = 1"));
    }
    check_row(n)?;
    let scale = 2f64.powi(-(n as i32));
    let values = binomial_row(n)
        .iter()
        .zip(0..)
        .map(|(c, k)| amplitude_from_pmf(big_to_f64(c) * scale, n, k))
        .collect();
    Ok(TriangleRow { n, values: RowValues::Quantum(values) })
}

/// De Moivre-Laplace density `N(n/2, n/4)` evaluated at `k = 0..=n`.
pub fn gaussian_approx_row(n: u32) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("gaussian approximation needs n >= 1"));
    }
    let mean = n as f64 / 2.0;
    let var = n as f64 / 4.0;
    let norm = (2.0 * PI * var).sqrt().recip();
    Ok((0..=n)
        .map(|k| {
            let d = k as f64 - mean;
            norm * (-d * d / (2.0 * var)).exp()
        })
        .collect())
}

/// `sup_k |p(k) − gaussian(k)|` for the classical pmf or the quantum `|ψ|²`.
pub fn row_sup_error(n: u32, kind: RowKind) -> Result<f64> {
    let gauss = gaussian_approx_row(n)?;
    let row = match kind {
        RowKind::Classical => classical_row(n)?,
        RowKind::Quantum => qtpt_row(n)?,
    };
    Ok(row
        .probabilities()
        .iter()
        .zip(&gauss)
        .map(|(p, g)| (p - g).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn classical_rows() {
        assert_eq!(classical_row(0).unwrap().classical_values().unwrap(), &u(&[1])[..]);
        assert_eq!(classical_row(4).unwrap().classical_values().unwrap(), &u(&[1, 4, 6, 4, 1])[..]);
        let r10 = classical_row(10).unwrap();
        assert_eq!(r10.classical_values().unwrap()[5], BigUint::from(252u32));
        assert_eq!(r10.kind(), RowKind::Classical);
    }

    #[test]
    fn classical_row_sums_to_power_of_two() {
        for n in [0, 1, 7, 61, 64, 200, 1000] {
            let row = classical_row(n).unwrap();
            let sum: BigUint = row.classical_values().unwrap().iter().sum();
            assert_eq!(sum, BigUint::one() << n as usize);
        }
    }

    #[test]
    fn pascal_recurrence_holds_exactly() {
        let mut prev = classical_row(0).unwrap().classical_values().unwrap().to_vec();
        for n in 1..=300 {
            let cur = classical_row(n).unwrap().classical_values().unwrap().to_vec();
            for k in 1..n as usize {
                assert_eq!(cur[k], &prev[k - 1] + &prev[k]);
            }
            prev = cur;
        }
    }

    #[test]
    fn row_range_guard() {
        assert!(matches!(classical_row(1001), Err(Error::Domain(_))));
        assert!(matches!(qtpt_row(1001), Err(Error::Domain(_))));
        assert!(matches!(qtpt_row(0), Err(Error::Domain(_))));
        assert!(matches!(qtpt_amplitude(3, 4), Err(Error::Domain(_))));
        assert!(gaussian_approx_row(0).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let a = qtpt_amplitude(1, 0).unwrap();
        assert_abs_diff_eq!(a.re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);

        let a = qtpt_amplitude(2, 1).unwrap();
        assert_abs_diff_eq!(a.re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);

        // mpmath, 50 digits: -(1/2)(1/2)atan(1/2)
        let a = qtpt_amplitude(2, 0).unwrap();
        assert_abs_diff_eq!(a.norm(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(a.arg(), -0.115911902250202, epsilon = 1e-14);

        // mpmath: (-2/4)·√(3/4)·atan(√(3/4))
        assert_abs_diff_eq!(qtpt_phase(4, 0), -0.309051721733219, epsilon = 1e-14);

        assert_eq!(qtpt_amplitude(0, 0).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn quantum_row_examples() {
        let r1 = qtpt_row(1).unwrap();
        let p = r1.probabilities();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-15);

        let moduli: Vec<f64> = qtpt_row(2).unwrap().quantum_values().unwrap().iter().map(|z| z.norm()).collect();
        for (m, want) in moduli.iter().zip([0.5, FRAC_1_SQRT_2, 0.5]) {
            assert_abs_diff_eq!(*m, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn modulus_law_and_normalization() {
        for n in 1..=200 {
            let row = qtpt_row(n).unwrap();
            let classical = classical_row(n).unwrap().probabilities();
            let quantum = row.probabilities();
            for k in 0..=n {
                assert_abs_diff_eq!(quantum[k as usize], classical[k as usize], epsilon = 1e-10);
                let single = qtpt_amplitude(n, k).unwrap();
                assert_abs_diff_eq!(single.norm_sqr(), classical[k as usize], epsilon = 1e-10);
            }
            assert_abs_diff_eq!(quantum.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn phases_are_antisymmetric() {
        for n in 1..=200 {
            for k in 0..=n {
                assert_abs_diff_eq!(qtpt_phase(n, k), -qtpt_phase(n, n - k), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gaussian_row_examples() {
        let g = gaussian_approx_row(4).unwrap();
        assert_abs_diff_eq!(g[2], 0.398942280401433, epsilon = 1e-14);
        for k in 0..=4 {
            assert_eq!(g[k], g[4 - k]);
        }
        let g = gaussian_approx_row(100).unwrap();
        let peak = g.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        assert_eq!(peak, 50);
    }

    // Frozen from an exact rational/mpmath evaluation of
    // max_k |C(n,k)2^-n − N(k; n/2, n/4)|.
    const SUP_ERROR_ORACLE: [(u32, f64); 4] = [
        (20, 0.00221535961332399),
        (25, 0.00143606047745042),
        (100, 0.000199218693107774),
        (400, 2.492607635034e-5),
    ];

    #[test]
    fn sup_error_matches_oracle() {
        for (n, want) in SUP_ERROR_ORACLE {
            let got = row_sup_error(n, RowKind::Classical).unwrap();
            assert_abs_diff_eq!(got, want, epsilon = 1e-12 * want.max(1e-3));
        }
        assert!(row_sup_error(100, RowKind::Classical).unwrap() <= 1e-3);
    }

    #[test]
    fn sup_error_kinds_agree() {
        let c = row_sup_error(20, RowKind::Classical).unwrap();
        let q = row_sup_error(20, RowKind::Quantum).unwrap();
        assert_abs_diff_eq!(c, q, epsilon = 1e-12);
    }

    #[test]
    fn sup_error_decreases() {
        let e: Vec<f64> = [25, 100, 400].iter().map(|&n| row_sup_error(n, RowKind::Classical).unwrap()).collect();
        assert!(e[0] > e[1] && e[1] > e[2]);
    }
}
