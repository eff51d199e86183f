//! Histograms, moments, Gaussian fits and Kolmogorov-Smirnov tests.
//!
//! Variances are population (`1/N`) variances. KS thresholds use the
//! asymptotic Kolmogorov law, `c(α) = √(−ln(α/2)/2)`, which gives
//! `c(0.05) ≈ 1.358` and `c(0.01) ≈ 1.628`. They are meant for `N ≥ 10³`.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_KS_SAMPLES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `n_bins + 1` strictly increasing edges; bins are `[edgeᵢ, edgeᵢ₊₁)`.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Every sample seen, including those outside `[lo, hi)`.
    pub total: u64,
    /// Samples outside `[lo, hi)` (or NaN).
    pub outside: u64,
}

impl Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn in_range(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bin_width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    /// Count normalized by `total × width`, comparable to a pdf.
    pub fn density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.total as f64 * self.bin_width(i))
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

pub fn histogram_build(samples: &[f64], n_bins: usize, range: (f64, f64)) -> Result<Histogram> {
    let (lo, hi) = range;
    if samples.is_empty() {
        return Err(Error::domain("histogram of an empty sample"));
    }
    if n_bins == 0 {
        return Err(Error::domain("histogram needs at least one bin"));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::domain(format!("invalid histogram range ({lo}, {hi})")));
    }
    let width = (hi - lo) / n_bins as f64;
    let mut edges: Vec<f64> = (0..=n_bins).map(|i| lo + i as f64 * width).collect();
    edges[n_bins] = hi;

    let mut counts = vec![0u64; n_bins];
    let mut outside = 0u64;
    for &x in samples {
        if !(x >= lo && x < hi) {
            outside += 1;
            continue;
        }
        // The arithmetic guess can be off by one near an edge; settle it
        // against the stored edges.
        let mut i = (((x - lo) / width) as usize).min(n_bins - 1);
        while i > 0 && x < edges[i] {
            i -= 1;
        }
        while i + 1 < n_bins && x >= edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    Ok(Histogram { edges, counts, total: samples.len() as u64, outside })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

/// Population moments. Skewness and kurtosis are NaN for a constant sample.
pub fn moments(samples: &[f64]) -> Result<Moments> {
    if samples.is_empty() {
        return Err(Error::domain("moments of an empty sample"));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
    Ok(Moments {
        mean,
        variance: m2,
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
    })
}

/// Sample mean and population standard deviation.
pub fn gaussian_fit(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Err(Error::domain(format!("gaussian fit needs at least 2 samples, got {}", samples.len())));
    }
    if samples.iter().all(|&x| x == samples[0]) {
        return Err(Error::Degenerate(format!("all samples equal {}", samples[0])));
    }
    let m = moments(samples)?;
    Ok((m.mean, m.variance.sqrt()))
}

/// Centers on the sample mean and divides by the population standard
/// deviation.
pub fn standardize(samples: &[f64]) -> Result<Vec<f64>> {
    let (mu, sigma) = gaussian_fit(samples)?;
    Ok(samples.iter().map(|x| (x - mu) / sigma).collect())
}

pub fn normal_pdf(x: f64, mu: f64, sigma: f64) -> f64 {
    let z = (x - mu) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// Asymptotic Kolmogorov critical coefficient `c(α)`.
pub fn ks_critical_coefficient(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("significance level must lie in (0, 1), got {alpha}")));
    }
    Ok((-(alpha / 2.0).ln() / 2.0).sqrt())
}

/// A KS statistic together with the sample size that sets its scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    pub statistic: f64,
    /// `N` for one sample, `nm/(n+m)` for two.
    pub effective_n: f64,
}

impl KsTest {
    pub fn threshold_at(&self, alpha: f64) -> Result<f64> {
        Ok(ks_critical_coefficient(alpha)? / self.effective_n.sqrt())
    }

    pub fn passes_at(&self, alpha: f64) -> Result<bool> {
        Ok(self.statistic <= self.threshold_at(alpha)?)
    }
}

fn sorted_copy(samples: &[f64], what: &str) -> Result<Vec<f64>> {
    if samples.len() < MIN_KS_SAMPLES {
        return Err(Error::domain(format!(
            "{what} needs at least {MIN_KS_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::domain(format!("{what}: sample contains NaN")));
    }
    let mut v = samples.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    Ok(v)
}

/// `sup_x |F_N(x) − F(x)|` against a continuous reference CDF.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], reference_cdf: F) -> Result<KsTest> {
    let xs = sorted_copy(samples, "one-sample KS")?;
    let n = xs.len() as f64;
    let statistic = xs.iter().enumerate().fold(0.0f64, |acc, (i, &x)| {
        let f = reference_cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        acc.max(above).max(below)
    });
    Ok(KsTest { statistic, effective_n: n })
}

/// `sup_x |F_a(x) − F_b(x)|` between two empirical CDFs.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsTest> {
    let xs = sorted_copy(a, "two-sample KS")?;
    let ys = sorted_copy(b, "two-sample KS")?;
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut statistic = 0.0f64;
    while i < n && j < m {
        let x = xs[i].min(ys[j]);
        while i < n && xs[i] <= x {
            i += 1;
        }
        while j < m && ys[j] <= x {
            j += 1;
        }
        statistic = statistic.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let (nf, mf) = (n as f64, m as f64);
    Ok(KsTest { statistic, effective_n: nf * mf / (nf + mf) })
}

/// Empirical CDF of an already sorted sample, `#{xᵢ ≤ x} / N`.
pub fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub ks_statistic: f64,
    pub ks_threshold: f64,
    pub alpha: f64,
    pub verdict: Verdict,
}

impl StatsReport {
    /// Moments of `samples` plus the verdict of an already computed KS test.
    pub fn new(samples: &[f64], ks: &KsTest, alpha: f64) -> Result<Self> {
        let m = moments(samples)?;
        let ks_threshold = ks.threshold_at(alpha)?;
        Ok(Self {
            mean: m.mean,
            variance: m.variance,
            skewness: m.skewness,
            excess_kurtosis: m.excess_kurtosis,
            ks_statistic: ks.statistic,
            ks_threshold,
            alpha,
            verdict: if ks.statistic <= ks_threshold { Verdict::Pass } else { Verdict::Fail },
        })
    }

    /// One-sample KS of `samples` against `N(0, 1)`.
    pub fn against_standard_normal(samples: &[f64], alpha: f64) -> Result<Self> {
        let ks = ks_one_sample(samples, standard_normal_cdf)?;
        Self::new(samples, &ks, alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn normals(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.sample(StandardNormal)).collect()
    }

    #[test]
    fn half_open_bins() {
        let h = histogram_build(&[0.5], 2, (0.0, 1.0)).unwrap();
        assert_eq!(h.counts, vec![0, 1]);
        let h = histogram_build(&[0.0, 1.0, -0.1, f64::NAN], 2, (0.0, 1.0)).unwrap();
        assert_eq!(h.counts, vec![1, 0]);
        assert_eq!(h.outside, 3);
        assert_eq!(h.total, 4);
    }

    #[test]
    fn histogram_guards() {
        assert!(histogram_build(&[], 2, (0.0, 1.0)).is_err());
        assert!(histogram_build(&[0.1], 0, (0.0, 1.0)).is_err());
        assert!(histogram_build(&[0.1], 2, (1.0, 1.0)).is_err());
    }

    #[test]
    fn uniform_histogram_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let xs: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        let h = histogram_build(&xs, 10, (0.0, 1.0)).unwrap();
        // Binomial(10⁴, 0.1): sd = 30.
        for &c in &h.counts {
            assert!((c as f64 - 1000.0).abs() <= 120.0, "{c}");
        }
        assert_eq!(h.in_range(), h.total);
        let area: f64 = (0..h.n_bins()).map(|i| h.density(i) * h.bin_width(i)).sum();
        assert_abs_diff_eq!(area, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fits() {
        assert_eq!(gaussian_fit(&[-1.0, 1.0]).unwrap(), (0.0, 1.0));
        assert!(matches!(gaussian_fit(&[1.0, 1.0, 1.0]), Err(Error::Degenerate(_))));
        assert!(matches!(gaussian_fit(&[1.0]), Err(Error::Domain(_))));

        let (mu, sigma) = gaussian_fit(&normals(3, 100_000)).unwrap();
        assert!(mu.abs() <= 0.013, "{mu}");
        assert!((0.99..=1.01).contains(&sigma), "{sigma}");
    }

    #[test]
    fn moments_of_a_known_sample() {
        let m = moments(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.mean, 2.5);
        assert_eq!(m.variance, 1.25);
        assert_abs_diff_eq!(m.skewness, 0.0, epsilon = 1e-15);
        // m4 = 2.5625 → 2.5625/1.5625 − 3
        assert_abs_diff_eq!(m.excess_kurtosis, -1.36, epsilon = 1e-12);
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(standard_normal_cdf(0.0), 0.5);
        assert_abs_diff_eq!(standard_normal_cdf(1.959963984540054), 0.975, epsilon = 1e-15);
        assert_abs_diff_eq!(standard_normal_cdf(-1.0), 0.15865525393145707, epsilon = 1e-16);
    }

    #[test]
    fn critical_values() {
        assert_abs_diff_eq!(ks_critical_coefficient(0.05).unwrap(), 1.358, epsilon = 5e-4);
        assert_abs_diff_eq!(ks_critical_coefficient(0.01).unwrap(), 1.628, epsilon = 5e-4);
        let t = KsTest { statistic: 0.0, effective_n: 1e5 };
        assert_abs_diff_eq!(t.threshold_at(0.01).unwrap(), 0.00515, epsilon = 1e-5);
        assert!(ks_critical_coefficient(0.0).is_err());
        assert!(ks_critical_coefficient(1.0).is_err());
    }

    #[test]
    fn ks_constant_sample_is_far_from_normal() {
        let xs = vec![0.3; 50];
        let ks = ks_one_sample(&xs, standard_normal_cdf).unwrap();
        assert!(ks.statistic >= 0.5);
    }

    #[test]
    fn ks_minimum_sample_size() {
        assert!(ks_one_sample(&[0.0; 19], standard_normal_cdf).is_err());
        assert!(ks_two_sample(&[0.0; 19], &[0.0; 30]).is_err());
    }

    #[test]
    fn ks_one_sample_level() {
        // At α = 0.01 roughly one run in a hundred should reject.
        let rejections = (0..200)
            .filter(|&s| {
                let ks = ks_one_sample(&normals(1000 + s, 2000), standard_normal_cdf).unwrap();
                !ks.passes_at(0.01).unwrap()
            })
            .count();
        assert!(rejections <= 8, "{rejections} rejections out of 200");
    }

    #[test]
    fn ks_two_sample_edge_cases() {
        let a: Vec<f64> = (0..40).map(|i| i as f64).collect();
        assert_eq!(ks_two_sample(&a, &a).unwrap().statistic, 0.0);
        let b: Vec<f64> = (0..30).map(|i| 100.0 + i as f64).collect();
        assert_eq!(ks_two_sample(&a, &b).unwrap().statistic, 1.0);
        let ks = ks_two_sample(&a, &b).unwrap();
        assert_abs_diff_eq!(ks.effective_n, 40.0 * 30.0 / 70.0, epsilon = 1e-12);
    }

    #[test]
    fn ks_two_sample_with_ties() {
        let mut a = vec![1.0; 10];
        a.extend(vec![4.0; 10]);
        let mut b = vec![1.0; 15];
        b.extend(vec![4.0; 5]);
        assert_abs_diff_eq!(ks_two_sample(&a, &b).unwrap().statistic, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn ks_two_independent_normals_pass() {
        let rejections = (0..100)
            .filter(|&s| {
                let ks = ks_two_sample(&normals(2 * s, 10_000), &normals(2 * s + 1, 10_000)).unwrap();
                !ks.passes_at(0.01).unwrap()
            })
            .count();
        assert!(rejections <= 5, "{rejections}");
    }

    #[test]
    fn report_verdict_follows_threshold() {
        let xs = normals(8, 5000);
        let r = StatsReport::against_standard_normal(&xs, 0.01).unwrap();
        assert_eq!(r.verdict.is_pass(), r.ks_statistic <= r.ks_threshold);
        assert!(r.variance >= 0.0);
        let shifted: Vec<f64> = xs.iter().map(|x| x + 1.0).collect();
        let r = StatsReport::against_standard_normal(&shifted, 0.01).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    proptest! {
        #[test]
        fn ks_statistic_in_unit_interval(xs in proptest::collection::vec(-50.0..50.0f64, 20..200)) {
            let d = ks_one_sample(&xs, standard_normal_cdf).unwrap().statistic;
            prop_assert!((0.0..=1.0).contains(&d));
        }

        #[test]
        fn refined_grids_never_lower_the_gap(xs in proptest::collection::vec(-3.0..3.0f64, 20..100)) {
            let mut sorted = xs.clone();
            sorted.sort_unstable_by(f64::total_cmp);
            let gap_on = |pts: &[f64]| pts.iter()
                .map(|&x| (empirical_cdf(&sorted, x) - standard_normal_cdf(x)).abs())
                .fold(0.0f64, f64::max);
            let coarse: Vec<f64> = (0..=12).map(|i| -3.0 + 0.5 * i as f64).collect();
            let fine: Vec<f64> = (0..=120).map(|i| -3.0 + 0.05 * i as f64).collect();
            let exact = ks_one_sample(&xs, standard_normal_cdf).unwrap().statistic;
            prop_assert!(gap_on(&fine) >= gap_on(&coarse));
            prop_assert!(exact + 1e-15 >= gap_on(&fine));
        }

        #[test]
        fn histogram_is_permutation_invariant(mut xs in proptest::collection::vec(-2.0..2.0f64, 1..300)) {
            let h1 = histogram_build(&xs, 7, (-1.5, 1.5)).unwrap();
            xs.reverse();
            let h2 = histogram_build(&xs, 7, (-1.5, 1.5)).unwrap();
            prop_assert_eq!(&h1, &h2);
            prop_assert_eq!(h1.in_range() + h1.outside, h1.total);
        }

        #[test]
        fn fit_is_affine_equivariant(
            xs in proptest::collection::vec(-10.0..10.0f64, 2..100),
            a in -5.0..5.0f64,
            b in -5.0..5.0f64,
        ) {
            prop_assume!(a.abs() > 1e-3);
            if let Ok((mu, sigma)) = gaussian_fit(&xs) {
                prop_assume!(sigma > 1e-6);
                let ys: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
                let (mu2, sigma2) = gaussian_fit(&ys).unwrap();
                prop_assert!((mu2 - (a * mu + b)).abs() <= 1e-12 * (1.0 + mu2.abs()) * 10.0);
                prop_assert!((sigma2 - a.abs() * sigma).abs() <= 1e-12 * (1.0 + sigma2) * 10.0);
            }
        }
    }
}
