//! Brownian endpoints against the Wick-rotated endpoints of their square
//! root: histograms, Gaussian fits and KS verdicts on both sides.

use serde::Serialize;

use wickwalk_core::stats::{
    gaussian_fit, histogram_build, ks_two_sample, normal_pdf, standardize, StatsReport, Verdict,
};
use wickwalk_core::stochastic::{endpoint_channels, PathEnsemble, MIN_STAT_TRIALS};

use crate::artifacts::{histogram_rows, num, overlay_svg, ArtifactWriter, SvgSeries, HISTOGRAM_HEADER};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Histogram range for standardized samples.
pub const HISTOGRAM_RANGE: (f64, f64) = (-5.0, 5.0);
pub const STEP_IDENTITY_TOL: f64 = 1e-15;
pub const PATH_IDENTITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct ChannelComparison {
    pub ks_statistic: f64,
    pub ks_threshold: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareIdentity {
    /// `max |ΔY² − ΔW| / max(1, |ΔW|)` over every step of every path.
    pub max_step_residual: f64,
    /// `max |Σ ΔY² − W_T|` over paths.
    pub max_path_residual: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussianFitSummary {
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig3Report {
    /// Raw fit of `W_T` before standardization; σ should be `√T`.
    pub fourier_raw_fit: GaussianFitSummary,
    pub fourier: StatsReport,
    pub schrodinger_real: StatsReport,
    pub schrodinger_imag: StatsReport,
    pub channel_symmetry: ChannelComparison,
    pub square_identity: SquareIdentity,
    pub passed: bool,
}

pub fn run_fig3(config: &RunConfig) -> CliResult<Fig3Report> {
    config.validate()?;
    if config.trials < MIN_STAT_TRIALS {
        return Err(CliError::Usage(format!(
            "fig3 needs at least {MIN_STAT_TRIALS} trials for KS statistics, got {}",
            config.trials
        )));
    }
    let ensemble = PathEnsemble::new(config.seed, config.trials, config.steps, config.horizon)?;
    let summaries = ensemble.summaries();

    let endpoints: Vec<f64> = summaries.iter().map(|s| s.endpoint).collect();
    let sqrt_endpoints: Vec<_> = summaries.iter().map(|s| s.sqrt_endpoint).collect();
    let (raw_mu, raw_sigma) = gaussian_fit(&endpoints)?;
    let fourier_z = standardize(&endpoints)?;
    let (real_channel, imag_channel) = endpoint_channels(&sqrt_endpoints)?;

    let alpha = config.alpha;
    let fourier = StatsReport::against_standard_normal(&fourier_z, alpha)?;
    let schrodinger_real = StatsReport::against_standard_normal(&real_channel, alpha)?;
    let schrodinger_imag = StatsReport::against_standard_normal(&imag_channel, alpha)?;
    let two = ks_two_sample(&real_channel, &imag_channel)?;
    let channel_symmetry = ChannelComparison {
        ks_statistic: two.statistic,
        ks_threshold: two.threshold_at(alpha)?,
        verdict: if two.passes_at(alpha)? { Verdict::Pass } else { Verdict::Fail },
    };

    let max_step_residual = summaries.iter().map(|s| s.max_step_residual).fold(0.0, f64::max);
    let max_path_residual = summaries.iter().map(|s| s.path_residual).fold(0.0, f64::max);
    let identity_ok = max_step_residual <= STEP_IDENTITY_TOL && max_path_residual <= PATH_IDENTITY_TOL;
    let square_identity = SquareIdentity {
        max_step_residual,
        max_path_residual,
        verdict: if identity_ok { Verdict::Pass } else { Verdict::Fail },
    };

    let passed = [fourier.verdict, schrodinger_real.verdict, schrodinger_imag.verdict, channel_symmetry.verdict]
        .iter()
        .all(|v| v.is_pass())
        && identity_ok;
    let report = Fig3Report {
        fourier_raw_fit: GaussianFitSummary { mu: raw_mu, sigma: raw_sigma },
        fourier,
        schrodinger_real,
        schrodinger_imag,
        channel_symmetry,
        square_identity,
        passed,
    };

    let mut out = ArtifactWriter::new(&config.output_dir)?;
    let rows: Vec<Vec<String>> = (0..summaries.len())
        .map(|t| {
            vec![
                t.to_string(),
                num(endpoints[t]),
                num(sqrt_endpoints[t].re),
                num(sqrt_endpoints[t].im),
                num(fourier_z[t]),
                num(real_channel[t]),
                num(imag_channel[t]),
            ]
        })
        .collect();
    out.write_csv(
        "endpoints.csv",
        &["trial", "w_t", "y_re", "y_im", "fourier_z", "real_channel", "imag_channel"],
        &rows,
    )?;

    let hist = |xs: &[f64]| histogram_build(xs, config.n_bins, HISTOGRAM_RANGE);
    let h_fourier = hist(&fourier_z)?;
    let h_real = hist(&real_channel)?;
    let h_imag = hist(&imag_channel)?;
    out.write_csv("histogram_fourier.csv", &HISTOGRAM_HEADER, &histogram_rows(&h_fourier))?;
    out.write_csv("histogram_schrodinger_real.csv", &HISTOGRAM_HEADER, &histogram_rows(&h_real))?;
    out.write_csv("histogram_schrodinger_imag.csv", &HISTOGRAM_HEADER, &histogram_rows(&h_imag))?;

    let svg = overlay_svg(
        "Brownian endpoints vs Wick-rotated square-root endpoints",
        &[
            SvgSeries { label: "Brownian W_T (Fourier)", color: "#1f77b4", histogram: &h_fourier },
            SvgSeries { label: "sqrt path, real channel", color: "#d62728", histogram: &h_real },
            SvgSeries { label: "sqrt path, imag channel", color: "#2ca02c", histogram: &h_imag },
        ],
        &|x| normal_pdf(x, 0.0, 1.0),
    );
    out.write_bytes("fig3.svg", svg.as_bytes())?;
    out.write_json("verdict.json", &report)?;
    out.finish("fig3", config, &serde_json::json!({ "histogram_range": HISTOGRAM_RANGE }))?;

    Ok(report)
}
