use serde::Serialize;

use wickwalk_core::triangle::{classical_row, qtpt_row, row_sup_error, RowKind, MAX_ROW};

use crate::artifacts::{num, ArtifactWriter};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Tolerance on `| |ψ|² − C(n,k)2⁻ⁿ |` and on row normalization.
pub const MODULUS_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    Classical,
    Quantum,
    Both,
}

impl TriangleKind {
    fn classical(self) -> bool {
        matches!(self, TriangleKind::Classical | TriangleKind::Both)
    }

    fn quantum(self) -> bool {
        matches!(self, TriangleKind::Quantum | TriangleKind::Both)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub n_max: u32,
    pub kind: TriangleKind,
    /// Largest `| |ψₙₖ|² − C(n,k)2⁻ⁿ |` over all emitted quantum rows.
    pub max_modulus_residual: Option<f64>,
    /// Largest `|Σₖ|ψₙₖ|² − 1|`.
    pub max_normalization_error: Option<f64>,
    pub last_sup_error: f64,
    pub passed: bool,
}

pub fn run_triangle(config: &RunConfig, n_max: u32, kind: TriangleKind) -> CliResult<TriangleReport> {
    if !(1..=MAX_ROW).contains(&n_max) {
        return Err(CliError::Usage(format!("n_max must lie in 1..={MAX_ROW}, got {n_max}")));
    }
    let mut out = ArtifactWriter::new(&config.output_dir)?;
    let width = MAX_ROW.to_string().len();

    if kind.classical() {
        for n in 0..=n_max {
            let row = classical_row(n)?;
            let pmf = row.probabilities();
            let rows: Vec<Vec<String>> = row
                .classical_values()
                .expect("classical row")
                .iter()
                .zip(&pmf)
                .enumerate()
                .map(|(k, (c, p))| vec![k.to_string(), c.to_string(), num(*p)])
                .collect();
            out.write_csv(&format!("rows/classical_n{n:0width$}.csv"), &["k", "count", "pmf"], &rows)?;
        }
    }

    let mut max_modulus_residual = None;
    let mut max_normalization_error = None;
    if kind.quantum() {
        let mut residual_rows = Vec::new();
        let mut comparison_rows = Vec::new();
        let (mut worst_mod, mut worst_norm) = (0.0f64, 0.0f64);
        for n in 1..=n_max {
            let row = qtpt_row(n)?;
            let amps = row.quantum_values().expect("quantum row");
            let pmf = classical_row(n)?.probabilities();
            let rows: Vec<Vec<String>> = amps
                .iter()
                .enumerate()
                .map(|(k, z)| vec![k.to_string(), num(z.re), num(z.im), num(z.norm_sqr())])
                .collect();
            out.write_csv(&format!("rows/quantum_n{n:0width$}.csv"), &["k", "re", "im", "modulus2"], &rows)?;

            let mut row_worst = 0.0f64;
            for (k, (z, p)) in amps.iter().zip(&pmf).enumerate() {
                let diff = (z.norm_sqr() - p).abs();
                row_worst = row_worst.max(diff);
                if kind == TriangleKind::Both {
                    comparison_rows.push(vec![n.to_string(), k.to_string(), num(*p), num(z.norm_sqr()), num(diff)]);
                }
            }
            let norm_err = (amps.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs();
            worst_mod = worst_mod.max(row_worst);
            worst_norm = worst_norm.max(norm_err);
            residual_rows.push(vec![n.to_string(), num(row_worst), num(norm_err)]);
        }
        out.write_csv(
            "modulus_residuals.csv",
            &["n", "max_abs_residual", "normalization_error"],
            &residual_rows,
        )?;
        if kind == TriangleKind::Both {
            out.write_csv("kind_comparison.csv", &["n", "k", "pmf", "modulus2", "abs_diff"], &comparison_rows)?;
        }
        max_modulus_residual = Some(worst_mod);
        max_normalization_error = Some(worst_norm);
    }

    let mut conv_rows = Vec::new();
    let mut last_sup_error = 0.0;
    for n in 1..=n_max {
        let mut row = vec![n.to_string()];
        if kind.classical() {
            last_sup_error = row_sup_error(n, RowKind::Classical)?;
            row.push(num(last_sup_error));
        }
        if kind.quantum() {
            last_sup_error = row_sup_error(n, RowKind::Quantum)?;
            row.push(num(last_sup_error));
        }
        conv_rows.push(row);
    }
    let header: Vec<&str> = std::iter::once("n")
        .chain(kind.classical().then_some("classical_sup_error"))
        .chain(kind.quantum().then_some("quantum_sup_error"))
        .collect();
    out.write_csv("sup_error.csv", &header, &conv_rows)?;

    let passed = max_modulus_residual.is_none_or(|r| r <= MODULUS_TOL)
        && max_normalization_error.is_none_or(|r| r <= MODULUS_TOL);
    let report = TriangleReport { n_max, kind, max_modulus_residual, max_normalization_error, last_sup_error, passed };
    out.write_json("triangle_report.json", &report)?;
    out.finish("triangle", config, &serde_json::json!({ "n_max": n_max, "kind": kind }))?;
    Ok(report)
}
