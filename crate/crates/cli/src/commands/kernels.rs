//! Heat and free-particle kernels on a grid, with the imaginary-time
//! identity between them and finite-difference PDE residuals.

use serde::Serialize;

use wickwalk_core::kernels::{
    heat_pde_residual, schrodinger_pde_residual, wick_identity_residual, HeatKernel, SchrodingerKernel,
};

use crate::artifacts::{num, ArtifactWriter};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const WICK_TOL: f64 = 1e-12;
pub const PDE_TOL: f64 = 1e-6;
pub const PDE_STEP: f64 = 1e-4;
pub const X_RANGE: (f64, f64) = (-5.0, 5.0);
pub const T_RANGE: (f64, f64) = (0.5, 2.0);
/// Narrower window for the PDE checks; the Schrödinger phase oscillates too
/// quickly at large |x| / small t for a fixed difference step.
pub const PDE_X_RANGE: (f64, f64) = (-2.0, 2.0);
pub const PDE_T_RANGE: (f64, f64) = (1.0, 2.0);

#[derive(Clone, Debug, Serialize)]
pub struct KernelParams {
    pub hbar: f64,
    pub mass: f64,
    pub nx: usize,
    pub nt: usize,
}

impl Default for KernelParams {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, nx: 40, nt: 25 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WickReport {
    pub hbar: f64,
    pub mass: f64,
    pub diffusion: f64,
    pub grid_points: usize,
    pub wick_residual: f64,
    pub heat_pde_residual: f64,
    pub schrodinger_pde_residual: f64,
    pub passed: bool,
}

fn linspace((lo, hi): (f64, f64), n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
}

pub fn grid(xs: (f64, f64), ts: (f64, f64), nx: usize, nt: usize) -> Vec<(f64, f64)> {
    linspace(xs, nx).flat_map(|x| linspace(ts, nt).map(move |t| (x, t))).collect()
}

pub fn run_kernels(config: &RunConfig, params: &KernelParams) -> CliResult<WickReport> {
    if params.nx < 2 || params.nt < 2 {
        return Err(CliError::Usage("nx and nt must both be at least 2".into()));
    }
    let schr = SchrodingerKernel::new(params.hbar, params.mass)?;
    let heat = HeatKernel::new(schr.matching_diffusion())?;
    let points = grid(X_RANGE, T_RANGE, params.nx, params.nt);

    let mut heat_rows = Vec::with_capacity(points.len());
    let mut schr_rows = Vec::with_capacity(points.len());
    for &(x, t) in &points {
        let p = heat.eval(x, t)?;
        let k = schr.eval(x, t)?;
        heat_rows.push(vec![num(x), num(t), num(p), num(0.0)]);
        schr_rows.push(vec![num(x), num(t), num(k.re), num(k.im)]);
    }

    let wick_residual = wick_identity_residual(&heat, &schr, &points)?;
    let (mut heat_pde, mut schr_pde) = (0.0f64, 0.0f64);
    for (x, t) in grid(PDE_X_RANGE, PDE_T_RANGE, params.nx, params.nt) {
        heat_pde = heat_pde.max(heat_pde_residual(&heat, x, t, PDE_STEP)?);
        schr_pde = schr_pde.max(schrodinger_pde_residual(&schr, x, t, PDE_STEP)?);
    }

    let report = WickReport {
        hbar: params.hbar,
        mass: params.mass,
        diffusion: heat.diffusion(),
        grid_points: points.len(),
        wick_residual,
        heat_pde_residual: heat_pde,
        schrodinger_pde_residual: schr_pde,
        passed: wick_residual <= WICK_TOL && heat_pde <= PDE_TOL && schr_pde <= PDE_TOL,
    };

    let mut out = ArtifactWriter::new(&config.output_dir)?;
    let header = ["x", "t", "re", "im"];
    out.write_csv("heat_kernel.csv", &header, &heat_rows)?;
    out.write_csv("schrodinger_kernel.csv", &header, &schr_rows)?;
    out.write_json("wick_report.json", &report)?;
    out.finish("kernels", config, params)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_passes() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig { output_dir: dir.path().to_path_buf(), ..Default::default() };
        let r = run_kernels(&cfg, &KernelParams::default()).unwrap();
        assert_eq!(r.grid_points, 1000);
        assert!(r.passed, "{r:?}");
        let csv = std::fs::read_to_string(dir.path().join("schrodinger_kernel.csv")).unwrap();
        assert_eq!(csv.lines().count(), 1001);
    }

    #[test]
    fn other_units() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig { output_dir: dir.path().to_path_buf(), ..Default::default() };
        let r = run_kernels(&cfg, &KernelParams { hbar: 0.7, mass: 2.5, nx: 10, nt: 10 }).unwrap();
        assert!((r.diffusion - 0.14).abs() < 1e-15);
        assert!(r.wick_residual <= WICK_TOL);
    }

    #[test]
    fn rejects_bad_inputs() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig { output_dir: dir.path().to_path_buf(), ..Default::default() };
        assert!(run_kernels(&cfg, &KernelParams { nx: 1, ..Default::default() }).is_err());
        assert!(run_kernels(&cfg, &KernelParams { mass: -1.0, ..Default::default() }).is_err());
    }
}
