pub mod fig3;
pub mod geometry;
pub mod kernels;
pub mod triangle;

pub use fig3::{run_fig3, Fig3Report};
pub use geometry::{run_geometry, GeometryParams, GeometryReport, GeometryReportKind};
pub use kernels::{run_kernels, KernelParams, WickReport};
pub use triangle::{run_triangle, TriangleKind, TriangleReport};
