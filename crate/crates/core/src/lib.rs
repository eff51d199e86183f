//! Executable Fourier/Schrödinger correspondence.
//!
//! The crate builds the complex "square root" of Brownian motion from a
//! `{1, i}`-valued parcel process, the quantum Tartaglia-Pascal triangle,
//! analytic heat and free-particle kernels related by a Wick rotation, and a
//! handful of quantized-geometry identities (circle, oscillator, sphere map).
//! Every construction comes with a numerical check: exact algebraic
//! residuals where the identity is algebraic, Kolmogorov-Smirnov tests where
//! it is distributional.
//!
//! Modules:
//!
//! * [`clifford`]: 2×2 complex matrices, Pauli/γ generators, brackets.
//! * [`triangle`]: classical and quantum Tartaglia-Pascal rows.
//! * [`stochastic`]: seeded Wiener ensembles, parcel process, square-root paths.
//! * [`kernels`]: heat and Schrödinger kernels, Wick identity residual.
//! * [`geometry`]: circle quantization, oscillator volumes, sphere map.
//! * [`stats`]: histograms, moments, Gaussian fits, KS tests.

pub mod clifford;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod stats;
pub mod stochastic;
pub mod triangle;

pub use clifford::{pauli_basis, BracketKind, CliffordElement, ComplexScalar, GammaBasis};
pub use error::{Error, Result};
pub use geometry::{CircleModel, OscillatorSpec};
pub use kernels::{HeatKernel, SchrodingerKernel};
pub use stats::{Histogram, StatsReport, Verdict};
pub use stochastic::{PathEnsemble, SphereStepParams, SqrtPath, TrialSummary, UnitConstraint};
pub use triangle::{RowKind, TriangleRow};
