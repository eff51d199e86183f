//! Dense 2×2 complex matrices and the Pauli realization of the Clifford
//! algebra `σᵢ² = I`, `σᵢσⱼ + σⱼσᵢ = 0 (i ≠ j)`.
//!
//! Conventions: `σ₁ = [[0,1],[1,0]]`, `σ₂ = [[0,−i],[i,0]]`,
//! `σ₃ = [[1,0],[0,−1]]`. Norms are entrywise maxima of the modulus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex amplitude carrier. Parcel values `1` and `i` live here.
pub type ComplexScalar = Complex64;

pub const ONE: ComplexScalar = Complex64::new(1.0, 0.0);
pub const I: ComplexScalar = Complex64::new(0.0, 1.0);
pub const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliffordElement {
    entries: [[ComplexScalar; 2]; 2],
}

impl CliffordElement {
    pub const fn new(entries: [[ComplexScalar; 2]; 2]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn entries(&self) -> &[[ComplexScalar; 2]; 2] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexScalar {
        self.entries[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self::new([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]])
    }

    pub fn scale(&self, z: ComplexScalar) -> Self {
        let e = &self.entries;
        Self::new([[z * e[0][0], z * e[0][1]], [z * e[1][0], z * e[1][1]]])
    }

    pub fn trace(&self) -> ComplexScalar {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }

    /// Coefficients `(c₀, c₁, c₂, c₃)` with `self = c₀I + c₁σ₁ + c₂σ₂ + c₃σ₃`.
    pub fn pauli_components(&self) -> [ComplexScalar; 4] {
        let [id, s1, s2, s3] = pauli_basis();
        [id, s1, s2, s3].map(|p| (p * *self).trace() * 0.5)
    }

    /// Splits off the multiple of the identity and reports how far the rest
    /// is from zero.
    pub fn scalar_decomposition(&self) -> (ComplexScalar, f64) {
        let c0 = self.trace() * 0.5;
        let residual = (*self - Self::identity().scale(c0)).max_abs();
        (c0, residual)
    }
}

impl Default for CliffordElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

impl Add for CliffordElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        Self::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for CliffordElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for CliffordElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for CliffordElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self::new(out)
    }
}

impl Mul<CliffordElement> for ComplexScalar {
    type Output = CliffordElement;
    fn mul(self, rhs: CliffordElement) -> CliffordElement {
        rhs.scale(self)
    }
}

impl Mul<CliffordElement> for f64 {
    type Output = CliffordElement;
    fn mul(self, rhs: CliffordElement) -> CliffordElement {
        rhs.scale(Complex64::new(self, 0.0))
    }
}

/// Matrix product.
pub fn mul(a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
    *a * *b
}

/// `(I, σ₁, σ₂, σ₃)`.
pub const fn pauli_basis() -> [CliffordElement; 4] {
    [
        CliffordElement::identity(),
        CliffordElement::new([[ZERO, ONE], [ONE, ZERO]]),
        CliffordElement::new([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]]),
        CliffordElement::new([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// `ab − ba` or `ab + ba`.
pub fn bracket(kind: BracketKind, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
    let ab = *a * *b;
    let ba = *b * *a;
    match kind {
        BracketKind::Commutator => ab - ba,
        BracketKind::Anticommutator => ab + ba,
    }
}

/// Second, independent copy of the Pauli algebra acting on the sphere
/// coordinates. `gamma0` enters only the sphere step and is left
/// configurable; by default it is this copy's `σ₃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaBasis {
    pub gamma0: CliffordElement,
    pub gamma1: CliffordElement,
    pub gamma2: CliffordElement,
    pub gamma3: CliffordElement,
}

impl GammaBasis {
    pub fn with_gamma0(gamma0: CliffordElement) -> Self {
        Self { gamma0, ..Self::default() }
    }
}

impl Default for GammaBasis {
    fn default() -> Self {
        let [_, s1, s2, s3] = pauli_basis();
        Self { gamma0: s3, gamma1: s1, gamma2: s2, gamma3: s3 }
    }
}

/// Squares the Dirac symbol `σ₃s − iσ₁u − iσ₂v` and returns the identity
/// coefficient of the square together with the size of everything else.
/// The coefficient is `s² − u² − v²` and the remainder vanishes.
pub fn dirac_symbol_square(s: f64, u: f64, v: f64) -> (ComplexScalar, f64) {
    let [_, s1, s2, s3] = pauli_basis();
    let minus_i = Complex64::new(0.0, -1.0);
    let symbol = s * s3 + (minus_i * u) * s1 + (minus_i * v) * s2;
    (symbol * symbol).scalar_decomposition()
}
