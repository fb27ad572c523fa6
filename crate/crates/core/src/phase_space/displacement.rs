use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qudit::{CMatrix, Dimension, ZdIndex};

/// Point `(α, β)` of the phase space `Z_d × Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    pub alpha: ZdIndex,
    pub beta: ZdIndex,
}

impl PhasePoint {
    pub fn new(dim: Dimension, alpha: i64, beta: i64) -> Self {
        Self {
            alpha: dim.index(alpha),
            beta: dim.index(beta),
        }
    }

    pub fn origin(dim: Dimension) -> Self {
        Self::new(dim, 0, 0)
    }

    pub fn modulus(self) -> usize {
        self.alpha.modulus()
    }

    /// All `d²` points in row-major `(α, β)` order.
    pub fn all(dim: Dimension) -> impl Iterator<Item = PhasePoint> {
        dim.indices()
            .flat_map(move |alpha| dim.indices().map(move |beta| PhasePoint { alpha, beta }))
    }

    /// Row-major position of this point among [`PhasePoint::all`].
    pub fn flat_index(self) -> usize {
        self.alpha.value() * self.modulus() + self.beta.value()
    }
}

impl std::ops::Add for PhasePoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
        }
    }
}

impl std::ops::Neg for PhasePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            alpha: -self.alpha,
            beta: -self.beta,
        }
    }
}

impl Serialize for PhasePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.alpha.value(), self.beta.value()].serialize(s)
    }
}

/// Heisenberg-Weyl element `D(α, β) ω^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub point: PhasePoint,
    pub gamma: ZdIndex,
}

impl GroupElement {
    pub fn new(dim: Dimension, alpha: i64, beta: i64, gamma: i64) -> Self {
        Self {
            point: PhasePoint::new(dim, alpha, beta),
            gamma: dim.index(gamma),
        }
    }

    pub fn identity(dim: Dimension) -> Self {
        Self::new(dim, 0, 0, 0)
    }

    /// `(−α, −β, −γ)`. The cross term of the group law vanishes for a point
    /// and its negative, so this is the exact inverse.
    pub fn inverse(self) -> Self {
        Self {
            point: -self.point,
            gamma: -self.gamma,
        }
    }

    pub fn matrix(self, dim: Dimension) -> CMatrix {
        displacement_matrix(dim, self.point) * dim.omega_pow(self.gamma.value() as i64)
    }
}

/// Group law: `(α₁+α₂, β₁+β₂, γ₁+γ₂+2⁻¹(α₁β₂−α₂β₁))`.
pub fn compose(a: GroupElement, b: GroupElement) -> Result<GroupElement> {
    let d = a.point.modulus();
    if b.point.modulus() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: b.point.modulus(),
        });
    }
    let dim = Dimension::new(d)?;
    let half = dim.index(dim.half() as i64);
    let cross = a.point.alpha * b.point.beta - b.point.alpha * a.point.beta;
    Ok(GroupElement {
        point: a.point + b.point,
        gamma: a.gamma + b.gamma + half * cross,
    })
}

/// Phase exponent of `D(α, β)|X; κ⟩ = ω^{2⁻¹αβ + ακ}|X; κ+β⟩`.
#[inline]
fn action_exponent(dim: Dimension, p: PhasePoint, kappa: usize) -> i64 {
    let d = dim.get() as i64;
    let (a, b) = (p.alpha.value() as i64, p.beta.value() as i64);
    ((dim.half() as i64 * a % d) * b + a * kappa as i64) % d
}

/// Dense `D(α, β)`, built column by column from its action on position states.
pub fn displacement_matrix(dim: Dimension, p: PhasePoint) -> CMatrix {
    let d = dim.get();
    let mut m = CMatrix::zeros((d, d));
    for kappa in 0..d {
        let row = (kappa + p.beta.value()) % d;
        m[[row, kappa]] = dim.omega_pow(action_exponent(dim, p, kappa));
    }
    m
}

/// `D(α, β) v` in O(d).
pub fn apply_displacement(dim: Dimension, p: PhasePoint, v: &[Complex64]) -> Vec<Complex64> {
    let d = dim.get();
    debug_assert_eq!(v.len(), d);
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    for (kappa, z) in v.iter().enumerate() {
        out[(kappa + p.beta.value()) % d] = dim.omega_pow(action_exponent(dim, p, kappa)) * z;
    }
    out
}

/// `Z^α = Σ_m ω^{αm} |X;m⟩⟨X;m|`.
pub fn z_power(dim: Dimension, alpha: ZdIndex) -> CMatrix {
    let d = dim.get();
    CMatrix::from_diag(&ndarray::Array1::from_shape_fn(d, |m| {
        dim.omega_pow((alpha.value() * m) as i64)
    }))
}

/// `X^β = Σ_m |X;m+β⟩⟨X;m|`.
pub fn x_power(dim: Dimension, beta: ZdIndex) -> CMatrix {
    let d = dim.get();
    let mut m = CMatrix::zeros((d, d));
    for k in 0..d {
        m[[(k + beta.value()) % d, k]] = Complex64::new(1.0, 0.0);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricLabel {
    pub alpha: i64,
    pub beta: i64,
}

impl From<PhasePoint> for SymmetricLabel {
    fn from(p: PhasePoint) -> Self {
        Self {
            alpha: p.alpha.label(),
            beta: p.beta.label(),
        }
    }
}
