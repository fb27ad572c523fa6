use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Odd Hilbert-space dimension `d >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::DimensionTooSmall(d));
        }
        if d.is_multiple_of(2) {
            return Err(Error::EvenDimension(d));
        }
        Ok(Self(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// The inverse of 2 in `Z_d`, i.e. `(d + 1) / 2`.
    #[inline]
    pub fn half(self) -> usize {
        self.0.div_ceil(2)
    }

    /// `ω^n` with `ω = exp(2πi/d)`. The exponent is reduced mod `d` first so
    /// equal residues give bit-identical phases.
    pub fn omega_pow(self, n: i64) -> Complex64 {
        let k = n.rem_euclid(self.0 as i64) as f64;
        Complex64::from_polar(1.0, TAU * k / self.0 as f64)
    }

    /// Table of `ω^k` for `k = 0..d`.
    pub fn roots_of_unity(self) -> Vec<Complex64> {
        (0..self.0 as i64).map(|k| self.omega_pow(k)).collect()
    }

    pub fn index(self, value: i64) -> ZdIndex {
        ZdIndex::new(self, value)
    }

    pub fn indices(self) -> impl Iterator<Item = ZdIndex> {
        (0..self.0).map(move |v| ZdIndex {
            value: v,
            modulus: self.0,
        })
    }

    /// Upper end `(d - 1)/(d + 1)` of the Gini index range.
    pub fn gini_max(self) -> f64 {
        let d = self.0 as f64;
        (d - 1.0) / (d + 1.0)
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;
    fn try_from(d: usize) -> Result<Self> {
        Self::new(d)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Residue in `Z_d`, stored as `0..d`.
///
/// The symmetric labels `-(d-1)/2 ..= (d-1)/2` map onto residues by `r mod d`;
/// [`ZdIndex::label`] gives the inverse map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZdIndex {
    value: usize,
    modulus: usize,
}

impl ZdIndex {
    pub fn new(dim: Dimension, value: i64) -> Self {
        let m = dim.get();
        Self {
            value: value.rem_euclid(m as i64) as usize,
            modulus: m,
        }
    }

    #[inline]
    pub fn value(self) -> usize {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> usize {
        self.modulus
    }

    /// Symmetric label in `-(d-1)/2 ..= (d-1)/2`.
    pub fn label(self) -> i64 {
        let half = (self.modulus as i64 - 1) / 2;
        let v = self.value as i64;
        if v > half {
            v - self.modulus as i64
        } else {
            v
        }
    }

    fn with(self, value: usize) -> Self {
        Self {
            value: value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Add for ZdIndex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.with(self.value + rhs.value)
    }
}

impl Sub for ZdIndex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.with(self.value + self.modulus - rhs.value)
    }
}

impl Neg for ZdIndex {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.modulus - self.value)
    }
}

impl Mul for ZdIndex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.with(self.value * rhs.value)
    }
}

impl fmt::Display for ZdIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
