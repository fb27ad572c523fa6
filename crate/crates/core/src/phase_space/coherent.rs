use std::sync::OnceLock;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::displacement::{apply_displacement, PhasePoint};
use crate::error::{Error, Result};
use crate::qudit::{inner, CMatrix, Dimension, PureState};

/// The `d²` displaced copies `|α, β⟩_f = D(α, β)|f⟩` of a fiducial state.
///
/// Members are materialized lazily and cached; once written an entry never
/// changes, so a family can be shared across threads.
#[derive(Debug)]
pub struct CoherentFamily {
    fiducial: PureState,
    members: Vec<OnceLock<PureState>>,
}

impl CoherentFamily {
    pub fn new(fiducial: PureState) -> Self {
        let d = fiducial.dim().get();
        Self {
            fiducial,
            members: (0..d * d).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.fiducial.dim()
    }

    pub fn fiducial(&self) -> &PureState {
        &self.fiducial
    }

    pub fn member(&self, p: PhasePoint) -> &PureState {
        self.members[p.flat_index()].get_or_init(|| {
            let amplitudes = apply_displacement(self.dim(), p, self.fiducial.amplitudes());
            PureState::from_raw_unchecked(self.dim(), amplitudes)
        })
    }

    pub fn points(&self) -> impl Iterator<Item = PhasePoint> {
        PhasePoint::all(self.dim())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        let d = self.dim().get();
        if len != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: len,
            });
        }
        Ok(())
    }
}

/// `‖(1/d) Σ |α,β⟩⟨α,β| − 1‖_max`.
pub fn identity_resolution_defect(fam: &CoherentFamily) -> f64 {
    let d = fam.dim().get();
    let mut acc = CMatrix::zeros((d, d));
    for p in fam.points() {
        let v = fam.member(p).amplitudes();
        for i in 0..d {
            for j in 0..d {
                acc[[i, j]] += v[i] * v[j].conj();
            }
        }
    }
    let scale = 1.0 / d as f64;
    acc.indexed_iter()
        .map(|((i, j), z)| {
            let target = if i == j { 1.0 } else { 0.0 };
            (z * scale - target).norm()
        })
        .fold(0.0, f64::max)
}

/// Coefficients `s_{α,β}` over the phase space, row `α`, column `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    pub dim: Dimension,
    pub coeffs: Array2<Complex64>,
}

impl ExpansionCoefficients {
    pub fn zeros(dim: Dimension) -> Self {
        let d = dim.get();
        Self {
            dim,
            coeffs: Array2::zeros((d, d)),
        }
    }

    pub fn get(&self, p: PhasePoint) -> Complex64 {
        self.coeffs[[p.alpha.value(), p.beta.value()]]
    }

    /// `Σ |s_{α,β}|`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct CoefficientsFile {
    d: usize,
    coeffs: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ExpansionCoefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .rows()
            .into_iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        CoefficientsFile {
            d: self.dim.get(),
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExpansionCoefficients {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = CoefficientsFile::deserialize(de)?;
        let dim = Dimension::new(file.d).map_err(D::Error::custom)?;
        let d = dim.get();
        if file.coeffs.len() != d || file.coeffs.iter().any(|r| r.len() != d) {
            return Err(D::Error::custom("coefficient array must be d × d"));
        }
        let coeffs = Array2::from_shape_fn((d, d), |(a, b)| {
            let [re, im] = file.coeffs[a][b];
            Complex64::new(re, im)
        });
        Ok(Self { dim, coeffs })
    }
}

/// `s_{α,β} = (1/d) ⟨α,β|s⟩`. Linear in `s`; no normalization is assumed.
pub fn expand(fam: &CoherentFamily, s: &[Complex64]) -> Result<ExpansionCoefficients> {
    fam.check_len(s.len())?;
    let dim = fam.dim();
    let scale = 1.0 / dim.get() as f64;
    let mut out = ExpansionCoefficients::zeros(dim);
    for p in fam.points() {
        out.coeffs[[p.alpha.value(), p.beta.value()]] =
            inner(fam.member(p).amplitudes(), s) * scale;
    }
    Ok(out)
}

/// The vectors `s_{α,β}|α,β⟩` whose sum is the expanded state.
pub fn component_vectors(
    fam: &CoherentFamily,
    c: &ExpansionCoefficients,
) -> Vec<(PhasePoint, Vec<Complex64>)> {
    fam.points()
        .map(|p| {
            let coeff = c.get(p);
            (
                p,
                fam.member(p)
                    .amplitudes()
                    .iter()
                    .map(|z| z * coeff)
                    .collect(),
            )
        })
        .collect()
}

/// `Σ c_{α,β} |α,β⟩`.
pub fn reconstruct(fam: &CoherentFamily, c: &ExpansionCoefficients) -> Result<Vec<Complex64>> {
    if c.dim != fam.dim() {
        return Err(Error::DimensionMismatch {
            expected: fam.dim().get(),
            found: c.dim.get(),
        });
    }
    let d = fam.dim().get();
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    for p in fam.points() {
        let coeff = c.get(p);
        for (o, z) in out.iter_mut().zip(fam.member(p).amplitudes()) {
            *o += coeff * z;
        }
    }
    Ok(out)
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
