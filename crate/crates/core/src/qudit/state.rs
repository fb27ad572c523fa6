use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dimension::{Dimension, ZdIndex};
use super::eigen::{hermitian_eig, max_hermitian_deviation};
use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;

/// Accepted deviation of `‖s‖` from 1 for inputs that claim to be unit vectors.
pub const NORM_TOLERANCE: f64 = 1e-8;
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = 1e-10;

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Unit vector of position-basis amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim: Dimension,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Rescales any nonzero finite vector to unit norm.
    pub fn normalized(dim: Dimension, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(dim, amplitudes.len())?;
        let n = norm(&amplitudes);
        if !n.is_finite() || n == 0.0 {
            return Err(Error::DegenerateVector);
        }
        let amplitudes = amplitudes.into_iter().map(|z| z / n).collect();
        Ok(Self { dim, amplitudes })
    }

    /// Accepts a vector whose norm is within [`NORM_TOLERANCE`] of one, then
    /// renormalizes it exactly.
    pub fn from_unit(dim: Dimension, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(dim, amplitudes.len())?;
        let n = norm(&amplitudes);
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm: n });
        }
        Self::normalized(dim, amplitudes)
    }

    /// Position eigenstate `|X; r⟩`.
    pub fn position(dim: Dimension, r: ZdIndex) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim.get()];
        amplitudes[r.value()] = Complex64::new(1.0, 0.0);
        Self { dim, amplitudes }
    }

    pub(crate) fn from_raw_unchecked(dim: Dimension, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), dim.get());
        Self { dim, amplitudes }
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `|⟨X; r|s⟩|²` for every `r`.
    pub fn position_probs(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

fn check_len(dim: Dimension, len: usize) -> Result<()> {
    if len != dim.get() {
        return Err(Error::DimensionMismatch {
            expected: dim.get(),
            found: len,
        });
    }
    Ok(())
}

/// On-disk form of a state vector: `{"d": 3, "amplitudes": [[re, im], ...]}`.
///
/// Unlike [`PureState`] this carries no normalization guarantee.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_amplitudes(amplitudes: &[Complex64]) -> Self {
        Self {
            d: amplitudes.len(),
            amplitudes: amplitudes.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn dim(&self) -> Result<Dimension> {
        let dim = Dimension::new(self.d)?;
        check_len(dim, self.amplitudes.len())?;
        Ok(dim)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect()
    }

    pub fn to_state(&self) -> Result<PureState> {
        PureState::normalized(self.dim()?, self.to_complex())
    }
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateFile::from_amplitudes(&self.amplitudes).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = StateFile::deserialize(deserializer)?;
        file.to_state().map_err(serde::de::Error::custom)
    }
}

/// Hermitian, unit-trace, positive semidefinite `d × d` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: Dimension,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: cols,
            });
        }
        let dim = Dimension::new(rows)?;
        let deviation = max_hermitian_deviation(&entries);
        if deviation >= HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let trace: f64 = entries.diag().iter().map(|z| z.re).sum();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::BadTrace { trace });
        }
        let eig = hermitian_eig(&entries)?;
        let min_eigenvalue = eig.values.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -PSD_TOLERANCE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { dim, entries })
    }

    /// `(1/d)·1`.
    pub fn maximally_mixed(dim: Dimension) -> Self {
        let d = dim.get();
        let entries = CMatrix::from_diag_elem(d, Complex64::new(1.0 / d as f64, 0.0));
        Self { dim, entries }
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.diag().iter().map(|z| z.re).sum()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        // ρ is Hermitian, so tr ρ² = Σ |ρ_ij|².
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Spectral decomposition, eigenvalues descending.
    pub fn eig(&self) -> Result<(Vec<f64>, Vec<PureState>)> {
        let eig = hermitian_eig(&self.entries)?;
        let vectors = eig
            .vectors
            .columns()
            .into_iter()
            .map(|c| PureState::from_raw_unchecked(self.dim, c.to_vec()))
            .collect();
        Ok((eig.values, vectors))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        let adjoint = u.t().mapv(|z| z.conj());
        let entries = u.dot(&self.entries).dot(&adjoint);
        Self {
            dim: self.dim,
            entries,
        }
    }
}

/// `|s⟩⟨s|`.
pub fn density_from_pure(s: &PureState) -> DensityMatrix {
    let d = s.dim().get();
    let a = s.amplitudes();
    let entries = CMatrix::from_shape_fn((d, d), |(i, j)| a[i] * a[j].conj());
    DensityMatrix {
        dim: s.dim(),
        entries,
    }
}

/// Convex combination `Σ w_i ρ_i`.
pub fn mix(components: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
    let Some((_, first)) = components.first() else {
        return Err(Error::InvalidWeights { sum: 0.0 });
    };
    let dim = first.dim();
    let sum: f64 = components.iter().map(|(w, _)| w).sum();
    if components.iter().any(|(w, _)| w.is_nan() || *w < 0.0) || (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights { sum });
    }
    let d = dim.get();
    let mut entries = CMatrix::zeros((d, d));
    for (w, rho) in components {
        if rho.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: rho.dim().get(),
            });
        }
        entries.scaled_add(Complex64::new(*w, 0.0), rho.entries());
    }
    Ok(DensityMatrix { dim, entries })
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .entries
            .rows()
            .into_iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(serde::de::Error::custom("density matrix must be square"));
        }
        let entries = CMatrix::from_shape_fn((d, d), |(i, j)| {
            let [re, im] = rows[i][j];
            Complex64::new(re, im)
        });
        DensityMatrix::new(entries).map_err(serde::de::Error::custom)
    }
}

/// Measurement statistics over `d` outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entry {p} is not a probability"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("sums to {sum}")));
        }
        Ok(Self { probs })
    }

    /// Clamps roundoff negatives to zero; used for diagonals of valid
    /// density matrices.
    pub(crate) fn from_measured(probs: Vec<f64>) -> Self {
        Self {
            probs: probs.into_iter().map(|p| p.max(0.0)).collect(),
        }
    }

    pub fn uniform(d: usize) -> Self {
        Self {
            probs: vec![1.0 / d as f64; d],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::published_fiducial;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn position_state_density_has_single_one() {
        let d = dim(5);
        let rho = density_from_pure(&PureState::position(d, d.index(0)));
        for ((i, j), z) in rho.entries().indexed_iter() {
            let expected = if i == 0 && j == 0 { 1.0 } else { 0.0 };
            assert_eq!(*z, Complex64::new(expected, 0.0));
        }
        assert!(DensityMatrix::new(rho.entries().clone()).is_ok());
    }

    #[test]
    fn published_fiducial_density_is_pure() {
        let g = published_fiducial(3).unwrap();
        let rho = density_from_pure(&g);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        assert!(max_hermitian_deviation(rho.entries()) < 1e-12);
    }

    #[test]
    fn from_unit_rejects_unnormalized() {
        let d = dim(3);
        let v = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1e-3, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(matches!(
            PureState::from_unit(d, v.clone()),
            Err(Error::NotNormalized { .. })
        ));
        assert!(PureState::normalized(d, v).is_ok());
        assert!(matches!(
            PureState::normalized(d, vec![Complex64::new(0.0, 0.0); 3]),
            Err(Error::DegenerateVector)
        ));
        assert!(matches!(
            PureState::normalized(d, vec![Complex64::new(1.0, 0.0); 4]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mix_cases() {
        let d = dim(5);
        let x0 = density_from_pure(&PureState::position(d, d.index(0)));
        let x1 = density_from_pure(&PureState::position(d, d.index(1)));
        assert_eq!(mix(&[(1.0, &x0)]).unwrap(), x0);

        let half = mix(&[(0.5, &x0), (0.5, &x1)]).unwrap();
        let diag: Vec<f64> = half.entries().diag().iter().map(|z| z.re).collect();
        assert_eq!(diag, vec![0.5, 0.5, 0.0, 0.0, 0.0]);

        let all: Vec<DensityMatrix> = d
            .indices()
            .map(|r| density_from_pure(&PureState::position(d, r)))
            .collect();
        let parts: Vec<(f64, &DensityMatrix)> = all.iter().map(|r| (0.2, r)).collect();
        let mixed = mix(&parts).unwrap();
        let identity = DensityMatrix::maximally_mixed(d);
        let diff = (mixed.entries() - identity.entries())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-15);

        assert!(matches!(
            mix(&[(0.7, &x0), (0.2, &x1)]),
            Err(Error::InvalidWeights { .. })
        ));
        assert!(matches!(
            mix(&[(1.5, &x0), (-0.5, &x1)]),
            Err(Error::InvalidWeights { .. })
        ));
        assert!(mix(&[]).is_err());
    }

    #[test]
    fn density_validation() {
        let mut m = CMatrix::zeros((3, 3));
        m[[0, 0]] = Complex64::new(1.0, 0.0);
        m[[0, 1]] = Complex64::new(0.0, 0.1);
        assert!(matches!(
            DensityMatrix::new(m.clone()),
            Err(Error::NotHermitian { .. })
        ));
        m[[1, 0]] = Complex64::new(0.0, -0.1);
        // Hermitian with trace 1 but eigenvalues 1/2 ± sqrt(1/4 + 0.01) include a negative.
        assert!(matches!(
            DensityMatrix::new(m.clone()),
            Err(Error::NotPositive { .. })
        ));
        m[[0, 0]] = Complex64::new(0.5, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::BadTrace { .. })));
    }

    #[test]
    fn json_formats() {
        let d = dim(3);
        let s = PureState::position(d, d.index(1));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"d":3,"amplitudes":[[0.0,0.0],[1.0,0.0],[0.0,0.0]]}"#
        );
        let back: PureState = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);

        let rho = density_from_pure(&s);
        let json = serde_json::to_string(&rho).unwrap();
        assert!(json.starts_with("[[[0.0,0.0],[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]"));
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rho);

        assert!(serde_json::from_str::<PureState>(r#"{"d":3,"amplitudes":[[1.0,0.0]]}"#).is_err());
    }

    #[test]
    fn prob_dist_validation() {
        assert!(ProbDist::new(vec![0.5, 0.5, 0.0]).is_ok());
        assert!(ProbDist::new(vec![0.6, 0.6, -0.2]).is_err());
        assert!(ProbDist::new(vec![0.5, 0.4]).is_err());
        assert!(ProbDist::new(vec![]).is_err());
        assert!(ProbDist::new(vec![f64::NAN, 1.0]).is_err());
    }
}
