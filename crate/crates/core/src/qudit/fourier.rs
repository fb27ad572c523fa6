use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::dimension::{Dimension, ZdIndex};
use super::state::{CMatrix, PureState};

/// `F[r][s] = ω^{rs} / √d`.
pub fn fourier_matrix(dim: Dimension) -> CMatrix {
    let d = dim.get();
    let scale = 1.0 / (d as f64).sqrt();
    CMatrix::from_shape_fn((d, d), |(r, s)| dim.omega_pow((r * s) as i64) * scale)
}

/// `|P; r⟩ = F|X; r⟩`, the `r`-th column of `F`.
pub fn momentum_state(dim: Dimension, r: ZdIndex) -> PureState {
    let d = dim.get();
    let scale = 1.0 / (d as f64).sqrt();
    let amplitudes = (0..d)
        .map(|k| dim.omega_pow((k * r.value()) as i64) * scale)
        .collect();
    PureState::from_raw_unchecked(dim, amplitudes)
}

/// Computes momentum-basis coefficients `⟨P; r|v⟩ = (F† v)_r` by FFT.
#[derive(Clone)]
pub struct MomentumTransform {
    fft: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl MomentumTransform {
    pub fn new(dim: Dimension) -> Self {
        let d = dim.get();
        // F† carries ω^{-rs}, which is the forward FFT kernel.
        let fft = FftPlanner::new().plan_fft_forward(d);
        Self {
            fft,
            scale: 1.0 / (d as f64).sqrt(),
        }
    }

    pub fn coefficients(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buffer = v.to_vec();
        self.coefficients_in_place(&mut buffer);
        buffer
    }

    pub fn coefficients_in_place(&self, buffer: &mut [Complex64]) {
        self.fft.process(buffer);
        for z in buffer.iter_mut() {
            *z *= self.scale;
        }
    }
}

impl PureState {
    /// `⟨P; r|s⟩` for every `r`.
    pub fn momentum_amplitudes(&self) -> Vec<Complex64> {
        MomentumTransform::new(self.dim()).coefficients(self.amplitudes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::state::inner;
    use crate::rng::stream;
    use crate::search::sample_haar_state;

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn adjoint(m: &CMatrix) -> CMatrix {
        m.t().mapv(|z| z.conj())
    }

    #[test]
    fn corner_entry() {
        let f = fourier_matrix(Dimension::new(3).unwrap());
        assert!((f[[0, 0]].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(f[[0, 0]].im, 0.0);
    }

    #[test]
    fn unitary_for_odd_dimensions() {
        for d in (3..=31).step_by(2) {
            let f = fourier_matrix(Dimension::new(d).unwrap());
            assert!(
                max_abs(&(f.dot(&adjoint(&f)) - CMatrix::eye(d))) < 1e-12,
                "d = {d}"
            );
        }
    }

    #[test]
    fn fourth_power_is_identity() {
        let f = fourier_matrix(Dimension::new(3).unwrap());
        let f4 = f.dot(&f).dot(&f).dot(&f);
        assert!(max_abs(&(f4 - CMatrix::eye(3))) < 1e-12);
    }

    #[test]
    fn momentum_states() {
        let dim = Dimension::new(3).unwrap();
        let p0 = momentum_state(dim, dim.index(0));
        for z in p0.amplitudes() {
            assert!((z - Complex64::new(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        let p1 = momentum_state(dim, dim.index(1));
        let f = fourier_matrix(dim);
        let w = dim.omega_pow(1);
        let expected = [Complex64::new(1.0, 0.0), w, w * w];
        for k in 0..3 {
            assert!((p1.amplitudes()[k] - expected[k] / 3f64.sqrt()).norm() < 1e-15);
            assert!((p1.amplitudes()[k] - f[[k, 1]]).norm() < 1e-15);
        }

        let dim5 = Dimension::new(5).unwrap();
        let basis: Vec<PureState> = dim5.indices().map(|r| momentum_state(dim5, r)).collect();
        for (r, a) in basis.iter().enumerate() {
            assert!((a.norm() - 1.0).abs() < 1e-12);
            for (s, b) in basis.iter().enumerate() {
                let expected = if r == s { 1.0 } else { 0.0 };
                assert!((inner(a.amplitudes(), b.amplitudes()) - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn fft_matches_dense_adjoint_and_parseval() {
        for d in [3usize, 5, 7, 11, 41, 101] {
            let dim = Dimension::new(d).unwrap();
            let f = fourier_matrix(dim);
            let s = sample_haar_state(dim, &mut stream(17, d as u64));
            let dense = adjoint(&f).dot(&ndarray::Array1::from(s.amplitudes().to_vec()));
            let fast = s.momentum_amplitudes();
            for (a, b) in dense.iter().zip(&fast) {
                assert!((a - b).norm() < 1e-12);
            }
            let n: f64 = fast.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
