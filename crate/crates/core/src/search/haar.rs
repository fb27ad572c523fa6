use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qudit::{Dimension, PureState};

/// Haar-random pure state: `d` i.i.d. standard complex Gaussians, normalized.
pub fn sample_haar_state<R: Rng + ?Sized>(dim: Dimension, rng: &mut R) -> PureState {
    loop {
        let amplitudes: Vec<Complex64> = (0..dim.get())
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        // A zero vector has probability zero; retry rather than fail.
        if let Ok(s) = PureState::normalized(dim, amplitudes) {
            return s;
        }
    }
}
