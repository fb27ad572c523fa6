use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::coherent::{expand, CoherentFamily};
use crate::error::{Error, Result};
use crate::qudit::norm;
use crate::rng::{tagged_stream, TAG_NOISE};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseOutcome {
    pub epsilon: f64,
    pub per_trial: Vec<f64>,
    pub average: f64,
    /// `ε Σ|s_{α,β}|`, an upper bound on every trial's error norm.
    pub bound: f64,
}

/// Multiplies every coefficient `s_{α,β}` by `1 + λ_{α,β}`, `λ ~ U(−ε, ε)`,
/// and records `‖Σ λ_{α,β} s_{α,β} |α,β⟩‖` per trial.
///
/// Trial `t` draws its `λ` from the stream `(seed, t)` as `ε(2u − 1)`, so runs
/// with different `ε` but the same seed see the same `u`.
pub fn noise_experiment(
    fam: &CoherentFamily,
    s: &[Complex64],
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<NoiseOutcome> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidConfig(format!(
            "epsilon must lie in [0, 1), got {epsilon}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let coeffs = expand(fam, s)?;
    let d = fam.dim().get();
    let points: Vec<_> = fam.points().collect();
    let weighted: Vec<Vec<Complex64>> = points
        .iter()
        .map(|&p| {
            let c = coeffs.get(p);
            fam.member(p).amplitudes().iter().map(|z| z * c).collect()
        })
        .collect();

    let per_trial: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = tagged_stream(seed, TAG_NOISE, t as u64);
            let mut e = vec![Complex64::new(0.0, 0.0); d];
            for v in &weighted {
                let lambda = epsilon * (2.0 * rng.random::<f64>() - 1.0);
                for (ei, vi) in e.iter_mut().zip(v) {
                    *ei += vi * lambda;
                }
            }
            norm(&e)
        })
        .collect();
    let average = per_trial.iter().sum::<f64>() / trials as f64;
    Ok(NoiseOutcome {
        epsilon,
        per_trial,
        average,
        bound: epsilon * coeffs.l1_norm(),
    })
}
