//! Random search and local refinement for the supremum of `G_XP`, which
//! fixes the Gini uncertainty constant `η_d`.

mod haar;
mod refine;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use haar::sample_haar_state;
pub use refine::{local_refine, local_refine_traced, RefineOutcome};

use crate::error::{Error, Result};
use crate::qudit::{Dimension, PureState, ZdIndex};
use crate::rng::{tagged_stream, TAG_HAAR};
use crate::uncertainty::{delta_from_gxp, gini_report_pure, GiniReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_random: usize,
    pub n_restarts: usize,
    pub refine: bool,
    pub step_init: f64,
    pub step_min: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n_random: 400,
            n_restarts: 5,
            refine: false,
            step_init: 0.1,
            step_min: 1e-6,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_random == 0 {
            return Err(Error::InvalidConfig("n_random must be at least 1".into()));
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init && self.step_init.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < step_min < step_init, got step_min = {}, step_init = {}",
                self.step_min, self.step_init
            )));
        }
        Ok(())
    }
}

/// `(d−1)/(d+1) · √d/(1+√d)`, the upper bound on `η_d` realized by
/// [`special_state`].
pub fn eta_tilde(dim: Dimension) -> f64 {
    let root = (dim.get() as f64).sqrt();
    dim.gini_max() * root / (1.0 + root)
}

/// Closed-form `G_XP` of [`special_state`]: `(d−1)/(d+1) · (1 + 1/(1+√d))`.
pub fn special_state_gxp(dim: Dimension) -> f64 {
    let root = (dim.get() as f64).sqrt();
    dim.gini_max() * (1.0 + 1.0 / (1.0 + root))
}

/// `√(√d / (2√d + 2)) · (|X;0⟩ + |P;a⟩)`.
pub fn special_state(dim: Dimension, a: ZdIndex) -> PureState {
    let d = dim.get();
    let root = (d as f64).sqrt();
    let prefactor = (root / (2.0 * root + 2.0)).sqrt();
    let amplitudes = (0..d)
        .map(|k| {
            let position = if k == 0 { 1.0 } else { 0.0 };
            let momentum = dim.omega_pow((k * a.value()) as i64) / root;
            (momentum + Complex64::new(position, 0.0)) * prefactor
        })
        .collect();
    PureState::from_raw_unchecked(dim, amplitudes)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaEstimate {
    pub d: Dimension,
    pub sup_gxp_estimate: f64,
    pub eta_hat: f64,
    pub eta_tilde: f64,
    pub n_samples: usize,
    pub refined: bool,
    pub best_state: PureState,
    pub seed: u64,
}

impl EtaEstimate {
    pub fn gap(&self) -> f64 {
        self.eta_hat - self.eta_tilde
    }
}

/// The `i`-th Haar sample of the pool for `seed`. Pools for different sizes
/// are nested prefixes of the same sequence.
pub fn pool_sample(dim: Dimension, seed: u64, i: usize) -> PureState {
    sample_haar_state(dim, &mut tagged_stream(seed, TAG_HAAR, i as u64))
}

/// `G_XP` of the first `n` pool samples.
pub fn sample_gxp_values(dim: Dimension, n: usize, seed: u64) -> Vec<f64> {
    (0..n)
        .into_par_iter()
        .map(|i| gini_report_pure(&pool_sample(dim, seed, i)).g_xp)
        .collect()
}

fn first_max<'a>(
    items: impl Iterator<Item = (f64, &'a PureState)>,
) -> Option<(f64, &'a PureState)> {
    items.fold(None, |best, (v, s)| match best {
        Some((bv, _)) if bv >= v => best,
        _ => Some((v, s)),
    })
}

/// Lower-bounds `sup_ρ G_XP` by the best pure state found and converts it to
/// an estimate `η̂_d = 2(d−1)/(d+1) − sup`.
///
/// The pool holds `cfg.n_random` Haar samples plus [`special_state`] with
/// `a = 0`, so `η̂_d <= η̃_d` always. With `cfg.refine`, the `cfg.n_restarts`
/// best pool members (ties by pool position) are refined by pattern search.
pub fn estimate_eta(dim: Dimension, cfg: &SearchConfig) -> Result<EtaEstimate> {
    cfg.validate()?;
    let mut pool: Vec<(f64, PureState)> = (0..cfg.n_random)
        .into_par_iter()
        .map(|i| {
            let s = pool_sample(dim, cfg.seed, i);
            (gini_report_pure(&s).g_xp, s)
        })
        .collect();
    let injected = special_state(dim, dim.index(0));
    pool.push((gini_report_pure(&injected).g_xp, injected));

    let mut refined: Vec<(f64, PureState)> = Vec::new();
    if cfg.refine && cfg.n_restarts > 0 {
        let mut order: Vec<usize> = (0..pool.len()).collect();
        order.sort_by(|&a, &b| pool[b].0.total_cmp(&pool[a].0).then(a.cmp(&b)));
        order.truncate(cfg.n_restarts);
        refined = order
            .par_iter()
            .map(|&i| {
                let out = local_refine_traced(&pool[i].1, cfg);
                (out.g_xp, out.state)
            })
            .collect();
    }

    let (sup, best) = first_max(pool.iter().chain(refined.iter()).map(|(v, s)| (*v, s)))
        .expect("pool always contains the injected state");
    Ok(EtaEstimate {
        d: dim,
        sup_gxp_estimate: sup,
        eta_hat: delta_from_gxp(dim, sup),
        eta_tilde: eta_tilde(dim),
        n_samples: cfg.n_random,
        refined: cfg.refine,
        best_state: best.clone(),
        seed: cfg.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinUncertaintyState {
    pub state: PureState,
    pub delta: f64,
    pub report: GiniReport,
    pub estimate: EtaEstimate,
}

/// Best state of a refined [`estimate_eta`] run; `cfg.refine` is forced on.
/// The result is one representative: global phase and displacement are not
/// fixed.
pub fn find_min_uncertainty_state(
    dim: Dimension,
    cfg: &SearchConfig,
) -> Result<MinUncertaintyState> {
    let cfg = SearchConfig {
        refine: true,
        ..*cfg
    };
    let estimate = estimate_eta(dim, &cfg)?;
    let report = gini_report_pure(&estimate.best_state);
    Ok(MinUncertaintyState {
        state: estimate.best_state.clone(),
        delta: report.delta,
        report,
        estimate,
    })
}
