//! Compass search on the unit sphere of `C^d`.
//!
//! `G_XP` is a sorted linear functional of the probabilities, so it is only
//! piecewise smooth; the search uses function values alone.

use num_complex::Complex64;

use super::SearchConfig;
use crate::qudit::{Dimension, MomentumTransform, PureState};
use crate::uncertainty::gini_in_place;

#[derive(Debug, Clone)]
pub struct RefineOutcome {
    pub state: PureState,
    pub g_xp: f64,
    /// `G_XP` after each accepted move; strictly increasing.
    pub accepted: Vec<f64>,
    /// Step size of the last (failed) sweep.
    pub final_step: f64,
    pub evaluations: usize,
}

/// Evaluates `G_XP` at the current point and at single-coordinate
/// perturbations of it in O(d log d).
struct Evaluator {
    dim: Dimension,
    transform: MomentumTransform,
    /// `ω^{-k} / √d`; column `i` of `F†` has entries `ω^{-ri} / √d`.
    dual_column: Vec<Complex64>,
    x: Vec<Complex64>,
    momentum: Vec<Complex64>,
    norm_sq: f64,
    value: f64,
    scratch_x: Vec<f64>,
    scratch_p: Vec<f64>,
}

impl Evaluator {
    fn new(start: &PureState) -> Self {
        let dim = start.dim();
        let d = dim.get();
        let scale = 1.0 / (d as f64).sqrt();
        let dual_column = (0..d as i64).map(|k| dim.omega_pow(-k) * scale).collect();
        let mut ev = Self {
            dim,
            transform: MomentumTransform::new(dim),
            dual_column,
            x: Vec::new(),
            momentum: Vec::new(),
            norm_sq: 0.0,
            value: 0.0,
            scratch_x: vec![0.0; d],
            scratch_p: vec![0.0; d],
        };
        ev.reset(start.amplitudes().to_vec());
        ev
    }

    fn reset(&mut self, x: Vec<Complex64>) {
        self.momentum = self.transform.coefficients(&x);
        self.norm_sq = x.iter().map(|z| z.norm_sqr()).sum();
        self.x = x;
        self.value = self.exact_value();
    }

    fn exact_value(&mut self) -> f64 {
        for (p, z) in self.scratch_x.iter_mut().zip(&self.x) {
            *p = z.norm_sqr() / self.norm_sq;
        }
        for (p, z) in self.scratch_p.iter_mut().zip(&self.momentum) {
            *p = z.norm_sqr() / self.norm_sq;
        }
        gini_in_place(&mut self.scratch_x) + gini_in_place(&mut self.scratch_p)
    }

    /// `G_XP` of the normalized `x + c e_i`, without materializing it.
    fn probe(&mut self, i: usize, c: Complex64) -> f64 {
        let d = self.dim.get();
        let moved = self.x[i] + c;
        let norm_sq = self.norm_sq - self.x[i].norm_sqr() + moved.norm_sqr();
        for (k, (p, z)) in self.scratch_x.iter_mut().zip(&self.x).enumerate() {
            *p = if k == i {
                moved.norm_sqr()
            } else {
                z.norm_sqr()
            } / norm_sq;
        }
        for r in 0..d {
            let m = self.momentum[r] + c * self.dual_column[(r * i) % d];
            self.scratch_p[r] = m.norm_sqr() / norm_sq;
        }
        gini_in_place(&mut self.scratch_x) + gini_in_place(&mut self.scratch_p)
    }

    /// Moves to the normalized `x + c e_i` if its exactly recomputed value is
    /// strictly better.
    fn try_accept(&mut self, i: usize, c: Complex64) -> bool {
        let mut x = self.x.clone();
        x[i] += c;
        let n = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in x.iter_mut() {
            *z /= n;
        }
        let previous = (
            self.x.clone(),
            self.momentum.clone(),
            self.norm_sq,
            self.value,
        );
        self.reset(x);
        if self.value > previous.3 {
            true
        } else {
            (self.x, self.momentum, self.norm_sq, self.value) = previous;
            false
        }
    }
}

/// Pattern search from `start`: perturbs the real and imaginary part of each
/// amplitude by `±step`, renormalizes, and keeps a move only if `G_XP`
/// strictly increases. A sweep over all `2d` directions without an accepted
/// move halves the step; the search ends once the step drops below
/// `cfg.step_min`.
pub fn local_refine_traced(start: &PureState, cfg: &SearchConfig) -> RefineOutcome {
    let d = start.dim().get();
    let mut ev = Evaluator::new(start);
    let mut accepted = Vec::new();
    let mut evaluations = 0;
    let mut step = cfg.step_init;
    let mut final_step = step;

    while step >= cfg.step_min {
        final_step = step;
        let mut improved = false;
        for j in 0..2 * d {
            let (i, unit) = if j < d {
                (j, Complex64::new(1.0, 0.0))
            } else {
                (j - d, Complex64::new(0.0, 1.0))
            };
            for sign in [1.0, -1.0] {
                let c = unit * (sign * step);
                evaluations += 1;
                if ev.probe(i, c) > ev.value && ev.try_accept(i, c) {
                    accepted.push(ev.value);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let g_xp = ev.value;
    RefineOutcome {
        state: PureState::from_raw_unchecked(start.dim(), ev.x),
        g_xp,
        accepted,
        final_step,
        evaluations,
    }
}

pub fn local_refine(start: &PureState, cfg: &SearchConfig) -> PureState {
    local_refine_traced(start, cfg).state
}
