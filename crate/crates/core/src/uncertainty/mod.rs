//! Position/momentum statistics and the uncertainty functionals built on
//! them: Gini indices, the gap `Δ`, and Shannon entropies.

mod gini;

use serde::Serialize;

pub(crate) use gini::gini_in_place;
pub use gini::{gini_pairwise, gini_sorted};

use crate::qudit::{CMatrix, DensityMatrix, Dimension, MomentumTransform, ProbDist, PureState};

/// `P_X(r|ρ) = ⟨X;r|ρ|X;r⟩`.
pub fn prob_position(rho: &DensityMatrix) -> ProbDist {
    ProbDist::from_measured(rho.entries().diag().iter().map(|z| z.re).collect())
}

/// `P_P(r|ρ) = ⟨P;r|ρ|P;r⟩`, the diagonal of `F† ρ F`.
pub fn prob_momentum(rho: &DensityMatrix) -> ProbDist {
    let dim = rho.dim();
    let d = dim.get();
    let transform = MomentumTransform::new(dim);
    // Column r of F is |P;r⟩; ⟨P;r|ρ|P;r⟩ = Σ_jk conj(F_jr) ρ_jk F_kr.
    // Transform each column of ρ (giving F†ρ), then read Σ_k (F†ρ)_rk F_kr.
    let mut left = CMatrix::zeros((d, d));
    for k in 0..d {
        let col: Vec<_> = rho.entries().column(k).to_vec();
        let t = transform.coefficients(&col);
        for r in 0..d {
            left[[r, k]] = t[r];
        }
    }
    let scale = 1.0 / (d as f64).sqrt();
    let probs = (0..d)
        .map(|r| {
            (0..d)
                .map(|k| left[[r, k]] * dim.omega_pow((k * r) as i64) * scale)
                .sum::<num_complex::Complex64>()
                .re
        })
        .collect();
    ProbDist::from_measured(probs)
}

/// Gini indices of `ρ` in the two dual bases, their sum `G_XP`, and the gap
/// `Δ = 2(d−1)/(d+1) − G_XP`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GiniReport {
    pub g_x: f64,
    pub g_p: f64,
    pub g_xp: f64,
    pub delta: f64,
    #[serde(rename = "d")]
    pub dim: Dimension,
}

impl GiniReport {
    pub fn from_indices(dim: Dimension, g_x: f64, g_p: f64) -> Self {
        let g_xp = g_x + g_p;
        Self {
            g_x,
            g_p,
            g_xp,
            delta: delta_from_gxp(dim, g_xp),
            dim,
        }
    }
}

/// `2(d−1)/(d+1) − G_XP`.
pub fn delta_from_gxp(dim: Dimension, g_xp: f64) -> f64 {
    2.0 * dim.gini_max() - g_xp
}

pub fn gini_report(rho: &DensityMatrix) -> GiniReport {
    let g_x = gini_sorted(&prob_position(rho));
    let g_p = gini_sorted(&prob_momentum(rho));
    GiniReport::from_indices(rho.dim(), g_x, g_p)
}

/// [`gini_report`] for `|s⟩⟨s|` in O(d log d).
pub fn gini_report_pure(s: &PureState) -> GiniReport {
    let mut px = s.position_probs();
    let mut pp: Vec<f64> = s
        .momentum_amplitudes()
        .iter()
        .map(|z| z.norm_sqr())
        .collect();
    GiniReport::from_indices(s.dim(), gini_in_place(&mut px), gini_in_place(&mut pp))
}

/// Shannon entropies (natural log) in both bases and the excess
/// `E_X + E_P − ln d`, which is nonnegative for every state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    pub e_x: f64,
    pub e_p: f64,
    pub excess: f64,
}

/// Contributions from `p < 1e-300` are dropped (`0 · ln 0 = 0`).
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x >= 1e-300)
        .map(|&x| -x * x.ln())
        .sum()
}

fn entropy_from(dim: Dimension, px: &[f64], pp: &[f64]) -> EntropyReport {
    let e_x = shannon_entropy(px);
    let e_p = shannon_entropy(pp);
    EntropyReport {
        e_x,
        e_p,
        excess: e_x + e_p - (dim.get() as f64).ln(),
    }
}

pub fn entropy_report(rho: &DensityMatrix) -> EntropyReport {
    entropy_from(
        rho.dim(),
        prob_position(rho).probs(),
        prob_momentum(rho).probs(),
    )
}

pub fn entropy_report_pure(s: &PureState) -> EntropyReport {
    let pp: Vec<f64> = s
        .momentum_amplitudes()
        .iter()
        .map(|z| z.norm_sqr())
        .collect();
    entropy_from(s.dim(), &s.position_probs(), &pp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{displacement_matrix, PhasePoint};
    use crate::qudit::{density_from_pure, fourier_matrix, mix, momentum_state};
    use crate::rng::stream;
    use crate::search::{sample_haar_state, special_state};
    use rand::Rng;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn random_mixture(dim: Dimension, rng: &mut impl Rng, rank: usize) -> DensityMatrix {
        let states: Vec<DensityMatrix> = (0..rank)
            .map(|_| density_from_pure(&sample_haar_state(dim, rng)))
            .collect();
        let raw: Vec<f64> = (0..rank).map(|_| rng.random::<f64>() + 0.01).collect();
        let sum: f64 = raw.iter().sum();
        let mut weights: Vec<f64> = raw.iter().map(|w| w / sum).collect();
        let head: f64 = weights[..rank - 1].iter().sum();
        weights[rank - 1] = 1.0 - head;
        let parts: Vec<(f64, &DensityMatrix)> =
            weights.iter().copied().zip(states.iter()).collect();
        mix(&parts).unwrap()
    }

    fn assert_probs(p: &ProbDist, expected: &[f64]) {
        for (a, b) in p.probs().iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{:?} vs {:?}", p.probs(), expected);
        }
    }

    #[test]
    fn basis_state_statistics() {
        let d = dim(5);
        let x0 = density_from_pure(&PureState::position(d, d.index(0)));
        let uniform = vec![0.2; 5];
        assert_probs(&prob_position(&x0), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_probs(&prob_momentum(&x0), &uniform);
        let mixed = DensityMatrix::maximally_mixed(d);
        assert_probs(&prob_position(&mixed), &uniform);
        assert_probs(&prob_momentum(&mixed), &uniform);
        let p0 = density_from_pure(&momentum_state(d, d.index(0)));
        assert_probs(&prob_position(&p0), &uniform);
        let p1 = density_from_pure(&momentum_state(d, d.index(1)));
        assert_probs(&prob_momentum(&p1), &[0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn momentum_matches_basis_change() {
        for d in [3, 5, 7] {
            let dim = dim(d);
            let f = fourier_matrix(dim);
            let mut rng = stream(9, d as u64);
            for _ in 0..20 {
                let rho = random_mixture(dim, &mut rng, 3);
                let rotated = f.t().mapv(|z| z.conj()).dot(rho.entries()).dot(&f);
                let oracle = DensityMatrix::new(rotated).unwrap();
                assert_probs(&prob_momentum(&rho), prob_position(&oracle).probs());
            }
        }
    }

    #[test]
    fn report_examples() {
        for d in [3, 7, 11] {
            let dim = dim(d);
            let r = gini_report(&DensityMatrix::maximally_mixed(dim));
            assert!(r.g_xp.abs() < 1e-12);
            assert!((r.delta - 2.0 * dim.gini_max()).abs() < 1e-12);

            let r = gini_report(&density_from_pure(&PureState::position(dim, dim.index(0))));
            assert!((r.g_x - dim.gini_max()).abs() < 1e-12);
            assert!(r.g_p.abs() < 1e-12);
            assert!((r.g_xp - dim.gini_max()).abs() < 1e-12);
        }
        let r = gini_report(&density_from_pure(&special_state(dim(3), dim(3).index(0))));
        assert!((r.g_xp - 0.683_012_701_892_219_3).abs() < 1e-10);
    }

    #[test]
    fn pure_fast_path_matches_density_path() {
        for d in [3, 5, 9, 15] {
            let dim = dim(d);
            let mut rng = stream(10, d as u64);
            for _ in 0..20 {
                let s = sample_haar_state(dim, &mut rng);
                let a = gini_report(&density_from_pure(&s));
                let b = gini_report_pure(&s);
                assert!((a.g_x - b.g_x).abs() < 1e-12 && (a.g_p - b.g_p).abs() < 1e-12);
                let ea = entropy_report(&density_from_pure(&s));
                let eb = entropy_report_pure(&s);
                assert!((ea.excess - eb.excess).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        let d = dim(7);
        let e = entropy_report(&density_from_pure(&PureState::position(d, d.index(0))));
        assert_eq!(e.e_x, 0.0);
        assert!((e.e_p - 7f64.ln()).abs() < 1e-12);
        assert!(e.excess.abs() < 1e-12);
        let e = entropy_report(&DensityMatrix::maximally_mixed(d));
        assert!((e.excess - 7f64.ln()).abs() < 1e-12);
        assert_eq!(shannon_entropy(&[1.0, 0.0, 1e-320]), 0.0);
    }

    #[test]
    fn range_displacement_invariance_and_entropic_bound() {
        for d in [3, 5, 7] {
            let dim = dim(d);
            let mut rng = stream(107, d as u64);
            for _ in 0..100 {
                let rank = rng.random_range(1..=3);
                let rho = random_mixture(dim, &mut rng, rank);
                let base = gini_report(&rho);
                for g in [base.g_x, base.g_p] {
                    assert!(g >= -1e-12 && g <= dim.gini_max() + 1e-12);
                }
                assert!(entropy_report(&rho).excess >= -1e-10);
                let n = d as i64;
                let p = PhasePoint::new(dim, rng.random_range(0..n), rng.random_range(0..n));
                let shifted = gini_report(&rho.conjugate_by(&displacement_matrix(dim, p)));
                assert!((shifted.g_x - base.g_x).abs() < 1e-12);
                assert!((shifted.g_p - base.g_p).abs() < 1e-12);
                assert!((shifted.delta - base.delta).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn convexity_and_mixture_bound() {
        for d in [3, 5, 7] {
            let dim = dim(d);
            let mut rng = stream(35, d as u64);
            for _ in 0..100 {
                let rho = random_mixture(dim, &mut rng, 2);
                let sigma = random_mixture(dim, &mut rng, 2);
                let p: f64 = rng.random();
                let m = mix(&[(p, &rho), (1.0 - p, &sigma)]).unwrap();
                let (a, b, c) = (gini_report(&rho), gini_report(&sigma), gini_report(&m));
                assert!(c.g_x <= p * a.g_x + (1.0 - p) * b.g_x + 1e-12);
                assert!(c.g_p <= p * a.g_p + (1.0 - p) * b.g_p + 1e-12);

                let (values, vectors) = m.eig().unwrap();
                let best = values
                    .iter()
                    .zip(&vectors)
                    .filter(|(l, _)| **l > 1e-12)
                    .map(|(_, e)| gini_report_pure(e).g_xp)
                    .fold(f64::MIN, f64::max);
                assert!(c.g_xp <= best + 1e-12);
            }
        }
    }
}
