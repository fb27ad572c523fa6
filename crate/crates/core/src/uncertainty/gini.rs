use crate::qudit::ProbDist;

/// Gini index from the ascending sort:
/// `1 − 2/(d+1) · Σ_k (d − k) p_(k)`.
///
/// Ties keep their original order (stable sort); equal values contribute the
/// same total either way.
pub fn gini_sorted(p: &ProbDist) -> f64 {
    let mut buf = p.probs().to_vec();
    gini_in_place(&mut buf)
}

/// Same as [`gini_sorted`] on a raw slice, reordering it.
pub(crate) fn gini_in_place(buf: &mut [f64]) -> f64 {
    buf.sort_by(f64::total_cmp);
    let d = buf.len();
    let weighted: f64 = buf
        .iter()
        .enumerate()
        .map(|(k, p)| (d - k) as f64 * p)
        .sum();
    1.0 - 2.0 / (d as f64 + 1.0) * weighted
}

/// Gini index as the mean absolute difference
/// `1/(2(d+1)) · Σ_{r,s} |p_r − p_s|`. Quadratic; kept as a cross-check.
pub fn gini_pairwise(p: &ProbDist) -> f64 {
    let probs = p.probs();
    let d = probs.len() as f64;
    let total: f64 = probs
        .iter()
        .map(|a| probs.iter().map(|b| (a - b).abs()).sum::<f64>())
        .sum();
    total / (2.0 * (d + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use proptest::prelude::*;
    use rand::Rng;

    fn indicator(d: usize, at: usize) -> ProbDist {
        let mut p = vec![0.0; d];
        p[at] = 1.0;
        ProbDist::new(p).unwrap()
    }

    #[test]
    fn uniform_is_zero() {
        for d in [3, 5, 9] {
            assert!(gini_sorted(&ProbDist::uniform(d)).abs() < 1e-15);
            assert!(gini_pairwise(&ProbDist::uniform(d)).abs() < 1e-15);
        }
    }

    #[test]
    fn indicator_is_maximal() {
        assert!((gini_sorted(&indicator(3, 1)) - 0.5).abs() < 1e-15);
        assert!((gini_pairwise(&indicator(3, 1)) - 0.5).abs() < 1e-15);
        for d in [5, 7, 21] {
            let max = (d as f64 - 1.0) / (d as f64 + 1.0);
            assert!((gini_sorted(&indicator(d, d - 1)) - max).abs() < 1e-15);
        }
    }

    #[test]
    fn two_point_distribution() {
        let p = ProbDist::new(vec![0.5, 0.5, 0.0]).unwrap();
        assert!((gini_sorted(&p) - 0.25).abs() < 1e-15);
        assert!((gini_pairwise(&p) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn definitions_agree_on_random_distributions() {
        for d in (3..=15).step_by(2) {
            let mut rng = stream(87, d as u64);
            for _ in 0..1000 {
                let raw: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
                let sum: f64 = raw.iter().sum();
                let p = ProbDist::new(raw.into_iter().map(|x| x / sum).collect()).unwrap();
                assert!((gini_sorted(&p) - gini_pairwise(&p)).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn gini_range_and_permutation_invariance(raw in prop::collection::vec(0.0f64..1.0, 3..30), shift in 0usize..30) {
            let sum: f64 = raw.iter().sum();
            prop_assume!(sum > 1e-6);
            let probs: Vec<f64> = raw.iter().map(|x| x / sum).collect();
            let d = probs.len() as f64;
            let g = gini_sorted(&ProbDist::new(probs.clone()).unwrap());
            prop_assert!(g >= -1e-12 && g <= (d - 1.0) / (d + 1.0) + 1e-12);
            let mut rotated = probs.clone();
            rotated.rotate_left(shift % probs.len());
            let g2 = gini_sorted(&ProbDist::new(rotated).unwrap());
            prop_assert!((g - g2).abs() < 1e-12);
        }
    }
}
