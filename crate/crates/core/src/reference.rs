//! Published reference vectors (four decimals) used for regression checks.
//!
//! The published `d = 3` expansion table follows a different orientation
//! from this crate: its fiducial amplitudes are listed in reverse position
//! order, and its phase-space label `(α, β)` is the point `(−α, β)` here
//! (equivalently, it was produced with `ω = e^{−2πi/d}`).
//! [`table_fiducial`] and [`table_point`] translate between the two.

use num_complex::Complex64;

use crate::phase_space::PhasePoint;
use crate::qudit::{Dimension, PureState};

const FIDUCIAL_3: [(f64, f64); 3] = [(-0.2395, 0.1773), (-0.3749, -0.7941), (0.3735, 0.0232)];

const FIDUCIAL_5: [(f64, f64); 5] = [
    (-0.1665, 0.2964),
    (0.5752, -0.5821),
    (-0.3445, 0.2167),
    (0.1598, 0.0086),
    (-0.1092, -0.1072),
];

const FIDUCIAL_7: [(f64, f64); 7] = [
    (0.3479, -0.0613),
    (-0.1256, -0.0417),
    (-0.0054, 0.8010),
    (0.1875, 0.1370),
    (-0.1618, -0.1764),
    (-0.3214, 0.0283),
    (-0.0125, 0.0228),
];

const EXAMPLE_STATE: [(f64, f64); 3] = [(0.5040, -0.1526), (0.3283, 0.1757), (0.8324, 0.0231)];

type TableRow = ((i64, i64), [(f64, f64); 3]);

/// `s_{α,β}|α,β⟩` rows keyed by symmetric labels `(α, β)`.
const EXPANSION_TABLE: [TableRow; 9] = [
    (
        (-1, -1),
        [(0.2527, -0.0295), (0.0844, 0.0181), (0.1074, -0.0148)],
    ),
    (
        (-1, 0),
        [(0.0893, 0.0016), (0.2093, 0.0081), (0.0664, 0.0255)],
    ),
    (
        (-1, 1),
        [(0.0923, 0.0310), (0.1222, -0.0029), (0.2869, -0.0008)],
    ),
    (
        (0, -1),
        [(0.0672, -0.0952), (-0.0361, -0.0161), (0.0217, 0.0447)],
    ),
    (
        (0, 0),
        [(-0.0338, -0.0055), (0.0270, 0.0757), (0.0234, -0.0140)],
    ),
    (
        (0, 1),
        [(-0.0108, -0.0733), (-0.0488, 0.0791), (0.2180, 0.0109)],
    ),
    (
        (1, -1),
        [(0.0688, 0.0071), (-0.0191, 0.0136), (-0.0126, -0.0266)],
    ),
    (
        (1, 0),
        [(0.0151, -0.0175), (0.0169, 0.0517), (-0.0159, -0.0094)],
    ),
    (
        (1, 1),
        [(-0.0367, 0.0287), (-0.0274, -0.0517), (0.1370, 0.0078)],
    ),
];

fn to_complex(v: &[(f64, f64)]) -> Vec<Complex64> {
    v.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

/// Published minimum-uncertainty fiducial for `d ∈ {3, 5, 7}`, as printed.
pub fn published_fiducial_raw(d: usize) -> Option<Vec<Complex64>> {
    match d {
        3 => Some(to_complex(&FIDUCIAL_3)),
        5 => Some(to_complex(&FIDUCIAL_5)),
        7 => Some(to_complex(&FIDUCIAL_7)),
        _ => None,
    }
}

/// [`published_fiducial_raw`] renormalized; the printed roundings have norm
/// about `1 − 3e-5`.
pub fn published_fiducial(d: usize) -> Option<PureState> {
    let dim = Dimension::new(d).ok()?;
    PureState::normalized(dim, published_fiducial_raw(d)?).ok()
}

/// The `d = 3` state expanded in the published table. Not normalized
/// (norm ≈ 1.053); expansion is linear so it is used as printed.
pub fn expansion_example_state() -> Vec<Complex64> {
    to_complex(&EXAMPLE_STATE)
}

/// Published `d = 3` fiducial in this crate's orientation.
pub fn table_fiducial() -> PureState {
    let mut amplitudes = published_fiducial_raw(3).expect("d = 3 is tabulated");
    amplitudes.reverse();
    PureState::normalized(Dimension::new(3).expect("3 is odd"), amplitudes).expect("nonzero")
}

/// Phase point of this crate matching the published label `(α, β)`.
pub fn table_point(dim: Dimension, alpha: i64, beta: i64) -> PhasePoint {
    PhasePoint::new(dim, -alpha, beta)
}

/// Published expansion rows: `((α, β), s_{α,β}|α,β⟩)` with symmetric labels.
pub fn published_expansion_table() -> Vec<((i64, i64), Vec<Complex64>)> {
    EXPANSION_TABLE
        .iter()
        .map(|(label, v)| (*label, to_complex(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_vectors_are_nearly_unit() {
        for d in [3, 5, 7] {
            let raw = published_fiducial_raw(d).unwrap();
            let n = crate::qudit::norm(&raw);
            assert!((n - 1.0).abs() < 1e-4, "d = {d}: {n}");
            assert!((published_fiducial(d).unwrap().norm() - 1.0).abs() < 1e-15);
        }
        assert!(published_fiducial(9).is_none());
    }

    #[test]
    fn table_rows_sum_to_example_state() {
        let mut total = [Complex64::new(0.0, 0.0); 3];
        for (_, v) in published_expansion_table() {
            for (t, z) in total.iter_mut().zip(v) {
                *t += z;
            }
        }
        for (t, s) in total.iter().zip(expansion_example_state()) {
            assert!((t - s).norm() < 5e-4);
        }
    }
}
