//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use num_complex::Complex64;

use super::state::{CMatrix, HERMITIAN_TOLERANCE};
use crate::error::{Error, Result};

pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

pub fn max_hermitian_deviation(m: &CMatrix) -> f64 {
    let (rows, cols) = m.dim();
    let mut worst: f64 = 0.0;
    for i in 0..rows {
        for j in i..cols.min(rows) {
            worst = worst.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    worst
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[[i, j]].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigen-decomposition `m = V diag(λ) V†` with `λ` sorted descending.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEigen> {
    let (n, cols) = m.dim();
    if n != cols {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cols,
        });
    }
    let deviation = max_hermitian_deviation(m);
    if deviation >= HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }

    let mut a = m.clone();
    let mut v = CMatrix::eye(n);
    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > OFF_DIAGONAL_THRESHOLD {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[j, j]].re.total_cmp(&a[[i, i]].re));
    let values = order.iter().map(|&i| a[[i, i]].re).collect();
    let vectors = CMatrix::from_shape_fn((n, n), |(r, k)| v[[r, order[k]]]);
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`. The complex pivot is first
/// made real by a phase on column `q`, then a real symmetric rotation is
/// applied.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[[p, q]];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[[k, p]];
        let akq = a[[k, q]];
        a[[k, p]] = akp * upp + akq * uqp;
        a[[k, q]] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[[p, k]];
        let aqk = a[[q, k]];
        a[[p, k]] = upp.conj() * apk + uqp.conj() * aqk;
        a[[q, k]] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[[p, q]] = Complex64::new(0.0, 0.0);
    a[[q, p]] = Complex64::new(0.0, 0.0);
    a[[p, p]] = Complex64::new(a[[p, p]].re, 0.0);
    a[[q, q]] = Complex64::new(a[[q, q]].re, 0.0);

    for k in 0..n {
        let vkp = v[[k, p]];
        let vkq = v[[k, q]];
        v[[k, p]] = vkp * upp + vkq * uqp;
        v[[k, q]] = vkp * upq + vkq * uqq;
    }
}
