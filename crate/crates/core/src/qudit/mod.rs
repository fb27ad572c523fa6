//! Single-qudit linear algebra: dimensions, residues, states, density
//! matrices, the finite Fourier transform and a Hermitian eigensolver.

mod dimension;
mod eigen;
mod fourier;
mod state;

pub use dimension::{Dimension, ZdIndex};
pub use eigen::{
    hermitian_eig, max_hermitian_deviation, HermitianEigen, MAX_SWEEPS, OFF_DIAGONAL_THRESHOLD,
};
pub use fourier::{fourier_matrix, momentum_state, MomentumTransform};
pub use state::{
    density_from_pure, inner, mix, norm, CMatrix, DensityMatrix, ProbDist, PureState, StateFile,
    HERMITIAN_TOLERANCE, NORM_TOLERANCE, PSD_TOLERANCE, TRACE_TOLERANCE,
};
