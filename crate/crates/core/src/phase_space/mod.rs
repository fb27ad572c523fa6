//! Displacement operators on `Z_d × Z_d`, the Heisenberg-Weyl group law and
//! coherent-state families generated from a fiducial vector.

mod coherent;
mod displacement;
mod noise;

pub use coherent::{
    component_vectors, expand, identity_resolution_defect, max_abs_diff, reconstruct,
    CoherentFamily, ExpansionCoefficients,
};
pub use displacement::{
    apply_displacement, compose, displacement_matrix, x_power, z_power, GroupElement, PhasePoint,
    SymmetricLabel,
};
pub use noise::{noise_experiment, NoiseOutcome};
