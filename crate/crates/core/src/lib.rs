//! Gini-index uncertainty relations for odd-dimensional quantum systems.
//!
//! A qudit with `d` odd has dual position and momentum bases related by the
//! finite Fourier transform. The Gini indices `G_X`, `G_P` of the two
//! measurement distributions satisfy
//! `Δ(ρ) = 2(d−1)/(d+1) − G_X(ρ) − G_P(ρ) >= η_d > 0`. This crate estimates
//! `η_d`, finds states that (nearly) saturate the bound, and builds coherent
//! families from them with displacement operators on `Z_d × Z_d`.
//!
//! Index convention: residues are stored as `0..d`; a symmetric label `r`
//! in `-(d-1)/2 ..= (d-1)/2` is the residue `r mod d`.

pub mod error;
pub mod experiments;
pub mod phase_space;
pub mod qudit;
pub mod reference;
pub mod rng;
pub mod search;
pub mod uncertainty;

pub use error::{Error, Result};
