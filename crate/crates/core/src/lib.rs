//! Exact few-photon linear optics.
//!
//! States live in a sparse Fock representation ([`fock`]), mode unitaries are
//! lifted onto fixed photon-number sectors by polynomial expansion of the
//! transformed creation operators ([`lift`]), and the SU(2)/SU(3) structure of
//! beam splitters and tritters is exposed by [`su2`] and [`su3`]. The
//! [`scissors`] module runs the generalized quantum-scissors teleportation
//! experiment on top of those pieces.

pub mod error;
pub mod fock;
pub mod half;
pub mod lift;
pub mod operators;
pub mod scissors;
pub mod selfcheck;
pub mod su2;
pub mod su3;
pub mod unitary;

pub use error::{Error, Result};
pub use fock::{Occupation, PureState};
pub use half::HalfInt;
pub use unitary::ModeUnitary;

pub use num_complex::Complex64;

/// Amplitudes with magnitude at or below this are dropped after arithmetic.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Tolerance on `Σ|amplitude|² = 1` for a state to count as normalized.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Entrywise tolerance on `U†U = I` (and on `det U = 1` for the special flag).
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// Largest photon number per sector that the lift will expand.
pub const MAX_SECTOR_PHOTONS: u32 = 12;
