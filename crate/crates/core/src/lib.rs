//! Quantifies how qubit noise channels degrade Bell-type correlations
//! (CHSH nonlocality and elegant-Bell-inequality contextuality) and how the
//! same channels break measurement incompatibility on the dual side.
//!
//! The crate is organized around:
//! - [`linalg`]: fixed-size complex/real matrix substrate;
//! - [`states`]: two-qubit density operators in Fano form;
//! - [`channels`]: Kraus channels, Bloch affine maps, Heisenberg duals;
//! - [`measurements`]: dichotomic POVMs and joint-measurability searches;
//! - [`bell`]: Bell functionals, closed-form responses, see-saw optimization;
//! - [`analysis`]: thresholds, robustness curves, channel classification.

pub mod analysis;
pub mod bell;
pub mod channels;
pub mod error;
pub mod linalg;
pub mod measurements;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix2, ComplexMatrix4, RealMatrix3, RealVector3, Tolerances};
