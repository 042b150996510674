//! Numerical workbench for timelike surfaces with harmonic inverse mean
//! curvature (THIMC) in the three Lorentzian space forms: Minkowski 3-space
//! E³₁, de Sitter 3-space S³₁ and anti de Sitter 3-space H³₁.
//!
//! The pipeline goes: Gauss–Codazzi data on a null-coordinate grid
//! ([`surface`]) → Lax pair with variable spectral parameter and frame
//! integration ([`lax`]) → immersion via the Sym formula or the group
//! projections ([`sym`]) → independent re-verification of every geometric
//! quantity from the discrete immersion ([`verify`]).
//!
//! Closed-form and ODE-generated example families live in [`zoo`], the
//! generalized Hazzidakis reduction in [`hazzidakis`], and the Christoffel /
//! Lawson / harmonic-map machinery in [`transforms`].

pub mod complex;
pub mod config;
pub mod error;
pub mod grid;
pub mod hazzidakis;
pub mod io;
pub mod lax;
pub mod lorentz;
pub mod mat2;
pub mod numerics;
pub mod surface;
pub mod sym;
pub mod transforms;
pub mod verify;
pub mod zoo;

pub use config::Tolerances;
pub use error::{Error, Result};
