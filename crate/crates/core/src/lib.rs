//! Geometric phase of a uniformly accelerated two-level atom coupled to a
//! massless conformal scalar field.
//!
//! The crate covers anti-de Sitter spacetime under Dirichlet, transparent and
//! Neumann boundary conditions, together with de Sitter and inertial
//! Minkowski references. Every closed form is paired with a brute-force
//! evaluator in [`oracles`] so the two routes can be checked against each
//! other.
//!
//! Module map:
//!
//! * [`model`] - parameters, validation, dimensionless groups, regimes
//! * [`correlations`] - Wightman functions and worldlines
//! * [`response`] - spectral densities, Kossakowski rates, temperatures
//! * [`dynamics`] - closed-form Bloch evolution and eigensystem
//! * [`phase`] - exact and perturbative geometric phases and corrections
//! * [`oracles`] - adaptive quadrature and numerical Fourier transforms
//!
//! All functions are pure; every type is `Send + Sync`.

pub mod correlations;
pub mod dynamics;
mod error;
pub mod model;
pub mod numerics;
pub mod oracles;
pub mod phase;
pub mod quadrature;
pub mod response;

pub use error::{Error, Result};
pub use model::{
    classify_regime, nondimensionalize, AtomParams, Boundary, DimensionlessGroups, Regime,
    RegimeClass, ScenarioConfig, Spacetime,
};
pub use phase::{CorrectionReport, PhaseMethod, PhaseReport};
pub use response::KossakowskiPair;
