//! High-order one-step discontinuous Galerkin solver for the compressible
//! Euler and Navier-Stokes equations on three-dimensional polyhedral
//! meshes.
//!
//! Polyhedral cells are generated from a tetrahedral grid by local
//! polyhedral replacement and carry a conforming tetrahedral subgrid. The
//! discrete solution is a continuous finite element ansatz on that
//! subgrid, discontinuous across cells, which lets every runtime integral
//! reduce to products with matrices precomputed on the reference
//! tetrahedron. Time integration is a one-step predictor-corrector: a
//! cell-local space-time solve followed by a conservative update with
//! Rusanov interface fluxes. A divergence-based detector injects
//! artificial viscosity in troubled cells.

pub mod afe;
pub mod basis;
pub mod error;
pub mod mesh;
pub mod physics;

pub use error::{Error, Result};
