//! Simulation and verification toolkit for a relativistic two-level atom
//! coupled to a single quantized field mode.
//!
//! The crate is organised bottom-up:
//!
//! - [`grassmann`]: exact algebra of anticommuting generators with graded
//!   Poisson and Dirac brackets.
//! - [`kinematics`]: Minkowski four-vectors, Wigner-boost tetrads and their
//!   momentum derivatives.
//! - [`poincare`]: the external Poincaré-generator realization on Jacobi data
//!   and a numerical closure checker.
//! - [`quantize`]: Fermi oscillators, Pauli dipole, truncated Fock space and
//!   the physical-subspace projection.
//! - [`hamiltonian`]: relativistic and non-relativistic Rabi and
//!   Jaynes-Cummings Hamiltonians.
//! - [`dynamics`]: unitary evolution, observables and physics scenarios.
//! - [`cli`]: config-driven runner behind the `relrabi` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod dual;
pub mod dynamics;
pub mod error;
pub mod grassmann;
pub mod hamiltonian;
pub mod kinematics;
pub mod linalg;
pub mod poincare;
pub mod quantize;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
