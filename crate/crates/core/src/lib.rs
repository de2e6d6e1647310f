//! Quantum Rabi and Jaynes–Cummings dynamics on truncated Fock spaces, with
//! analytic upper and lower bounds on the rotating-wave-approximation error.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: parameters, spin⊗boson states, weighted moments.
//! - [`operators`]: sparse truncated Hamiltonians and the closed-form
//!   auxiliary maps `S21(t)` and `X(t)`.
//! - [`propagate`]: exact Jaynes–Cummings evolution, certified Krylov
//!   evolution for the Rabi model, and the RWA error norm.
//! - [`bounds`]: the analytic bounds, for general states and Fock states.
//! - [`harness`]: sweeps, reports, identity checks and the CLI plumbing.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod model;
pub mod operators;
pub mod propagate;

pub use error::{Result, RwaError};
pub use model::{MomentSet, ModelParams, Spin, SpinBosonState};
pub use num_complex::Complex64;
