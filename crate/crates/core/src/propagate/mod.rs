//! Time evolution under the Jaynes–Cummings and Rabi Hamiltonians.

pub mod jc;
pub mod krylov;
pub mod rabi;

pub use jc::{
    interaction_propagate, interaction_propagate_with, jc_coefficients, jc_propagate, jc_propagate_oracle,
    jc_propagate_with, BlockFrequency, JcCoefficients,
};
pub use rabi::{
    check_tol, norm_difference, rabi_propagate, rabi_propagate_capped, sup_norm_difference,
    PropagationCertificate, SupResult,
};
