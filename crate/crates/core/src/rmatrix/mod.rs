//! The Z_N-vertex elliptic R-matrix.
//!
//! [`build_r_tilde`] assembles R̃ from the vertex weights W_α and the
//! matrices I_α ⊗ I_α⁻¹, [`gauge_transform`] conjugates by g^{1/2} ⊗ g^{1/2},
//! and [`build_r_hat`] multiplies by τ_N(q^{1/2}z⁻¹). All constructors take a
//! [`Spectral`](crate::special_fn::Spectral) parameter so that the phases
//! picked up under z → −z and z → −p^{1/2}z are unambiguous.

mod build;
mod tensor;
mod verify;

pub use build::{
    build_r, build_r_hat, build_r_hat_star, build_r_tilde, elementary_matrices, g_sqrt, g_sqrt_inv, gauge_transform, weight_w,
    Elementary, WeightMatrix,
};
pub use tensor::{kron, RTensor, MAX_CONDITION};
pub use verify::{
    antisymmetry_residual, crossing_residual, property_residuals, quasi_periodicity_residual, sample_pairs,
    unitarity_residual, verify_properties, yang_baxter_residual, PROPERTY_NAMES, SAMPLE_ARG, SAMPLE_WIDTH,
};
