//! Spinor fields on charts: spin connection, Dirac and twistor operators,
//! integrability and conformal checks, lightlike Killing analysis, Killing
//! decomposition, Kähler flags and parallel transport.
//!
//! The spinor lift is `∇_X φ = X(φ) + ¼ Σ η_a η_b ω_ab(X) e_a·e_b·φ` with
//! `ω_ab(X) = g(∇_X e_a, e_b)`.

pub mod analysis;
pub mod checks;
pub mod field;
pub mod operators;
pub mod transport;

pub use analysis::{
    fiber_phase, kaehler_flag_check, killing_decompose, lightlike_killing_analysis, ric_vv_variation,
    KillingDecomposition, LightlikeKillingAnalysis, Verdict,
};
pub use checks::{conformal_covariance_check, integrability_check, integrability_residuals};
pub use field::SpinorField;
pub use operators::{
    dirac_operator, killing_number, special_spinor_check, spin_connection, spin_point, spinor_derivative,
    twistor_residual, SpecialKind, SpecialSpinorVerdict,
};
pub use transport::{parallel_transport, Transported};
