//! Metric geometry on coordinate charts: connection, curvature stack,
//! orthonormal frames, conformal rescaling and vector-field diagnostics.
//!
//! Conventions: `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`,
//! `R_{ijkl} = g(R(∂_i,∂_j)∂_k, ∂_l)`, `Ric(Y,Z) = tr(X ↦ R(X,Y)Z)`.

pub mod chart;
pub mod curvature;
pub mod diagnostics;
pub mod frame;

pub use chart::{DerivativeMode, MetricChart, MetricFn, ScalarFn, SeedFn, VectorFn};
pub use curvature::{christoffel, curvature_pack, kulkarni_nomizu, CurvaturePack, T2, T3, T4};
pub use diagnostics::{
    conformal_killing_residual, divergence, killing_residual, lie_derivative_metric, nabla_vector, pp_curvature_check,
    twist_measure,
};
pub use frame::{frame_at, orthonormal_frame, Frame, FrameField};
