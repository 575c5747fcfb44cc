//! Interpolation of Fourier series at the roots-of-unity grid.

mod audit;
mod augmented;
mod fold;

pub use audit::{
    audit_interpolant, bound_audit, interpolation_audit, torus_node, BoundAuditConfig,
    BoundAuditReport, InterpolationAudit, INTERPOLATION_TOLERANCE,
};
pub use augmented::{augmented_interpolant, AugmentedInterpolant, Engine, DEGENERATE_Z0_TOLERANCE};
pub use fold::{
    alias_fold, diagonal_fold, eval_diagonal_poly, FoldResult, InterpolantPoly, SkippedVisit,
};
