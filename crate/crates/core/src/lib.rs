//! Radial solutions of the linear Weingarten equation `2aH + bK = phi(nu)`.
//!
//! The crate classifies the equation by the sign of the discriminant
//! `a^2 + b*phi`, solves the singular radial initial value problem by Picard
//! iteration of an integrated fixed-point operator in the elliptic case,
//! detects the hyperbolic non-existence obstruction, enumerates the
//! closed-form circle family of the parabolic case, and provides Dirichlet,
//! curvature and mesh utilities around those solvers.

pub mod classify;
pub mod continuation;
pub mod curvature;
pub mod dirichlet;
pub mod error;
pub mod mesh;
pub mod numerics;
pub mod parabolic;
pub mod phi;
pub mod picard;
pub mod profile;
pub mod residual;
pub mod spline;

pub use classify::{
    classify_at, classify_global, discriminant, Classification, GlobalClassification, GlobalKind,
    TypeKind, WeingartenParams, CLASS_TOL,
};
pub use continuation::{continue_ode, Continuation, ContinuationStatus};
pub use curvature::{principal_curvatures, weingarten_residual, CurvatureSample};
pub use dirichlet::{
    functional_residual_2d, functional_residual_samples, sign_report, solve_dirichlet_disk,
    SignReport, SignVerdict,
};
pub use error::{Error, Result};
pub use mesh::{revolve_polyline, revolve_to_mesh, Mesh};
pub use parabolic::{
    circle_profile, classify_arc, cylinder_profile, cylinder_relation_lhs, normalize_parabolic,
    profile_residual, stitch_arcs, ArcClass, ArcSign, CircleSolution, CylinderProfile,
    ProfilePolyline,
};
pub use phi::{Phi, PhiForm};
pub use picard::{
    apply_fixed_point, estimate_contraction, fixed_point_solve, initial_curvature, FixedPointRun,
    SolverConfig,
};
pub use profile::{Branch, Provenance, RadialSolution, ResidualReport};
pub use residual::ode_residual;
