//! Visual angle metric and related hyperbolic-type metrics.
//!
//! The crate evaluates the visual angle metric v_G, its double-angle and
//! starred variants, the triangular ratio and Ptolemaic angular metrics, the
//! hyperbolic metric ρ and ρ* = arctan sh(ρ/2), and the distance ratio and
//! quasihyperbolic metrics. Closed forms cover the unit ball, the upper
//! half-space and the punctured space; planar domains given by their boundary
//! are handled by boundary sampling with local refinement.
//!
//! Möbius maps are stored as generator lists (reflections and inversions),
//! and [`verify`] runs randomized and family-based checks of the inequalities
//! and Lipschitz constants relating these metrics.

// `!(a < b)` checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_form;
pub mod domain;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod moebius;
pub mod special;
pub mod sup;
pub mod verify;

pub use closed_form::{
    j_metric, k_metric, k_punctured, rho, rho_ball, rho_half, rho_star, v_ball, v_closed_form,
    v_half, v_half_branch_formula, v_punctured, MetricKind, MetricValue,
};
pub use domain::{Boundary, BoundaryPiece, Domain, Region};
pub use error::{Error, Result};
pub use eval::{evaluate, Evaluation, Method};
pub use geometry::{angle_at, in_envelope_e, in_envelope_f, Angle, ExtendedPoint, Point};
pub use moebius::{
    absolute_ratio, angular_characteristic, chordal, tangent_circle_ball, tangent_circle_half,
    Generator, MoebiusMap, TangentCircle,
};
pub use sup::{r_ptolemaic, s_triangular, starred, v_double, v_sup, BoundarySampler};
pub use verify::VerificationReport;
