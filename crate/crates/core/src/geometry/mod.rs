//! Contours, arcs, quadrature grids, point classification and the basic
//! contour integrals.

pub mod arc;
pub mod contour;
pub mod integrate;
pub mod quadrature;
pub mod spectral;

pub use arc::{ArcShape, JordanArc};
pub use contour::{
    build_unit_circle, classify_point, ClosedContour, ContourShape, Discretization, ParamFn,
    PointClassification, Verdict,
};
pub use integrate::{contour_integral, pv_contour_integral, pv_singular_weight, PrincipalValue};
pub use quadrature::{ChebyshevWeight, QuadratureGrid, RuleKind};
