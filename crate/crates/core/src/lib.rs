//! Convex integrands on Sⁿ (n = 1, 2), their dual integrands and Wulff
//! shapes, spherical polar sets, wave fronts and caustics, and Morse-index
//! duality checks between an integrand and its dual.

pub mod error;
pub mod fronts_caustics;
pub mod integrand;
pub mod morse_stability;
pub mod sphere_geometry;
pub mod spherical_convexity;
pub mod wulff_duality;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use integrand::{Integrand, IntegrandSpec, Local};
pub use sphere_geometry::{Chart, PolarPoint, SpherePoint, Vector};
