//! Simplices, convex bodies, vertex matrices and barycentric (basic Lagrange) systems.

mod axial;
mod barycentric;
mod body;
mod point;
mod simplex;

pub use axial::{axial_diameter, axial_diameter_closed_form};
pub use barycentric::BarycentricSystem;
pub use body::{Body, VolumeEstimate};
pub use point::Point;
pub use simplex::{Simplex, NONDEGENERACY_REL_TOL};

/// Entrywise slack used when checking identities such as `A·L = I` or `Σλ = 1`.
pub const IDENTITY_TOL: f64 = 1e-9;
