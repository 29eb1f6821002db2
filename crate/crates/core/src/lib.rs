//! Norms of first-order Lagrange interpolation projectors on convex bodies.
//!
//! Given `n + 1` affinely independent nodes in a body `K ⊂ ℝⁿ`, the interpolation
//! projector `P` onto linear polynomials has norm `‖P‖_K = max_{x∈K} Σ_j |λ_j(x)|`,
//! where `λ_j` are the barycentric coordinates of the node simplex. This crate
//! computes such norms exactly over cubes, balls, vertex polytopes and finite
//! point sets, the absorption indices `ξ(K; S)` and `α(K; S)`, Legendre-polynomial
//! lower bounds for the minimal norm `θₙ(K)`, the related constructions (Hadamard
//! matrices, regular and maximum-volume simplices), and a seeded search for
//! good node sets.
//!
//! The numerical kernels are generic over [`Real`] (`f32`/`f64`); the aliases at the
//! crate root fix the scalar to `f64`, which is what the search and reporting code use.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod evolume;
pub mod geometry;
pub mod hadamard;
pub mod io;
pub mod legendre;
pub mod linalg;
pub mod lp;
pub mod optimizer;
pub mod projector;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` point.
pub type Point = geometry::Point<f64>;
/// `f64` simplex.
pub type Simplex = geometry::Simplex<f64>;
/// `f64` body.
pub type Body = geometry::Body<f64>;
/// `f64` barycentric system.
pub type BarycentricSystem = geometry::BarycentricSystem<f64>;
/// `f64` projector.
pub type Projector = projector::Projector<f64>;
/// `f64` norm report.
pub type NormReport = projector::NormReport<f64>;
/// `f64` absorption report.
pub type AbsorptionReport = projector::AbsorptionReport<f64>;
