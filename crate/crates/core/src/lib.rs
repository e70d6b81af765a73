//! Distance geometry of mutually tangent circles and spheres.
//!
//! The crate evaluates Cayley-Menger determinants over exact rationals or
//! `f64`, relates them to the Descartes / Soddy-Gosset curvature identity,
//! re-checks every matrix identity used to connect the two, realizes
//! tangent configurations as coordinates and grows Apollonian gaskets.
//!
//! Numeric code is generic over [`Scalar`]; use [`Rational`] for exact
//! identity checks and `f64` where square roots cannot be avoided.

pub mod cayley_menger;
pub mod embedding;
mod error;
pub mod gasket;
pub mod json;
pub mod numeric;
pub mod proof;
pub mod svg;
pub mod tangency;

pub use cayley_menger::{
    build_cm_matrix, cm_determinant, heron_area_squared, is_degenerate, volume_squared,
    volume_squared_from_coordinates, CmMatrix, SquaredDistanceMatrix, VolumeSquared,
};
pub use embedding::{append_point, realize_points, EmbeddedPoints};
pub use error::{Error, Result};
pub use gasket::{generate, initial_configuration, Circle, Gasket};
pub use numeric::{determinant, linear_solve, parse_rational, rat, Matrix, Rational, Scalar};
pub use proof::{IdentityCheck, ProofReport, ProofValue};
pub use svg::{render_svg, SvgOptions};
pub use tangency::{
    curvatures_from_radii, descartes_residual, factored_volume_squared, solve_missing_curvature,
    tangency_squared_distances, validate_radii, vieta_partner, CurvatureRoots, Curvatures, RadiusValidation,
    SignedRadii,
};
