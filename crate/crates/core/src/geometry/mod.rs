//! Projective subschemes, sampling of rational points, interpolation and maps.

pub mod interp;
pub mod maps;
pub mod point;
pub mod section;
pub mod solve;
pub mod subscheme;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use interp::{forms_through, forms_through_points, ideal_through_points, minimal_generators, FormsOptions, InterpolatedIdeal};
pub use maps::{image, is_smooth_at, project, singular_sample, tangent_space, RationalMap, SingularReport};
pub use point::PointP;
pub use section::LinearChart;
pub use subscheme::{Sampler, Subscheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("retry budget exhausted while sampling points: {0}")]
    RetryBudget(String),
    #[error("point does not lie on the subscheme")]
    NotOnScheme,
    #[error("interpolation unstable: {0}")]
    Unstable(String),
    #[error("projection center contains the subscheme")]
    CenterContainsScheme,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("serialization: {0}")]
    Serde(String),
}
