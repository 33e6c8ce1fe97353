use thiserror::Error;

/// Errors produced by the geometric kernel and the hull builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HullError {
    /// An operation that needs at least one point received none.
    #[error("input is empty")]
    EmptyInput,
    /// A coordinate was NaN or infinite.
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    /// A point coincides with the projection center.
    #[error("point coincides with the projection center")]
    DegeneratePoint,
    /// Three points are collinear or coincident, so no normal exists.
    #[error("triangle is degenerate (collinear or repeated vertices)")]
    DegenerateTriangle,
    /// The cloud spans no volume (3D) or no area (2D).
    #[error("degenerate point cloud: {0}")]
    DegenerateCloud(String),
    /// Fewer distinct points than the hull dimension requires.
    #[error("need at least {needed} distinct points, found {found}")]
    InsufficientPoints { needed: usize, found: usize },
    /// The edges bounding the visible region did not form one closed loop.
    #[error("horizon for point {point} is not a single closed cycle")]
    BrokenHorizon { point: usize },
    /// A point index is not part of the hull's source cloud.
    #[error("unknown point index {0}")]
    UnknownIndex(usize),
    /// Tolerances violate `expansion_eps >= plane_eps > 0` and friends.
    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),
    /// A rotation matrix failed the orthonormality check.
    #[error("rotation matrix is not orthonormal: {0}")]
    NotOrthonormal(String),
}

impl HullError {
    /// True for errors caused by the shape of the input rather than by a fault.
    pub fn is_degenerate_input(&self) -> bool {
        matches!(
            self,
            HullError::DegenerateCloud(_)
                | HullError::InsufficientPoints { .. }
                | HullError::DegeneratePoint
                | HullError::EmptyInput
        )
    }
}

pub type Result<T, E = HullError> = std::result::Result<T, E>;
