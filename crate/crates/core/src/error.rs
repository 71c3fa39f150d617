//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("reciprocal of the zero quaternion")]
    ZeroQuaternion,

    #[error("quaternion is not a unit: N = {norm}")]
    NonUnitQuaternion { norm: f64 },

    #[error("generator is not an exact unit quaternion")]
    NonUnitGenerator,

    #[error("group not finite within bound {bound}")]
    NotFiniteWithinBound { bound: usize },

    #[error("element does not belong to the group")]
    NotInGroup,

    #[error("antipodal: geodesic not unique")]
    AntipodalGeodesic,

    #[error("angle-pi rotation: logarithm not unique")]
    AnglePiLogarithm,

    #[error("matrix is not a rotation")]
    InvalidRotation,

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("outside unique-logarithm regime: omega = {omega}")]
    OutsideGeodesicRegime { omega: f64 },

    #[error("cannot project the zero vector to the sphere")]
    ZeroVector,

    #[error("join vertices are degenerate")]
    DegenerateJoin,

    #[error("unknown or invalid cell identifier")]
    InvalidCell,

    #[error("parameter outside the open interval (0, 1)")]
    ParamOutOfRange,

    #[error("matrix shapes do not compose: {0}")]
    ShapeMismatch(String),

    #[error("boundary maps do not compose to zero")]
    NotAChainComplex,
}
