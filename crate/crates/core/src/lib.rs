//! Quaternionic geometry of the 3-sphere and the real flag manifold.
//!
//! The library models, exactly where group theory demands it and in `f64`
//! where geometry does:
//!
//! * the field `Q(sqrt 2)` and quaternions over it ([`qsqrt2`], [`quat`]),
//! * the finite subgroups `Q8` and the binary octahedral group `O` of the
//!   unit quaternions, with the coset map onto the symmetric group `S3`,
//! * the double cover of `SO3(R)` by unit quaternions, the Rodrigues
//!   exponential, the matrix logarithm and the bi-invariant metric that
//!   makes the cover a local isometry ([`rot`]),
//! * the real flag manifold `SO3(R)/T(R)` with its Weyl group action,
//!   quotient distances and one-parameter geodesics ([`flag`]),
//! * curved joins on the 3-sphere, the octahedral fundamental domain and
//!   the equivariant cells carried over to the flag manifold ([`cells`]),
//! * group rings, the two boundary complexes of the cell structure, Smith
//!   normal form and homology ([`homology`]).
//!
//! ```
//! use quatflag::flag::{flag_distance, phi, FlagPoint};
//! use quatflag::quat::{octahedral, ExactQuat};
//!
//! // the binary octahedral group closes at order 48 and labels its
//! // cosets by Weyl elements
//! let oct = octahedral();
//! assert_eq!(oct.order(), 48);
//! let label = oct.coset_label(&ExactQuat::tau_k()).unwrap();
//! assert_eq!(label.name(), "s_a");
//!
//! // the image of the inverse of tau_i sits a quarter turn from the
//! // basepoint of the flag manifold
//! let q = ExactQuat::tau_i().inverse().unwrap().to_quat();
//! let d = flag_distance(&FlagPoint::basepoint(), &phi(&q).unwrap());
//! assert!((d - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
//! ```

pub mod cells;
pub mod error;
pub mod flag;
pub mod homology;
pub mod qsqrt2;
pub mod quat;
pub mod rot;
pub mod weyl;

pub use error::Error;
pub use flag::{FlagPoint, ExactFlagPoint};
pub use qsqrt2::QSqrt2;
pub use quat::{ExactQuat, FiniteSubgroup, OctahedralGroup, Quat, SphericalCoords};
pub use rot::{ExactRotation, Rotation, SkewMatrix};
pub use weyl::{WeylElement, WeylGroup};

/// Shorthand for results over the library error type.
pub type Result<T> = std::result::Result<T, Error>;
