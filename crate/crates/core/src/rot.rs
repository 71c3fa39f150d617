//! Rotations and skew matrices: the Rodrigues exponential, the matrix
//! logarithm, the double cover of `SO3(R)` by unit quaternions and the
//! bi-invariant metric `g8(X, Y) = -tr(XY)/8` that turns the cover into a
//! local isometry for the round 3-sphere.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::qsqrt2::QSqrt2;
use crate::quat::{ExactQuat, Quat};
use crate::Result;

/// Orthogonality/determinant tolerance for accepting a rotation matrix.
pub const ROTATION_TOL: f64 = 1e-9;

pub(crate) type Mat3 = [[f64; 3]; 3];

pub(crate) fn mat_identity() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

pub(crate) fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub(crate) fn mat_transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub(crate) fn mat_max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

pub(crate) fn mat_det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn mat_trace(a: &Mat3) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

/// An element of `SO3(R)`, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    m: Mat3,
}

impl Rotation {
    pub fn new(m: Mat3) -> Result<Self> {
        let r = Rotation { m };
        if r.is_valid(ROTATION_TOL) {
            Ok(r)
        } else {
            Err(Error::InvalidRotation)
        }
    }

    pub(crate) fn from_matrix_unchecked(m: Mat3) -> Self {
        Rotation { m }
    }

    pub fn identity() -> Self {
        Rotation { m: mat_identity() }
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        let gram = mat_mul(&mat_transpose(&self.m), &self.m);
        mat_max_abs_diff(&gram, &mat_identity()) <= tol && (mat_det(&self.m) - 1.0).abs() <= tol
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn row_major(&self) -> [f64; 9] {
        let m = &self.m;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }

    pub fn transpose(&self) -> Rotation {
        Rotation {
            m: mat_transpose(&self.m),
        }
    }

    pub fn mul(&self, o: &Rotation) -> Rotation {
        Rotation {
            m: mat_mul(&self.m, &o.m),
        }
    }

    pub fn trace(&self) -> f64 {
        mat_trace(&self.m)
    }

    pub fn det(&self) -> f64 {
        mat_det(&self.m)
    }

    /// Rotation angle in `[0, pi]`.
    pub fn angle(&self) -> f64 {
        ((self.trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }

    pub fn max_abs_diff(&self, o: &Rotation) -> f64 {
        mat_max_abs_diff(&self.m, &o.m)
    }
}

impl Serialize for Rotation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.row_major();
        let mut seq = serializer.serialize_seq(Some(9))?;
        for x in v {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

/// An element of `so3(R)`, stored by its vee vector under the convention
///
/// `hat(x, y, z) = [[0, z, -y], [-z, 0, x], [y, -x, 0]]`,
///
/// chosen so that the differential of the covering map is `2*hat` on the
/// nose; every skew matrix printed in test fixtures then matches entrywise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewMatrix {
    vee: [f64; 3],
}

impl SkewMatrix {
    pub fn from_vee(vee: [f64; 3]) -> Self {
        SkewMatrix { vee }
    }

    pub fn zero() -> Self {
        SkewMatrix { vee: [0.0; 3] }
    }

    pub fn from_matrix(m: Mat3) -> Result<Self> {
        let skew_defect = mat_max_abs_diff(&m, &neg(&mat_transpose(&m)));
        if skew_defect > ROTATION_TOL {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(SkewMatrix {
            vee: [m[1][2], -m[0][2], m[0][1]],
        })
    }

    pub fn vee(&self) -> [f64; 3] {
        self.vee
    }

    pub fn matrix(&self) -> Mat3 {
        let [x, y, z] = self.vee;
        [[0.0, z, -y], [-z, 0.0, x], [y, -x, 0.0]]
    }

    /// Euclidean length of the vee vector; the rotation angle of `exp`.
    pub fn theta(&self) -> f64 {
        let [x, y, z] = self.vee;
        (x * x + y * y + z * z).sqrt()
    }

    pub fn frobenius_norm(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.theta()
    }

    pub fn scale(&self, t: f64) -> SkewMatrix {
        let [x, y, z] = self.vee;
        SkewMatrix {
            vee: [t * x, t * y, t * z],
        }
    }

    pub fn max_abs_diff(&self, o: &SkewMatrix) -> f64 {
        mat_max_abs_diff(&self.matrix(), &o.matrix())
    }
}

fn neg(m: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = -m[i][j];
        }
    }
    out
}

impl Serialize for SkewMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for x in self.vee {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

/// Rodrigues formula: for `S` with angle `theta = |vee(S)|` and unit part
/// `X = S/theta`, returns `I + sin(theta) X + (1 - cos(theta)) X^2`.
pub fn exp_skew(s: &SkewMatrix) -> Rotation {
    let theta = s.theta();
    if theta == 0.0 {
        return Rotation::identity();
    }
    let x = s.scale(1.0 / theta).matrix();
    let xx = mat_mul(&x, &x);
    let (st, ct) = theta.sin_cos();
    let mut m = mat_identity();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] += st * x[i][j] + (1.0 - ct) * xx[i][j];
        }
    }
    Rotation::from_matrix_unchecked(m)
}

/// Matrix logarithm `X = theta/(2 sin theta) (R - R^t)` with
/// `theta = arccos((tr R - 1)/2)`; refuses angle-pi rotations, returns
/// zero at the identity, and switches to the Taylor-safe factor for small
/// angles.
pub fn log_rotation(r: &Rotation) -> Result<SkewMatrix> {
    let tr = r.trace();
    if tr <= -1.0 + ROTATION_TOL {
        return Err(Error::AnglePiLogarithm);
    }
    let theta = ((tr - 1.0) / 2.0).clamp(-1.0, 1.0).acos();
    let factor = if theta < 1e-4 {
        // theta/(2 sin theta) = 1/2 (1 + theta^2/6 + 7 theta^4/360 + ...)
        0.5 * (1.0 + theta * theta / 6.0 + 7.0 * theta.powi(4) / 360.0)
    } else {
        theta / (2.0 * theta.sin())
    };
    let m = r.matrix();
    Ok(SkewMatrix::from_vee([
        factor * (m[1][2] - m[2][1]),
        factor * (m[2][0] - m[0][2]),
        factor * (m[0][1] - m[1][0]),
    ]))
}

/// The covering map `B`: the matrix of `v -> q v q^-1` on pure quaternions
/// in the basis `(i, j, k)`. A two-to-one homomorphism with kernel `{1, -1}`.
pub fn covering_map(q: &Quat) -> Result<Rotation> {
    q.check_unit()?;
    let n = q.norm();
    let (w, x, y, z) = (q.w, q.x, q.y, q.z);
    let m = [
        [
            (w * w + x * x - y * y - z * z) / n,
            2.0 * (x * y - w * z) / n,
            2.0 * (x * z + w * y) / n,
        ],
        [
            2.0 * (x * y + w * z) / n,
            (w * w - x * x + y * y - z * z) / n,
            2.0 * (y * z - w * x) / n,
        ],
        [
            2.0 * (x * z - w * y) / n,
            2.0 * (y * z + w * x) / n,
            (w * w - x * x - y * y + z * z) / n,
        ],
    ];
    Ok(Rotation::from_matrix_unchecked(m))
}

/// The differential of the covering map at the identity:
/// `(x, y, z) -> 2 [[0, z, -y], [-z, 0, x], [y, -x, 0]] = 2 hat(x, y, z)`.
pub fn differential_b(u: [f64; 3]) -> SkewMatrix {
    SkewMatrix::from_vee([2.0 * u[0], 2.0 * u[1], 2.0 * u[2]])
}

/// The quaternionic bi-invariant inner product `-tr(XY)/8` on `so3(R)`.
pub fn g8_metric(x: &SkewMatrix, y: &SkewMatrix) -> f64 {
    let a = x.matrix();
    let b = y.matrix();
    let mut tr = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            tr += a[i][j] * b[j][i];
        }
    }
    -tr / 8.0
}

/// Arc length over `[0, t]` of the geodesic `s -> p exp(sX) T`, which runs
/// at constant speed `sqrt(g8(X, X)) = |X|_F / (2 sqrt 2)`.
pub fn arc_length(x: &SkewMatrix, t: f64) -> f64 {
    t * x.frobenius_norm() / (2.0 * std::f64::consts::SQRT_2)
}

/// Geodesic distance on `(SO3(R), g8)`: half the rotation angle of `P^t Q`.
pub fn so3_distance(p: &Rotation, q: &Rotation) -> f64 {
    p.transpose().mul(q).angle() / 2.0
}

/// A unit quaternion `q` with `covering_map(q) = r`; the other is `-q`.
pub fn quaternion_from_rotation(r: &Rotation) -> Quat {
    let m = r.matrix();
    let tr = mat_trace(m);
    let q = if tr > 0.0 {
        let s = (tr + 1.0).sqrt() * 2.0;
        Quat::new(
            s / 4.0,
            (m[2][1] - m[1][2]) / s,
            (m[0][2] - m[2][0]) / s,
            (m[1][0] - m[0][1]) / s,
        )
    } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
        let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
        Quat::new(
            (m[2][1] - m[1][2]) / s,
            s / 4.0,
            (m[0][1] + m[1][0]) / s,
            (m[0][2] + m[2][0]) / s,
        )
    } else if m[1][1] >= m[2][2] {
        let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
        Quat::new(
            (m[0][2] - m[2][0]) / s,
            (m[0][1] + m[1][0]) / s,
            s / 4.0,
            (m[1][2] + m[2][1]) / s,
        )
    } else {
        let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
        Quat::new(
            (m[1][0] - m[0][1]) / s,
            (m[0][2] + m[2][0]) / s,
            (m[1][2] + m[2][1]) / s,
            s / 4.0,
        )
    };
    q.normalized().expect("lift of a rotation is nonzero")
}

/// A rotation matrix with entries in `Q(sqrt 2)`; images of the binary
/// octahedral group land here, which keeps torus and Weyl computations
/// exact.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactRotation {
    m: [[QSqrt2; 3]; 3],
}

/// Serializes as three rows of `Q(sqrt 2)` quadruples.
impl Serialize for ExactRotation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for row in &self.m {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

impl ExactRotation {
    pub fn from_entries(m: [[QSqrt2; 3]; 3]) -> Self {
        ExactRotation { m }
    }

    pub fn identity() -> Self {
        Self::diag(1, 1, 1)
    }

    fn diag(a: i64, b: i64, c: i64) -> Self {
        let mut m: [[QSqrt2; 3]; 3] = Default::default();
        m[0][0] = QSqrt2::from_int(a);
        m[1][1] = QSqrt2::from_int(b);
        m[2][2] = QSqrt2::from_int(c);
        ExactRotation { m }
    }

    /// The four elements of `T(R)`: diagonal sign matrices of determinant 1,
    /// in the order `I, diag(1,-1,-1), diag(-1,1,-1), diag(-1,-1,1)`.
    pub fn torus_elements() -> [ExactRotation; 4] {
        [
            Self::identity(),
            Self::diag(1, -1, -1),
            Self::diag(-1, 1, -1),
            Self::diag(-1, -1, 1),
        ]
    }

    pub fn s_alpha_dot() -> Self {
        Self::from_int_entries([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    }

    pub fn s_beta_dot() -> Self {
        Self::from_int_entries([[1, 0, 0], [0, 0, -1], [0, 1, 0]])
    }

    pub fn from_int_entries(e: [[i64; 3]; 3]) -> Self {
        let mut m: [[QSqrt2; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = QSqrt2::from_int(e[i][j]);
            }
        }
        ExactRotation { m }
    }

    pub fn entry(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.m[i][j]
    }

    pub fn mul(&self, o: &ExactRotation) -> ExactRotation {
        let mut m: [[QSqrt2; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = QSqrt2::zero();
                for k in 0..3 {
                    acc = &acc + &(&self.m[i][k] * &o.m[k][j]);
                }
                m[i][j] = acc;
            }
        }
        ExactRotation { m }
    }

    pub fn transpose(&self) -> ExactRotation {
        let mut m: [[QSqrt2; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.m[j][i].clone();
            }
        }
        ExactRotation { m }
    }

    pub fn det(&self) -> QSqrt2 {
        let m = &self.m;
        let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
        let c1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
        let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
        &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
    }

    /// Exact membership in `T(R)`.
    pub fn is_torus_element(&self) -> bool {
        let one = QSqrt2::one();
        let minus_one = QSqrt2::from_int(-1);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    if self.m[i][j] != one && self.m[i][j] != minus_one {
                        return false;
                    }
                } else if !self.m[i][j].is_zero() {
                    return false;
                }
            }
        }
        self.det() == one
    }

    pub fn to_rotation(&self) -> Rotation {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.m[i][j].to_f64();
            }
        }
        Rotation::from_matrix_unchecked(m)
    }
}

impl std::fmt::Debug for ExactRotation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..3 {
            writeln!(f, "[{}, {}, {}]", self.m[i][0], self.m[i][1], self.m[i][2])?;
        }
        Ok(())
    }
}

/// Exact flavor of the covering map; requires `N(q) = 1` exactly.
pub fn covering_map_exact(q: &ExactQuat) -> Result<ExactRotation> {
    if !q.is_unit() {
        return Err(Error::NonUnitQuaternion {
            norm: q.norm().to_f64(),
        });
    }
    let (w, x, y, z) = (&q.w, &q.x, &q.y, &q.z);
    let two = QSqrt2::from_int(2);
    let ww = w * w;
    let xx = x * x;
    let yy = y * y;
    let zz = z * z;
    let m = [
        [
            &(&ww + &xx) - &(&yy + &zz),
            &two * &(&(x * y) - &(w * z)),
            &two * &(&(x * z) + &(w * y)),
        ],
        [
            &two * &(&(x * y) + &(w * z)),
            &(&ww - &xx) + &(&yy - &zz),
            &two * &(&(y * z) - &(w * x)),
        ],
        [
            &two * &(&(x * z) - &(w * y)),
            &two * &(&(y * z) + &(w * x)),
            &(&ww - &xx) - &(&yy - &zz),
        ],
    ];
    Ok(ExactRotation::from_entries(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::octahedral;

    fn u_alpha() -> Mat3 {
        [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    }

    fn u_beta() -> Mat3 {
        [[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]
    }

    fn matrix_exp_series(m: &Mat3, terms: usize) -> Mat3 {
        let mut acc = mat_identity();
        let mut term = mat_identity();
        for k in 1..=terms {
            term = mat_mul(&term, m);
            for row in term.iter_mut() {
                for v in row.iter_mut() {
                    *v /= k as f64;
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += term[i][j];
                }
            }
        }
        acc
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(exp_skew(&SkewMatrix::zero()), Rotation::identity());
    }

    #[test]
    fn exp_of_pi_half_u_alpha_is_s_alpha_dot() {
        let s = SkewMatrix::from_matrix(scale_mat(&u_alpha(), std::f64::consts::FRAC_PI_2))
            .unwrap();
        let r = exp_skew(&s);
        let expected = ExactRotation::s_alpha_dot().to_rotation();
        assert!(r.max_abs_diff(&expected) < 1e-12);
        // cross-check against the truncated power series
        let series = matrix_exp_series(&s.matrix(), 26);
        assert!(mat_max_abs_diff(r.matrix(), &series) < 1e-12);
    }

    fn scale_mat(m: &Mat3, t: f64) -> Mat3 {
        let mut out = *m;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v *= t;
            }
        }
        out
    }

    #[test]
    fn exp_matches_series_on_random_skews() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..200 {
            let v = [next() * 2.0, next() * 2.0, next() * 2.0];
            let s = SkewMatrix::from_vee(v);
            if s.theta() > std::f64::consts::PI - 0.01 {
                continue;
            }
            let r = exp_skew(&s);
            let series = matrix_exp_series(&s.matrix(), 26);
            assert!(mat_max_abs_diff(r.matrix(), &series) < 1e-10);
            assert!(r.is_valid(1e-12));
        }
    }

    #[test]
    fn log_of_s_beta_dot_matches_fixture() {
        let r = ExactRotation::s_beta_dot().to_rotation();
        let x = log_rotation(&r).unwrap();
        let expected =
            SkewMatrix::from_matrix(scale_mat(&u_beta(), std::f64::consts::FRAC_PI_2)).unwrap();
        assert!(x.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn log_of_identity_is_zero() {
        let x = log_rotation(&Rotation::identity()).unwrap();
        assert_eq!(x.vee(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn log_refuses_angle_pi() {
        let r = Rotation::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]).unwrap();
        assert_eq!(log_rotation(&r), Err(Error::AnglePiLogarithm));
    }

    #[test]
    fn log_near_zero_angle_is_stable() {
        let s = SkewMatrix::from_vee([1e-6, -2e-6, 0.5e-6]);
        let r = exp_skew(&s);
        let back = log_rotation(&r).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn covering_map_fixtures() {
        let tau_k = ExactQuat::tau_k();
        let b = covering_map_exact(&tau_k).unwrap();
        assert_eq!(b, ExactRotation::s_alpha_dot());
        let tau_i = ExactQuat::tau_i();
        assert_eq!(covering_map_exact(&tau_i).unwrap(), ExactRotation::s_beta_dot());
        let b1 = covering_map(&Quat::one()).unwrap();
        assert!(b1.max_abs_diff(&Rotation::identity()) < 1e-15);
        let bi = covering_map(&Quat::i()).unwrap();
        let diag = Rotation::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]).unwrap();
        assert!(bi.max_abs_diff(&diag) < 1e-15);
    }

    #[test]
    fn covering_map_kills_sign() {
        let q = Quat::new(0.5, 0.5, -0.5, 0.5);
        let a = covering_map(&q).unwrap();
        let b = covering_map(&(-q)).unwrap();
        assert!(a.max_abs_diff(&b) == 0.0);
    }

    #[test]
    fn covering_map_rejects_non_unit() {
        assert!(covering_map(&Quat::new(1.0, 1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn differential_matches_displayed_matrix() {
        let d = differential_b([1.5, -2.0, 0.25]);
        let (x, y, z) = (1.5, -2.0, 0.25);
        let expected = [
            [0.0, 2.0 * z, -2.0 * y],
            [-2.0 * z, 0.0, 2.0 * x],
            [2.0 * y, -2.0 * x, 0.0],
        ];
        assert!(mat_max_abs_diff(&d.matrix(), &expected) == 0.0);
    }

    #[test]
    fn g8_makes_differential_an_isometry() {
        let u = [0.3, -1.2, 0.77];
        let d = differential_b(u);
        let norm2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        assert!((g8_metric(&d, &d) - norm2).abs() < 1e-14);
    }

    #[test]
    fn arc_length_of_log_s_beta_is_pi_quarter() {
        let x = log_rotation(&ExactRotation::s_beta_dot().to_rotation()).unwrap();
        assert!((arc_length(&x, 1.0) - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
    }

    #[test]
    fn hat_identities() {
        let v = [0.4, -0.9, 1.7];
        let s = SkewMatrix::from_vee(v);
        let m = s.matrix();
        // antisymmetry
        assert!(mat_max_abs_diff(&m, &neg(&mat_transpose(&m))) == 0.0);
        // Frobenius norm
        let fro: f64 = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        assert!((fro - s.frobenius_norm()).abs() < 1e-14);
        // hat(v)^3 = -|v|^2 hat(v)
        let m3 = mat_mul(&mat_mul(&m, &m), &m);
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        assert!(mat_max_abs_diff(&m3, &scale_mat(&m, -n2)) < 1e-13);
    }

    #[test]
    fn so3_distance_agrees_with_coordinate_formula() {
        let q = Quat::new(0.2, 0.4, -0.7, 0.5).normalized().unwrap();
        let b = covering_map(&q).unwrap();
        let d = so3_distance(&Rotation::identity(), &b);
        let expected = q.w.acos().min((-q.w).acos());
        assert!((d - expected).abs() < 1e-12);
    }

    #[test]
    fn quaternion_lift_inverts_covering() {
        let samples = [
            Quat::new(0.9, 0.1, -0.3, 0.28),
            Quat::new(-0.01, 0.99, 0.1, 0.05),
            Quat::new(0.0, 0.0, 0.8, -0.6),
            Quat::new(0.01, -0.02, 0.03, 0.999),
        ];
        for q in samples {
            let q = q.normalized().unwrap();
            let r = covering_map(&q).unwrap();
            let lift = quaternion_from_rotation(&r);
            let back = covering_map(&lift).unwrap();
            assert!(back.max_abs_diff(&r) < 1e-13);
            assert!(lift.max_abs_diff(&q).min(lift.max_abs_diff(&(-q))) < 1e-12);
        }
    }

    #[test]
    fn exact_covering_is_a_homomorphism_on_sample_pairs() {
        let oct = octahedral();
        let es = oct.elements();
        for p in es.iter().step_by(7) {
            for q in es.iter().step_by(5) {
                let lhs = covering_map_exact(&p.mul(q)).unwrap();
                let rhs = covering_map_exact(p).unwrap().mul(&covering_map_exact(q).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn q8_maps_onto_torus_each_hit_twice() {
        let q8 = crate::quat::q8();
        let torus = ExactRotation::torus_elements();
        let mut hits = [0usize; 4];
        for e in q8.elements() {
            let b = covering_map_exact(e).unwrap();
            let pos = torus.iter().position(|t| *t == b).expect("image in torus");
            hits[pos] += 1;
        }
        assert_eq!(hits, [2, 2, 2, 2]);
    }

    #[test]
    fn rotation_serializes_row_major() {
        let r = ExactRotation::s_alpha_dot().to_rotation();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "[0.0,-1.0,0.0,1.0,0.0,0.0,0.0,0.0,1.0]");
    }
}
