//! Quaternions, the 3-sphere with its round metric, and the finite
//! subgroups of unit quaternions used throughout.
//!
//! Two flavors share the same conventions: [`ExactQuat`] over `Q(sqrt 2)`
//! for group theory, [`Quat`] over `f64` for geometry. Multiplication
//! follows `ijk = i^2 = j^2 = k^2 = -1`, componentwise order `w + xi + yj + zk`.

mod group;

pub use group::{q8, octahedral, FiniteSubgroup, OctahedralGroup};

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::qsqrt2::QSqrt2;
use crate::Result;

/// Tolerance on `|N(q) - 1|` for operations that require a unit quaternion.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// A quaternion with `f64` components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quat { w, x, y, z }
    }

    pub fn one() -> Self {
        Quat::new(1.0, 0.0, 0.0, 0.0)
    }

    pub fn i() -> Self {
        Quat::new(0.0, 1.0, 0.0, 0.0)
    }

    pub fn j() -> Self {
        Quat::new(0.0, 0.0, 1.0, 0.0)
    }

    pub fn k() -> Self {
        Quat::new(0.0, 0.0, 0.0, 1.0)
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    /// The algebra norm `N(q) = w^2 + x^2 + y^2 + z^2` (squared length).
    pub fn norm(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn abs(&self) -> f64 {
        self.norm().sqrt()
    }

    pub fn dot(&self, o: &Quat) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn scale(&self, t: f64) -> Self {
        Quat::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }

    pub fn inverse(&self) -> Result<Quat> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn normalized(&self) -> Result<Quat> {
        let a = self.abs();
        if a == 0.0 || !a.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(1.0 / a))
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn check_unit(&self) -> Result<()> {
        if self.is_unit(UNIT_NORM_TOL) {
            Ok(())
        } else {
            Err(Error::NonUnitQuaternion { norm: self.norm() })
        }
    }

    pub fn max_abs_diff(&self, o: &Quat) -> f64 {
        (self.w - o.w)
            .abs()
            .max((self.x - o.x).abs())
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quat::new(a[0], a[1], a[2], a[3])
    }
}

impl std::ops::Mul for Quat {
    type Output = Quat;
    fn mul(self, r: Quat) -> Quat {
        Quat::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl std::ops::Add for Quat {
    type Output = Quat;
    fn add(self, r: Quat) -> Quat {
        Quat::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl std::ops::Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        self.scale(-1.0)
    }
}

/// A quaternion with coordinates in `Q(sqrt 2)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExactQuat {
    pub w: QSqrt2,
    pub x: QSqrt2,
    pub y: QSqrt2,
    pub z: QSqrt2,
}

impl ExactQuat {
    pub fn new(w: QSqrt2, x: QSqrt2, y: QSqrt2, z: QSqrt2) -> Self {
        ExactQuat { w, x, y, z }
    }

    pub fn one() -> Self {
        Self::basis(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::basis(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::basis(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::basis(0, 0, 0, 1)
    }

    fn basis(w: i64, x: i64, y: i64, z: i64) -> Self {
        ExactQuat::new(
            QSqrt2::from_int(w),
            QSqrt2::from_int(x),
            QSqrt2::from_int(y),
            QSqrt2::from_int(z),
        )
    }

    /// `tau_i = (1 + i)/sqrt2`, and cyclically for `j`, `k`.
    pub fn tau_i() -> Self {
        Self::tau(1)
    }

    pub fn tau_j() -> Self {
        Self::tau(2)
    }

    pub fn tau_k() -> Self {
        Self::tau(3)
    }

    fn tau(axis: usize) -> Self {
        let h = QSqrt2::inv_sqrt2();
        let mut c = [h.clone(), QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()];
        c[axis] = h;
        ExactQuat::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    /// `omega_0 = (1 + i + j + k)/2`; `omega_u` negates the `u` coordinate.
    pub fn omega_0() -> Self {
        Self::omega([1, 1, 1])
    }

    pub fn omega_i() -> Self {
        Self::omega([-1, 1, 1])
    }

    pub fn omega_j() -> Self {
        Self::omega([1, -1, 1])
    }

    pub fn omega_k() -> Self {
        Self::omega([1, 1, -1])
    }

    fn omega(signs: [i64; 3]) -> Self {
        ExactQuat::new(
            QSqrt2::rational(1, 2),
            QSqrt2::rational(signs[0], 2),
            QSqrt2::rational(signs[1], 2),
            QSqrt2::rational(signs[2], 2),
        )
    }

    pub fn conj(&self) -> Self {
        ExactQuat::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    pub fn norm(&self) -> QSqrt2 {
        &(&(&self.w * &self.w) + &(&self.x * &self.x))
            + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == QSqrt2::one()
    }

    pub fn mul(&self, r: &ExactQuat) -> ExactQuat {
        let (w1, x1, y1, z1) = (&self.w, &self.x, &self.y, &self.z);
        let (w2, x2, y2, z2) = (&r.w, &r.x, &r.y, &r.z);
        ExactQuat::new(
            &(&(w1 * w2) - &(x1 * x2)) - &(&(y1 * y2) + &(z1 * z2)),
            &(&(w1 * x2) + &(x1 * w2)) + &(&(y1 * z2) - &(z1 * y2)),
            &(&(w1 * y2) - &(x1 * z2)) + &(&(y1 * w2) + &(z1 * x2)),
            &(&(w1 * z2) + &(x1 * y2)) + &(&(z1 * w2) - &(y1 * x2)),
        )
    }

    pub fn inverse(&self) -> Result<ExactQuat> {
        let n = self.norm();
        let r = n.recip().ok_or(Error::ZeroQuaternion)?;
        let c = self.conj();
        Ok(ExactQuat::new(&c.w * &r, &c.x * &r, &c.y * &r, &c.z * &r))
    }

    pub fn neg(&self) -> ExactQuat {
        ExactQuat::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }

    pub fn to_quat(&self) -> Quat {
        Quat::new(
            self.w.to_f64(),
            self.x.to_f64(),
            self.y.to_f64(),
            self.z.to_f64(),
        )
    }
}

impl fmt::Debug for ExactQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i + ({})j + ({})k", self.w, self.x, self.y, self.z)
    }
}

/// Spherical coordinates on the 3-sphere around `1`:
/// `q = (cos w, sin w cos p, sin w sin p cos t, sin w sin p sin t)`
/// with `omega, phi` in `[0, pi]` and `theta` in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalCoords {
    pub omega: f64,
    pub phi: f64,
    pub theta: f64,
}

/// Converts a unit quaternion to spherical coordinates.
///
/// Degenerate loci take canonical values: `phi = theta = 0` when
/// `sin omega = 0`, and `theta = 0` when `sin phi = 0`.
pub fn to_spherical(q: &Quat) -> Result<SphericalCoords> {
    q.check_unit()?;
    let s_omega = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    let omega = s_omega.atan2(q.w);
    if s_omega == 0.0 {
        return Ok(SphericalCoords {
            omega,
            phi: 0.0,
            theta: 0.0,
        });
    }
    let s_phi = (q.y * q.y + q.z * q.z).sqrt();
    let phi = s_phi.atan2(q.x);
    if s_phi == 0.0 {
        return Ok(SphericalCoords {
            omega,
            phi,
            theta: 0.0,
        });
    }
    let mut theta = q.z.atan2(q.y);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    if theta >= 2.0 * PI {
        theta = 0.0;
    }
    Ok(SphericalCoords { omega, phi, theta })
}

pub fn from_spherical(c: &SphericalCoords) -> Quat {
    let (sw, cw) = c.omega.sin_cos();
    let (sp, cp) = c.phi.sin_cos();
    let (st, ct) = c.theta.sin_cos();
    Quat::new(cw, sw * cp, sw * sp * ct, sw * sp * st)
}

/// Geodesic distance on the round 3-sphere.
pub fn sphere_distance(p: &Quat, q: &Quat) -> f64 {
    p.dot(q).clamp(-1.0, 1.0).acos()
}

/// The minimal geodesic from `1` to `q`, evaluated at parameter `t`.
///
/// Runs with unit speed `omega` in `t`, so the arc over `[0, 1]` has length
/// `omega = d(1, q)`. Requires `q != -1` for uniqueness.
pub fn round_geodesic(q: &Quat, t: f64) -> Result<Quat> {
    q.check_unit()?;
    let s_omega = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    let omega = s_omega.atan2(q.w);
    if omega >= PI - UNIT_NORM_TOL {
        return Err(Error::AntipodalGeodesic);
    }
    if s_omega == 0.0 {
        return Ok(Quat::one());
    }
    let axis = Quat::new(0.0, q.x / s_omega, q.y / s_omega, q.z / s_omega);
    let (s, c) = (t * omega).sin_cos();
    Ok(Quat::new(c, s * axis.x, s * axis.y, s * axis.z))
}
