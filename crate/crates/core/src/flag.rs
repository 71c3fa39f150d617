//! The real flag manifold `SO3(R)/T(R)`: cosets with exact and floating
//! equality, the Weyl group acting on the right by lifted representatives,
//! the identification with the quaternionic space form, geodesics through
//! the basepoint, and the quotient distance computed two independent ways.

use num::complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::quat::{to_spherical, Quat};
use crate::rot::{
    covering_map, covering_map_exact, exp_skew, so3_distance, ExactRotation, Rotation, SkewMatrix,
    ROTATION_TOL,
};
use crate::weyl::{Gen, WeylElement};
use crate::{ExactQuat, Result};

/// Lifted representative of a Weyl element in `SO3(R)`, the product of
/// `s_alpha_dot` / `s_beta_dot` along a reduced word.
pub fn lifted_representative(w: WeylElement) -> ExactRotation {
    let mut acc = ExactRotation::identity();
    for g in w.word() {
        let m = match g {
            Gen::Alpha => ExactRotation::s_alpha_dot(),
            Gen::Beta => ExactRotation::s_beta_dot(),
        };
        acc = acc.mul(&m);
    }
    acc
}

/// A point of the flag manifold: a rotation modulo right multiplication
/// by the torus `T(R)`.
#[derive(Debug, Clone, Copy)]
pub struct FlagPoint {
    rep: Rotation,
}

impl FlagPoint {
    pub fn new(rep: Rotation) -> Result<Self> {
        if !rep.is_valid(ROTATION_TOL) {
            return Err(Error::InvalidRotation);
        }
        Ok(FlagPoint { rep })
    }

    pub fn basepoint() -> Self {
        FlagPoint {
            rep: Rotation::identity(),
        }
    }

    pub fn representative(&self) -> &Rotation {
        &self.rep
    }

    /// The canonical coset representative: the torus translate whose
    /// row-major reading is lexicographically largest.
    pub fn canonical(&self) -> Rotation {
        let mut best: Option<Rotation> = None;
        for t in ExactRotation::torus_elements() {
            let cand = self.rep.mul(&t.to_rotation());
            let better = match &best {
                None => true,
                Some(b) => lex_gt(&cand.row_major(), &b.row_major()),
            };
            if better {
                best = Some(cand);
            }
        }
        best.expect("torus has four elements")
    }

    /// Coset equality: `R1^t R2` lies in `T(R)` up to tolerance.
    pub fn flag_eq(&self, other: &FlagPoint) -> bool {
        let m = self.rep.transpose().mul(&other.rep);
        let e = m.matrix();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    if (e[i][j].abs() - 1.0).abs() > ROTATION_TOL {
                        return false;
                    }
                } else if e[i][j].abs() > ROTATION_TOL {
                    return false;
                }
            }
        }
        (m.det() - 1.0).abs() <= ROTATION_TOL
    }

    /// Right action of the Weyl group, through the lifted representative.
    pub fn translate(&self, w: WeylElement) -> FlagPoint {
        FlagPoint {
            rep: self.rep.mul(&lifted_representative(w).to_rotation()),
        }
    }
}

impl Serialize for FlagPoint {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.canonical().serialize(serializer)
    }
}

fn lex_gt(a: &[f64; 9], b: &[f64; 9]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x > y {
            return true;
        }
        if x < y {
            return false;
        }
    }
    false
}

/// Exact flavor of a flag point, for group-level identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactFlagPoint {
    rep: ExactRotation,
}

/// Serializes as the canonical representative, rows of exact quadruples.
impl Serialize for ExactFlagPoint {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.canonical().serialize(serializer)
    }
}

impl ExactFlagPoint {
    pub fn new(rep: ExactRotation) -> Self {
        ExactFlagPoint { rep }
    }

    pub fn basepoint() -> Self {
        ExactFlagPoint {
            rep: ExactRotation::identity(),
        }
    }

    pub fn representative(&self) -> &ExactRotation {
        &self.rep
    }

    pub fn flag_eq(&self, other: &ExactFlagPoint) -> bool {
        self.rep.transpose().mul(&other.rep).is_torus_element()
    }

    pub fn translate(&self, w: WeylElement) -> ExactFlagPoint {
        ExactFlagPoint {
            rep: self.rep.mul(&lifted_representative(w)),
        }
    }

    /// Canonical representative under the numeric lexicographic order.
    pub fn canonical(&self) -> ExactRotation {
        let mut best: Option<ExactRotation> = None;
        for t in ExactRotation::torus_elements() {
            let cand = self.rep.mul(&t);
            let better = match &best {
                None => true,
                Some(b) => exact_lex_gt(&cand, b),
            };
            if better {
                best = Some(cand);
            }
        }
        best.expect("torus has four elements")
    }

    pub fn to_flag_point(&self) -> FlagPoint {
        FlagPoint {
            rep: self.rep.to_rotation(),
        }
    }
}

fn exact_lex_gt(a: &ExactRotation, b: &ExactRotation) -> bool {
    for i in 0..3 {
        for j in 0..3 {
            match a.entry(i, j).numeric_cmp(b.entry(i, j)) {
                std::cmp::Ordering::Greater => return true,
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    false
}

/// The identification of the quaternionic space form with the flag
/// manifold, realized as the covering map followed by the coset
/// projection.
pub fn phi(q: &Quat) -> Result<FlagPoint> {
    Ok(FlagPoint {
        rep: covering_map(q)?,
    })
}

pub fn phi_exact(q: &ExactQuat) -> Result<ExactFlagPoint> {
    Ok(ExactFlagPoint {
        rep: covering_map_exact(q)?,
    })
}

/// Quotient distance, algorithm A: minimum over the four torus translates
/// of the `g8` distance on `SO3(R)`.
pub fn flag_distance(f1: &FlagPoint, f2: &FlagPoint) -> f64 {
    ExactRotation::torus_elements()
        .iter()
        .map(|t| so3_distance(f1.representative(), &f2.representative().mul(&t.to_rotation())))
        .fold(f64::INFINITY, f64::min)
}

/// Quotient distance, algorithm B: the distance from the basepoint to the
/// image of `q = a + bi + cj + dk` is the minimum of the eight values
/// `arccos(+-a), ..., arccos(+-d)`. A general pair reduces to this by
/// left translation (an isometry) and lifting the relative rotation back
/// to the 3-sphere.
pub fn flag_distance_coords(f1: &FlagPoint, f2: &FlagPoint) -> f64 {
    let rel = f1.representative().transpose().mul(f2.representative());
    let q = crate::rot::quaternion_from_rotation(&rel);
    basepoint_coordinate_distance(&q)
}

/// `min over the coordinates x of arccos(+-x)` for a unit quaternion.
pub fn basepoint_coordinate_distance(q: &Quat) -> f64 {
    let mut best = f64::INFINITY;
    for c in q.to_array() {
        let c = c.clamp(-1.0, 1.0);
        best = best.min(c.acos()).min((-c).acos());
    }
    best
}

/// The generator `X_q` of the one-parameter geodesic through the
/// basepoint toward the image of `q`, in spherical coordinates:
///
/// `X_q = 2w [[0, -sin p sin t, sin p cos t],
///            [sin p sin t, 0, -cos p],
///            [-sin p cos t, cos p, 0]]`.
///
/// Requires `0 < omega < pi/2`, the regime with a unique logarithm.
pub fn x_q(q: &Quat) -> Result<SkewMatrix> {
    let c = to_spherical(q)?;
    if !(c.omega > 0.0 && c.omega < std::f64::consts::FRAC_PI_2) {
        return Err(Error::OutsideGeodesicRegime { omega: c.omega });
    }
    let (sp, cp) = c.phi.sin_cos();
    let (st, ct) = c.theta.sin_cos();
    let w2 = 2.0 * c.omega;
    SkewMatrix::from_matrix([
        [0.0, -w2 * sp * st, w2 * sp * ct],
        [w2 * sp * st, 0.0, -w2 * cp],
        [-w2 * sp * ct, w2 * cp, 0.0],
    ])
}

/// The geodesic `t -> exp(t X_q) T(R)`; at `t = 1` it reaches `phi(q)`.
pub fn flag_geodesic(q: &Quat, t: f64) -> Result<FlagPoint> {
    let x = x_q(q)?;
    Ok(FlagPoint {
        rep: exp_skew(&x.scale(t)),
    })
}

/// Distance on complex projective space:
/// `arccos(|<p, q>| / (|p| |q|))` for nonzero representative vectors.
pub fn fubini_study_distance(p: &[Complex64], q: &[Complex64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::ShapeMismatch(format!(
            "projective points of dimensions {} and {}",
            p.len(),
            q.len()
        )));
    }
    let np = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nq = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let inner: Complex64 = p.iter().zip(q.iter()).map(|(a, b)| a * b.conj()).sum();
    Ok((inner.norm() / (np * nq)).clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::octahedral;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn torus_is_a_klein_four_group() {
        let t = ExactRotation::torus_elements();
        for a in &t {
            assert_eq!(a.mul(a), ExactRotation::identity());
            for b in &t {
                let p = a.mul(b);
                assert!(t.contains(&p));
                assert_eq!(p, b.mul(a));
            }
        }
    }

    #[test]
    fn lifted_representatives_normalize_the_torus() {
        for w in WeylElement::all() {
            let r = lifted_representative(w);
            for t in ExactRotation::torus_elements() {
                let conj = r.mul(&t).mul(&r.transpose());
                assert!(conj.is_torus_element());
            }
        }
    }

    #[test]
    fn flag_eq_on_torus_translates() {
        let s_alpha = FlagPoint::new(ExactRotation::s_alpha_dot().to_rotation()).unwrap();
        let translated = FlagPoint::new(
            ExactRotation::s_alpha_dot()
                .mul(&ExactRotation::torus_elements()[1])
                .to_rotation(),
        )
        .unwrap();
        assert!(s_alpha.flag_eq(&translated));
        assert!(!s_alpha.flag_eq(&FlagPoint::basepoint()));
    }

    #[test]
    fn phi_sends_q8_to_the_basepoint() {
        let f = phi_exact(&ExactQuat::i()).unwrap();
        assert!(f.flag_eq(&ExactFlagPoint::basepoint()));
        let g = phi(&Quat::i()).unwrap();
        assert!(g.flag_eq(&FlagPoint::basepoint()));
    }

    #[test]
    fn phi_of_tau_k_is_s_alpha_coset() {
        let f = phi_exact(&ExactQuat::tau_k()).unwrap();
        assert!(f.flag_eq(&ExactFlagPoint::new(ExactRotation::s_alpha_dot())));
    }

    #[test]
    fn phi_equivariance_on_the_whole_group() {
        let oct = octahedral();
        for g in oct.elements() {
            let lhs = phi_exact(g).unwrap();
            let w = oct.coset_label(g).unwrap();
            let rhs = ExactFlagPoint::basepoint().translate(w);
            assert!(lhs.flag_eq(&rhs), "{:?} vs {}", g, w);
        }
    }

    #[test]
    fn canonical_is_idempotent_and_coset_invariant() {
        let q = Quat::new(0.3, -0.5, 0.7, 0.4).normalized().unwrap();
        let f = phi(&q).unwrap();
        let c = f.canonical();
        let again = FlagPoint::new(c).unwrap().canonical();
        assert!(c.max_abs_diff(&again) == 0.0);
        for t in ExactRotation::torus_elements() {
            let g = FlagPoint::new(f.representative().mul(&t.to_rotation())).unwrap();
            assert!(c.max_abs_diff(&g.canonical()) < 1e-15);
        }
    }

    #[test]
    fn distance_examples() {
        let tau_i_inv = ExactQuat::tau_i().inverse().unwrap().to_quat();
        let d = flag_distance(&FlagPoint::basepoint(), &phi(&tau_i_inv).unwrap());
        assert!((d - FRAC_PI_4).abs() < 1e-12);

        let omega_0 = ExactQuat::omega_0().to_quat();
        let d = flag_distance(&FlagPoint::basepoint(), &phi(&omega_0).unwrap());
        assert!((d - FRAC_PI_3).abs() < 1e-12);

        let f = phi(&Quat::new(0.1, 0.2, 0.3, 0.4).normalized().unwrap()).unwrap();
        assert!(flag_distance(&f, &f).abs() < 1e-12);
    }

    #[test]
    fn the_two_distance_algorithms_agree() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..500 {
            let q = Quat::new(next(), next(), next(), next());
            if q.abs() < 0.1 {
                continue;
            }
            let q = q.normalized().unwrap();
            let f = phi(&q).unwrap();
            let a = flag_distance(&FlagPoint::basepoint(), &f);
            let b = basepoint_coordinate_distance(&q);
            assert!((a - b).abs() < 1e-12, "q = {:?}", q);
            assert!((0.0..=FRAC_PI_3 + 1e-12).contains(&a));
        }
    }

    #[test]
    fn weyl_acts_by_isometries_and_freely() {
        let q1 = Quat::new(0.8, 0.1, -0.5, 0.3).normalized().unwrap();
        let q2 = Quat::new(-0.2, 0.9, 0.1, 0.4).normalized().unwrap();
        let f1 = phi(&q1).unwrap();
        let f2 = phi(&q2).unwrap();
        let d = flag_distance(&f1, &f2);
        for w in WeylElement::all() {
            let dw = flag_distance(&f1.translate(w), &f2.translate(w));
            assert!((d - dw).abs() < 1e-12);
            if !w.is_identity() {
                assert!(!f1.translate(w).flag_eq(&f1));
            }
        }
    }

    #[test]
    fn x_q_of_tau_k_is_log_of_s_alpha_dot() {
        let x = x_q(&ExactQuat::tau_k().to_quat()).unwrap();
        let expected = SkewMatrix::from_matrix([
            [0.0, -FRAC_PI_2, 0.0],
            [FRAC_PI_2, 0.0, 0.0],
            [0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(x.max_abs_diff(&expected) < 1e-12);
        let via_log =
            crate::rot::log_rotation(&covering_map(&ExactQuat::tau_k().to_quat()).unwrap())
                .unwrap();
        assert!(x.max_abs_diff(&via_log) < 1e-12);
    }

    #[test]
    fn flag_geodesic_reaches_phi_at_one() {
        let q = Quat::new(0.9, 0.25, -0.3, 0.1).normalized().unwrap();
        let end = flag_geodesic(&q, 1.0).unwrap();
        assert!(end.flag_eq(&phi(&q).unwrap()));
        let len = crate::rot::arc_length(&x_q(&q).unwrap(), 0.37);
        let omega = q.w.acos();
        assert!((len - 0.37 * omega).abs() < 1e-13);
    }

    #[test]
    fn flag_geodesic_regime_errors() {
        assert!(matches!(
            x_q(&Quat::one()),
            Err(Error::OutsideGeodesicRegime { .. })
        ));
        // omega = 2pi/3 > pi/2
        let q = ExactQuat::omega_0().to_quat() * ExactQuat::omega_0().to_quat();
        assert!(matches!(
            x_q(&q),
            Err(Error::OutsideGeodesicRegime { .. })
        ));
    }

    #[test]
    fn fubini_study_basics() {
        let e0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e1 = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)];
        assert!((fubini_study_distance(&e0, &e1).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!(fubini_study_distance(&e0, &e0).unwrap().abs() < 1e-15);
        let scaled = [Complex64::new(0.0, -2.5), Complex64::new(0.0, 0.0)];
        assert!(fubini_study_distance(&e0, &scaled).unwrap().abs() < 1e-7);
        assert!(matches!(
            fubini_study_distance(&[Complex64::new(0.0, 0.0)], &[Complex64::new(1.0, 0.0)]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn fubini_study_agrees_with_the_two_point_quotient() {
        // the circle modulo the antipode: brute-force minimum over {q, -q}
        for k in 0..60 {
            let a = 0.1 + 0.05 * k as f64;
            let b = 2.3 - 0.07 * k as f64;
            let p = [Complex64::new(a.cos(), 0.0), Complex64::new(a.sin(), 0.0)];
            let q = [Complex64::new(b.cos(), 0.0), Complex64::new(b.sin(), 0.0)];
            let dot = (a - b).cos();
            let brute = dot.clamp(-1.0, 1.0).acos().min((-dot).clamp(-1.0, 1.0).acos());
            let fs = fubini_study_distance(&p, &q).unwrap();
            assert!((fs - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn weyl_action_is_well_defined_on_cosets() {
        let q = Quat::new(0.37, -0.61, 0.22, 0.67).normalized().unwrap();
        let f = phi(&q).unwrap();
        for w in WeylElement::all() {
            let a = f.translate(w);
            for t in ExactRotation::torus_elements() {
                let g = FlagPoint::new(f.representative().mul(&t.to_rotation())).unwrap();
                assert!(g.translate(w).flag_eq(&a));
            }
        }
    }

    #[test]
    fn exact_equivariance_under_right_group_translation() {
        let oct = octahedral();
        let q = ExactQuat::omega_j();
        for g in oct.elements().iter().step_by(5) {
            let lhs = phi_exact(&q.mul(g)).unwrap();
            let rhs = phi_exact(&q).unwrap().translate(oct.coset_label(g).unwrap());
            assert!(lhs.flag_eq(&rhs));
        }
    }

    #[test]
    fn pi_over_four_printed_value() {
        // the CLI-facing value for the inverse of tau_i
        let q = Quat::new(FRAC_PI_4.cos(), -FRAC_PI_4.sin(), 0.0, 0.0);
        let d = flag_distance(&FlagPoint::basepoint(), &phi(&q).unwrap());
        assert!((d - PI / 4.0).abs() < 1e-12);
    }
}
