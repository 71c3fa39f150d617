//! Property-based invariants across the library.

use proptest::prelude::*;

use quatflag::cells::JoinSpec;
use quatflag::flag::{basepoint_coordinate_distance, flag_distance, phi, FlagPoint};
use quatflag::quat::{
    from_spherical, round_geodesic, sphere_distance, to_spherical, ExactQuat, Quat,
};
use quatflag::rot::{covering_map, exp_skew, log_rotation, ExactRotation, SkewMatrix};
use quatflag::weyl::WeylElement;

fn unit_quat() -> impl Strategy<Value = Quat> {
    (
        -1.0f64..1.0,
        -1.0f64..1.0,
        -1.0f64..1.0,
        -1.0f64..1.0,
    )
        .prop_filter_map("too close to zero", |(w, x, y, z)| {
            let q = Quat::new(w, x, y, z);
            (q.abs() > 0.1).then(|| q.normalized().unwrap())
        })
}

fn skew_below_pi() -> impl Strategy<Value = SkewMatrix> {
    (
        -1.0f64..1.0,
        -1.0f64..1.0,
        -1.0f64..1.0,
        0.01f64..(std::f64::consts::PI - 0.02),
    )
        .prop_filter_map("zero direction", |(x, y, z, theta)| {
            let n = (x * x + y * y + z * z).sqrt();
            (n > 0.1).then(|| SkewMatrix::from_vee([x / n * theta, y / n * theta, z / n * theta]))
        })
}

proptest! {
    #[test]
    fn norm_is_multiplicative(p in unit_quat(), q in unit_quat()) {
        let prod = p * q;
        prop_assert!((prod.norm() - p.norm() * q.norm()).abs() <= 1e-14);
    }

    #[test]
    fn conjugate_times_self_is_the_norm(q in unit_quat()) {
        let n = q.conj() * q;
        prop_assert!((n.w - q.norm()).abs() <= 1e-14);
        prop_assert!(n.x.abs().max(n.y.abs()).max(n.z.abs()) <= 1e-14);
    }

    #[test]
    fn spherical_round_trip(q in unit_quat()) {
        let c = to_spherical(&q).unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&c.omega));
        prop_assert!((0.0..=std::f64::consts::PI).contains(&c.phi));
        prop_assert!((0.0..std::f64::consts::TAU).contains(&c.theta));
        let back = from_spherical(&c);
        prop_assert!(back.max_abs_diff(&q) <= 1e-12);
    }

    #[test]
    fn sphere_triangle_inequality(a in unit_quat(), b in unit_quat(), c in unit_quat()) {
        let lhs = sphere_distance(&a, &b);
        prop_assert!(lhs <= sphere_distance(&a, &c) + sphere_distance(&c, &b) + 1e-12);
        prop_assert!((lhs - sphere_distance(&b, &a)).abs() <= 1e-15);
    }

    #[test]
    fn geodesic_hits_its_endpoint(q in unit_quat(), t in 0.0f64..1.0) {
        prop_assume!(q.w.clamp(-1.0, 1.0).acos() < std::f64::consts::PI - 0.05);
        let mid = round_geodesic(&q, t).unwrap();
        prop_assert!(mid.is_unit(1e-12));
        let total = sphere_distance(&Quat::one(), &q);
        prop_assert!((sphere_distance(&Quat::one(), &mid) - t * total).abs() <= 1e-12);
    }

    #[test]
    fn exp_log_round_trip(s in skew_below_pi()) {
        let r = exp_skew(&s);
        prop_assert!(r.is_valid(1e-12));
        let back = log_rotation(&r).unwrap();
        prop_assert!(back.max_abs_diff(&s) <= 1e-9);
    }

    #[test]
    fn covering_is_a_homomorphism(p in unit_quat(), q in unit_quat()) {
        let lhs = covering_map(&(p * q)).unwrap();
        let rhs = covering_map(&p).unwrap().mul(&covering_map(&q).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        let neg = covering_map(&(-p)).unwrap();
        prop_assert!(neg.max_abs_diff(&covering_map(&p).unwrap()) == 0.0);
    }

    #[test]
    fn distance_algorithms_agree(q in unit_quat()) {
        let f = phi(&q).unwrap();
        let a = flag_distance(&FlagPoint::basepoint(), &f);
        let b = basepoint_coordinate_distance(&q);
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_3 + 1e-12).contains(&a));
    }

    #[test]
    fn canonical_representative_is_coset_invariant(q in unit_quat()) {
        let f = phi(&q).unwrap();
        let c = f.canonical();
        for t in ExactRotation::torus_elements() {
            let g = FlagPoint::new(f.representative().mul(&t.to_rotation())).unwrap();
            prop_assert!(g.canonical().max_abs_diff(&c) <= 1e-15);
        }
        let again = FlagPoint::new(c).unwrap().canonical();
        prop_assert!(again.max_abs_diff(&c) == 0.0);
    }

    #[test]
    fn weyl_translation_preserves_distances(p in unit_quat(), q in unit_quat()) {
        let f1 = phi(&p).unwrap();
        let f2 = phi(&q).unwrap();
        let d = flag_distance(&f1, &f2);
        for w in WeylElement::all() {
            prop_assert!((flag_distance(&f1.translate(w), &f2.translate(w)) - d).abs() <= 1e-12);
        }
    }

    #[test]
    fn join_membership_of_interior_mixes(
        a in 0.05f64..1.0,
        b in 0.05f64..1.0,
        c in 0.05f64..1.0,
        d in 0.05f64..1.0,
    ) {
        let spec = JoinSpec::from_exact(
            &[
                ExactQuat::one(),
                ExactQuat::tau_i().inverse().unwrap(),
                ExactQuat::tau_j().inverse().unwrap(),
                ExactQuat::omega_0().inverse().unwrap(),
            ],
            true,
        )
        .unwrap();
        let total = a + b + c + d;
        let weights = [a / total, b / total, c / total, d / total];
        let mut mix = [0.0; 4];
        for (w, v) in weights.iter().zip(spec.vertices()) {
            for k in 0..4 {
                mix[k] += w * v[k];
            }
        }
        let p = quatflag::cells::project_sphere(mix).unwrap();
        prop_assert!(spec.contains(&p));
        // membership solves recover the mixing weights
        let bary = spec.barycentric(&p.to_array());
        for (l, w) in bary.lambda.iter().zip(weights) {
            prop_assert!((l - w).abs() <= 1e-10);
        }
    }

    #[test]
    fn random_points_miss_thin_joins(q in unit_quat()) {
        let arc = JoinSpec::from_exact(&[ExactQuat::one(), ExactQuat::tau_i()], false).unwrap();
        let wall = JoinSpec::from_exact(
            &[
                ExactQuat::one(),
                ExactQuat::tau_j().inverse().unwrap(),
                ExactQuat::omega_0().inverse().unwrap(),
            ],
            false,
        )
        .unwrap();
        prop_assert!(!arc.contains(&q));
        prop_assert!(!wall.contains(&q));
    }
}
