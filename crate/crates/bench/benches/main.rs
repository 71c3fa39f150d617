use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quatflag::cells::{covering_and_partition_check, sphere_cells};
use quatflag::flag::{flag_distance, flag_distance_coords, phi, FlagPoint};
use quatflag::homology::{expand_complex, smith_normal_form, weyl_complex};
use quatflag::quat::{octahedral, ExactQuat, Quat};
use quatflag::rot::{exp_skew, log_rotation, SkewMatrix};

fn random_unit(rng: &mut ChaCha8Rng) -> Quat {
    loop {
        let q = Quat::new(
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
        );
        if q.abs() > 0.1 {
            return q.normalized().unwrap();
        }
    }
}

fn bench_group_generation(c: &mut Criterion) {
    c.bench_function("octahedral_generation", |b| b.iter(octahedral));
    c.bench_function(
        "exact_quaternion_product",
        |b| {
            let p = ExactQuat::tau_i();
            let q = ExactQuat::omega_0();
            b.iter(|| p.mul(&q))
        },
    );
}

fn bench_exp_log(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("exp_log_round_trip", |b| {
        b.iter_batched(
            || {
                let theta = rng.random::<f64>() * 3.0;
                let v = [rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1e-6);
                SkewMatrix::from_vee([v[0] / n * theta, v[1] / n * theta, v[2] / n * theta])
            },
            |s| log_rotation(&exp_skew(&s)),
            BatchSize::SmallInput,
        )
    });
}

fn bench_flag_distance(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let points: Vec<FlagPoint> = (0..64).map(|_| phi(&random_unit(&mut rng)).unwrap()).collect();
    c.bench_function("flag_distance_torus_min", |b| {
        let mut i = 0;
        b.iter(|| {
            i = (i + 1) % 63;
            flag_distance(&points[i], &points[i + 1])
        })
    });
    c.bench_function("flag_distance_coordinates", |b| {
        let mut i = 0;
        b.iter(|| {
            i = (i + 1) % 63;
            flag_distance_coords(&points[i], &points[i + 1])
        })
    });
}

fn bench_cell_membership(c: &mut Criterion) {
    let cells = sphere_cells();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts: Vec<Quat> = (0..64).map(|_| random_unit(&mut rng)).collect();
    c.bench_function("sphere_cell_membership_scan", |b| {
        let mut i = 0;
        b.iter(|| {
            i = (i + 1) % 64;
            cells.iter().filter(|cell| cell.contains(&pts[i])).count()
        })
    });
    c.bench_function("covering_check_200_points", |b| {
        b.iter(|| covering_and_partition_check(200, 7))
    });
}

fn bench_homology(c: &mut Criterion) {
    let k = weyl_complex();
    let int = expand_complex(&k);
    c.bench_function("snf_expanded_weyl_d2", |b| {
        b.iter(|| smith_normal_form(&int.d2))
    });
    c.bench_function("dd_zero_weyl", |b| b.iter(|| k.verify_dd_zero().unwrap()));
}

criterion_group!(
    benches,
    bench_group_generation,
    bench_exp_log,
    bench_flag_distance,
    bench_cell_membership,
    bench_homology
);
criterion_main!(benches);
