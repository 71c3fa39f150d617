//! Seeded verification that the inverted fundamental domain covers the
//! sphere under right translation and that the translated open cells
//! partition it away from boundaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::cells::inventory::{sphere_cells, SphereCell};
use crate::cells::{fundamental_domain_octahedral, JoinSpec, INTERIOR_LAMBDA_TOL};
use crate::quat::{octahedral, Quat};

/// Barycentric band within which a point counts as boundary-near and is
/// excluded from the multiplicity count.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// Every cell of the decomposition lies in the half-space of points whose
/// translate has first coordinate at least 1/2; anything below this bound
/// can be skipped without solving.
const PRUNE_W: f64 = 0.49;

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub n_samples: usize,
    pub seed: u64,
    /// Points with no right translate in the closed fundamental domain.
    pub coverage_failures: usize,
    /// Points within the barycentric boundary band of some tetrahedron,
    /// excluded from the partition count.
    pub boundary_skipped: usize,
    /// Points checked for unique open-cell membership.
    pub partition_checked: usize,
    /// Points lying in a number of translated open cells different from 1.
    pub partition_failures: usize,
    /// Translated open cells per dimension: 48 times (1, 3, 3, 1).
    pub open_cells_by_dim: [usize; 4],
    pub euler_characteristic: i64,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.coverage_failures == 0 && self.partition_failures == 0
    }
}

/// Uniform point on the 3-sphere from four standard normals.
fn random_unit_quat<R: Rng>(rng: &mut R) -> Quat {
    loop {
        let v = [
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        ];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return Quat::new(v[0] / n, v[1] / n, v[2] / n, v[3] / n);
        }
    }
}

/// Runs the two checks on `n` seeded uniform points.
///
/// Coverage: every point has at least one right translate by a group
/// element inside the closed projected fundamental domain. Partition:
/// points clear of every cell boundary lie in exactly one translated open
/// cell out of the 48 x 8.
pub fn covering_and_partition_check(n: usize, seed: u64) -> CoverageReport {
    let oct = octahedral();
    let translates: Vec<Quat> = oct.elements().iter().map(|e| e.to_quat()).collect();
    let closed_tetra: Vec<JoinSpec> = fundamental_domain_octahedral();
    let open_cells: Vec<SphereCell> = sphere_cells();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let reps_by_dim = [1usize, 3, 3, 1];
    let open_cells_by_dim = reps_by_dim.map(|r| r * translates.len());
    let euler_characteristic = open_cells_by_dim[0] as i64 - open_cells_by_dim[1] as i64
        + open_cells_by_dim[2] as i64
        - open_cells_by_dim[3] as i64;
    let mut report = CoverageReport {
        n_samples: n,
        seed,
        coverage_failures: 0,
        boundary_skipped: 0,
        partition_checked: 0,
        partition_failures: 0,
        open_cells_by_dim,
        euler_characteristic,
    };

    for _ in 0..n {
        let x = random_unit_quat(&mut rng);
        let mut covered = false;
        let mut boundary_near = false;
        for h in &translates {
            let y = x * *h;
            if y.w < PRUNE_W {
                continue;
            }
            let ya = y.to_array();
            for t in &closed_tetra {
                let b = t.barycentric(&ya);
                if b.residual > crate::cells::SPAN_RESIDUAL_TOL || b.mu <= 0.0 {
                    continue;
                }
                let min_l = b.min_lambda();
                if min_l >= -INTERIOR_LAMBDA_TOL {
                    covered = true;
                }
                if min_l >= -BOUNDARY_BAND && min_l < BOUNDARY_BAND {
                    boundary_near = true;
                }
            }
        }
        if !covered {
            report.coverage_failures += 1;
            continue;
        }
        if boundary_near {
            report.boundary_skipped += 1;
            continue;
        }
        let mut multiplicity = 0usize;
        for h in &translates {
            let y = x * *h;
            if y.w < PRUNE_W {
                continue;
            }
            for cell in &open_cells {
                if cell.contains(&y) {
                    multiplicity += 1;
                }
            }
        }
        report.partition_checked += 1;
        if multiplicity != 1 {
            report.partition_failures += 1;
        }
    }
    report
}
