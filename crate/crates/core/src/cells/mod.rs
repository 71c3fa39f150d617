//! Curved joins on the 3-sphere and the equivariant cell structure built
//! from them: the inverted tetrahedral fundamental domain for the right
//! action of the binary octahedral group, the cell representatives on the
//! sphere and on the flag manifold, membership tests, samplers, and the
//! covering/partition verification.

mod checks;
mod export;
mod inventory;

pub use checks::{covering_and_partition_check, CoverageReport};
pub use export::{write_csv, write_json, write_ply, CellSample, SampleCoords};
pub use inventory::{
    closed_form_generator, flag_cells, flag_fundamental_domain_contains,
    fundamental_domain_octahedral, inverted_tetrahedron_vertices, param_cell_closed_form,
    sphere_cells, sphere_cells_uninverted, Axis, CellId, FlagCell, FlagFundamentalDomain,
    SphereCell,
};

use crate::error::Error;
use crate::quat::Quat;
use crate::{ExactQuat, Result};

/// Residual threshold for deciding that a point lies in the linear span of
/// the join vertices.
pub const SPAN_RESIDUAL_TOL: f64 = 1e-9;

/// Barycentric threshold separating open-interior membership from the
/// boundary.
pub const INTERIOR_LAMBDA_TOL: f64 = 1e-10;

/// Normalizes a nonzero 4-vector onto the sphere.
pub fn project_sphere(x: [f64; 4]) -> Result<Quat> {
    Quat::from_array(x).normalized().map_err(|_| Error::ZeroVector)
}

/// The ray-projected convex hull of 2 to 4 unit vertices: the curved join
/// of its vertex list. `open` selects the relative interior (all
/// barycentric coordinates strictly positive).
#[derive(Debug, Clone)]
pub struct JoinSpec {
    vertices: Vec<[f64; 4]>,
    open: bool,
    // Cholesky factor of the vertex Gram matrix, lower triangular.
    chol: Vec<f64>,
}

/// Solution of `sum_i lambda_i v_i = mu x`, `sum_i lambda_i = 1`.
#[derive(Debug, Clone)]
pub struct Barycentric {
    pub lambda: Vec<f64>,
    pub mu: f64,
    pub residual: f64,
}

impl Barycentric {
    pub fn min_lambda(&self) -> f64 {
        self.lambda.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// True when the ray through the queried point meets the hull, with
    /// every barycentric coordinate at least `lambda_floor`.
    pub fn hits(&self, lambda_floor: f64, resid_tol: f64) -> bool {
        self.residual <= resid_tol && self.mu > 0.0 && self.min_lambda() >= lambda_floor
    }
}

impl JoinSpec {
    pub fn new(vertices: Vec<[f64; 4]>, open: bool) -> Result<Self> {
        let k = vertices.len();
        if !(2..=4).contains(&k) {
            return Err(Error::DegenerateJoin);
        }
        for v in &vertices {
            let n: f64 = v.iter().map(|c| c * c).sum();
            if (n - 1.0).abs() > 1e-9 {
                return Err(Error::DegenerateJoin);
            }
        }
        for pair in vertices.windows(2) {
            let s: f64 = (0..4).map(|i| (pair[0][i] + pair[1][i]).powi(2)).sum();
            if s.sqrt() < 1e-9 {
                return Err(Error::DegenerateJoin);
            }
        }
        let chol = cholesky(&gram(&vertices)).ok_or(Error::DegenerateJoin)?;
        Ok(JoinSpec {
            vertices,
            open,
            chol,
        })
    }

    pub fn from_exact(vertices: &[ExactQuat], open: bool) -> Result<Self> {
        Self::new(
            vertices.iter().map(|q| q.to_quat().to_array()).collect(),
            open,
        )
    }

    pub fn vertices(&self) -> &[[f64; 4]] {
        &self.vertices
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Least-squares solve of the ray-membership system; `residual`
    /// reports how far the point is from the linear span.
    pub fn barycentric(&self, x: &[f64; 4]) -> Barycentric {
        let k = self.vertices.len();
        let mut rhs = vec![0.0; k];
        for (i, v) in self.vertices.iter().enumerate() {
            rhs[i] = dot4(v, x);
        }
        let y = chol_solve(&self.chol, k, &rhs);
        let mut recon = [0.0; 4];
        for (i, v) in self.vertices.iter().enumerate() {
            for c in 0..4 {
                recon[c] += y[i] * v[c];
            }
        }
        let residual = (0..4).map(|c| (recon[c] - x[c]).powi(2)).sum::<f64>().sqrt();
        let s: f64 = y.iter().sum();
        if s <= f64::MIN_POSITIVE {
            return Barycentric {
                lambda: y,
                mu: f64::NEG_INFINITY,
                residual,
            };
        }
        Barycentric {
            lambda: y.iter().map(|v| v / s).collect(),
            mu: 1.0 / s,
            residual,
        }
    }

    pub fn contains_with(&self, q: &Quat, lambda_tol: f64, resid_tol: f64) -> bool {
        let b = self.barycentric(&q.to_array());
        let floor = if self.open { lambda_tol } else { -lambda_tol };
        b.hits(floor, resid_tol)
    }

    pub fn contains(&self, q: &Quat) -> bool {
        self.contains_with(q, INTERIOR_LAMBDA_TOL, SPAN_RESIDUAL_TOL)
    }

    /// Membership in the closure, regardless of the openness flag.
    pub fn closure_contains(&self, q: &Quat) -> bool {
        let b = self.barycentric(&q.to_array());
        b.hits(-INTERIOR_LAMBDA_TOL, SPAN_RESIDUAL_TOL)
    }
}

/// Ray membership of a unit quaternion in a curved join.
pub fn join_membership(x: &Quat, spec: &JoinSpec) -> bool {
    spec.contains(x)
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn gram(vertices: &[[f64; 4]]) -> Vec<f64> {
    let k = vertices.len();
    let mut g = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            g[i * k + j] = dot4(&vertices[i], &vertices[j]);
        }
    }
    g
}

/// Cholesky factorization of a small SPD matrix; `None` when a pivot
/// degenerates, which flags linearly dependent vertices.
fn cholesky(g: &[f64]) -> Option<Vec<f64>> {
    let k = (g.len() as f64).sqrt() as usize;
    let mut l = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let mut sum = g[i * k + j];
            for p in 0..j {
                sum -= l[i * k + p] * l[j * k + p];
            }
            if i == j {
                if sum < 1e-12 {
                    return None;
                }
                l[i * k + i] = sum.sqrt();
            } else {
                l[i * k + j] = sum / l[j * k + j];
            }
        }
    }
    Some(l)
}

fn chol_solve(l: &[f64], k: usize, rhs: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; k];
    for i in 0..k {
        let mut sum = rhs[i];
        for p in 0..i {
            sum -= l[i * k + p] * y[p];
        }
        y[i] = sum / l[i * k + i];
    }
    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let mut sum = y[i];
        for p in (i + 1)..k {
            sum -= l[p * k + i] * x[p];
        }
        x[i] = sum / l[i * k + i];
    }
    x
}
