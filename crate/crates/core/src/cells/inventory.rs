//! The equivariant cell representatives.
//!
//! On the sphere the binary octahedral group acts by right multiplication;
//! the representatives here are the inverted cells (every named vertex
//! replaced by its inverse), whose translates tile the sphere. Their
//! images under the covering-and-quotient map are the flag-manifold cells,
//! where the Weyl group acts on the right.

use rand::Rng;

use crate::cells::JoinSpec;
use crate::error::Error;
use crate::flag::{phi, FlagPoint};
use crate::quat::{q8, round_geodesic, Quat};
use crate::rot::{exp_skew, quaternion_from_rotation, SkewMatrix};
use crate::{ExactQuat, Result};

/// One of the three imaginary axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub fn tau(&self) -> ExactQuat {
        match self {
            Axis::I => ExactQuat::tau_i(),
            Axis::J => ExactQuat::tau_j(),
            Axis::K => ExactQuat::tau_k(),
        }
    }

    pub fn omega(&self) -> ExactQuat {
        match self {
            Axis::I => ExactQuat::omega_i(),
            Axis::J => ExactQuat::omega_j(),
            Axis::K => ExactQuat::omega_k(),
        }
    }

    pub fn unit(&self) -> Quat {
        match self {
            Axis::I => Quat::i(),
            Axis::J => Quat::j(),
            Axis::K => Quat::k(),
        }
    }

    /// Cyclic successor `i -> j -> k -> i`.
    pub fn next(&self) -> Axis {
        match self {
            Axis::I => Axis::J,
            Axis::J => Axis::K,
            Axis::K => Axis::I,
        }
    }

    fn offset(&self) -> usize {
        match self {
            Axis::I => 0,
            Axis::J => 1,
            Axis::K => 2,
        }
    }
}

/// Identifier of an orbit representative: dimension and index.
/// Representative counts by dimension are `(1, 3, 3, 1)`; the index runs
/// `1..=3` in dimensions 1 and 2 and is `0` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellId {
    pub dim: u8,
    pub index: u8,
}

impl CellId {
    pub fn new(dim: u8, index: u8) -> Result<Self> {
        let ok = match dim {
            0 | 3 => index == 0,
            1 | 2 => (1..=3).contains(&index),
            _ => false,
        };
        if ok {
            Ok(CellId { dim, index })
        } else {
            Err(Error::InvalidCell)
        }
    }

    pub fn all() -> [CellId; 8] {
        [
            CellId { dim: 0, index: 0 },
            CellId { dim: 1, index: 1 },
            CellId { dim: 1, index: 2 },
            CellId { dim: 1, index: 3 },
            CellId { dim: 2, index: 1 },
            CellId { dim: 2, index: 2 },
            CellId { dim: 2, index: 3 },
            CellId { dim: 3, index: 0 },
        ]
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "e0" => CellId::new(0, 0),
            "e3" => CellId::new(3, 0),
            _ => {
                let rest = s.strip_prefix('e').ok_or(Error::InvalidCell)?;
                let (d, i) = rest.split_once('_').ok_or(Error::InvalidCell)?;
                let dim: u8 = d.parse().map_err(|_| Error::InvalidCell)?;
                let index: u8 = i.parse().map_err(|_| Error::InvalidCell)?;
                CellId::new(dim, index)
            }
        }
    }
}

impl std::fmt::Display for CellId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.dim {
            0 => write!(f, "e0"),
            3 => write!(f, "e3"),
            _ => write!(f, "e{}_{}", self.dim, self.index),
        }
    }
}

fn inv(q: &ExactQuat) -> ExactQuat {
    q.inverse().expect("group elements are units")
}

fn maybe_inv(q: &ExactQuat, invert: bool) -> ExactQuat {
    if invert {
        inv(q)
    } else {
        q.clone()
    }
}

/// The six tetrahedra around the identity whose projected union is the
/// fundamental domain, with inverted vertices (right-action convention).
pub fn inverted_tetrahedron_vertices() -> [[ExactQuat; 4]; 6] {
    let one = ExactQuat::one();
    let ti = inv(&ExactQuat::tau_i());
    let tj = inv(&ExactQuat::tau_j());
    let tk = inv(&ExactQuat::tau_k());
    let w0 = inv(&ExactQuat::omega_0());
    let wi = inv(&ExactQuat::omega_i());
    let wj = inv(&ExactQuat::omega_j());
    let wk = inv(&ExactQuat::omega_k());
    [
        [one.clone(), ti.clone(), tj.clone(), w0.clone()],
        [one.clone(), tj.clone(), tk.clone(), w0.clone()],
        [one.clone(), tk.clone(), ti.clone(), w0.clone()],
        [one.clone(), ti.clone(), wk, tj.clone()],
        [one.clone(), tj, wi, tk.clone()],
        [one, ti, wj, tk],
    ]
}

/// The closed projected tetrahedra whose union is a fundamental domain
/// for the right action of the binary octahedral group.
pub fn fundamental_domain_octahedral() -> Vec<JoinSpec> {
    inverted_tetrahedron_vertices()
        .iter()
        .map(|vs| JoinSpec::from_exact(vs, false).expect("tetrahedra are nondegenerate"))
        .collect()
}

/// An orbit representative on the sphere: a finite union of open joins,
/// plus the basepoint for the 0-cell.
pub struct SphereCell {
    pub id: CellId,
    // 2-cells keep their broken path (tau_a, omega_v, tau_b) for sampling
    path: Option<(Axis, Axis, Axis)>,
    pieces: Vec<JoinSpec>,
    // vertices in f64 form for samplers
    sample_data: SampleData,
}

enum SampleData {
    Point,
    Arc(Quat),
    Disk { a: Quat, v: Quat, b: Quat },
    Solid(Vec<Vec<[f64; 4]>>),
}

/// The three 2-cell broken paths `tau_a - omega_v - tau_b` in the index
/// order of the sphere-level decomposition.
const SPHERE_TWO_CELL_PATHS: [(Axis, Axis, Axis); 3] = [
    (Axis::J, Axis::I, Axis::K),
    (Axis::K, Axis::J, Axis::I),
    (Axis::I, Axis::K, Axis::J),
];

/// The twelve pieces of the 3-cell: six open tetrahedron interiors and the
/// six open wall triangles between them.
fn three_cell_pieces(invert: bool) -> Vec<Vec<ExactQuat>> {
    let one = ExactQuat::one();
    let ti = maybe_inv(&ExactQuat::tau_i(), invert);
    let tj = maybe_inv(&ExactQuat::tau_j(), invert);
    let tk = maybe_inv(&ExactQuat::tau_k(), invert);
    let w0 = maybe_inv(&ExactQuat::omega_0(), invert);
    let wi = maybe_inv(&ExactQuat::omega_i(), invert);
    let wj = maybe_inv(&ExactQuat::omega_j(), invert);
    let wk = maybe_inv(&ExactQuat::omega_k(), invert);
    vec![
        vec![wi, one.clone(), tj.clone(), tk.clone()],
        vec![one.clone(), tj.clone(), tk.clone()],
        vec![one.clone(), tj.clone(), tk.clone(), w0.clone()],
        vec![one.clone(), tk.clone(), w0.clone()],
        vec![one.clone(), tk.clone(), w0.clone(), ti.clone()],
        vec![one.clone(), tk.clone(), ti.clone()],
        vec![one.clone(), tk.clone(), ti.clone(), wj],
        vec![one.clone(), ti.clone(), w0.clone()],
        vec![one.clone(), ti.clone(), w0.clone(), tj.clone()],
        vec![one.clone(), ti.clone(), tj.clone()],
        vec![one.clone(), ti.clone(), tj.clone(), wk],
        vec![one, tj, w0],
    ]
}

fn build_sphere_cell(id: CellId, invert: bool) -> SphereCell {
    match id.dim {
        0 => SphereCell {
            id,
            path: None,
            pieces: Vec::new(),
            sample_data: SampleData::Point,
        },
        1 => {
            let axis = [Axis::I, Axis::J, Axis::K][(id.index - 1) as usize];
            let end = maybe_inv(&axis.tau(), invert);
            SphereCell {
                id,
                path: None,
                pieces: vec![
                    JoinSpec::from_exact(&[ExactQuat::one(), end.clone()], true).unwrap(),
                ],
                sample_data: SampleData::Arc(end.to_quat()),
            }
        }
        2 => {
            let (a, v, b) = SPHERE_TWO_CELL_PATHS[(id.index - 1) as usize];
            let ta = maybe_inv(&a.tau(), invert);
            let wv = maybe_inv(&v.omega(), invert);
            let tb = maybe_inv(&b.tau(), invert);
            let one = ExactQuat::one();
            // two open projected triangles plus the connecting open arc
            // through the middle vertex, so the disk is connected
            let pieces = vec![
                JoinSpec::from_exact(&[one.clone(), ta.clone(), wv.clone()], true).unwrap(),
                JoinSpec::from_exact(&[one.clone(), wv.clone()], true).unwrap(),
                JoinSpec::from_exact(&[one, wv.clone(), tb.clone()], true).unwrap(),
            ];
            SphereCell {
                id,
                path: Some((a, v, b)),
                pieces,
                sample_data: SampleData::Disk {
                    a: ta.to_quat(),
                    v: wv.to_quat(),
                    b: tb.to_quat(),
                },
            }
        }
        _ => {
            let pieces: Vec<JoinSpec> = three_cell_pieces(invert)
                .iter()
                .map(|vs| JoinSpec::from_exact(vs, true).unwrap())
                .collect();
            let vertex_lists = pieces
                .iter()
                .map(|p| p.vertices().to_vec())
                .collect::<Vec<_>>();
            SphereCell {
                id,
                path: None,
                pieces,
                sample_data: SampleData::Solid(vertex_lists),
            }
        }
    }
}

/// The eight orbit representatives of the right-action decomposition
/// (inverted vertices), in dimension order.
pub fn sphere_cells() -> Vec<SphereCell> {
    CellId::all()
        .iter()
        .map(|id| build_sphere_cell(*id, true))
        .collect()
}

/// The representatives of the left-action decomposition (plain vertices);
/// inverting their points lands in [`sphere_cells`] counterparts.
pub fn sphere_cells_uninverted() -> Vec<SphereCell> {
    CellId::all()
        .iter()
        .map(|id| build_sphere_cell(*id, false))
        .collect()
}

impl SphereCell {
    pub fn contains(&self, q: &Quat) -> bool {
        match self.sample_data {
            SampleData::Point => q.max_abs_diff(&Quat::one()) <= 1e-9,
            _ => self.pieces.iter().any(|p| p.contains(q)),
        }
    }

    pub fn pieces(&self) -> &[JoinSpec] {
        &self.pieces
    }

    pub fn path(&self) -> Option<(Axis, Axis, Axis)> {
        self.path
    }

    /// Point at explicit parameters. For 1-cells only `t` matters; for
    /// 2-cells `t` walks the broken path (the middle vertex sits at
    /// `t = 1/2`) and `s` walks the geodesic from the basepoint.
    pub fn sample_at(&self, s: f64, t: f64) -> Result<Quat> {
        if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
            return Err(Error::ParamOutOfRange);
        }
        match &self.sample_data {
            SampleData::Point => Ok(Quat::one()),
            SampleData::Arc(end) => round_geodesic(end, t),
            SampleData::Disk { a, v, b } => {
                let target = if t <= 0.5 {
                    slerp(a, v, 2.0 * t)?
                } else {
                    slerp(v, b, 2.0 * t - 1.0)?
                };
                round_geodesic(&target, s)
            }
            SampleData::Solid(_) => Err(Error::ParamOutOfRange),
        }
    }

    /// Random point of the open cell; returns the recorded parameters.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> (f64, f64, Quat) {
        match &self.sample_data {
            SampleData::Point => (0.0, 0.0, Quat::one()),
            SampleData::Arc(_) => {
                let t = open_unit(rng);
                let q = self.sample_at(0.0, t).expect("open parameters are valid");
                (0.0, t, q)
            }
            SampleData::Disk { .. } => {
                let s = open_unit(rng);
                let t = open_unit(rng);
                let q = self.sample_at(s, t).expect("open parameters are valid");
                (s, t, q)
            }
            SampleData::Solid(pieces) => {
                let which = rng.random_range(0..pieces.len());
                let verts = &pieces[which];
                let mut lam = vec![0.0; verts.len()];
                let mut total = 0.0;
                for l in lam.iter_mut() {
                    *l = -(open_unit(rng)).ln();
                    total += *l;
                }
                let mut mix = [0.0; 4];
                for (l, v) in lam.iter().zip(verts) {
                    for c in 0..4 {
                        mix[c] += l / total * v[c];
                    }
                }
                let q = crate::cells::project_sphere(mix).expect("interior mix is nonzero");
                (lam[0] / total, lam[1] / total, q)
            }
        }
    }
}

fn open_unit<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let x: f64 = rng.random();
        if x > 1e-12 && x < 1.0 - 1e-12 {
            return x;
        }
    }
}

/// Geodesic interpolation from `p` to `r` on the sphere.
fn slerp(p: &Quat, r: &Quat, u: f64) -> Result<Quat> {
    let rel = p.inverse()? * *r;
    Ok(*p * round_geodesic(&rel, u)?)
}

/// A flag-manifold cell: the image of an inverted sphere cell. Membership
/// lifts a representative rotation to the sphere and scans its fiber, the
/// eight right translates under `Q8`.
pub struct FlagCell {
    pub id: CellId,
    sphere: SphereCell,
    q8: Vec<Quat>,
}

/// Sphere-cell index backing each flag 2-cell: the flag cell with middle
/// vertex `omega_k` (index 1) comes from the sphere path `(i, k, j)`, and
/// cyclically, so the sphere index is shifted by one.
const FLAG_TWO_CELL_FROM_SPHERE: [u8; 3] = [3, 1, 2];

/// The eight flag-cell representatives, in dimension order.
pub fn flag_cells() -> Vec<FlagCell> {
    let q8_f64: Vec<Quat> = q8().elements().iter().map(|e| e.to_quat()).collect();
    CellId::all()
        .iter()
        .map(|id| {
            let sphere_id = match id.dim {
                2 => CellId::new(2, FLAG_TWO_CELL_FROM_SPHERE[(id.index - 1) as usize]).unwrap(),
                _ => *id,
            };
            FlagCell {
                id: *id,
                sphere: build_sphere_cell(sphere_id, true),
                q8: q8_f64.clone(),
            }
        })
        .collect()
}

impl FlagCell {
    pub fn sphere_cell(&self) -> &SphereCell {
        &self.sphere
    }

    pub fn contains(&self, f: &FlagPoint) -> bool {
        let lift = quaternion_from_rotation(f.representative());
        self.q8
            .iter()
            .any(|g| self.sphere.contains(&(lift * *g)))
    }

    pub fn sample_at(&self, s: f64, t: f64) -> Result<FlagPoint> {
        phi(&self.sphere.sample_at(s, t)?)
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> (f64, f64, FlagPoint) {
        let (s, t, q) = self.sphere.sample(rng);
        (s, t, phi(&q).expect("cell samples are unit quaternions"))
    }
}

/// Closure of the flag 3-cell: a fundamental domain for the Weyl action,
/// with precomputed tetrahedra and fiber translates.
pub struct FlagFundamentalDomain {
    tetra: Vec<JoinSpec>,
    q8: Vec<Quat>,
}

impl FlagFundamentalDomain {
    pub fn new() -> Self {
        FlagFundamentalDomain {
            tetra: fundamental_domain_octahedral(),
            q8: q8().elements().iter().map(|e| e.to_quat()).collect(),
        }
    }

    /// Membership through the fiber against the six closed tetrahedra.
    pub fn contains(&self, f: &FlagPoint) -> bool {
        let lift = quaternion_from_rotation(f.representative());
        self.q8
            .iter()
            .any(|g| self.tetra.iter().any(|t| t.contains(&(lift * *g))))
    }
}

impl Default for FlagFundamentalDomain {
    fn default() -> Self {
        Self::new()
    }
}

/// One-shot convenience for [`FlagFundamentalDomain::contains`].
pub fn flag_fundamental_domain_contains(f: &FlagPoint) -> bool {
    FlagFundamentalDomain::new().contains(f)
}

/// The generator of the closed-form 2-cell parametrization at path
/// parameter `t`, for the pair `(u, next(u))`. For `u = i` this is the
/// matrix
///
/// `(2 arccos((c+s)/2) / sqrt(3 - sin(t pi/2))) *`
/// `[[0, sqrt(1 - sin(t pi/2)), -c-s], [-sqrt(1-sin(t pi/2)), 0, s-c], [c+s, c-s, 0]]`
///
/// with `c = cos(t pi/4)`, `s = sin(t pi/4)`; the other two pairs are its
/// conjugates under the cyclic axis rotation.
pub fn closed_form_generator(u: Axis, t: f64) -> Result<SkewMatrix> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::ParamOutOfRange);
    }
    let c = (t * std::f64::consts::FRAC_PI_4).cos();
    let s = (t * std::f64::consts::FRAC_PI_4).sin();
    let sin_half = (t * std::f64::consts::FRAC_PI_2).sin();
    let coef = 2.0 * ((c + s) / 2.0).acos() / (3.0 - sin_half).sqrt();
    let root = (1.0 - sin_half).max(0.0).sqrt();
    let base = [
        [0.0, coef * root, coef * (-c - s)],
        [-coef * root, 0.0, coef * (s - c)],
        [coef * (c + s), coef * (c - s), 0.0],
    ];
    let shift = u.offset();
    if shift == 0 {
        return SkewMatrix::from_matrix(base);
    }
    // conjugate by the cyclic rotation that advances the axes
    let mut m = [[0.0; 3]; 3];
    for r in 0..3 {
        for cidx in 0..3 {
            m[(r + shift) % 3][(cidx + shift) % 3] = base[r][cidx];
        }
    }
    SkewMatrix::from_matrix(m)
}

/// Closed-form point of the 2-cell piece attached to the ordered pair
/// `(u, v)` of cyclically consecutive axes, at inner parameters
/// `0 < s, t < 1`: the exponential of `s` times the path generator,
/// projected to the flag manifold.
pub fn param_cell_closed_form(u: Axis, v: Axis, s: f64, t: f64) -> Result<FlagPoint> {
    if v != u.next() {
        return Err(Error::InvalidCell);
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::ParamOutOfRange);
    }
    let x = closed_form_generator(u, t)?;
    FlagPoint::new(exp_skew(&x.scale(s)))
}
