//! Group rings over the finite groups of the cell structure, the two
//! boundary complexes of free modules, their integer expansion through the
//! regular representation, Smith normal form, and homology.

mod snf;

pub use snf::{smith_normal_form, IntMatrix, SmithNormalForm};

use num::{BigInt, One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::quat::{octahedral, ExactQuat, OctahedralGroup};
use crate::weyl::{WeylElement, WeylGroup};
use crate::Result;

/// Multiplication data of a finite group over a fixed enumeration.
#[derive(Debug, Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    name: String,
}

impl GroupTable {
    pub fn from_octahedral(oct: &OctahedralGroup) -> Self {
        let g = oct.group();
        let n = g.order();
        let mut mul = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = g.mul_index(i, j);
            }
        }
        GroupTable {
            n,
            mul,
            inv: (0..n).map(|i| g.inv_index(i)).collect(),
            name: "O".into(),
        }
    }

    pub fn from_weyl(w: &WeylGroup) -> Self {
        let n = w.order();
        let mut mul = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = w.mul_index(i, j);
            }
        }
        GroupTable {
            n,
            mul,
            inv: (0..n).map(|i| w.inv_index(i)).collect(),
            name: "S3".into(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }
}

/// An element of `Z[G]`, dense over the group enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        GroupRingElement {
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn basis(index: usize, n: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[index] = BigInt::one();
        e
    }

    pub fn from_terms(terms: &[(usize, i64)], n: usize) -> Self {
        let mut e = Self::zero(n);
        for (idx, c) in terms {
            e.coeffs[*idx] += BigInt::from(*c);
        }
        e
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &GroupRingElement) -> GroupRingElement {
        GroupRingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Ring product following the group multiplication table.
    pub fn mul(&self, o: &GroupRingElement, table: &GroupTable) -> GroupRingElement {
        let n = table.order();
        let mut out = GroupRingElement::zero(n);
        for (g, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let gh = table.mul(g, h);
                out.coeffs[gh] += a * b;
            }
        }
        out
    }

    /// The augmentation: the sum of coefficients, a ring map to `Z`.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// A rectangular matrix over `Z[G]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn from_rows(rows: Vec<Vec<GroupRingElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        GroupRingMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, o: &GroupRingMatrix, table: &GroupTable) -> Result<GroupRingMatrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let n = table.order();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(o.cols);
            for j in 0..o.cols {
                let mut acc = GroupRingElement::zero(n);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j), table));
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(GroupRingMatrix::from_rows(rows))
    }

    /// Entrywise augmentation into an integer matrix of the same shape.
    pub fn augment(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).augmentation())
    }
}

/// Module-side convention of a complex.
///
/// `LeftModules`: chains are row vectors of left modules and the boundary
/// matrices act by right multiplication, so consecutive boundaries compose
/// as `D_(k+1) D_k`. `RightModules`: column vectors of right modules with
/// left multiplication, composing as `D_k D_(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    LeftModules,
    RightModules,
}

/// A length-four complex of free `Z[G]`-modules with ranks `(1, 3, 3, 1)`.
pub struct ChainComplex {
    pub name: String,
    pub convention: Convention,
    pub table: GroupTable,
    pub d1: GroupRingMatrix,
    pub d2: GroupRingMatrix,
    pub d3: GroupRingMatrix,
    /// Module ranks `(C0, C1, C2, C3)`.
    pub ranks: [usize; 4],
}

impl ChainComplex {
    /// Both compositions vanish identically in `Z[G]`, in the convention's
    /// composition order; exact integer arithmetic throughout.
    pub fn verify_dd_zero(&self) -> Result<bool> {
        let (a, b) = match self.convention {
            Convention::LeftModules => (
                self.d3.mul(&self.d2, &self.table)?,
                self.d2.mul(&self.d1, &self.table)?,
            ),
            Convention::RightModules => (
                self.d1.mul(&self.d2, &self.table)?,
                self.d2.mul(&self.d3, &self.table)?,
            ),
        };
        Ok(a.is_zero() && b.is_zero())
    }
}

/// The boundary complex over `Z[O]` (left modules, right multiplication)
/// transcribed from the octahedral cell structure on the sphere.
pub fn octahedral_complex(oct: &OctahedralGroup) -> ChainComplex {
    let table = GroupTable::from_octahedral(oct);
    let n = table.order();
    let idx = |q: &ExactQuat| -> usize {
        oct.group()
            .index_of(q)
            .expect("named element belongs to the group")
    };
    let one = idx(&ExactQuat::one());
    let ti = idx(&ExactQuat::tau_i());
    let tj = idx(&ExactQuat::tau_j());
    let tk = idx(&ExactQuat::tau_k());
    let wi = idx(&ExactQuat::omega_i());
    let wj = idx(&ExactQuat::omega_j());
    let wk = idx(&ExactQuat::omega_k());

    let unit = |g: usize| GroupRingElement::basis(g, n);
    let minus_one = |g: usize| GroupRingElement::from_terms(&[(g, 1), (one, -1)], n);
    let one_minus = |g: usize| GroupRingElement::from_terms(&[(one, 1), (g, -1)], n);

    let d1 = GroupRingMatrix::from_rows(vec![
        vec![minus_one(ti)],
        vec![minus_one(tj)],
        vec![minus_one(tk)],
    ]);
    let d2 = GroupRingMatrix::from_rows(vec![
        vec![unit(wi), minus_one(tk), unit(one)],
        vec![unit(one), unit(wj), minus_one(ti)],
        vec![minus_one(tj), unit(one), unit(wk)],
    ]);
    let d3 = GroupRingMatrix::from_rows(vec![vec![one_minus(ti), one_minus(tj), one_minus(tk)]]);
    ChainComplex {
        name: "K_O".into(),
        convention: Convention::LeftModules,
        table,
        d1,
        d2,
        d3,
        ranks: [1, 3, 3, 1],
    }
}

/// The boundary complex over `Z[S3]` (right modules, left multiplication)
/// of the induced cell structure on the flag manifold.
pub fn weyl_complex() -> ChainComplex {
    let table = GroupTable::from_weyl(&WeylGroup::new());
    let n = table.order();
    let one = WeylElement::identity().index();
    let sa = WeylElement::s_alpha().index();
    let sb = WeylElement::s_beta().index();
    let sab = (WeylElement::s_alpha() * WeylElement::s_beta()).index();
    let w0 = WeylElement::w0().index();

    let unit = |g: usize| GroupRingElement::basis(g, n);
    let minus_one = |g: usize| GroupRingElement::from_terms(&[(g, 1), (one, -1)], n);
    let one_minus = |g: usize| GroupRingElement::from_terms(&[(one, 1), (g, -1)], n);

    let d1 = GroupRingMatrix::from_rows(vec![vec![one_minus(sb), one_minus(w0), one_minus(sa)]]);
    let d2 = GroupRingMatrix::from_rows(vec![
        vec![unit(sab), unit(one), minus_one(w0)],
        vec![minus_one(sa), unit(sab), unit(one)],
        vec![unit(one), minus_one(sb), unit(sab)],
    ]);
    let d3 = GroupRingMatrix::from_rows(vec![
        vec![one_minus(sb)],
        vec![one_minus(w0)],
        vec![one_minus(sa)],
    ]);
    ChainComplex {
        name: "K_S3".into(),
        convention: Convention::RightModules,
        table,
        d1,
        d2,
        d3,
        ranks: [1, 3, 3, 1],
    }
}

/// Builds both complexes.
pub fn build_complexes() -> (ChainComplex, ChainComplex) {
    (octahedral_complex(&octahedral()), weyl_complex())
}

/// Expands a group-ring matrix to the integer matrix of its regular
/// action, in the column-acting orientation `destination x source`.
///
/// For left modules the map is `v -> v M` on row vectors, whose action on
/// the basis element `(component i, group element g)` has coefficient
/// `M[i][j](g^-1 f)` at `(j, f)`; for right modules `v -> M v` gives
/// `M[j][i](f g^-1)`. Functoriality holds in the matching order:
/// `expand(A B) = expand(B) expand(A)` for left modules and
/// `expand(A) expand(B)` for right modules.
pub fn expand_regular(m: &GroupRingMatrix, table: &GroupTable, conv: Convention) -> IntMatrix {
    let n = table.order();
    match conv {
        Convention::LeftModules => IntMatrix::from_fn(m.cols() * n, m.rows() * n, |row, col| {
            let (j, f) = (row / n, row % n);
            let (i, g) = (col / n, col % n);
            m.get(i, j).coeff(table.mul(table.inv(g), f)).clone()
        }),
        Convention::RightModules => IntMatrix::from_fn(m.rows() * n, m.cols() * n, |row, col| {
            let (j, f) = (row / n, row % n);
            let (i, g) = (col / n, col % n);
            m.get(j, i).coeff(table.mul(f, table.inv(g))).clone()
        }),
    }
}

/// An integer chain complex `C3 -> C2 -> C1 -> C0` with column-acting
/// boundary matrices.
pub struct IntComplex {
    pub dims: [usize; 4],
    pub d1: IntMatrix,
    pub d2: IntMatrix,
    pub d3: IntMatrix,
}

/// A finitely generated abelian group: free rank plus invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let torsion: Vec<u64> = self
            .torsion
            .iter()
            .map(|t| t.to_u64().expect("torsion fits in u64"))
            .collect();
        let mut s = serializer.serialize_struct("AbelianGroup", 2)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// Homology `H0..H3` of an integer complex via Smith normal form:
/// `H_k = Z^(dim C_k - rank d_k - rank d_(k+1))` plus the torsion of
/// `SNF(d_(k+1))`.
pub fn homology_int(c: &IntComplex) -> [AbelianGroup; 4] {
    let s1 = smith_normal_form(&c.d1);
    let s2 = smith_normal_form(&c.d2);
    let s3 = smith_normal_form(&c.d3);
    [
        AbelianGroup {
            rank: c.dims[0] - s1.rank,
            torsion: s1.torsion(),
        },
        AbelianGroup {
            rank: c.dims[1] - s1.rank - s2.rank,
            torsion: s2.torsion(),
        },
        AbelianGroup {
            rank: c.dims[2] - s2.rank - s3.rank,
            torsion: s3.torsion(),
        },
        AbelianGroup {
            rank: c.dims[3] - s3.rank,
            torsion: Vec::new(),
        },
    ]
}

/// Expands a group-ring complex to its integer form.
pub fn expand_complex(c: &ChainComplex) -> IntComplex {
    let n = c.table.order();
    IntComplex {
        dims: [
            c.ranks[0] * n,
            c.ranks[1] * n,
            c.ranks[2] * n,
            c.ranks[3] * n,
        ],
        d1: expand_regular(&c.d1, &c.table, c.convention),
        d2: expand_regular(&c.d2, &c.table, c.convention),
        d3: expand_regular(&c.d3, &c.table, c.convention),
    }
}

/// Homology of the total space carried by the complex.
///
/// ```
/// use quatflag::homology::{homology, weyl_complex};
///
/// let h = homology(&weyl_complex()).unwrap();
/// assert_eq!(format!("{} {} {} {}", h[0], h[1], h[2], h[3]), "Z Z/2 + Z/2 0 Z");
/// ```
pub fn homology(c: &ChainComplex) -> Result<[AbelianGroup; 4]> {
    if !c.verify_dd_zero()? {
        return Err(Error::NotAChainComplex);
    }
    Ok(homology_int(&expand_complex(c)))
}

/// Tensors the complex with the trivial module: every entry maps to its
/// coefficient sum. The result computes the homology of the full quotient
/// by the group.
pub fn tensor_trivial(c: &ChainComplex) -> Result<(IntComplex, [AbelianGroup; 4])> {
    if !c.verify_dd_zero()? {
        return Err(Error::NotAChainComplex);
    }
    let orient = |m: &GroupRingMatrix| -> IntMatrix {
        match c.convention {
            // row-vector convention: transpose into column-acting form
            Convention::LeftModules => m.augment().transpose(),
            Convention::RightModules => m.augment(),
        }
    };
    let int = IntComplex {
        dims: c.ranks,
        d1: orient(&c.d1),
        d2: orient(&c.d2),
        d3: orient(&c.d3),
    };
    let h = homology_int(&int);
    Ok((int, h))
}
