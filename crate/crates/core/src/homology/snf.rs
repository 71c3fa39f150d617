//! Dense integer matrices over arbitrary-precision integers and their
//! Smith normal form.

use num::{BigInt, Integer, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// A dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigInt>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }
}

/// Invariant factors of an integer matrix, ordered by divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

impl SmithNormalForm {
    /// Invariant factors larger than one: the torsion coefficients of the
    /// cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .cloned()
            .collect()
    }
}

/// Pivot-and-reduce diagonalization with minimal-absolute-value pivots,
/// followed by a gcd/lcm sweep to restore the divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.data.clone();
    let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * cols + j].clone();

    let mut t = 0usize;
    while t < rows.min(cols) {
        // minimal nonzero pivot in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &a[i * cols + j];
                if v.is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if v.abs() < a[pi * cols + pj].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, cols, t, pi);
        swap_cols(&mut a, rows, cols, t, pj);

        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in (t + 1)..rows {
                if !a[i * cols + t].is_zero() {
                    let q = div_rounded(&at(&a, i, t), &at(&a, t, t));
                    row_sub(&mut a, cols, i, t, &q);
                    if !a[i * cols + t].is_zero() {
                        swap_rows(&mut a, cols, i, t);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..cols {
                if !a[t * cols + j].is_zero() {
                    let q = div_rounded(&at(&a, t, j), &at(&a, t, t));
                    col_sub(&mut a, rows, cols, j, t, &q);
                    if !a[t * cols + j].is_zero() {
                        swap_cols(&mut a, rows, cols, j, t);
                        dirty = true;
                    }
                }
            }
        }
        t += 1;
    }

    let mut diag: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| a[i * cols + i].abs())
        .filter(|d| !d.is_zero())
        .collect();
    // 2x2 diagonal blocks reduce to (gcd, lcm) by unimodular operations
    loop {
        let mut changed = false;
        for i in 0..diag.len() {
            for j in (i + 1)..diag.len() {
                if !(&diag[j] % &diag[i]).is_zero() {
                    let g = diag[i].gcd(&diag[j]);
                    let l = (&diag[i] * &diag[j]) / &g;
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    SmithNormalForm {
        rank: diag.len(),
        invariants: diag,
    }
}

fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient rounded to keep |a - q b| at most |b|/2
    let two = BigInt::from(2);
    let (q, r) = a.div_rem(b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn swap_rows(a: &mut [BigInt], cols: usize, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..cols {
        a.swap(r1 * cols + j, r2 * cols + j);
    }
}

fn swap_cols(a: &mut [BigInt], rows: usize, cols: usize, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..rows {
        a.swap(i * cols + c1, i * cols + c2);
    }
}

fn row_sub(a: &mut [BigInt], cols: usize, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..cols {
        let v = &a[dst * cols + j] - q * &a[src * cols + j];
        a[dst * cols + j] = v;
    }
}

fn col_sub(a: &mut [BigInt], rows: usize, cols: usize, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..rows {
        let v = &a[i * cols + dst] - q * &a[i * cols + src];
        a[i * cols + dst] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_of(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_i64_rows(rows))
            .invariants
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn known_small_forms() {
        assert_eq!(snf_of(&[vec![1, 2], vec![3, 4]]), vec![1, 2]);
        assert_eq!(snf_of(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf_of(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(
            snf_of(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]),
            vec![1, 2, 12]
        );
    }

    #[test]
    fn hand_computed_tensored_boundary() {
        assert_eq!(
            snf_of(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]),
            vec![1, 1, 2]
        );
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        assert_eq!(snf_of(&[vec![6, 10, 15]]), vec![1]);
        assert_eq!(snf_of(&[vec![2, 4], vec![4, 8]]), vec![2]);
    }

    #[test]
    fn divisibility_chain_holds() {
        let s = smith_normal_form(&IntMatrix::from_i64_rows(&[
            vec![12, 0, 0],
            vec![0, 10, 0],
            vec![0, 0, 15],
        ]));
        for w in s.invariants.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        let prod: BigInt = s.invariants.iter().product();
        assert_eq!(prod, BigInt::from(12 * 10 * 15));
    }

    #[test]
    fn matrix_multiplication_shapes() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2, 3]]);
        let b = IntMatrix::from_i64_rows(&[vec![1], vec![0], vec![-1]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(*p.get(0, 0), BigInt::from(-2));
        assert!(b.mul(&b).is_err());
    }
}
