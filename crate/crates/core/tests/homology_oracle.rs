//! Independent oracles for the homology pipeline: invariant factors from
//! determinantal divisors, and ranks from fraction-free elimination.

use num::{BigInt, Integer, One, Signed, Zero};
use proptest::prelude::*;

use quatflag::homology::{
    build_complexes, expand_complex, homology, smith_normal_form, IntMatrix,
};

/// Determinant by cofactor expansion; fine at oracle sizes.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The gcd of all k x k minors; the k-th determinantal divisor.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                .collect();
            g = g.gcd(&det(&sub).abs());
        }
    }
    g
}

/// Invariant factors via `s_k = d_k / d_(k-1)` on the determinantal
/// divisors; the textbook characterization, fully independent of the
/// pivoting implementation.
fn invariants_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let d = determinantal_divisor(m, k);
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

/// Rank over the rationals by fraction-free elimination.
fn bareiss_rank(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_matches_determinantal_divisors(
        entries in proptest::collection::vec(-6i64..=6, 12),
        rows in 2usize..=4,
    ) {
        let cols = 12 / rows;
        let m = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]));
        let snf = smith_normal_form(&m);
        let oracle = invariants_by_minors(&m);
        prop_assert_eq!(snf.invariants, oracle);
    }

    #[test]
    fn snf_rank_matches_bareiss(
        entries in proptest::collection::vec(-4i64..=4, 16),
    ) {
        let m = IntMatrix::from_fn(4, 4, |i, j| BigInt::from(entries[i * 4 + j]));
        prop_assert_eq!(smith_normal_form(&m).rank, bareiss_rank(&m));
    }
}

#[test]
fn free_parts_of_the_sphere_complex_match_the_rank_method() {
    let (k_o, k_s3) = build_complexes();
    for k in [&k_o, &k_s3] {
        let c = expand_complex(k);
        let r1 = bareiss_rank(&c.d1);
        let r2 = bareiss_rank(&c.d2);
        let r3 = bareiss_rank(&c.d3);
        let h = homology(k).unwrap();
        assert_eq!(h[0].rank, c.dims[0] - r1);
        assert_eq!(h[1].rank, c.dims[1] - r1 - r2);
        assert_eq!(h[2].rank, c.dims[2] - r2 - r3);
        assert_eq!(h[3].rank, c.dims[3] - r3);
    }
}

#[test]
fn expanded_boundaries_compose_to_zero_as_integer_matrices() {
    let (k_o, k_s3) = build_complexes();
    for k in [&k_o, &k_s3] {
        let c = expand_complex(k);
        assert!(c.d1.mul(&c.d2).unwrap().is_zero());
        assert!(c.d2.mul(&c.d3).unwrap().is_zero());
    }
}
