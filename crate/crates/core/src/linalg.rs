//! Exact integer linear algebra shared by the lattice and polynomial
//! modules: Bareiss fraction-free determinants, rank, and Hermite-style
//! triangularization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Determinant by Bareiss fraction-free elimination. Exact.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Rank of an integer matrix (rows may outnumber columns) by fraction-free
/// elimination.
pub(crate) fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in 0..cols {
                m[i][j] = &m[i][j] * &a - &m[r][j] * &b;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Row-style Hermite form: returns an upper-triangular basis (row i has
/// zeros left of column i, positive diagonal) spanning the same lattice.
/// Requires full-rank square input.
pub(crate) fn hermite_upper(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = m.len();
    for c in 0..n {
        // gcd-reduce column c over rows c..n using unimodular row ops
        loop {
            let mut idx: Vec<usize> = (c..n).filter(|&i| !m[i][c].is_zero()).collect();
            idx.sort_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let &pivot = idx.first().expect("full-rank basis");
            if idx.len() == 1 {
                m.swap(c, pivot);
                break;
            }
            // pivot has the smallest |entry|, so each pass strictly shrinks
            // the other entries (Euclid) until one nonzero remains
            for &i in &idx[1..] {
                let q = &m[i][c] / &m[pivot][c]; // truncated division
                if !q.is_zero() {
                    for j in 0..n {
                        let sub = &q * &m[pivot][j];
                        m[i][j] -= sub;
                    }
                }
            }
        }
        if m[c][c].is_negative() {
            for j in 0..n {
                m[c][j] = -m[c][j].clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..c {
            if !m[i][c].is_zero() {
                let q = m[i][c].div_floor(&m[c][c]);
                if !q.is_zero() {
                    for j in 0..n {
                        let sub = &q * &m[c][j];
                        m[i][j] -= sub;
                    }
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(bareiss_det(mat(&[&[2]])), BigInt::from(2));
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            bareiss_det(mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])),
            BigInt::from(-8) // cofactor oracle: 0*(0*8-3*-3) - 1*(8-12) + 2*(-3)
        );
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(mat(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(mat(&[&[1, 0, 0], &[0, 0, 1]])), 2);
    }

    #[test]
    fn hermite_preserves_lattice() {
        let basis = mat(&[&[1, -3], &[0, 7]]);
        let h = hermite_upper(basis);
        // upper triangular, positive diagonal, |det| preserved
        assert!(h[1][0].is_zero());
        assert_eq!(&h[0][0] * &h[1][1], BigInt::from(7));
        // (2,1) = 2*(1,-3) + 1*(0,7) must still be representable:
        // membership check 3u+v = 0 mod 7 for both rows
        for row in &h {
            let val = 3 * row[0].clone() + row[1].clone();
            assert!(
                (val % BigInt::from(7)).is_zero(),
                "row not in lattice: {row:?}"
            );
        }
    }
}
