//! Dense linear algebra over ℚ, rows stored as vectors of `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QVector = Vec<BigRational>;
pub type QMatrix = Vec<QVector>;

pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_vec(m: &QMatrix, v: &[BigRational]) -> QVector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(BigRational::zero(), |acc, (x, br)| acc + x * &br[j]))
                .collect()
        })
        .collect()
}

pub fn transpose(m: &QMatrix, cols: usize) -> QMatrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity_q(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(m: &QMatrix, cols: usize) -> (QMatrix, Vec<usize>) {
    let mut a: QMatrix = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &k * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank_q(m: &QMatrix, cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace_q(m: &QMatrix, cols: usize) -> Vec<QVector> {
    let (r, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists (free variables set to zero).
pub fn solve_q(m: &QMatrix, cols: usize, b: &[BigRational]) -> Option<QVector> {
    let aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Solution set of the least-squares problem `min |m x - b|²`:
/// `particular + span(directions)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeastSquares {
    pub particular: QVector,
    pub directions: Vec<QVector>,
}

pub fn least_squares(m: &QMatrix, cols: usize, b: &[BigRational]) -> LeastSquares {
    // normal equations mᵀm x = mᵀb are always consistent
    let mt = transpose(m, cols);
    let mtm = mat_mul(&mt, m);
    let mtb = mat_vec(&mt, b);
    let particular = solve_q(&mtm, cols, &mtb).expect("normal equations are consistent");
    LeastSquares { particular, directions: nullspace_q(m, cols) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q_int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_q(&m, 3), 2);
        let n = nullspace_q(&m, 3);
        assert_eq!(n.len(), 1);
        assert!(mat_vec(&m, &n[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inconsistent_system() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        assert!(solve_q(&m, 2, &[q_int(1), q_int(2)]).is_none());
        let ls = least_squares(&m, 2, &[q_int(1), q_int(2)]);
        // x + y = 3/2 minimizes
        assert_eq!(&ls.particular[0] + &ls.particular[1], q(3, 2));
        assert_eq!(ls.directions.len(), 1);
    }
}
