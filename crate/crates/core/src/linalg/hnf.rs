//! Row-style Hermite normal form and integer left kernels.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{smith_normal_form, IntMatrix};

/// Row Hermite normal form of the lattice spanned by the rows of `m`.
///
/// The result has only nonzero rows; pivots are positive and strictly move
/// right going down, and entries above a pivot lie in `[0, pivot)`. Two
/// matrices span the same lattice iff their forms are equal.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero magnitude in column c among rows r..
            let best = (r..rows)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by(|&x, &y| a.get(x, c).abs().cmp(&a.get(y, c).abs()).then(x.cmp(&y)));
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let pivot = a.get(r, c).clone();
            let mut done = true;
            for i in r + 1..rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let k = a.get(i, c).div_floor(&pivot);
                a.add_row_multiple(i, r, &-k);
                done &= a.get(i, c).is_zero();
            }
            if done {
                if a.get(r, c).is_negative() {
                    a.negate_row(r);
                }
                pivots.push((r, c));
                r += 1;
                break;
            }
        }
    }
    for &(pr, pc) in &pivots {
        let pivot = a.get(pr, pc).clone();
        for i in 0..pr {
            let k = a.get(i, pc).div_floor(&pivot);
            if !k.is_zero() {
                a.add_row_multiple(i, pr, &-k);
            }
        }
    }
    a.submatrix(0, r, 0, cols)
}

/// A basis (as rows) of `{x ∈ ℤ^rows : x · m = 0}`, in Hermite normal form.
pub fn integer_left_kernel(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let rank = s.rank();
    let k = s.left.submatrix(rank, m.nrows(), 0, m.nrows());
    hermite_normal_form(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn known_form() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        // lattice spanned by (2,4),(6,8) = (2,0),(0,4)
        assert_eq!(hermite_normal_form(&m), IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn drops_dependent_rows() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 0]]);
        assert_eq!(hermite_normal_form(&m), IntMatrix::from_i64(&[&[1, 2, 3]]));
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = IntMatrix::from_i64(&[&[1, 1], &[2, 2], &[0, 3]]);
        let k = integer_left_kernel(&m);
        assert_eq!(k.nrows(), 1);
        assert!(k.mul(&m).is_zero());
    }

    fn lattice_rows() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-5i64..=5, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntMatrix::from_rows(&rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn form_is_canonical(m in lattice_rows(), k in -3i64..=3, a in 0usize..4, b in 0usize..4) {
            let h = hermite_normal_form(&m);
            let mut moved = m.clone();
            let (a, b) = (a % m.nrows(), b % m.nrows());
            if a != b {
                moved.add_row_multiple(a, b, &BigInt::from(k));
            }
            moved.swap_rows(0, m.nrows() - 1);
            prop_assert_eq!(hermite_normal_form(&moved), h.clone());
            prop_assert_eq!(hermite_normal_form(&h), h);
        }
    }
}
