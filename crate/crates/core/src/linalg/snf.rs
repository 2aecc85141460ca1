//! Smith normal form over the integers.
//!
//! Two routes are provided. [`smith_normal_form`] works on dense matrices
//! and tracks both unimodular transforms and their inverses; it is what the
//! homology-generator and induced-map machinery uses. [`sparse_invariant_factors`]
//! only produces the invariant factors, works column by column on a sparse
//! copy, and is what large Betti/torsion computations use. Both are exact.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of a Smith normal form computation: `left * m * right = diag(factors)`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[t] += k row[s]
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        self.d.add_row_multiple(t, s, k);
        self.u.add_row_multiple(t, s, k);
        self.u_inv.add_col_multiple(s, t, &-k);
    }

    // col[t] += k col[s]
    fn add_col(&mut self, t: usize, s: usize, k: &BigInt) {
        self.d.add_col_multiple(t, s, k);
        self.v.add_col_multiple(t, s, k);
        self.v_inv.add_row_multiple(s, t, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero magnitude in the active block, ties broken by (row, col).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.d.nrows() {
            for j in t..self.d.ncols() {
                let a = self.d.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let m = a.abs();
                if best.as_ref().map_or(true, |(b, _, _)| m < *b) {
                    let unit = m.is_one();
                    best = Some((m, i, j));
                    if unit && i == t && j == t {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivoting always selects the smallest-magnitude nonzero entry of the
/// remaining block, breaking ties by `(row, column)`, so the transforms are
/// a deterministic function of the input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut r = Reducer {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.min_pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            let pivot = r.d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if r.d.get(i, t).is_zero() {
                    continue;
                }
                let k = r.d.get(i, t).div_floor(&pivot);
                r.add_row(i, t, &-k);
                dirty |= !r.d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if r.d.get(t, j).is_zero() {
                    continue;
                }
                let k = r.d.get(t, j).div_floor(&pivot);
                r.add_col(j, t, &-k);
                dirty |= !r.d.get(t, j).is_zero();
            }
            if dirty {
                let (pi, pj) = r.min_pivot(t).expect("nonzero remainder exists");
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !r.d.get(i, j).mod_floor(&pivot).is_zero())
            });
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.d.get(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..t).map(|i| r.d.get(i, i).clone()).collect();
    SmithForm { factors, left: r.u, left_inv: r.u_inv, right: r.v, right_inv: r.v_inv }
}

/// Turns any list of nonzero diagonal entries into the invariant factors of
/// the diagonal matrix they form (positive, divisibility chain, same length).
pub fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut units = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diag {
        let d = d.abs();
        debug_assert!(!d.is_zero());
        if d.is_one() {
            units += 1;
        } else {
            rest.push(d);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g == rest[i] {
                continue;
            }
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    // after the pass each entry divides every later one, so ones come first
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    out
}

/// Invariant factors of a sparse integer matrix given by columns of
/// `(row, value)` pairs. Pivots are chosen column by column (smallest
/// magnitude in the current column, then the shortest row to limit
/// fill-in, then the lowest index); the factors are the same
/// as those of [`smith_normal_form`] since invariant factors are unique.
pub fn sparse_invariant_factors(nrows: usize, columns: &[Vec<(usize, i64)>]) -> Vec<BigInt> {
    let ncols = columns.len();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); nrows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (j, col) in columns.iter().enumerate() {
        for &(i, v) in col {
            if v != 0 {
                *rows[i].entry(j).or_insert_with(BigInt::zero) += v;
            }
        }
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.retain(|_, v| !v.is_zero());
        for &j in r.keys() {
            cols[j].insert(i);
        }
    }

    let mut diag = Vec::new();
    for q in 0..ncols {
        loop {
            let Some(p) = cols[q]
                .iter()
                .min_by(|&&a, &&b| {
                    rows[a][&q]
                        .abs()
                        .cmp(&rows[b][&q].abs())
                        .then(rows[a].len().cmp(&rows[b].len()))
                        .then(a.cmp(&b))
                })
                .copied()
            else {
                break;
            };
            let pivot = rows[p][&q].clone();
            let mut remainder = false;
            let others: Vec<usize> = cols[q].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let k = rows[r][&q].div_floor(&pivot);
                row_sub(&mut rows, &mut cols, r, p, &k);
                remainder |= rows[r].contains_key(&q);
            }
            if remainder {
                continue;
            }
            let row_entries: Vec<usize> = rows[p].keys().copied().filter(|&j| j != q).collect();
            let mut smallest: Option<(BigInt, usize)> = None;
            for j in row_entries {
                // cols[q] == {p}, so the column operation only touches row p
                let a = rows[p][&j].clone();
                let rem = a.mod_floor(&pivot);
                if rem.is_zero() {
                    rows[p].remove(&j);
                    cols[j].remove(&p);
                } else {
                    let m = rem.abs();
                    if smallest.as_ref().map_or(true, |(b, _)| m < *b) {
                        smallest = Some((m, j));
                    }
                    rows[p].insert(j, rem);
                }
            }
            if let Some((_, j)) = smallest {
                swap_columns(&mut rows, &mut cols, q, j);
                continue;
            }
            diag.push(pivot.abs());
            rows[p].clear();
            cols[q].clear();
            break;
        }
    }
    normalize_diagonal(diag)
}

fn row_sub(
    rows: &mut [BTreeMap<usize, BigInt>],
    cols: &mut [BTreeSet<usize>],
    target: usize,
    src: usize,
    k: &BigInt,
) {
    if k.is_zero() {
        return;
    }
    let src_row: Vec<(usize, BigInt)> = rows[src].iter().map(|(&j, v)| (j, v.clone())).collect();
    for (j, v) in src_row {
        let entry = rows[target].entry(j).or_insert_with(BigInt::zero);
        *entry -= k * v;
        if entry.is_zero() {
            rows[target].remove(&j);
            cols[j].remove(&target);
        } else {
            cols[j].insert(target);
        }
    }
}

fn swap_columns(
    rows: &mut [BTreeMap<usize, BigInt>],
    cols: &mut [BTreeSet<usize>],
    a: usize,
    b: usize,
) {
    let touched: BTreeSet<usize> = cols[a].union(&cols[b]).copied().collect();
    for i in touched {
        let va = rows[i].remove(&a);
        let vb = rows[i].remove(&b);
        if let Some(v) = va {
            rows[i].insert(b, v);
        }
        if let Some(v) = vb {
            rows[i].insert(a, v);
        }
    }
    cols.swap(a, b);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn to_columns(m: &IntMatrix) -> Vec<Vec<(usize, i64)>> {
        (0..m.ncols())
            .map(|j| {
                (0..m.nrows())
                    .filter_map(|i| {
                        let v: i64 = m.get(i, j).try_into().unwrap();
                        (v != 0).then_some((i, v))
                    })
                    .collect()
            })
            .collect()
    }

    /// Independent oracle: invariant factors from determinantal divisors
    /// d_k = gcd of all k×k minors, factors are d_k / d_{k-1}.
    fn determinantal_oracle(m: &IntMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut factors = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=m.nrows().min(m.ncols()) {
            let mut g = BigInt::zero();
            for rs in subsets(m.nrows(), k) {
                for cs in subsets(m.ncols(), k) {
                    let mut sub = IntMatrix::zeros(k, k);
                    for (a, &i) in rs.iter().enumerate() {
                        for (b, &j) in cs.iter().enumerate() {
                            sub.set(a, b, m.get(i, j).clone());
                        }
                    }
                    g = g.gcd(&sub.determinant());
                }
            }
            if g.is_zero() {
                break;
            }
            factors.push(&g / &prev);
            prev = g;
        }
        factors
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let expected = if i == j && i < s.factors.len() {
                    s.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &expected, "U M V not diagonal for {m:?}");
            }
        }
        assert_eq!(s.left.mul(&s.left_inv), IntMatrix::identity(m.nrows()));
        assert_eq!(s.right.mul(&s.right_inv), IntMatrix::identity(m.ncols()));
        for w in s.factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn identity_has_unit_factors() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.factors, ints(&[1, 1]));
    }

    #[test]
    fn two_four_six_eight() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(determinantal_oracle(&m), ints(&[2, 4]));
        assert_eq!(check(&m).factors, ints(&[2, 4]));
        assert_eq!(sparse_invariant_factors(2, &to_columns(&m)), ints(&[2, 4]));
    }

    #[test]
    fn zero_and_empty() {
        assert!(check(&IntMatrix::zeros(3, 2)).factors.is_empty());
        assert!(check(&IntMatrix::zeros(0, 4)).factors.is_empty());
        assert!(sparse_invariant_factors(3, &[vec![], vec![]]).is_empty());
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) has invariant factors (1, 6)
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(check(&m).factors, ints(&[1, 6]));
        assert_eq!(sparse_invariant_factors(2, &to_columns(&m)), ints(&[1, 6]));
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_i64(&[&[3, 5, 7], &[2, -4, 6], &[9, 0, 1]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntMatrix::from_rows(&rows, c)
            })
        })
    }

    /// Random unimodular matrix as a product of elementary operations.
    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for &(a, b, k) in ops {
            let (a, b) = (a % n, b % n);
            if a != b {
                m.add_row_multiple(a, b, &BigInt::from(k));
            } else {
                m.swap_rows(a, (a + 1) % n);
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn matches_determinantal_divisors(m in small_matrix()) {
            let s = check(&m);
            prop_assert_eq!(&s.factors, &determinantal_oracle(&m));
            prop_assert_eq!(sparse_invariant_factors(m.nrows(), &to_columns(&m)), s.factors);
        }

        #[test]
        fn invariant_under_unimodular_change(
            m in small_matrix(),
            lops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
            rops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
        ) {
            let p = unimodular(m.nrows(), &lops);
            let q = unimodular(m.ncols(), &rops);
            let moved = p.mul(&m).mul(&q);
            prop_assert_eq!(smith_normal_form(&moved).factors, smith_normal_form(&m).factors);
        }
    }
}
