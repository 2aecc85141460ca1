#![allow(dead_code)]

use nerveforge_core::linalg::{q_int, rank_q, QMatrix};
use nerveforge_core::simplicial::{SimplicialComplex, SparseMatrix};

pub fn complex(simplices: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_simplices(simplices.iter().copied()).unwrap()
}

#[allow(unused_imports)]
pub use nerveforge_core::models::{rp2, sphere2, torus7};

/// Annulus with inner circle 0,1,2 and outer circle 3,4,5.
pub fn annulus() -> SimplicialComplex {
    complex(&[&[0, 1, 3], &[1, 3, 4], &[1, 2, 4], &[2, 4, 5], &[0, 2, 5], &[0, 3, 5]])
}

pub fn circle(a: u32, b: u32, c: u32) -> SimplicialComplex {
    complex(&[&[a, b], &[b, c], &[a, c]])
}

/// Rank of an integer matrix over the field with `p` elements (p prime) or
/// over ℚ when `p == 0`.
pub fn rank_mod(m: &SparseMatrix, p: i64) -> usize {
    if p == 0 {
        let mut dense: QMatrix = vec![vec![q_int(0); m.ncols()]; m.nrows];
        for (j, col) in m.cols.iter().enumerate() {
            for &(i, v) in col {
                dense[i][j] = q_int(v);
            }
        }
        return rank_q(&dense, m.ncols());
    }
    let mut a: Vec<Vec<i64>> = vec![vec![0; m.ncols()]; m.nrows];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            a[i][j] = (a[i][j] + v).rem_euclid(p);
        }
    }
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..m.ncols() {
        let Some(r) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, r);
        let k = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = *x * k % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..a[r].len() {
                    a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Homology dimensions over a field via rank–nullity.
pub fn field_betti(c: &SimplicialComplex, p: i64) -> Vec<usize> {
    let cc = nerveforge_core::simplicial::ChainComplex::of_complex(c);
    let ranks: Vec<usize> = (0..=cc.len()).map(|d| if d == 0 { 0 } else { rank_mod(&cc.boundary(d), p) }).collect();
    let mut out: Vec<usize> = (0..cc.len()).map(|d| cc.rank(d) - ranks[d] - ranks[d + 1]).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}
