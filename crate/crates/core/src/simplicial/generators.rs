//! Explicit homology bases, classes of cycles, and maps between them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ChainComplex, SparseMatrix};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// A basis of `H_d` of a chain complex.
///
/// Generators are listed torsion first (in divisibility order) and then free.
/// Coordinates of a class are integers, taken modulo the order for torsion
/// generators.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
    boundary: SparseMatrix,
    /// Kernel basis of `∂_d` as columns (in chain coordinates).
    kernel: IntMatrix,
    /// Rows mapping a chain to its kernel coordinates.
    to_kernel: IntMatrix,
    kernel_offset: usize,
    /// Change of basis in kernel coordinates.
    p: IntMatrix,
    p_inv: IntMatrix,
    /// Number of unit invariant factors skipped at the front.
    units: usize,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, d: usize) -> Self {
        let n = c.rank(d);
        let boundary = c.boundary(d);
        let s = smith_normal_form(&boundary.to_dense());
        let r = s.rank();
        let kernel = s.right.submatrix(0, n, r, n);
        let to_kernel = s.right_inv.clone();
        let z = n - r;
        // boundaries expressed in kernel coordinates
        let incoming = c.boundary(d + 1).to_dense();
        let bz = to_kernel.mul(&incoming).submatrix(r, n, 0, incoming.ncols());
        let t = smith_normal_form(&bz);
        let units = t.factors.iter().take_while(|f| f.is_one()).count();
        let torsion: Vec<BigInt> = t.factors[units..].to_vec();
        let free_rank = z - t.rank();
        HomologyBasis {
            degree: d,
            torsion,
            free_rank,
            boundary,
            kernel,
            to_kernel,
            kernel_offset: r,
            p: t.left,
            p_inv: t.left_inv,
            units,
        }
    }

    /// Number of generators (torsion plus free).
    pub fn len(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Order of generator `i`, or `None` when it has infinite order.
    pub fn order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    /// A representative cycle for generator `i`.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let col = self.p_inv.column(self.units + i);
        self.kernel.mul_vec(&col)
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        (0..self.len()).map(|i| self.generator(i)).collect()
    }

    /// Coordinates of the class of `cycle`; errors when it is not a cycle.
    pub fn class_of(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.boundary.apply(cycle).iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal(format!("chain is not a cycle in degree {}", self.degree)));
        }
        let all = self.to_kernel.mul_vec(cycle);
        let y = &all[self.kernel_offset..];
        let w = self.p.mul_vec(y);
        Ok((0..self.len())
            .map(|i| {
                let x = &w[self.units + i];
                match self.order(i) {
                    Some(t) => x.mod_floor(t),
                    None => x.clone(),
                }
            })
            .collect())
    }

    pub fn is_boundary(&self, cycle: &[BigInt]) -> Result<bool> {
        Ok(self.class_of(cycle)?.iter().all(Zero::is_zero))
    }
}

/// A homomorphism between two computed homology groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMap {
    pub degree: usize,
    /// Column `j` holds the coordinates of the image of source generator `j`.
    pub matrix: Vec<Vec<BigInt>>,
    pub source_torsion: Vec<BigInt>,
    pub target_torsion: Vec<BigInt>,
    pub source_rank: usize,
    pub target_rank: usize,
    pub is_zero: bool,
    /// Set when the degree lies outside both complexes and the zero map was
    /// returned by convention.
    pub out_of_range: bool,
}

impl InducedMap {
    /// Matrix as rows (target generators) by columns (source generators).
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        let m = self.target_torsion.len() + self.target_rank;
        (0..m).map(|i| self.matrix.iter().map(|c| c[i].clone()).collect()).collect()
    }
}

/// The map on `H_d` induced by a chain map given in degree `d`.
pub fn induced_map(
    source: &HomologyBasis,
    target: &HomologyBasis,
    chain_map: &SparseMatrix,
) -> Result<InducedMap> {
    let matrix: Vec<Vec<BigInt>> = source
        .generators()
        .iter()
        .map(|g| target.class_of(&chain_map.apply(g)))
        .collect::<Result<_>>()?;
    let is_zero = matrix.iter().flatten().all(Zero::is_zero);
    Ok(InducedMap {
        degree: source.degree,
        matrix,
        source_torsion: source.torsion.clone(),
        target_torsion: target.torsion.clone(),
        source_rank: source.free_rank,
        target_rank: target.free_rank,
        is_zero,
        out_of_range: false,
    })
}

/// A chain `x` with `∂_{d+1} x = c`, if `c` is a boundary.
pub fn solve_boundary(cc: &ChainComplex, d: usize, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = cc.boundary(d + 1).to_dense();
    let s = smith_normal_form(&b);
    let y = s.left.mul_vec(c);
    let mut z = vec![BigInt::zero(); b.ncols()];
    for (i, yi) in y.iter().enumerate() {
        match s.factors.get(i) {
            Some(f) => {
                let (q, r) = yi.div_rem(f);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            }
            None if !yi.is_zero() => return None,
            None => {}
        }
    }
    Some(s.right.mul_vec(&z))
}
