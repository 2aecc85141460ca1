use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::linalg::{sparse_invariant_factors, IntMatrix};
use crate::{Error, Result};

/// Column-major sparse integer matrix. Entries are small (boundary signs and
/// chain-map coefficients); every reduction promotes them to big integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Sorts each column by row and merges repeated rows.
    pub fn normalize(&mut self) {
        for col in &mut self.cols {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *col = merged;
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                *m.get_mut(i, j) += v;
            }
        }
        m
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for &(i, a) in col {
                out[i] += &v[j] * a;
            }
        }
        out
    }

    /// `self ∘ other`, i.e. the product `self · other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.nrows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            let mut acc: Vec<(usize, i64)> = Vec::new();
            for &(k, a) in col {
                for &(i, b) in &self.cols[k] {
                    acc.push((i, a * b));
                }
            }
            out.cols[j] = acc;
        }
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }
}

/// A finite chain complex of free abelian groups.
///
/// `ranks[d]` is the rank of `C_d`; `boundaries[d]` is `∂_d : C_d → C_{d-1}`
/// (so `boundaries[0]` is the zero map to nothing).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, mut boundaries: Vec<SparseMatrix>) -> Self {
        for b in &mut boundaries {
            b.normalize();
        }
        ChainComplex { ranks, boundaries }
    }

    pub fn of_complex(c: &SimplicialComplex) -> Self {
        let top = c.dim().map_or(0, |d| d + 1);
        let ranks: Vec<usize> = (0..top).map(|d| c.count(d)).collect();
        let boundaries = (0..top)
            .map(|d| {
                if d == 0 {
                    return SparseMatrix::zero(0, c.count(0));
                }
                let cols = c
                    .simplices(d)
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|skip| (c.face_index(s, skip), if skip % 2 == 0 { 1 } else { -1 }))
                            .collect()
                    })
                    .collect();
                SparseMatrix { nrows: c.count(d - 1), cols }
            })
            .collect();
        Self::new(ranks, boundaries)
    }

    /// One past the top nonzero degree.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    /// `∂_d`, with the correct (possibly empty) shape outside the stored range.
    pub fn boundary(&self, d: usize) -> SparseMatrix {
        match self.boundaries.get(d) {
            Some(b) => b.clone(),
            None => SparseMatrix::zero(if d == 0 { 0 } else { self.rank(d - 1) }, self.rank(d)),
        }
    }

    /// Exact `∂_{d-1} ∂_d = 0` check; reports the first offending degree.
    pub fn check(&self) -> Result<()> {
        for d in 2..self.boundaries.len() {
            if !self.boundaries[d - 1].compose(&self.boundaries[d]).is_zero() {
                return Err(Error::MalformedComplex { degree: d });
            }
        }
        Ok(())
    }

    pub fn homology(&self) -> Result<HomologySummary> {
        self.check()?;
        Ok(self.homology_unchecked())
    }

    pub(crate) fn homology_unchecked(&self) -> HomologySummary {
        let n = self.len();
        let factors: Vec<Vec<BigInt>> = (0..=n)
            .into_par_iter()
            .map(|d| {
                if d == 0 || d >= n {
                    return Vec::new();
                }
                let b = &self.boundaries[d];
                sparse_invariant_factors(b.nrows, &b.cols)
            })
            .collect();
        let mut betti = Vec::with_capacity(n);
        let mut torsion = Vec::with_capacity(n);
        for d in 0..n {
            let r_in = factors[d + 1].len();
            let r_out = factors[d].len();
            betti.push(self.ranks[d] - r_out - r_in);
            torsion.push(factors[d + 1].iter().filter(|f| !f.is_one()).cloned().collect());
        }
        let mut h = HomologySummary { betti, torsion };
        h.trim();
        h
    }
}

/// Betti numbers and torsion invariant factors per degree, trailing zero
/// degrees removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    fn trim(&mut self) {
        while self.betti.last() == Some(&0) && self.torsion.last().map_or(false, Vec::is_empty) {
            self.betti.pop();
            self.torsion.pop();
        }
    }

    /// Drops every degree above `top`.
    pub(crate) fn truncate(&mut self, top: usize) {
        self.betti.truncate(top + 1);
        self.torsion.truncate(top + 1);
        self.trim();
    }

    pub fn betti(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }

    pub fn torsion(&self, d: usize) -> &[BigInt] {
        self.torsion.get(d).map_or(&[], |t| t.as_slice())
    }

    pub fn vanishes_in(&self, d: usize) -> bool {
        self.betti(d) == 0 && self.torsion(d).is_empty()
    }

    /// `H_d = 0` for every `d ≥ from`.
    pub fn vanishes_from(&self, from: usize) -> bool {
        (from..self.betti.len()).all(|d| self.vanishes_in(d))
    }

    /// Reduced homology: one copy of ℤ removed from `H_0` when nonempty.
    pub fn reduced(&self) -> HomologySummary {
        let mut h = self.clone();
        if let Some(b0) = h.betti.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        h.trim();
        h
    }

    /// True iff all reduced homology vanishes (the space is nonempty).
    pub fn is_acyclic(&self) -> bool {
        self.betti(0) == 1 && self.reduced().betti.is_empty()
    }

    /// Top degree with nonzero homology.
    pub fn top(&self) -> Option<usize> {
        self.betti.len().checked_sub(1)
    }
}

impl std::fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.betti.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = (0..self.betti.len())
            .map(|d| {
                let mut terms = Vec::new();
                if self.betti[d] > 0 {
                    terms.push(if self.betti[d] == 1 { "Z".to_string() } else { format!("Z^{}", self.betti[d]) });
                }
                terms.extend(self.torsion[d].iter().map(|t| format!("Z/{t}")));
                let g = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
                format!("H{d}={g}")
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn homology(c: &SimplicialComplex) -> HomologySummary {
    ChainComplex::of_complex(c).homology_unchecked()
}
