//! Lattice-periodic unions of open boxes, their finite windows, and the
//! vanishing, quotient and covering checks run on them.

mod checks;
mod lift;
mod window;

pub use checks::{full_coverage, local_vanishing_check, orbit_cover_check, quotient_corner_check, quotient_homology, LocalVanishingVerdict, OrbitCoverVerdict, Outcome, QuotientCornerVerdict};
pub use lift::{cover_lift_check, CoverLiftVerdict, FiniteCover, FiniteCoverSpec, TwistJson};
pub use window::{stabilization_check, window_nerve, window_nerve_homology, DegreeStatus, StabilizationReport, WindowNerve};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::euclid::RationalJson;
use crate::groups::LatticeSubgroup;
use crate::linalg::q_int;
use crate::{Error, Result};

/// An open axis-aligned box with rational corners.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenBox {
    pub lo: Vec<BigRational>,
    pub hi: Vec<BigRational>,
}

impl OpenBox {
    pub fn new(lo: Vec<BigRational>, hi: Vec<BigRational>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidBoxes("box with an empty side".into()));
        }
        Ok(OpenBox { lo, hi })
    }

    pub fn from_ints(lo: &[i64], hi: &[i64]) -> Result<Self> {
        Self::new(lo.iter().map(|&x| q_int(x)).collect(), hi.iter().map(|&x| q_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn meets(&self, other: &OpenBox) -> bool {
        (0..self.dim()).all(|k| self.lo[k] < other.hi[k] && other.lo[k] < self.hi[k])
    }

    pub fn intersection(&self, other: &OpenBox) -> Option<OpenBox> {
        self.meets(other).then(|| OpenBox {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.max(b).clone()).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.min(b).clone()).collect(),
        })
    }

    pub fn shifted(&self, v: &[BigRational]) -> OpenBox {
        OpenBox {
            lo: self.lo.iter().zip(v).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(v).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn contains_point(&self, p: &[BigRational]) -> bool {
        (0..self.dim()).all(|k| self.lo[k] < p[k] && p[k] < self.hi[k])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoxJson {
    pub lo: Vec<RationalJson>,
    pub hi: Vec<RationalJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoxUnionJson {
    pub dim: usize,
    pub lattice: Vec<Vec<i64>>,
    pub boxes: Vec<BoxJson>,
}

/// `W = ∪_{λ∈Λ} ∪_i (B_i + λ)` for open boxes `B_i ⊂ ℝ^dim` and a lattice
/// `Λ ⊆ ℤ^dim` of rank `r` acting by translations.
///
/// A translate is addressed as `(i, c)` where `c` are coordinates in the
/// Hermite basis of `Λ`.
#[derive(Clone, Debug)]
pub struct BoxUnion {
    pub dim: usize,
    pub lattice: LatticeSubgroup,
    pub boxes: Vec<OpenBox>,
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl BoxUnion {
    pub fn new(dim: usize, lattice: &[Vec<i64>], boxes: Vec<OpenBox>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::InvalidBoxes("no boxes".into()));
        }
        if let Some(b) = boxes.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: b.dim() });
        }
        if boxes.iter().enumerate().any(|(i, b)| boxes[..i].contains(b)) {
            return Err(Error::InvalidBoxes("repeated box".into()));
        }
        let lattice = LatticeSubgroup::new(dim, lattice)?;
        let basis: Vec<Vec<BigRational>> =
            lattice.basis().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        let pivots = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
        Ok(BoxUnion { dim, lattice, boxes, basis, pivots })
    }

    pub fn from_json(j: &BoxUnionJson) -> Result<Self> {
        let boxes = j
            .boxes
            .iter()
            .map(|b| {
                let lo = b.lo.iter().map(RationalJson::parse).collect::<Result<_>>()?;
                let hi = b.hi.iter().map(RationalJson::parse).collect::<Result<_>>()?;
                OpenBox::new(lo, hi)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.dim, &j.lattice, boxes)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> BoxUnionJson {
        BoxUnionJson {
            dim: self.dim,
            lattice: self
                .lattice
                .basis()
                .iter()
                .map(|r| r.iter().map(|x| i64::try_from(x).expect("small lattice")).collect())
                .collect(),
            boxes: self
                .boxes
                .iter()
                .map(|b| BoxJson {
                    lo: b.lo.iter().map(RationalJson::from_q).collect(),
                    hi: b.hi.iter().map(RationalJson::from_q).collect(),
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k v_k`.
    pub fn lattice_vector(&self, c: &[i64]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim];
        for (row, &k) in self.basis.iter().zip(c) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += y * q_int(k);
            }
        }
        v
    }

    pub fn translate(&self, i: usize, c: &[i64]) -> OpenBox {
        self.boxes[i].shifted(&self.lattice_vector(c))
    }

    /// Coordinates `c` with `B_j + c` meeting `target`. The basis is in
    /// row echelon form, so each coordinate is bounded by the pivot column
    /// once the earlier ones are fixed.
    pub fn translates_meeting(&self, target: &OpenBox, j: usize) -> Vec<Vec<i64>> {
        let b = &self.boxes[j];
        // open range for the translation vector
        let lo: Vec<BigRational> = target.lo.iter().zip(&b.hi).map(|(t, x)| t - x).collect();
        let hi: Vec<BigRational> = target.hi.iter().zip(&b.lo).map(|(t, x)| t - x).collect();
        let mut out = Vec::new();
        let mut c = Vec::with_capacity(self.rank());
        self.enumerate(0, &mut c, &vec![BigRational::zero(); self.dim], &lo, &hi, &mut out);
        out.retain(|c| self.translate(j, c).meets(target));
        out
    }

    fn enumerate(
        &self,
        k: usize,
        c: &mut Vec<i64>,
        partial: &[BigRational],
        lo: &[BigRational],
        hi: &[BigRational],
        out: &mut Vec<Vec<i64>>,
    ) {
        if k == self.rank() {
            out.push(c.clone());
            return;
        }
        let p = self.pivots[k];
        let v = &self.basis[k][p];
        let first = ((&lo[p] - &partial[p]) / v).floor().to_integer() + 1;
        let last = ((&hi[p] - &partial[p]) / v).ceil().to_integer() - 1;
        let (first, last) = (i64::try_from(first).expect("bounded"), i64::try_from(last).expect("bounded"));
        for x in first..=last {
            let next: Vec<BigRational> =
                partial.iter().zip(&self.basis[k]).map(|(a, b)| a + b * q_int(x)).collect();
            c.push(x);
            self.enumerate(k + 1, c, &next, lo, hi, out);
            c.pop();
        }
    }

    /// Translates `(j, d)` meeting `B_i` (with `B_i` itself excluded).
    pub fn relative_neighbours(&self, i: usize) -> Vec<(usize, Vec<i64>)> {
        let zero = vec![0; self.rank()];
        (0..self.boxes.len())
            .flat_map(|j| self.translates_meeting(&self.boxes[i], j).into_iter().map(move |d| (j, d)))
            .filter(|(j, d)| !(*j == i && *d == zero))
            .collect()
    }
}
