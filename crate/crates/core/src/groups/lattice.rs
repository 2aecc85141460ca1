use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{hermite_normal_form, integer_left_kernel, IntMatrix};
use crate::{Error, Result};

/// A subgroup of `ℤ^d`, stored by its Hermite normal form basis (rows).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSubgroup {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl LatticeSubgroup {
    pub fn new<T: Into<BigInt> + Clone>(ambient: usize, rows: &[Vec<T>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, got: r.len() });
        }
        let m = IntMatrix::from_rows(rows, ambient);
        Ok(Self::from_matrix(ambient, &m))
    }

    pub fn from_matrix(ambient: usize, m: &IntMatrix) -> Self {
        let h = hermite_normal_form(m);
        LatticeSubgroup { ambient, basis: h.to_rows() }
    }

    pub fn trivial(ambient: usize) -> Self {
        LatticeSubgroup { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_matrix(ambient, &IntMatrix::identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.basis, self.ambient)
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the subgroup.
    /// Back-substitution along the HNF pivots.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &LatticeSubgroup) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|r| self.contains_vector(r))
    }

    fn check_ambient(&self, other: &LatticeSubgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &LatticeSubgroup) -> Result<LatticeSubgroup> {
        self.check_ambient(other)?;
        let rows: Vec<Vec<BigInt>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_matrix(self.ambient, &IntMatrix::from_rows(&rows, self.ambient)))
    }

    /// `self ∩ other`, from the left kernel of the stacked bases.
    pub fn intersection(&self, other: &LatticeSubgroup) -> Result<LatticeSubgroup> {
        self.check_ambient(other)?;
        if self.is_trivial() || other.is_trivial() {
            return Ok(Self::trivial(self.ambient));
        }
        let rows: Vec<Vec<BigInt>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let k = integer_left_kernel(&IntMatrix::from_rows(&rows, self.ambient));
        let r1 = self.rank();
        let y = k.submatrix(0, k.nrows(), 0, r1);
        Ok(Self::from_matrix(self.ambient, &y.mul(&self.matrix())))
    }

    /// `Some(index)` when `self` has finite index in `sup`, `None` when the
    /// index is infinite. Errors when `self ⊄ sup`.
    pub fn finite_index_in(&self, sup: &LatticeSubgroup) -> Result<Option<BigInt>> {
        self.check_ambient(sup)?;
        if !sup.contains(self) {
            return Err(Error::NotASubgroup);
        }
        if self.rank() < sup.rank() {
            return Ok(None);
        }
        let coords: Vec<Vec<BigInt>> =
            self.basis.iter().map(|r| sup.coordinates(r).expect("checked containment")).collect();
        Ok(Some(IntMatrix::from_rows(&coords, sup.rank()).determinant().abs()))
    }

    /// `span_ℚ(self) ⊆ span_ℚ(other)`, i.e. `self ∩ other` has finite index
    /// in `self`.
    pub fn virtually_within(&self, other: &LatticeSubgroup) -> bool {
        let j = self.join(other).expect("same ambient");
        j.rank() == other.rank()
    }

    /// `span_ℚ(self) ∩ ℤ^d`, the smallest direct summand containing `self`.
    pub fn saturation(&self) -> LatticeSubgroup {
        let k = integer_left_kernel(&self.matrix().transpose());
        Self::from_matrix(self.ambient, &integer_left_kernel(&k.transpose()))
    }

    /// Subgroup generated by the `k`-th multiples of the basis.
    pub fn scaled(&self, k: i64) -> LatticeSubgroup {
        let rows: Vec<Vec<BigInt>> = self.basis.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        Self::from_matrix(self.ambient, &IntMatrix::from_rows(&rows, self.ambient))
    }
}

/// Group JSON: lattice or unitriangular.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupJson {
    Lattice { ambient: usize, rows: Vec<Vec<i64>> },
    Unitriangular { size: usize, generators: Vec<Vec<Vec<i64>>> },
}

impl Serialize for LatticeSubgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: &'static str,
            ambient: usize,
            rows: &'a [Vec<BigInt>],
        }
        Repr { kind: "lattice", ambient: self.ambient, rows: &self.basis }.serialize(s)
    }
}
