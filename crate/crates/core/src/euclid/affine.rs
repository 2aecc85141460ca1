use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::isometry::{add, sub};
use crate::linalg::{dot, rref, solve_q, QMatrix, QVector};

/// An affine subspace `base + span(directions)` of `ℚ^d` in canonical form:
/// `directions` is the reduced row echelon basis of the direction space and
/// `base` is the point closest to the origin. Equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub base: QVector,
    pub directions: QMatrix,
}

/// Orthogonal projection of a vector onto `span(rows)` (rows independent).
fn project_linear(rows: &QMatrix, v: &[BigRational]) -> QVector {
    let d = v.len();
    if rows.is_empty() {
        return vec![BigRational::zero(); d];
    }
    let k = rows.len();
    let gram: QMatrix = rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: QVector = rows.iter().map(|a| dot(a, v)).collect();
    let c = solve_q(&gram, k, &rhs).expect("Gram matrix of independent rows is invertible");
    (0..d).map(|j| rows.iter().zip(&c).fold(BigRational::zero(), |acc, (r, ci)| acc + &r[j] * ci)).collect()
}

impl AffineSubspace {
    pub fn new(point: QVector, directions: QMatrix) -> Self {
        let d = point.len();
        let (dirs, _) = rref(&directions, d);
        let along = project_linear(&dirs, &point);
        AffineSubspace { base: sub(&point, &along), directions: dirs }
    }

    pub fn whole(d: usize) -> Self {
        Self::new(vec![BigRational::zero(); d], crate::linalg::identity_q(d))
    }

    pub fn point(x: QVector) -> Self {
        Self::new(x, Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &[BigRational]) -> QVector {
        add(&self.base, &project_linear(&self.directions, &sub(x, &self.base)))
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.project(x) == x
    }

    pub fn contains_direction(&self, v: &[BigRational]) -> bool {
        project_linear(&self.directions, v) == v
    }

    /// `other ⊆ self`.
    pub fn contains_subspace(&self, other: &AffineSubspace) -> bool {
        self.contains(&other.base) && other.directions.iter().all(|v| self.contains_direction(v))
    }

    /// Exact intersection, `None` when empty.
    pub fn intersection(&self, other: &AffineSubspace) -> Option<AffineSubspace> {
        let d = self.ambient_dim();
        let (k1, k2) = (self.dim(), other.dim());
        // base1 + D1ᵀ s = base2 + D2ᵀ t  ⇔  [D1ᵀ | −D2ᵀ] (s, t) = base2 − base1
        let mut m: QMatrix = vec![Vec::with_capacity(k1 + k2); d];
        for (j, row) in m.iter_mut().enumerate() {
            row.extend(self.directions.iter().map(|v| v[j].clone()));
            row.extend(other.directions.iter().map(|v| -v[j].clone()));
        }
        let rhs = sub(&other.base, &self.base);
        let st = solve_q(&m, k1 + k2, &rhs)?;
        let mut p = self.base.clone();
        for (v, s) in self.directions.iter().zip(&st[..k1]) {
            for (x, y) in p.iter_mut().zip(v) {
                *x += s * y;
            }
        }
        // directions: intersection of the two direction spaces
        let null = crate::linalg::nullspace_q(&m, k1 + k2);
        let dirs: QMatrix = null
            .iter()
            .map(|st| {
                (0..d)
                    .map(|j| self.directions.iter().zip(&st[..k1]).fold(BigRational::zero(), |a, (v, s)| a + &v[j] * s))
                    .collect()
            })
            .collect();
        Some(AffineSubspace::new(p, dirs))
    }

    /// Image of the subspace under orthogonal projection onto `self`.
    pub fn project_subspace(&self, other: &AffineSubspace) -> AffineSubspace {
        let base = self.project(&other.base);
        let dirs = other.directions.iter().map(|v| project_linear(&self.directions, v)).collect();
        AffineSubspace::new(base, dirs)
    }

    /// Orthogonal complement of `span(vs)` inside the direction space.
    pub fn directions_orthogonal_to(&self, vs: &QMatrix) -> QMatrix {
        if vs.is_empty() {
            return self.directions.clone();
        }
        let d = self.ambient_dim();
        let (basis, _) = rref(vs, d);
        let rest: QMatrix = self.directions.iter().map(|v| sub(v, &project_linear(&basis, v))).collect();
        rref(&rest, d).0
    }

    /// Direct sum of direction spaces through the same base.
    pub fn with_directions(&self, extra: &QMatrix) -> AffineSubspace {
        let dirs: QMatrix = self.directions.iter().chain(extra).cloned().collect();
        AffineSubspace::new(self.base.clone(), dirs)
    }
}

pub(crate) fn span_rank(vs: &QMatrix, d: usize) -> usize {
    rref(vs, d).1.len()
}
