use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{dot, identity_q, mat_mul, mat_vec, q_int, transpose, QMatrix, QVector};
use crate::{Error, Result};

/// `x ↦ A x + b` with `A` rational orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub a: QMatrix,
    pub b: QVector,
}

/// A rational written as a JSON number or a `"p/q"` string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    pub fn parse(&self) -> Result<BigRational> {
        match self {
            RationalJson::Int(n) => Ok(q_int(*n)),
            RationalJson::Text(s) => {
                BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
            }
        }
    }

    pub fn from_q(x: &BigRational) -> Self {
        if x.is_integer() {
            if let Ok(n) = i64::try_from(x.to_integer()) {
                return RationalJson::Int(n);
            }
        }
        RationalJson::Text(x.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IsometryJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<RationalJson>>,
    pub b: Vec<RationalJson>,
}

impl Isometry {
    pub fn new(a: QMatrix, b: QVector) -> Result<Self> {
        let d = b.len();
        if a.len() != d || a.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: a.len() });
        }
        if mat_mul(&transpose(&a, d), &a) != identity_q(d) {
            return Err(Error::NotOrthogonal);
        }
        Ok(Isometry { a, b })
    }

    pub fn from_json(j: &IsometryJson) -> Result<Self> {
        let a = j.a.iter().map(|r| r.iter().map(RationalJson::parse).collect()).collect::<Result<_>>()?;
        let b = j.b.iter().map(RationalJson::parse).collect::<Result<_>>()?;
        Self::new(a, b)
    }

    pub fn to_json(&self) -> IsometryJson {
        IsometryJson {
            a: self.a.iter().map(|r| r.iter().map(RationalJson::from_q).collect()).collect(),
            b: self.b.iter().map(RationalJson::from_q).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn identity(d: usize) -> Self {
        Isometry { a: identity_q(d), b: vec![BigRational::zero(); d] }
    }

    pub fn translation(v: QVector) -> Self {
        Isometry { a: identity_q(v.len()), b: v }
    }

    pub fn linear(a: QMatrix) -> Result<Self> {
        let d = a.len();
        Self::new(a, vec![BigRational::zero(); d])
    }

    /// Rotation in the `(i, j)` coordinate plane with `cos = p/r`, `sin = q/r`
    /// for a Pythagorean triple `p² + q² = r²`.
    pub fn plane_rotation(d: usize, i: usize, j: usize, p: i64, q: i64, r: i64) -> Result<Self> {
        let mut a = identity_q(d);
        let c = BigRational::new(p.into(), r.into());
        let s = BigRational::new(q.into(), r.into());
        a[i][i] = c.clone();
        a[j][j] = c;
        a[i][j] = -s.clone();
        a[j][i] = s;
        Self::linear(a)
    }

    pub fn apply(&self, x: &[BigRational]) -> QVector {
        mat_vec(&self.a, x).into_iter().zip(&self.b).map(|(y, c)| y + c).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { a: mat_mul(&self.a, &other.a), b: self.apply(&other.b) }
    }

    pub fn inverse(&self) -> Isometry {
        let at = transpose(&self.a, self.dim());
        let b = mat_vec(&at, &self.b).into_iter().map(|x| -x).collect();
        Isometry { a: at, b }
    }

    pub fn power(&self, k: u64) -> Isometry {
        let mut acc = Isometry::identity(self.dim());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity(self.dim())
    }

    pub fn commutes_with(&self, other: &Isometry) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// `|φ(x) − x|²`.
    pub fn displacement_sq(&self, x: &[BigRational]) -> BigRational {
        let y = self.apply(x);
        let diff: QVector = y.iter().zip(x).map(|(a, b)| a - b).collect();
        dot(&diff, &diff)
    }

    /// Direct sum acting on complementary coordinate blocks.
    pub fn block_sum(&self, other: &Isometry) -> Isometry {
        let (m, n) = (self.dim(), other.dim());
        let mut a = vec![vec![BigRational::zero(); m + n]; m + n];
        for i in 0..m {
            for j in 0..m {
                a[i][j] = self.a[i][j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                a[m + i][m + j] = other.a[i][j].clone();
            }
        }
        Isometry { a, b: self.b.iter().chain(&other.b).cloned().collect() }
    }

    /// Smallest `k ≥ 1` with `A^k = I`, searched up to `limit`.
    pub fn linear_order(&self, limit: u64) -> Option<u64> {
        let id = identity_q(self.dim());
        let mut p = self.a.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = mat_mul(&p, &self.a);
        }
        None
    }
}

pub fn qvec(v: &[i64]) -> QVector {
    v.iter().map(|&x| q_int(x)).collect()
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

