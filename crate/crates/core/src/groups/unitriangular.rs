use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{rank_q, IntMatrix, QMatrix, QVector};
use crate::{Error, Result};

/// A subgroup of `UT(k, ℤ)` (k = 3 or 4) given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitriangularGroup {
    pub size: usize,
    pub generators: Vec<IntMatrix>,
}

pub(crate) fn is_unitriangular(m: &IntMatrix) -> bool {
    let k = m.nrows();
    m.ncols() == k
        && (0..k).all(|i| {
            (0..k).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => m.get(i, j).is_one(),
                std::cmp::Ordering::Greater => m.get(i, j).is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
}

/// Inverse of a unitriangular matrix: `I − N + N² − N³ + …`.
pub fn ut_inverse(m: &IntMatrix) -> IntMatrix {
    let k = m.nrows();
    let id = IntMatrix::identity(k);
    let mut n = m.clone();
    for i in 0..k {
        *n.get_mut(i, i) -= 1;
    }
    let mut acc = id.clone();
    let mut power = id;
    for e in 1..k {
        power = power.mul(&n);
        let sign = if e % 2 == 1 { -1 } else { 1 };
        for i in 0..k {
            for j in 0..k {
                let v = power.get(i, j) * sign;
                *acc.get_mut(i, j) += v;
            }
        }
    }
    acc
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.mul(b).mul(&ut_inverse(a)).mul(&ut_inverse(b))
}

/// Logarithm of a unitriangular matrix, `N − N²/2 + N³/3 − …`, exact.
pub fn ut_log(m: &IntMatrix) -> QMatrix {
    let k = m.nrows();
    let mut n = m.clone();
    for i in 0..k {
        *n.get_mut(i, i) -= 1;
    }
    let mut acc: QMatrix = vec![vec![BigRational::zero(); k]; k];
    let mut power = IntMatrix::identity(k);
    for e in 1..k {
        power = power.mul(&n);
        let c = BigRational::new(BigInt::from(if e % 2 == 1 { 1 } else { -1 }), BigInt::from(e));
        for i in 0..k {
            for j in 0..k {
                acc[i][j] += &c * BigRational::from_integer(power.get(i, j).clone());
            }
        }
    }
    acc
}

fn upper_vec(m: &QMatrix) -> QVector {
    let k = m.len();
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| m[i][j].clone()).collect()
}

fn bracket(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let ab = crate::linalg::mat_mul(a, b);
    let ba = crate::linalg::mat_mul(b, a);
    ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

impl UnitriangularGroup {
    pub fn new(size: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        if !(3..=4).contains(&size) {
            return Err(Error::UnsupportedSize(size));
        }
        if generators.iter().any(|g| g.nrows() != size || !is_unitriangular(g)) {
            return Err(Error::NotUnitriangular);
        }
        Ok(UnitriangularGroup { size, generators })
    }

    pub fn from_json(size: usize, gens: &[Vec<Vec<i64>>]) -> Result<Self> {
        let mats = gens
            .iter()
            .map(|g| {
                if g.len() != size || g.iter().any(|r| r.len() != size) {
                    return Err(Error::NotUnitriangular);
                }
                Ok(IntMatrix::from_rows(g, size))
            })
            .collect::<Result<_>>()?;
        Self::new(size, mats)
    }

    /// Elementary matrix `I + E_{ij}` (0-based).
    pub fn elementary(size: usize, i: usize, j: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(size);
        m.set(i, j, BigInt::one());
        m
    }

    /// Nilpotency class bound `k − 1`.
    pub fn class_bound(&self) -> usize {
        self.size - 1
    }

    /// Hirsch rank: dimension of the rational Lie algebra generated by the
    /// logarithms of the generators.
    pub fn hirsch_rank(&self) -> usize {
        let mut basis: Vec<QMatrix> = Vec::new();
        let dim = self.size * (self.size - 1) / 2;
        let rank_of = |ms: &[QMatrix]| rank_q(&ms.iter().map(upper_vec).collect(), dim);
        let mut frontier: Vec<QMatrix> = self.generators.iter().map(ut_log).collect();
        loop {
            let mut grew = false;
            for m in frontier.drain(..) {
                basis.push(m);
                if rank_of(&basis) < basis.len() {
                    basis.pop();
                } else {
                    grew = true;
                }
            }
            if !grew {
                return basis.len();
            }
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    frontier.push(bracket(&basis[a], &basis[b]));
                }
            }
        }
    }

    /// Commutator descent: start from the first nontrivial generator and
    /// replace the current element by its commutator with the first
    /// generator it fails to commute with, until it is central.
    pub fn small_central_element(&self) -> Result<GroupWord> {
        let id = IntMatrix::identity(self.size);
        let first = self.generators.iter().position(|g| *g != id).ok_or(Error::TrivialGroup)?;
        let mut w = GroupWord { letters: vec![(first, 1)], element: self.generators[first].clone() };
        loop {
            let hit = self
                .generators
                .iter()
                .enumerate()
                .find(|(_, g)| commutator(&w.element, g) != id);
            let Some((i, g)) = hit else { return Ok(w) };
            let mut letters = w.letters.clone();
            letters.push((i, 1));
            letters.extend(w.letters.iter().rev().map(|&(j, e)| (j, -e)));
            letters.push((i, -1));
            w = GroupWord { letters, element: commutator(&w.element, g) };
        }
    }

    pub fn commutes_with_generators(&self, m: &IntMatrix) -> bool {
        self.generators.iter().all(|g| g.mul(m) == m.mul(g))
    }
}

/// A word in the generators and the element it evaluates to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord {
    /// (generator index, exponent ±1)
    pub letters: Vec<(usize, i8)>,
    pub element: IntMatrix,
}

impl GroupWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self, g: &UnitriangularGroup) -> IntMatrix {
        self.letters.iter().fold(IntMatrix::identity(g.size), |acc, &(i, e)| {
            let x = &g.generators[i];
            acc.mul(&if e > 0 { x.clone() } else { ut_inverse(x) })
        })
    }

    /// Letters as `g0 g1^-1 …`.
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|&(i, e)| if e > 0 { format!("g{i}") } else { format!("g{i}^-1") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}
