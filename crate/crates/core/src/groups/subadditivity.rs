use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::euclid::Isometry;
use crate::linalg::{dot, QVector};
use crate::{Error, Result};

/// Writes `√x` (x ≥ 0 rational) as `c·√m` with `m` a squarefree integer.
///
/// Trial division up to 2^20; a cofactor with no prime factor below the
/// bound is squarefree unless it is a perfect square, provided it is below
/// 2^60. Larger cofactors are refused.
pub fn sqrt_decompose(x: &BigRational) -> Result<(BigRational, BigInt)> {
    if x.is_zero() {
        return Ok((BigRational::zero(), BigInt::one()));
    }
    let n = x.numer() * x.denom();
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut m = BigInt::one();
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1u64 << 20);
    while &p * &p <= rest && p < bound {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &p;
        }
        if e % 2 == 1 {
            m *= &p;
        }
        p += if p == BigInt::from(2u32) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            f *= s;
        } else if rest.bits() > 60 && &p * &p <= rest {
            return Err(Error::Internal("square root too large to certify".into()));
        } else {
            m *= rest;
        }
    }
    Ok((BigRational::new(f, x.denom().clone()), m))
}

/// Sign of `Σ c_m √m` over distinct squarefree `m`, decided by interval
/// refinement (square roots of distinct squarefree integers are linearly
/// independent, so the sum is zero iff every coefficient is).
fn sign_of_surd_sum(terms: &BTreeMap<BigInt, BigRational>) -> std::cmp::Ordering {
    let live: Vec<(&BigInt, &BigRational)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
    if live.is_empty() {
        return std::cmp::Ordering::Equal;
    }
    let mut bits = 16u64;
    loop {
        let scale = BigInt::one() << bits;
        let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
        for (m, c) in &live {
            // floor(√m · 2^bits) ≤ √m · 2^bits < floor + 1
            let s = (*m * &scale * &scale).sqrt();
            let a = BigRational::new(s.clone(), scale.clone());
            let b = BigRational::new(s + 1, scale.clone());
            if c.is_positive() {
                lo += *c * &a;
                hi += *c * &b;
            } else {
                lo += *c * &b;
                hi += *c * &a;
            }
        }
        if lo.is_positive() {
            return std::cmp::Ordering::Greater;
        }
        if hi.is_negative() {
            return std::cmp::Ordering::Less;
        }
        bits *= 2;
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubadditivityVerdict {
    /// `|γ₁⋯γ_r x − x|²`
    pub lhs_sq: BigRational,
    /// `|γ_i x − x|²`
    pub terms_sq: Vec<BigRational>,
    pub holds: bool,
    pub equality: bool,
}

/// `d(γ₁⋯γ_r x, x) ≤ Σ d(γ_i x, x)`, decided exactly.
pub fn subadditivity_check(isos: &[Isometry], x: &QVector) -> Result<SubadditivityVerdict> {
    let d = x.len();
    if let Some(g) = isos.iter().find(|g| g.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: g.dim() });
    }
    let product = isos.iter().fold(Isometry::identity(d), |acc, g| acc.compose(g));
    let dist_sq = |g: &Isometry| {
        let y = g.apply(x);
        let diff: QVector = y.iter().zip(x).map(|(a, b)| a - b).collect();
        dot(&diff, &diff)
    };
    let lhs_sq = dist_sq(&product);
    let terms_sq: Vec<BigRational> = isos.iter().map(dist_sq).collect();
    let mut surds: BTreeMap<BigInt, BigRational> = BTreeMap::new();
    for t in &terms_sq {
        let (c, m) = sqrt_decompose(t)?;
        *surds.entry(m).or_insert_with(BigRational::zero) += c;
    }
    let (c, m) = sqrt_decompose(&lhs_sq)?;
    *surds.entry(m).or_insert_with(BigRational::zero) -= c;
    let sign = sign_of_surd_sum(&surds);
    Ok(SubadditivityVerdict {
        lhs_sq,
        terms_sq,
        holds: sign != std::cmp::Ordering::Less,
        equality: sign == std::cmp::Ordering::Equal,
    })
}
