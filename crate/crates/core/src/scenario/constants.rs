use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::euclid::RationalJson;
use crate::{Error, Result};

/// Scale constants of a scenario. `base` stands in for the factorial
/// constant of the patch construction.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstantsJson {
    pub n: u32,
    pub base: RationalJson,
    pub epsilon: RationalJson,
    pub mu: RationalJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<RationalJson>,
    /// Declared values, compared against the recomputed ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_prime: Option<RationalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_double_prime: Option<RationalJson>,
    /// Thin-part scenarios must keep `ε` below the threshold.
    #[serde(default = "yes")]
    pub thin_part: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub n: u32,
    pub base: BigRational,
    pub epsilon: BigRational,
    pub mu: BigRational,
    pub lambda: Option<BigRational>,
    pub epsilon_prime: Option<BigRational>,
    pub epsilon_double_prime: Option<BigRational>,
    pub thin_part: bool,
}

impl Constants {
    pub fn new(n: u32, base: BigRational, epsilon: BigRational, mu: BigRational) -> Self {
        Constants { n, base, epsilon, mu, lambda: None, epsilon_prime: None, epsilon_double_prime: None, thin_part: true }
    }

    pub fn from_json(j: &ConstantsJson) -> Result<Self> {
        let opt = |x: &Option<RationalJson>| x.as_ref().map(RationalJson::parse).transpose();
        Ok(Constants {
            n: j.n,
            base: j.base.parse()?,
            epsilon: j.epsilon.parse()?,
            mu: j.mu.parse()?,
            lambda: opt(&j.lambda)?,
            epsilon_prime: opt(&j.epsilon_prime)?,
            epsilon_double_prime: opt(&j.epsilon_double_prime)?,
            thin_part: j.thin_part,
        })
    }

    pub fn to_json(&self) -> ConstantsJson {
        let opt = |x: &Option<BigRational>| x.as_ref().map(RationalJson::from_q);
        ConstantsJson {
            n: self.n,
            base: RationalJson::from_q(&self.base),
            epsilon: RationalJson::from_q(&self.epsilon),
            mu: RationalJson::from_q(&self.mu),
            lambda: opt(&self.lambda),
            epsilon_prime: opt(&self.epsilon_prime),
            epsilon_double_prime: opt(&self.epsilon_double_prime),
            thin_part: self.thin_part,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScaleLadder {
    pub epsilon_prime: RationalJson,
    pub epsilon_double_prime: RationalJson,
    pub threshold: RationalJson,
    pub below_threshold: bool,
    pub declared_match: bool,
    pub ok: bool,
}

/// `ε′ = base·3ⁿ·ε`, `ε″ = 3ⁿ·base·ε′` and the thin-part threshold
/// `μ / (base^{2^{n−3}+2}·3ⁿ)`, all exact.
pub fn scale_ladder(c: &Constants) -> Result<ScaleLadder> {
    for (name, x) in [("base", &c.base), ("epsilon", &c.epsilon), ("mu", &c.mu)] {
        if !x.is_positive() {
            return Err(Error::NonPositive(name.into()));
        }
    }
    if c.lambda.as_ref().is_some_and(|l| !l.is_positive()) {
        return Err(Error::NonPositive("lambda".into()));
    }
    if c.n < 3 {
        return Err(Error::Hypothesis("the threshold needs n ≥ 3".into()));
    }
    // base^{2^{n−3}} is computed exactly, so keep the exponent sane.
    if c.n > 24 {
        return Err(Error::Hypothesis(format!("n = {} is too large for an exact threshold", c.n)));
    }
    let three_n = BigRational::from_integer(BigInt::from(3).pow(c.n));
    let eps1 = &c.base * &three_n * &c.epsilon;
    let eps2 = &three_n * &c.base * &eps1;
    let exponent = (1u32 << (c.n - 3)) + 2;
    let mut power = BigRational::one();
    for _ in 0..exponent {
        power *= &c.base;
    }
    let threshold = &c.mu / (power * &three_n);
    let below_threshold = c.epsilon < threshold;
    let declared_match = c.epsilon_prime.as_ref().map_or(true, |x| *x == eps1)
        && c.epsilon_double_prime.as_ref().map_or(true, |x| *x == eps2);
    let ok = declared_match && (!c.thin_part || below_threshold);
    Ok(ScaleLadder {
        epsilon_prime: RationalJson::from_q(&eps1),
        epsilon_double_prime: RationalJson::from_q(&eps2),
        threshold: RationalJson::from_q(&threshold),
        below_threshold,
        declared_match,
        ok,
    })
}
