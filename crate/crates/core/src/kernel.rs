//! Problem instances and the exact existence criterion.
//!
//! A [`Profile`] describes
//!
//! ```text
//!            x1^a1 * ... * xN^aN
//! f(x) = -----------------------------
//!        c1*x1^(2m1) + ... + cN*xN^(2mN)
//! ```
//!
//! whose denominator vanishes only at the origin. The limit of `f` at the
//! origin is governed entirely by `sigma = sum(ai / 2mi)`: for `N > 1` it
//! exists (and is zero) exactly when `sigma > 1`. Nothing in this module
//! touches floating point except [`rescale_factors`], which is only meant
//! for numerical evaluation.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::serial;

/// Reasons a [`Profile`] or [`GeneralizedProfile`] cannot be built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("a profile needs at least one variable")]
    Empty,
    #[error("length mismatch: {what} has {got} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("half-degree m[{index}] must be at least 1")]
    ZeroHalfDegree { index: usize },
    #[error("coefficient c[{index}] = {value} must be positive")]
    NonPositiveCoefficient { index: usize, value: BigRational },
    #[error("exponent d[{index}] = {value} must be non-negative")]
    NegativeExponent { index: usize, value: BigRational },
}

/// The public problem instance: integer numerator exponents `a`, half-degrees
/// `m` (the denominator term is `c_i * x_i^(2 m_i)`) and positive rational
/// coefficients `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "serial::ProfileRepr", into = "serial::ProfileRepr")]
pub struct Profile {
    a: Vec<u32>,
    m: Vec<u32>,
    c: Vec<BigRational>,
}

impl Profile {
    pub fn new(a: Vec<u32>, m: Vec<u32>, c: Vec<BigRational>) -> Result<Self, ProfileError> {
        let n = a.len();
        if n == 0 {
            return Err(ProfileError::Empty);
        }
        check_len("m", m.len(), n)?;
        check_len("c", c.len(), n)?;
        if let Some(index) = m.iter().position(|&mi| mi == 0) {
            return Err(ProfileError::ZeroHalfDegree { index });
        }
        if let Some(index) = c.iter().position(|ci| !ci.is_positive()) {
            return Err(ProfileError::NonPositiveCoefficient {
                index,
                value: c[index].clone(),
            });
        }
        Ok(Self { a, m, c })
    }

    /// A profile with every coefficient equal to one.
    pub fn with_unit_coefficients(a: Vec<u32>, m: Vec<u32>) -> Result<Self, ProfileError> {
        let c = vec![BigRational::one(); a.len()];
        Self::new(a, m, c)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn c(&self) -> &[BigRational] {
        &self.c
    }

    /// Same exponents, different coefficients.
    pub fn with_coefficients(&self, c: Vec<BigRational>) -> Result<Self, ProfileError> {
        Self::new(self.a.clone(), self.m.clone(), c)
    }

    pub fn has_unit_coefficients(&self) -> bool {
        self.c.iter().all(One::is_one)
    }

    pub fn sigma(&self) -> BigRational {
        sigma_of(self.a.iter().map(|&ai| BigRational::from_integer(ai.into())), &self.m)
    }
}

fn check_len(what: &'static str, got: usize, expected: usize) -> Result<(), ProfileError> {
    if got == expected {
        Ok(())
    } else {
        Err(ProfileError::LengthMismatch { what, got, expected })
    }
}

/// Coefficient-free instance with non-negative rational exponents.
///
/// These arise inside the existence induction, where the transformed
/// exponents `d_i / (1 - d_j / 2m_j)` are generally not integers. Every
/// evaluation of a generalized profile uses `|x_i|^d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "serial::GeneralizedRepr", into = "serial::GeneralizedRepr")]
pub struct GeneralizedProfile {
    d: Vec<BigRational>,
    m: Vec<u32>,
}

impl GeneralizedProfile {
    pub fn new(d: Vec<BigRational>, m: Vec<u32>) -> Result<Self, ProfileError> {
        let n = d.len();
        if n == 0 {
            return Err(ProfileError::Empty);
        }
        check_len("m", m.len(), n)?;
        if let Some(index) = m.iter().position(|&mi| mi == 0) {
            return Err(ProfileError::ZeroHalfDegree { index });
        }
        if let Some(index) = d.iter().position(Signed::is_negative) {
            return Err(ProfileError::NegativeExponent {
                index,
                value: d[index].clone(),
            });
        }
        Ok(Self { d, m })
    }

    /// Convenience constructor from integer exponents.
    pub fn from_integers(d: &[u32], m: &[u32]) -> Result<Self, ProfileError> {
        Self::new(
            d.iter()
                .map(|&di| BigRational::from_integer(di.into()))
                .collect(),
            m.to_vec(),
        )
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self) -> &[BigRational] {
        &self.d
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    /// `2 m_i` as an exact rational.
    pub fn degree(&self, i: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(2u64 * u64::from(self.m[i])))
    }

    /// The exponents as `u32`, if every one of them is a (small) integer.
    pub fn integer_exponents(&self) -> Option<Vec<u32>> {
        self.d
            .iter()
            .map(|di| {
                if di.is_integer() {
                    di.to_integer().to_u32()
                } else {
                    None
                }
            })
            .collect()
    }

    /// The profile over every variable except `j`, with exponents `child_d`.
    pub(crate) fn without(&self, j: usize, child_d: Vec<BigRational>) -> Result<Self, ProfileError> {
        let m = self
            .m
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &mi)| mi)
            .collect();
        Self::new(child_d, m)
    }
}

/// Three-way outcome of the existence criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    LimitZero,
    LimitOne,
    NoLimit,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::LimitZero => "LIMIT_ZERO",
            Verdict::LimitOne => "LIMIT_ONE",
            Verdict::NoLimit => "NO_LIMIT",
        }
    }

    pub fn limit_exists(self) -> bool {
        self != Verdict::NoLimit
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    #[serde(with = "serial::rational")]
    pub sigma: BigRational,
    pub verdict: Verdict,
    /// The limit when it exists: `0`, or `1/c1` for a single variable with `sigma = 1`.
    #[serde(rename = "limit", with = "serial::opt_rational")]
    pub limit_value: Option<BigRational>,
}

/// `p = prod(m_i)` and `p_i = p / m_i`, the exponents of the royal path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    #[serde(with = "serial::biguint")]
    pub p: BigUint,
    #[serde(with = "serial::biguint_vec")]
    pub p_vec: Vec<BigUint>,
}

fn sigma_of(d: impl Iterator<Item = BigRational>, m: &[u32]) -> BigRational {
    d.zip(m)
        .map(|(di, &mi)| di / BigRational::from_integer(BigInt::from(2u64 * u64::from(mi))))
        .fold(BigRational::zero(), |acc, term| acc + term)
}

/// `sum(d_i / 2m_i)`, exactly.
pub fn sigma(gp: &GeneralizedProfile) -> BigRational {
    sigma_of(gp.d.iter().cloned(), &gp.m)
}

/// Applies the existence criterion. Coefficients never influence the result.
pub fn decide(p: &Profile) -> Decision {
    let sigma = p.sigma();
    let one = BigRational::one();
    let verdict = if sigma > one {
        Verdict::LimitZero
    } else if p.n() == 1 && sigma == one {
        Verdict::LimitOne
    } else {
        Verdict::NoLimit
    };
    let limit_value = match verdict {
        Verdict::LimitZero => Some(BigRational::zero()),
        Verdict::LimitOne => Some(p.c[0].recip()),
        Verdict::NoLimit => None,
    };
    Decision {
        sigma,
        verdict,
        limit_value,
    }
}

pub fn weights(gp: &GeneralizedProfile) -> Weights {
    weights_for(&gp.m)
}

pub(crate) fn weights_for(m: &[u32]) -> Weights {
    let p: BigUint = m.iter().map(|&mi| BigUint::from(mi)).product();
    let p_vec = m.iter().map(|&mi| &p / BigUint::from(mi)).collect();
    Weights { p, p_vec }
}

/// Drops the coefficients and lifts the exponents to rationals.
pub fn generalize(p: &Profile) -> GeneralizedProfile {
    GeneralizedProfile {
        d: p
            .a
            .iter()
            .map(|&ai| BigRational::from_integer(ai.into()))
            .collect(),
        m: p.m.clone(),
    }
}

/// `beta_i = c_i^(1 / 2m_i)`, so that `X_i = beta_i * x_i` turns every
/// coefficient into one. Floating point only.
pub fn rescale_factors<F: Scalar>(p: &Profile) -> Vec<F> {
    p.c.iter()
        .zip(&p.m)
        .map(|(ci, &mi)| {
            let c = F::from_rational(ci);
            let deg = 2 * mi as i32;
            let root = c.powf(F::one() / F::from_i32(deg).unwrap());
            // one Newton step on beta^deg - c
            let fx = root.powi(deg) - c;
            let dfx = F::from_i32(deg).unwrap() * root.powi(deg - 1);
            root - fx / dfx
        })
        .collect()
}
