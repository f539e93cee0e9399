//! Evidence for both directions of the existence criterion.
//!
//! When `sigma <= 1` the limit fails along the royal path
//! `t -> (l_1 t^p_1, ..., l_N t^p_N)`, where `f` collapses to
//! `g(l) * t^e` with `e = sum(a_i p_i) - 2p`. A negative `e` gives
//! divergence; `e = 0` gives a value that depends on `l`.
//!
//! When `sigma > 1` a [`Certificate`] records the induction on the number of
//! variables: either a monomial sandwich bound, or the closed-form maximum
//! along an axis-parallel line, which reduces the problem to `N - 1`
//! variables with rescaled exponents. [`check_certificate`] re-derives every
//! node with exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{self, GeneralizedProfile, Weights};
use crate::numerics::{self, Compiled, NumericsError};
use crate::scalar::Scalar;
use crate::serial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("royal path values need integer exponents, d[{index}] = {value}")]
    NonIntegerExponent { index: usize, value: BigRational },
    #[error("lambda[{index}] = {value} must be positive")]
    NonPositiveLambda { index: usize, value: BigRational },
    #[error("expected {expected} lambda entries, got {got}")]
    LambdaLength { expected: usize, got: usize },
    #[error("sigma = {sigma} > 1, so the limit exists and no nonexistence witness can be built")]
    LimitExists { sigma: BigRational },
    #[error("sigma = {sigma} <= 1, so the limit does not exist and no certificate can be built")]
    LimitFails { sigma: BigRational },
    #[error("a single variable is decided directly; witnesses need two or more variables")]
    SingleVariable,
    #[error("no distinguishing lambda found after {steps} halvings")]
    SearchExhausted { steps: u32 },
}

/// The path `(l_1 t^p_1, ..., l_N t^p_N)` together with the exact exponent
/// `e` and coefficient `g(l)` of `f` restricted to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoyalPath {
    #[serde(flatten)]
    pub weights: Weights,
    #[serde(with = "serial::rational_vec")]
    pub lambda: Vec<BigRational>,
    #[serde(with = "serial::bigint")]
    pub e: BigInt,
    #[serde(rename = "g", with = "serial::rational")]
    pub g_lambda: BigRational,
}

fn exponents_as_integers(gp: &GeneralizedProfile) -> Result<Vec<u32>, WitnessError> {
    gp.integer_exponents().ok_or_else(|| {
        let index = gp
            .d()
            .iter()
            .position(|di| !di.is_integer())
            .unwrap_or(0);
        WitnessError::NonIntegerExponent {
            index,
            value: gp.d()[index].clone(),
        }
    })
}

/// `g(l) = prod l_i^a_i / sum l_i^(2m_i)`, exactly.
fn path_value(a: &[u32], m: &[u32], lambda: &[BigRational]) -> BigRational {
    let num = a
        .iter()
        .zip(lambda)
        .fold(BigRational::one(), |acc, (&ai, li)| acc * num_traits::pow(li.clone(), ai as usize));
    let den = m.iter().zip(lambda).fold(BigRational::zero(), |acc, (&mi, li)| {
        acc + num_traits::pow(li.clone(), 2 * mi as usize)
    });
    num / den
}

pub fn royal_path(gp: &GeneralizedProfile, lambda: &[BigRational]) -> Result<RoyalPath, WitnessError> {
    let a = exponents_as_integers(gp)?;
    if lambda.len() != gp.n() {
        return Err(WitnessError::LambdaLength {
            expected: gp.n(),
            got: lambda.len(),
        });
    }
    if let Some(index) = lambda.iter().position(|l| !l.is_positive()) {
        return Err(WitnessError::NonPositiveLambda {
            index,
            value: lambda[index].clone(),
        });
    }
    let weights = kernel::weights(gp);
    let e = a
        .iter()
        .zip(&weights.p_vec)
        .fold(BigInt::zero(), |acc, (&ai, pi)| acc + BigInt::from(ai) * BigInt::from(pi.clone()))
        - BigInt::from(weights.p.clone()) * 2;
    let g_lambda = path_value(&a, gp.m(), lambda);
    Ok(RoyalPath {
        weights,
        lambda: lambda.to_vec(),
        e,
        g_lambda,
    })
}

/// Evidence that the limit at the origin does not exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NonexistenceWitness {
    /// `e < 0`: `|f| = g t^e` blows up along the path.
    Divergent { path: RoyalPath },
    /// `e = 0`: `f` is constant along each path, with different constants.
    PathDependent {
        path_a: RoyalPath,
        path_b: RoyalPath,
        #[serde(with = "serial::rational")]
        value_a: BigRational,
        #[serde(with = "serial::rational")]
        value_b: BigRational,
    },
}

const MAX_HALVINGS: u32 = 256;

pub fn find_nonexistence_witness(gp: &GeneralizedProfile) -> Result<NonexistenceWitness, WitnessError> {
    exponents_as_integers(gp)?;
    let sigma = kernel::sigma(gp);
    if sigma > BigRational::one() {
        return Err(WitnessError::LimitExists { sigma });
    }
    if gp.n() == 1 {
        return Err(WitnessError::SingleVariable);
    }
    let ones = vec![BigRational::one(); gp.n()];
    let path_a = royal_path(gp, &ones)?;
    if path_a.e.is_negative() {
        return Ok(NonexistenceWitness::Divergent { path: path_a });
    }

    // e = 0: vary one coordinate of lambda until g changes. g is a
    // non-constant rational function of that coordinate, so only finitely
    // many halvings can hit the same value.
    let j = gp.d().iter().position(Signed::is_positive).unwrap_or(0);
    let half = BigRational::new(1.into(), 2.into());
    let mut lambda_b = ones;
    for _ in 0..MAX_HALVINGS {
        lambda_b[j] = &lambda_b[j] * &half;
        let path_b = royal_path(gp, &lambda_b)?;
        if path_b.g_lambda != path_a.g_lambda {
            return Ok(NonexistenceWitness::PathDependent {
                value_a: path_a.g_lambda.clone(),
                value_b: path_b.g_lambda.clone(),
                path_a,
                path_b,
            });
        }
    }
    Err(WitnessError::SearchExhausted { steps: MAX_HALVINGS })
}

/// The constant `K = factor * base^exponent` of an inductive step, kept
/// symbolic because `base^exponent` is irrational in general.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KConst {
    /// `d_j / (2m_j - d_j)`
    #[serde(with = "serial::rational")]
    pub base: BigRational,
    /// `d_j / 2m_j`
    #[serde(with = "serial::rational")]
    pub exponent: BigRational,
    /// `(2m_j - d_j) / 2m_j`
    #[serde(with = "serial::rational")]
    pub factor: BigRational,
}

impl KConst {
    /// Constant for the line maximum along axis `j`; needs `0 < d_j < 2m_j`.
    pub fn for_axis(gp: &GeneralizedProfile, j: usize) -> Self {
        let d = &gp.d()[j];
        let deg = gp.degree(j);
        let gap = &deg - d;
        Self {
            base: d / &gap,
            exponent: d / &deg,
            factor: gap / deg,
        }
    }

    pub fn value<F: Scalar>(&self) -> F {
        F::from_rational(&self.factor) * F::from_rational(&self.base).powf(F::from_rational(&self.exponent))
    }
}

/// Exponents `d_i / (1 - d_j / 2m_j)` of the reduced problem, `i != j`.
pub fn child_exponents(gp: &GeneralizedProfile, j: usize) -> Vec<BigRational> {
    let deg = gp.degree(j);
    let scale = &deg / (&deg - &gp.d()[j]);
    gp.d()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, di)| di * &scale)
        .collect()
}

/// Record of the existence induction. Indices are zero-based and refer to
/// the variables of the profile the node is checked against; an inductive
/// child is checked against the profile with variable `j` removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node")]
pub enum Certificate {
    /// One variable with `d > 2m`: `|f| = |x|^(d - 2m)`.
    #[serde(rename = "BASE_1D")]
    Base1d {
        #[serde(with = "serial::rational")]
        d: BigRational,
        m: u32,
    },
    /// `d_j >= 2m_j`: `|f| <= prod |x_i|^b_i` with `b = d` except
    /// `b_j = d_j - 2m_j`.
    #[serde(rename = "SANDWICH")]
    Sandwich {
        j: usize,
        #[serde(with = "serial::rational_vec")]
        bound_exponents: Vec<BigRational>,
    },
    /// `0 < d_j < 2m_j`: `|f| <= K g^(1 - d_j/2m_j)` where `g` is the reduced
    /// problem with exponents `child_d`, certified by `child`.
    #[serde(rename = "INDUCTIVE")]
    Inductive {
        j: usize,
        k_const: KConst,
        #[serde(with = "serial::rational_vec")]
        child_d: Vec<BigRational>,
        child: Box<Certificate>,
    },
}

impl Certificate {
    /// Number of nodes along the chain.
    pub fn depth(&self) -> usize {
        match self {
            Certificate::Inductive { child, .. } => 1 + child.depth(),
            _ => 1,
        }
    }
}

pub fn build_certificate(gp: &GeneralizedProfile) -> Result<Certificate, WitnessError> {
    let sigma = kernel::sigma(gp);
    if sigma <= BigRational::one() {
        return Err(WitnessError::LimitFails { sigma });
    }
    Ok(build_node(gp))
}

fn build_node(gp: &GeneralizedProfile) -> Certificate {
    if gp.n() == 1 {
        return Certificate::Base1d {
            d: gp.d()[0].clone(),
            m: gp.m()[0],
        };
    }
    if let Some(j) = (0..gp.n()).find(|&j| gp.d()[j] >= gp.degree(j)) {
        return Certificate::Sandwich {
            j,
            bound_exponents: sandwich_exponents(gp, j),
        };
    }
    let j = gp
        .d()
        .iter()
        .position(Signed::is_positive)
        .expect("sigma > 1 forces a positive exponent");
    let child_d = child_exponents(gp, j);
    let reduced = gp
        .without(j, child_d.clone())
        .expect("scaled exponents stay non-negative");
    Certificate::Inductive {
        j,
        k_const: KConst::for_axis(gp, j),
        child_d,
        child: Box::new(build_node(&reduced)),
    }
}

fn sandwich_exponents(gp: &GeneralizedProfile, j: usize) -> Vec<BigRational> {
    let mut b = gp.d().to_vec();
    b[j] = &b[j] - gp.degree(j);
    b
}

/// First node at which a certificate fails to check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {location}: {reason}")]
pub struct CheckFailure {
    /// `root`, `root.child`, `root.child.child`, ...
    pub location: String,
    pub reason: String,
}

struct Location(usize);

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for _ in 0..self.0 {
            f.write_str(".child")?;
        }
        Ok(())
    }
}

/// Re-derives every node of `cert` against `gp` with exact arithmetic.
pub fn check_certificate(gp: &GeneralizedProfile, cert: &Certificate) -> Result<(), CheckFailure> {
    let mut gp = gp.clone();
    let mut node = cert;
    let mut level = 0;
    loop {
        let fail = |reason: String| CheckFailure {
            location: Location(level).to_string(),
            reason,
        };
        match node {
            Certificate::Base1d { d, m } => {
                if gp.n() != 1 {
                    return Err(fail(format!("BASE_1D node for {} variables", gp.n())));
                }
                if d != &gp.d()[0] || *m != gp.m()[0] {
                    return Err(fail(format!(
                        "BASE_1D claims d = {d}, m = {m} but the profile has d = {}, m = {}",
                        gp.d()[0],
                        gp.m()[0]
                    )));
                }
                if d <= &gp.degree(0) {
                    return Err(fail(format!("BASE_1D needs d > 2m, got d = {d}, 2m = {}", 2 * m)));
                }
                return Ok(());
            }
            Certificate::Sandwich { j, bound_exponents } => {
                let j = *j;
                if j >= gp.n() {
                    return Err(fail(format!("index {j} out of range for {} variables", gp.n())));
                }
                if gp.d()[j] < gp.degree(j) {
                    return Err(fail(format!(
                        "SANDWICH needs d_j >= 2m_j, got d_j = {}, 2m_j = {}",
                        gp.d()[j],
                        gp.degree(j)
                    )));
                }
                if bound_exponents != &sandwich_exponents(&gp, j) {
                    return Err(fail("bound exponents differ from d with d_j - 2m_j in place j".into()));
                }
                if !bound_exponents.iter().any(Signed::is_positive) {
                    return Err(fail("no bound exponent is positive, the bound does not vanish".into()));
                }
                return Ok(());
            }
            Certificate::Inductive {
                j,
                k_const,
                child_d,
                child,
            } => {
                let j = *j;
                if gp.n() < 2 {
                    return Err(fail("INDUCTIVE node needs at least two variables".into()));
                }
                if j >= gp.n() {
                    return Err(fail(format!("index {j} out of range for {} variables", gp.n())));
                }
                let dj = &gp.d()[j];
                if !dj.is_positive() || dj >= &gp.degree(j) {
                    return Err(fail(format!(
                        "INDUCTIVE needs 0 < d_j < 2m_j, got d_j = {dj}, 2m_j = {}",
                        gp.degree(j)
                    )));
                }
                if k_const != &KConst::for_axis(&gp, j) {
                    return Err(fail("K constant does not match d_j and m_j".into()));
                }
                let expected = child_exponents(&gp, j);
                if child_d != &expected {
                    return Err(fail(format!(
                        "child exponents {} differ from d_i / (1 - d_j/2m_j) = {}",
                        join(child_d),
                        join(&expected)
                    )));
                }
                let reduced = gp.without(j, child_d.clone()).map_err(|e| fail(e.to_string()))?;
                let child_sigma = kernel::sigma(&reduced);
                if child_sigma <= BigRational::one() {
                    return Err(fail(format!("reduced criterion {child_sigma} is not above 1")));
                }
                gp = reduced;
                node = child;
                level += 1;
            }
        }
    }
}

fn join(values: &[BigRational]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Upper bound on `|f(x)|` stated by the top node of `cert`:
///
/// * `BASE_1D`: `|x_1|^(d - 2m)`
/// * `SANDWICH`: `prod |x_i|^b_i`
/// * `INDUCTIVE`: `K * g(x without x_j)^(1 - d_j/2m_j)`
///
/// `cert` is assumed to check against `gp`.
pub fn certificate_bound<F: Scalar>(
    gp: &GeneralizedProfile,
    cert: &Certificate,
    x: &[F],
) -> Result<F, NumericsError> {
    if x.len() != gp.n() {
        return Err(NumericsError::Dimension {
            expected: gp.n(),
            got: x.len(),
        });
    }
    match cert {
        Certificate::Base1d { d, m } => {
            let gap = d - BigRational::from_integer(BigInt::from(2 * u64::from(*m)));
            Ok(numerics::abs_pow_rational(x[0], &gap))
        }
        Certificate::Sandwich { bound_exponents, .. } => Ok(bound_exponents
            .iter()
            .zip(x)
            .fold(F::one(), |acc, (b, &xi)| acc * numerics::abs_pow_rational(xi, b))),
        Certificate::Inductive {
            j, k_const, child_d, ..
        } => {
            let j = *j;
            if j >= gp.n() {
                return Err(NumericsError::Index { index: j, n: gp.n() });
            }
            let x_rest: Vec<F> = x
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &xi)| xi)
                .collect();
            if x_rest.iter().all(|xi| xi.is_zero()) {
                return Err(NumericsError::DegenerateLine);
            }
            let reduced = gp
                .without(j, child_d.clone())
                .map_err(|_| NumericsError::Dimension {
                    expected: gp.n() - 1,
                    got: child_d.len(),
                })?;
            let g = Compiled::from_generalized(&reduced).eval(&x_rest)?;
            let power = F::one() - F::from_rational(&k_const.exponent);
            Ok(k_const.value::<F>() * g.powf(power))
        }
    }
}
