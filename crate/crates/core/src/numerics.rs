//! Floating-point side of the crate: evaluation of `f`, closed-form line
//! maxima, the shell-sampling probe used as an independent oracle, first
//! derivatives and the C1 sufficiency test.
//!
//! Everything here is generic over [`Scalar`] (`f32` or `f64`). Exact
//! inputs are converted on entry; no function in this module feeds a float
//! back into an exact decision.
//!
//! Evaluation first tries the direct quotient. When the numerator overflows
//! or the denominator underflows it falls back to log space, so points such
//! as `x = 2^-840` still produce the right ratio instead of `0/0`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{self, GeneralizedProfile, Profile};
use crate::scalar::Scalar;
use crate::serial;
use crate::witness::{KConst, RoyalPath};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("f is undefined at the origin when the limit does not exist")]
    Origin,
    #[error("expected a point with {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index {index} out of range for {n} variables")]
    Index { index: usize, n: usize },
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("exponent d[{index}] = {value} is outside the open interval (0, {degree})")]
    ExponentOutsideLine {
        index: usize,
        value: BigRational,
        degree: u64,
    },
    #[error("the off-axis denominator vanishes, so the line maximum is undefined")]
    DegenerateLine,
    #[error("radii must be strictly decreasing and positive, with at least 3 entries")]
    InvalidRadii,
    #[error("need at least one sample per shell")]
    NoSamples,
}

/// Per-variable exponent prepared for float evaluation.
#[derive(Debug, Clone, Copy)]
struct Power<F> {
    value: F,
    int: Option<i32>,
}

impl<F: Scalar> Power<F> {
    fn from_rational(d: &BigRational) -> Self {
        let int = if d.is_integer() {
            d.to_integer().to_i32()
        } else {
            None
        };
        Self {
            value: F::from_rational(d),
            int,
        }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `|x|^d`, with `0^0 = 1`.
    fn abs_pow(&self, x: F) -> F {
        if self.is_zero() {
            return F::one();
        }
        let ax = x.abs();
        if ax.is_zero() {
            return F::zero();
        }
        match self.int {
            Some(k) => ax.powi(k),
            None => ax.powf(self.value),
        }
    }

    fn is_odd_integer(&self) -> bool {
        matches!(self.int, Some(k) if k % 2 != 0)
    }
}

/// A profile lowered to floats, reusable across many evaluations.
#[derive(Debug, Clone)]
pub struct Compiled<F> {
    num: Vec<Power<F>>,
    degree: Vec<i32>,
    coef: Vec<F>,
    ln_coef: Vec<F>,
    signed: bool,
    limit_is_zero: bool,
}

impl<F: Scalar> Compiled<F> {
    /// Signed evaluation `prod x_i^a_i / sum c_i x_i^(2m_i)`.
    pub fn from_profile(p: &Profile) -> Self {
        let d: Vec<BigRational> = kernel::generalize(p).d().to_vec();
        let coef: Vec<F> = p.c().iter().map(F::from_rational).collect();
        Self::build(&d, p.m(), coef, true, p.sigma() > BigRational::one())
    }

    /// Unsigned evaluation `prod |x_i|^d_i / sum x_i^(2m_i)`.
    pub fn from_generalized(gp: &GeneralizedProfile) -> Self {
        let coef = vec![F::one(); gp.n()];
        Self::build(gp.d(), gp.m(), coef, false, kernel::sigma(gp) > BigRational::one())
    }

    fn build(d: &[BigRational], m: &[u32], coef: Vec<F>, signed: bool, limit_is_zero: bool) -> Self {
        Self {
            num: d.iter().map(Power::from_rational).collect(),
            degree: m.iter().map(|&mi| 2 * mi as i32).collect(),
            ln_coef: coef.iter().map(|c| c.ln()).collect(),
            coef,
            signed,
            limit_is_zero,
        }
    }

    pub fn n(&self) -> usize {
        self.num.len()
    }

    pub fn eval(&self, x: &[F]) -> Result<F, NumericsError> {
        check_dim(self.n(), x.len())?;
        if x.iter().all(|xi| xi.is_zero()) {
            return if self.limit_is_zero {
                Ok(F::zero())
            } else {
                Err(NumericsError::Origin)
            };
        }
        let negative = self.signed
            && self
                .num
                .iter()
                .zip(x)
                .filter(|(pw, xi)| pw.is_odd_integer() && xi.is_sign_negative() && !xi.is_zero())
                .count()
                % 2
                == 1;
        let sign = if negative { -F::one() } else { F::one() };
        if self
            .num
            .iter()
            .zip(x)
            .any(|(pw, xi)| !pw.is_zero() && xi.is_zero())
        {
            return Ok(F::zero());
        }

        let numer = self
            .num
            .iter()
            .zip(x)
            .fold(F::one(), |acc, (pw, &xi)| acc * pw.abs_pow(xi));
        let denom = self
            .degree
            .iter()
            .zip(&self.coef)
            .zip(x)
            .fold(F::zero(), |acc, ((&deg, &c), &xi)| acc + c * xi.abs().powi(deg));
        if numer.is_normal() && denom.is_normal() {
            let value = numer / denom;
            if value.is_finite() {
                return Ok(sign * value);
            }
        }

        let ln_x: Vec<F> = x.iter().map(|xi| xi.abs().ln()).collect();
        Ok(sign * self.eval_ln(&ln_x))
    }

    /// `|f|` at the point whose coordinates have logarithms `ln_x` (so every
    /// coordinate is nonzero). Always computed in log space.
    pub fn eval_ln(&self, ln_x: &[F]) -> F {
        let ln_num = self
            .num
            .iter()
            .zip(ln_x)
            .filter(|(pw, _)| !pw.is_zero())
            .fold(F::zero(), |acc, (pw, &l)| acc + pw.value * l);
        let terms: Vec<F> = self
            .degree
            .iter()
            .zip(&self.ln_coef)
            .zip(ln_x)
            .filter(|(_, l)| l.is_finite())
            .map(|((&deg, &lc), &l)| lc + F::from_i32(deg).unwrap() * l)
            .collect();
        (ln_num - log_sum_exp(&terms)).exp()
    }
}

fn log_sum_exp<F: Scalar>(terms: &[F]) -> F {
    let top = terms.iter().copied().fold(F::neg_infinity(), F::max);
    if !top.is_finite() {
        return top;
    }
    top + terms
        .iter()
        .map(|&t| (t - top).exp())
        .fold(F::zero(), |acc, e| acc + e)
        .ln()
}

fn check_dim(expected: usize, got: usize) -> Result<(), NumericsError> {
    if expected == got {
        Ok(())
    } else {
        Err(NumericsError::Dimension { expected, got })
    }
}

/// `f(x)` for a public profile, with `f(0) = 0` when the limit is zero.
pub fn eval_f<F: Scalar>(p: &Profile, x: &[F]) -> Result<F, NumericsError> {
    Compiled::from_profile(p).eval(x)
}

/// `prod |x_i|^d_i / sum x_i^(2m_i)` for a generalized profile.
pub fn eval_generalized<F: Scalar>(gp: &GeneralizedProfile, x: &[F]) -> Result<F, NumericsError> {
    Compiled::from_generalized(gp).eval(x)
}

/// Restriction of the generalized `f` to the line through `x_rest` parallel
/// to axis `j`, taken on `t >= 0`.
#[derive(Debug, Clone)]
pub struct AxisLine<F> {
    /// `prod_{i != j} |x_i|^d_i`
    pub weight: F,
    /// `sum_{i != j} x_i^(2m_i)`
    pub rest_sum: F,
    pub exponent: F,
    pub degree: i32,
}

impl<F: Scalar> AxisLine<F> {
    pub fn new(gp: &GeneralizedProfile, j: usize, x_rest: &[F]) -> Result<Self, NumericsError> {
        let n = gp.n();
        if j >= n {
            return Err(NumericsError::Index { index: j, n });
        }
        check_dim(n - 1, x_rest.len())?;
        let others = (0..n).filter(|&i| i != j);
        let mut weight = F::one();
        let mut rest_sum = F::zero();
        for (i, &xi) in others.zip(x_rest) {
            weight = weight * Power::from_rational(&gp.d()[i]).abs_pow(xi);
            rest_sum = rest_sum + xi.abs().powi(2 * gp.m()[i] as i32);
        }
        Ok(Self {
            weight,
            rest_sum,
            exponent: F::from_rational(&gp.d()[j]),
            degree: 2 * gp.m()[j] as i32,
        })
    }

    /// `phi(t) = weight * t^d / (t^(2m) + rest_sum)` for `t >= 0`.
    pub fn phi(&self, t: F) -> F {
        let t = t.abs();
        let tp = if self.exponent.is_zero() {
            F::one()
        } else if t.is_zero() {
            F::zero()
        } else {
            t.powf(self.exponent)
        };
        self.weight * tp / (t.powi(self.degree) + self.rest_sum)
    }
}

fn check_line_exponent(gp: &GeneralizedProfile, j: usize) -> Result<(), NumericsError> {
    let n = gp.n();
    if j >= n {
        return Err(NumericsError::Index { index: j, n });
    }
    let d = &gp.d()[j];
    if !d.is_positive() || *d >= gp.degree(j) {
        return Err(NumericsError::ExponentOutsideLine {
            index: j,
            value: d.clone(),
            degree: 2 * u64::from(gp.m()[j]),
        });
    }
    Ok(())
}

/// Closed-form maximizer `t* = (d_j / (2m_j - d_j))^(1/2m_j) * S^(1/2m_j)`
/// of the line restriction, where `S = sum_{i != j} x_i^(2m_i)`.
pub fn line_max_point<F: Scalar>(
    gp: &GeneralizedProfile,
    j: usize,
    x_rest: &[F],
) -> Result<F, NumericsError> {
    check_line_exponent(gp, j)?;
    let line = AxisLine::new(gp, j, x_rest)?;
    if !(line.rest_sum > F::zero()) {
        return Err(NumericsError::DegenerateLine);
    }
    let d = &gp.d()[j];
    let base = F::from_rational(&(d / (gp.degree(j) - d)));
    let root = F::one() / F::from_i32(line.degree).unwrap();
    Ok(base.powf(root) * line.rest_sum.powf(root))
}

/// The maximum value `K * g^(1 - d_j/2m_j)` of the line restriction.
pub fn line_max_value<F: Scalar>(
    gp: &GeneralizedProfile,
    j: usize,
    x_rest: &[F],
) -> Result<F, NumericsError> {
    check_line_exponent(gp, j)?;
    let line = AxisLine::new(gp, j, x_rest)?;
    if !(line.rest_sum > F::zero()) {
        return Err(NumericsError::DegenerateLine);
    }
    let k = KConst::for_axis(gp, j);
    let child_d = crate::witness::child_exponents(gp, j);
    let reduced = gp
        .without(j, child_d)
        .expect("child exponents of a valid profile are non-negative");
    let g = Compiled::from_generalized(&reduced).eval(x_rest)?;
    let power = F::from_rational(&(BigRational::one() - &gp.d()[j] / gp.degree(j)));
    Ok(k.value::<F>() * g.powf(power))
}

/// `|x|^d` for a non-negative rational `d`, with `0^0 = 1`.
pub fn abs_pow_rational<F: Scalar>(x: F, d: &BigRational) -> F {
    Power::from_rational(d).abs_pow(x)
}

/// `f` along the royal path at parameter `t`, using the profile's own
/// coefficients. With unit coefficients this equals `g_lambda * t^e`.
pub fn eval_along_path<F: Scalar>(p: &Profile, path: &RoyalPath, t: F) -> Result<F, NumericsError> {
    if !(t > F::zero()) {
        return Err(NumericsError::NonPositive {
            what: "t",
            value: t.to_f64_lossy(),
        });
    }
    check_dim(p.n(), path.lambda.len())?;
    let ln_x = path_ln_coordinates(path, t);
    Ok(Compiled::from_profile(p).eval_ln(&ln_x))
}

/// `ln(lambda_i) + p_i ln t` for every coordinate of the royal path.
pub fn path_ln_coordinates<F: Scalar>(path: &RoyalPath, t: F) -> Vec<F> {
    let ln_t = t.ln();
    path.lambda
        .iter()
        .zip(&path.weights.p_vec)
        .map(|(li, pi)| {
            let pi = F::from_f64(pi.to_f64().unwrap_or(f64::INFINITY)).unwrap();
            F::from_rational(li).ln() + pi * ln_t
        })
        .collect()
}

/// Coordinates of the royal path at `t`; entries may underflow to zero for
/// large weights.
pub fn path_point<F: Scalar>(path: &RoyalPath, t: F) -> Vec<F> {
    path_ln_coordinates(path, t).into_iter().map(F::exp).collect()
}

/// Deterministic generator for shell `stream` of a probe seeded with `seed`.
fn shell_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn shell_point<F: Scalar>(rng: &mut ChaCha8Rng, n: usize, r: f64, out: &mut [F]) {
    let face = rng.gen_range(0..n);
    for (i, xi) in out.iter_mut().enumerate() {
        let u: f64 = rng.gen_range(-1.0..=1.0);
        *xi = F::from_f64(u * r).unwrap();
        if i == face {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            *xi = F::from_f64(sign * r).unwrap();
        }
    }
}

fn shell_sup_inner<F: Scalar>(c: &Compiled<F>, r: f64, n_samples: usize, seed: u64, stream: u64) -> F {
    let mut rng = shell_rng(seed, stream);
    let mut x = vec![F::zero(); c.n()];
    let mut best = F::zero();
    for _ in 0..n_samples {
        shell_point(&mut rng, c.n(), r, &mut x);
        if let Ok(v) = c.eval(&x) {
            best = best.max(v.abs());
        }
    }
    best
}

/// Largest `|f|` over `n_samples` pseudo-random points on the sphere
/// `||x||_inf = r`. Each point picks a face uniformly and fills the other
/// coordinates uniformly in `[-r, r]`.
pub fn shell_sup<F: Scalar>(p: &Profile, r: F, n_samples: usize, seed: u64) -> Result<F, NumericsError> {
    if !(r > F::zero()) {
        return Err(NumericsError::NonPositive {
            what: "r",
            value: r.to_f64_lossy(),
        });
    }
    if n_samples == 0 {
        return Err(NumericsError::NoSamples);
    }
    Ok(shell_sup_inner(
        &Compiled::from_profile(p),
        r.to_f64_lossy(),
        n_samples,
        seed,
        0,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Trend {
    TendsToZero,
    BoundedAway,
    Diverges,
    Inconclusive,
}

/// Thresholds used to turn a sequence of shell suprema into a [`Trend`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Also evaluate the unit royal path point on every shell.
    pub inject_royal_path: bool,
    /// `TENDS_TO_ZERO` needs `last < decay_factor * first`.
    pub decay_factor: f64,
    /// Width of the band for `BOUNDED_AWAY`; `DIVERGES` needs `last >= band * first`.
    pub band: f64,
    /// A shell may exceed the running minimum by at most this factor and
    /// still count as decreasing.
    pub monotone_slack: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            inject_royal_path: true,
            decay_factor: 1e-3,
            band: 10.0,
            monotone_slack: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport<F> {
    pub radii: Vec<F>,
    pub sup_estimates: Vec<F>,
    pub samples_per_shell: usize,
    pub seed: u64,
    pub trend_verdict: Trend,
}

/// Classifies a sequence of suprema taken on shrinking shells.
pub fn classify_trend<F: Scalar>(estimates: &[F], cfg: &ProbeConfig) -> Trend {
    let (Some(&first), Some(&last)) = (estimates.first(), estimates.last()) else {
        return Trend::Inconclusive;
    };
    if estimates.iter().any(|e| e.is_nan()) {
        return Trend::Inconclusive;
    }
    let as_f = |v: f64| F::from_f64(v).unwrap();
    let decay = as_f(cfg.decay_factor);
    let band = as_f(cfg.band);
    let slack = as_f(cfg.monotone_slack);

    let mut running_min = F::infinity();
    let decreasing = estimates.iter().all(|&e| {
        let ok = e <= slack * running_min || running_min.is_infinite();
        running_min = running_min.min(e);
        ok
    });
    if decreasing && first > F::zero() && last < decay * first {
        return Trend::TendsToZero;
    }
    if last.is_infinite() || (first > F::zero() && last >= band * first) {
        return Trend::Diverges;
    }
    let lo = estimates.iter().copied().fold(F::infinity(), F::min);
    let hi = estimates.iter().copied().fold(F::zero(), F::max);
    if lo > F::zero() && hi.is_finite() && hi <= band * lo {
        return Trend::BoundedAway;
    }
    Trend::Inconclusive
}

/// Estimates `sup |f|` on each shell and classifies the trend.
///
/// Shell `k` draws its samples from stream `k` of a generator seeded with
/// `seed`, so shells are independent of one another and of scheduling.
pub fn limit_probe<F: Scalar>(
    p: &Profile,
    radii: &[F],
    n_samples: usize,
    seed: u64,
    cfg: &ProbeConfig,
) -> Result<ProbeReport<F>, NumericsError> {
    if radii.len() < 3
        || radii.iter().any(|r| !(*r > F::zero()) || !r.is_finite())
        || radii.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(NumericsError::InvalidRadii);
    }
    if n_samples == 0 {
        return Err(NumericsError::NoSamples);
    }
    let compiled = Compiled::from_profile(p);
    let weights = kernel::weights(&kernel::generalize(p));
    let p_vec: Vec<F> = weights
        .p_vec
        .iter()
        .map(|pi| F::from_f64(pi.to_f64().unwrap_or(f64::INFINITY)).unwrap())
        .collect();
    let p_min = p_vec.iter().copied().fold(F::infinity(), F::min);

    let sup_estimates = radii
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let mut sup = shell_sup_inner(&compiled, r.to_f64_lossy(), n_samples, seed, k as u64);
            if cfg.inject_royal_path {
                // t = r^(1/p_min) puts the unit royal path point on the shell
                let ln_r = r.ln();
                let ln_x: Vec<F> = p_vec.iter().map(|&pi| pi / p_min * ln_r).collect();
                let v = compiled.eval_ln(&ln_x);
                if !v.is_nan() {
                    sup = sup.max(v);
                }
            }
            sup
        })
        .collect::<Vec<F>>();
    let trend_verdict = classify_trend(&sup_estimates, cfg);
    Ok(ProbeReport {
        radii: radii.to_vec(),
        sup_estimates,
        samples_per_shell: n_samples,
        seed,
        trend_verdict,
    })
}

/// `count` radii spaced geometrically from `start` down to `end`.
pub fn geometric_radii<F: Scalar>(start: F, end: F, count: usize) -> Vec<F> {
    if count < 2 {
        return vec![start; count];
    }
    let ratio = (end / start).ln() / F::from_usize_lossy(count - 1);
    (0..count)
        .map(|k| {
            if k == count - 1 {
                end
            } else {
                start * (ratio * F::from_usize_lossy(k)).exp()
            }
        })
        .collect()
}

/// Analytic `df/dx_j` by the quotient rule.
pub fn partial_derivative<F: Scalar>(p: &Profile, j: usize, x: &[F]) -> Result<F, NumericsError> {
    let n = p.n();
    check_dim(n, x.len())?;
    if j >= n {
        return Err(NumericsError::Index { index: j, n });
    }
    if x.iter().all(|xi| xi.is_zero()) {
        return Err(NumericsError::Origin);
    }
    let coef: Vec<F> = p.c().iter().map(F::from_rational).collect();
    let mono = |skip: Option<usize>| {
        p.a().iter()
            .zip(x)
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .fold(F::one(), |acc, (_, (&ai, &xi))| acc * xi.powi(ai as i32))
    };
    let denom = p
        .m()
        .iter()
        .zip(&coef)
        .zip(x)
        .fold(F::zero(), |acc, ((&mi, &c), &xi)| acc + c * xi.powi(2 * mi as i32));
    let aj = p.a()[j] as i32;
    let deg = 2 * p.m()[j] as i32;
    let d_numer = if aj == 0 {
        F::zero()
    } else {
        F::from_i32(aj).unwrap() * x[j].powi(aj - 1) * mono(Some(j))
    };
    let d_denom = F::from_i32(deg).unwrap() * coef[j] * x[j].powi(deg - 1);
    Ok(d_numer / denom - mono(None) * d_denom / (denom * denom))
}

/// The bound `|x_j|^(a_j-1) prod_{i != j}|x_i|^a_i / D * (|a_j - 2m_j| + a_j)`
/// on `|df/dx_j|`. Requires `a_j >= 1`.
pub fn partial_derivative_bound<F: Scalar>(p: &Profile, j: usize, x: &[F]) -> Result<F, NumericsError> {
    let n = p.n();
    check_dim(n, x.len())?;
    if j >= n {
        return Err(NumericsError::Index { index: j, n });
    }
    let coef: Vec<F> = p.c().iter().map(F::from_rational).collect();
    let aj = p.a()[j] as i32;
    let mut numer = x[j].abs().powi(aj - 1);
    for (i, (&ai, &xi)) in p.a().iter().zip(x).enumerate() {
        if i != j {
            numer = numer * xi.abs().powi(ai as i32);
        }
    }
    let denom = p
        .m()
        .iter()
        .zip(&coef)
        .zip(x)
        .fold(F::zero(), |acc, ((&mi, &c), &xi)| acc + c * xi.powi(2 * mi as i32));
    let factor = F::from_i32((aj - 2 * p.m()[j] as i32).abs() + aj).unwrap();
    Ok(numer / denom * factor)
}

/// Central differences `(f(x + h e_j) - f(x - h e_j)) / 2h`.
pub fn numeric_gradient<F: Scalar>(p: &Profile, x: &[F], h: F) -> Result<Vec<F>, NumericsError> {
    check_dim(p.n(), x.len())?;
    let compiled = Compiled::from_profile(p);
    let two_h = h + h;
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|j| {
            probe[j] = x[j] + h;
            let up = compiled.eval(&probe)?;
            probe[j] = x[j] - h;
            let down = compiled.eval(&probe)?;
            probe[j] = x[j];
            Ok((up - down) / two_h)
        })
        .collect()
}

/// Largest `max_j |df/dx_j|` over sampled points of the shell `||x||_inf = r`.
pub fn shell_gradient_sup<F: Scalar>(
    p: &Profile,
    r: F,
    n_samples: usize,
    seed: u64,
) -> Result<F, NumericsError> {
    if !(r > F::zero()) {
        return Err(NumericsError::NonPositive {
            what: "r",
            value: r.to_f64_lossy(),
        });
    }
    let mut rng = shell_rng(seed, 0);
    let mut x = vec![F::zero(); p.n()];
    let mut best = F::zero();
    for _ in 0..n_samples {
        shell_point(&mut rng, p.n(), r.to_f64_lossy(), &mut x);
        for j in 0..p.n() {
            best = best.max(partial_derivative(p, j, &x)?.abs());
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum C1Verdict {
    C1Yes,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Report {
    #[serde(with = "serial::rational")]
    pub sigma: BigRational,
    #[serde(with = "serial::rational")]
    pub max_ratio: BigRational,
    pub condition_holds: bool,
    pub verdict: C1Verdict,
    /// Why the sufficient condition could not be applied, if it could not.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Sufficient condition for `f` (extended by `f(0) = 0`) to be C1 at the
/// origin: `sigma > 1 + max_j a_j / 2m_j`, with every `a_j >= 1` and `n > 1`.
/// Failure is reported as `UNKNOWN`, never as "not C1".
pub fn c1_sufficient(p: &Profile) -> C1Report {
    let sigma = p.sigma();
    let max_ratio = p
        .a()
        .iter()
        .zip(p.m())
        .map(|(&ai, &mi)| BigRational::new(ai.into(), (2 * u64::from(mi)).into()))
        .max()
        .unwrap_or_else(BigRational::zero);
    let condition_holds = sigma > BigRational::one() + &max_ratio;
    let note = if p.n() < 2 {
        Some("the sufficient condition is stated for two or more variables".to_owned())
    } else {
        p.a().iter().position(|&ai| ai == 0).map(|i| {
            format!("exponent a[{i}] is zero; the sufficient condition needs every exponent to be positive")
        })
    };
    let verdict = if condition_holds && note.is_none() {
        C1Verdict::C1Yes
    } else {
        C1Verdict::Unknown
    };
    C1Report {
        sigma,
        max_ratio,
        condition_holds,
        verdict,
        note,
    }
}
