//! Exact existence decisions for limits at the origin of
//!
//! ```text
//! f(x) = x1^a1 * ... * xN^aN / (c1*x1^(2m1) + ... + cN*xN^(2mN))
//! ```
//!
//! The limit exists (and is zero, for two or more variables) exactly when
//! `sigma = sum(ai / 2mi) > 1`. Beyond the verdict the crate produces
//! checkable evidence: royal-path witnesses when the limit fails and
//! induction certificates when it exists.
//!
//! * [`kernel`]: profiles, the criterion, path weights. Exact only.
//! * [`witness`]: nonexistence witnesses, certificates and their checker.
//! * [`numerics`]: float evaluation, line maxima, the sampling probe,
//!   derivatives and the C1 test, generic over [`Scalar`].
//! * [`expr`]: text syntax for profiles.

pub mod expr;
pub mod kernel;
pub mod numerics;
mod scalar;
pub mod serial;
pub mod witness;

pub use kernel::{
    decide, generalize, rescale_factors, sigma, weights, Decision, GeneralizedProfile, Profile,
    ProfileError, Verdict, Weights,
};
pub use numerics::{C1Report, C1Verdict, NumericsError, ProbeConfig, Trend};
pub use scalar::Scalar;
pub use witness::{
    build_certificate, check_certificate, find_nonexistence_witness, royal_path, Certificate,
    CheckFailure, KConst, NonexistenceWitness, RoyalPath, WitnessError,
};

/// Exact rational used for every decision-relevant quantity.
pub type ExactRational = num_rational::BigRational;

pub type ProbeReport = numerics::ProbeReport<f64>;
pub type ProbeReportF32 = numerics::ProbeReport<f32>;
pub type Compiled = numerics::Compiled<f64>;
pub type CompiledF32 = numerics::Compiled<f32>;
pub type AxisLine = numerics::AxisLine<f64>;
