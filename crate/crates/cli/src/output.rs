//! JSON documents written by the CLI. Every document carries a `schema`
//! tag; exact quantities are strings such as `"83/84"`.

use serde::{Deserialize, Serialize};

use ratlimit::{C1Report, Certificate, Decision, NonexistenceWitness, ProbeConfig, ProbeReport, Profile};

pub const DECISION_SCHEMA: &str = "ratlimit.decision/v1";
pub const WITNESS_SCHEMA: &str = "ratlimit.witness/v1";
pub const CERTIFICATE_SCHEMA: &str = "ratlimit.certificate/v1";
pub const VERIFICATION_SCHEMA: &str = "ratlimit.verification/v1";
pub const PROBE_SCHEMA: &str = "ratlimit.probe/v1";
pub const C1_SCHEMA: &str = "ratlimit.c1/v1";

#[derive(Serialize)]
pub struct DecisionDoc<'a> {
    pub schema: &'static str,
    pub expression: String,
    pub n: usize,
    #[serde(flatten)]
    pub decision: &'a Decision,
}

#[derive(Serialize)]
pub struct WitnessDoc<'a> {
    pub schema: &'static str,
    pub expression: String,
    pub witness: &'a NonexistenceWitness,
}

#[derive(Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema: String,
    pub expression: String,
    pub profile: Profile,
    pub certificate: Certificate,
}

#[derive(Serialize)]
pub struct FailureDoc {
    pub location: String,
    pub reason: String,
}

#[derive(Serialize)]
pub struct VerificationDoc {
    pub schema: &'static str,
    pub expression: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDoc>,
}

#[derive(Serialize)]
pub struct ProbeDoc<'a> {
    pub schema: &'static str,
    pub expression: String,
    #[serde(flatten)]
    pub report: &'a ProbeReport,
    pub config: &'a ProbeConfig,
}

#[derive(Serialize)]
pub struct C1Doc<'a> {
    pub schema: &'static str,
    pub expression: String,
    #[serde(flatten)]
    pub report: &'a C1Report,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents always serialize");
    text.push('\n');
    text
}
