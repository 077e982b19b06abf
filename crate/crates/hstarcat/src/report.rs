use crate::context::Ctx;
use hstar_core::deligne::DeligneError;
use hstar_core::fusion::FusionError;
use hstar_core::hilb3::Hilb3Error;
use hstar_core::hstar1::HStarError;
use hstar_core::intalg::IntAlgError;
use hstar_core::Tolerance;
use serde::Serialize;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

pub const REPORT_SCHEMA: &str = "hstarcat/report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Accept,
    Reject,
    Error,
}

#[derive(Debug)]
pub enum Fail {
    /// Unreadable or malformed input.
    Input(String),
    /// A certified failure of the named axiom.
    Reject { axiom: String, message: String },
}

impl Fail {
    fn classify(axiom: &str, message: String) -> Fail {
        match axiom {
            "schema" | "input" => Fail::Input(message),
            _ => Fail::Reject {
                axiom: axiom.to_string(),
                message,
            },
        }
    }
}

macro_rules! fail_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                Fail::classify(e.axiom(), e.to_string())
            }
        }
    )*};
}
fail_from!(FusionError, IntAlgError, Hilb3Error, DeligneError, HStarError);

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub axiom: String,
    /// `null` for pass/fail checks without a residual.
    pub value: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Default)]
pub struct Body {
    pub checks: Vec<Check>,
    pub result: Map<String, Value>,
}

impl Body {
    pub fn check(&mut self, name: &str, axiom: &str, value: f64, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            axiom: axiom.into(),
            value: Some(value),
            pass,
        });
    }

    /// Passes when `value ≤ abs_eps + rel_eps · scale`.
    pub fn bound(&mut self, tol: &Tolerance, name: &str, axiom: &str, value: f64, scale: f64) {
        self.check(name, axiom, value, tol.accepts(value, scale));
    }

    pub fn flag(&mut self, name: &str, axiom: &str, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            axiom: axiom.into(),
            value: None,
            pass,
        });
    }

    pub fn put<T: Serialize>(&mut self, key: &str, value: T) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.result.insert(key.into(), v);
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    /// SHA-256 of every file or bundled dataset read.
    pub inputs: BTreeMap<String, String>,
    pub tolerance: f64,
    pub seed: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub checks: Vec<Check>,
    pub result: Map<String, Value>,
}

impl RunReport {
    pub fn finish(command: Vec<String>, ctx: Ctx, body: Body, outcome: Result<(), Fail>) -> Self {
        let (verdict, axiom, message) = match outcome {
            Err(Fail::Input(m)) => (Verdict::Error, None, Some(m)),
            Err(Fail::Reject { axiom, message }) => (Verdict::Reject, Some(axiom), Some(message)),
            Ok(()) => match body.checks.iter().find(|c| !c.pass) {
                Some(c) => (
                    Verdict::Reject,
                    Some(c.axiom.clone()),
                    Some(format!("check `{}` failed", c.name)),
                ),
                None => (Verdict::Accept, None, None),
            },
        };
        RunReport {
            schema: REPORT_SCHEMA,
            command,
            inputs: ctx.inputs,
            tolerance: ctx.tol.abs_eps,
            seed: ctx.seed,
            verdict,
            axiom,
            message,
            checks: body.checks,
            result: body.result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
