//! Outcome of one identity check and its JSON-lines rendering.

use crate::numeric::{digits_matched, pow10, to_decimal};
use rug::Float;
use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome class of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// `|lhs - rhs| < 10^{-digits}`.
    Passed,
    /// Both sides computed and they differ.
    Failed,
    /// Inputs are unavailable (missing newform coefficients).
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Passed => "PASS",
            Status::Failed => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// Both sides of one identity at one parameter choice.
///
/// `passed` holds exactly when `abs_diff < 10^{-digits}`, where `digits`
/// is the requested precision capped by the accuracy of the slower route
/// (recorded in `route_metadata` as `effective_digits`).
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    /// Registry id with its parameters, e.g. `table2[s=16,L_1(P)]`.
    pub identity_id: String,
    /// Left side; absent when skipped.
    pub lhs: Option<Float>,
    /// Right side; absent when skipped.
    pub rhs: Option<Float>,
    /// `|lhs - rhs|`; absent when skipped.
    pub abs_diff: Option<Float>,
    /// Leading decimal digits on which the two sides agree.
    pub digits_matched: u32,
    /// Precision the comparison was made at.
    pub digits: u32,
    /// Pass flag.
    pub passed: bool,
    /// Pass, fail or skipped.
    pub status: Status,
    /// Routes, cutoffs, tail estimates and resolved newform labels.
    pub route_metadata: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    identity_id: &'a str,
    lhs: Option<String>,
    rhs: Option<String>,
    abs_diff: Option<String>,
    digits_matched: u32,
    digits: u32,
    passed: bool,
    status: Status,
    route_metadata: &'a BTreeMap<String, String>,
}

impl VerifyReport {
    /// Compare two values at `digits` decimal places.
    pub fn compare(
        identity_id: String,
        lhs: Float,
        rhs: Float,
        digits: u32,
        route_metadata: BTreeMap<String, String>,
    ) -> Self {
        let prec = lhs.prec().max(rhs.prec());
        let diff = Float::with_val(prec, &lhs - &rhs).abs();
        let passed = !diff.is_nan() && diff < pow10(prec, -(digits as i32));
        let cap = (prec as f64 * std::f64::consts::LOG10_2) as u32;
        Self {
            identity_id,
            digits_matched: if diff.is_nan() { 0 } else { digits_matched(&diff, cap) },
            lhs: Some(lhs),
            rhs: Some(rhs),
            abs_diff: Some(diff),
            digits,
            passed,
            status: if passed { Status::Passed } else { Status::Failed },
            route_metadata,
        }
    }

    /// A check that could not run for lack of input data.
    pub fn skipped(identity_id: String, digits: u32, reason: String) -> Self {
        let mut route_metadata = BTreeMap::new();
        route_metadata.insert("skipped".to_string(), reason);
        Self {
            identity_id,
            lhs: None,
            rhs: None,
            abs_diff: None,
            digits_matched: 0,
            digits,
            passed: false,
            status: Status::Skipped,
            route_metadata,
        }
    }

    /// One JSON object on one line; all numbers are decimal strings.
    pub fn to_json_line(&self) -> String {
        let shown = self.digits + 5;
        let j = JsonReport {
            identity_id: &self.identity_id,
            lhs: self.lhs.as_ref().map(|v| to_decimal(v, shown)),
            rhs: self.rhs.as_ref().map(|v| to_decimal(v, shown)),
            abs_diff: self.abs_diff.as_ref().map(|v| to_decimal(v, 3)),
            digits_matched: self.digits_matched,
            digits: self.digits,
            passed: self.passed,
            status: self.status,
            route_metadata: &self.route_metadata,
        };
        serde_json::to_string(&j).expect("report serializes")
    }

    /// Human-readable single line.
    pub fn to_text_line(&self) -> String {
        match (&self.lhs, &self.rhs, &self.abs_diff) {
            (Some(l), Some(r), Some(d)) => format!(
                "{:<7} {}  lhs={}  rhs={}  diff={}  digits={}/{}",
                self.status.to_string(),
                self.identity_id,
                to_decimal(l, 20),
                to_decimal(r, 20),
                to_decimal(d, 3),
                self.digits_matched,
                self.digits
            ),
            _ => format!(
                "{:<7} {}  ({})",
                self.status.to_string(),
                self.identity_id,
                self.route_metadata.get("skipped").map(String::as_str).unwrap_or("")
            ),
        }
    }
}
