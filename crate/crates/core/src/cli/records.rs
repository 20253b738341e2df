use serde::Serialize;

use crate::arith::format_rational;
use crate::certificates::{displayed_constant_check, CertificateReport};

#[derive(Debug, Clone, Serialize)]
pub struct IntegralRecord {
    pub k: usize,
    pub tuple: Vec<u64>,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// One certificate, as printed by `certificate` and streamed by `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateRecord {
    pub theorem: String,
    pub tuple: Vec<u64>,
    /// Number of orderings this sorted tuple stands for in a deduplicated sweep.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    pub index: usize,
    pub multiplier: String,
    pub integral: String,
    pub product: String,
    pub is_integer: bool,
    pub constant_part: String,
    pub gcd_part: String,
    /// Whether the alternative six-factor constant 4032 also gives an integer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_4032_integer: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CertificateRecord {
    pub fn from_report(report: &CertificateReport, multiplicity: Option<u64>) -> Self {
        let gcd_part = if report.gcd_part_den == 1u32.into() {
            report.gcd_part_num.to_string()
        } else {
            format!("{}/{}", report.gcd_part_num, report.gcd_part_den)
        };
        Self {
            theorem: report.kind.to_string(),
            tuple: report.spec.multipliers().to_vec(),
            multiplicity,
            index: report.spec.index(),
            multiplier: format_rational(&report.multiplier),
            integral: format_rational(&report.integral),
            product: format_rational(&report.product),
            is_integer: report.is_integer,
            constant_part: report.constant_part.to_string(),
            gcd_part,
            constant_4032_integer: displayed_constant_check(report),
            elapsed_ms: None,
        }
    }

    pub const CSV_HEADER: &'static str =
        "tuple,multiplicity,index,multiplier,integral,product,is_integer,constant_part,gcd_part,constant_4032_integer,elapsed_ms";

    /// Tuple entries are joined with `;` so the row stays comma-separated.
    pub fn to_csv(&self) -> String {
        let tuple: Vec<String> = self.tuple.iter().map(u64::to_string).collect();
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            tuple.join(";"),
            opt(self.multiplicity.map(|m| m.to_string())),
            self.index,
            self.multiplier,
            self.integral,
            self.product,
            self.is_integer,
            self.constant_part,
            self.gcd_part,
            opt(self.constant_4032_integer.map(|b| b.to_string())),
            opt(self.elapsed_ms.map(|t| format!("{t:.3}"))),
        )
    }
}

/// Final line of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub theorem: String,
    /// Ordered tuples covered, counting each multiset once per ordering.
    pub checked: u64,
    /// Certificates actually computed.
    pub evaluated: u64,
    pub violations: u64,
    /// Offending tuples in lexicographic order.
    pub violating_tuples: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_4032_failures: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeRecord {
    pub tuple: Vec<u64>,
    pub exponent: usize,
    pub bound: u64,
    pub truncated: String,
    pub truncated_approx: f64,
    pub coefficient: String,
    pub pi_power: u32,
    pub predicted: f64,
    pub float_discrepancy: f64,
}
