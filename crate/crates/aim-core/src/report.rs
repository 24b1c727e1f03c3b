//! Serializable configuration and report documents.
//!
//! The same JSON schema is used for `--config` files, for `--json` report
//! output, and across the C ABI. Exact field elements are serialized as
//! strings in the expression syntax, never as floats; the only floating
//! point numbers in a report are the truncated-product cross-check values.

use serde::{Deserialize, Serialize};

use crate::daim::{PolynomialSolution, TerminationReport, TraceEntry};
use crate::diffops::GridFunction;
use crate::exactfield::{Field, RatFun};

fn default_n_max() -> usize {
    24
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BindEntry {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct SecondOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_end: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProductCheckOptions {
    /// Evaluation point, as an exact rational string.
    pub x: String,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    1e-12
}

/// Everything a pipeline run needs. Doubles as the `--config` file schema.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// "delta" or "dq"; presets supply their own when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s0: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bind: Vec<BindEntry>,
    /// "symbolic" or an exact rational in (0,1); required for dq.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<SecondOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_check: Option<ProductCheckOptions>,
    /// Include the full delta_n text in the trace section.
    #[serde(default)]
    pub trace_deltas: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            preset: None,
            operator: None,
            lambda0: None,
            s0: None,
            bind: Vec::new(),
            q: None,
            n_max: default_n_max(),
            second: None,
            product_check: None,
            trace_deltas: false,
        }
    }
}

/// Degrees of a rational function; `null` numerator degree means zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DegreePair {
    pub num: Option<usize>,
    pub den: usize,
}

impl DegreePair {
    pub fn of<K: Field>(f: &RatFun<K>) -> Self {
        DegreePair {
            num: f.num().degree(),
            den: f.den().degree().expect("nonzero denominator"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TraceRow {
    pub n: i64,
    pub lambda_degrees: DegreePair,
    pub s_degrees: DegreePair,
    pub delta_degrees: DegreePair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
}

impl TraceRow {
    pub fn of<K: Field>(e: &TraceEntry<K>, with_delta: bool) -> Self {
        TraceRow {
            n: e.n,
            lambda_degrees: DegreePair::of(&e.lambda),
            s_degrees: DegreePair::of(&e.s),
            delta_degrees: DegreePair::of(&e.delta),
            delta: with_delta.then(|| e.delta.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TerminationDoc {
    pub terminated_at: Option<usize>,
    pub max_checked: usize,
    pub degenerate: bool,
}

impl From<&TerminationReport> for TerminationDoc {
    fn from(r: &TerminationReport) -> Self {
        TerminationDoc {
            terminated_at: r.terminated_at,
            max_checked: r.max_checked,
            degenerate: r.degenerate,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolutionDoc {
    pub degree: usize,
    /// Ascending coefficients as exact strings.
    pub coefficients: Vec<String>,
    pub verified: bool,
    pub residual: String,
}

impl SolutionDoc {
    pub fn of<K: Field>(s: &PolynomialSolution<K>) -> Self {
        SolutionDoc {
            degree: s.degree,
            coefficients: (0..=s.degree).map(|k| s.poly.coeff(k).to_string()).collect(),
            verified: s.verified,
            residual: s.residual.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridDoc {
    pub x0: String,
    pub values: Vec<String>,
}

impl GridDoc {
    pub fn of<K: Field>(g: &GridFunction<K>) -> Self {
        GridDoc {
            x0: g.x0.to_string(),
            values: g.values.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SecondSolutionDoc {
    pub n0: i64,
    pub m: i64,
    /// The general-solution construction (sum over products).
    pub values: GridDoc,
    /// The first solution used for the Casorati pairing.
    pub first_solution: GridDoc,
    pub casorati: Vec<String>,
    /// The order-reduction construction through the polynomial solution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduce_order: Option<GridDoc>,
    /// Both constructions satisfied the equation exactly at interior nodes.
    pub residual_ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProductCheckDoc {
    pub x: String,
    /// Truncated infinite-product value.
    pub value: f64,
    pub terms: usize,
    /// The exact polynomial evaluated at x, as a string.
    pub exact: String,
    pub abs_error: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolveReport {
    pub config: SolveConfig,
    pub termination: TerminationDoc,
    pub trace: Vec<TraceRow>,
    pub solutions: Vec<SolutionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_solution: Option<SecondSolutionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_check: Option<ProductCheckDoc>,
    pub timing_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub k: String,
    pub terminated_at: Option<usize>,
    pub degree: Option<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub timing_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyReport {
    pub residual: String,
    pub zero: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrips_through_json() {
        let cfg = SolveConfig {
            preset: Some("euler".into()),
            bind: vec![BindEntry {
                name: "a".into(),
                value: "4".into(),
            }],
            ..SolveConfig::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: SolveConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.n_max, 24);
    }

    #[test]
    fn minimal_config_parses_with_defaults() {
        let cfg: SolveConfig =
            serde_json::from_str(r#"{"lambda0": "1", "s0": "1", "operator": "delta"}"#).unwrap();
        assert_eq!(cfg.n_max, 24);
        assert!(cfg.bind.is_empty());
        assert!(!cfg.trace_deltas);
    }
}
