use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub name: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub pass: bool,
}

impl ResultRow {
    /// Passes when `value <= bound`.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        ResultRow {
            name: name.into(),
            value,
            bound: Some(bound),
            pass: value <= bound,
        }
    }

    /// Passes when `|value - target| <= tol`; `bound` records the target.
    pub fn near(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        ResultRow {
            name: name.into(),
            value,
            bound: Some(target),
            pass: (value - target).abs() <= tol,
        }
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        ResultRow {
            name: name.into(),
            value,
            bound: None,
            pass: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub command: String,
    pub config_hash: String,
    pub version: String,
    pub inputs: serde_json::Value,
    pub results: Vec<ResultRow>,
    pub exit_reason: String,
}

impl Summary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary always serialises");
        s.push('\n');
        s
    }
}

/// `"ok"`, or the names of the failing rows.
pub fn exit_reason(results: &[ResultRow]) -> String {
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        "ok".into()
    } else {
        format!("failed: {}", failed.join("; "))
    }
}
