use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

/// Reference value of a claim: a number or a closed interval with optional
/// open ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PaperValue {
    Real(f64),
    Interval { low: Option<f64>, high: Option<f64> },
}

impl PaperValue {
    pub fn at_least(low: f64) -> Self {
        PaperValue::Interval { low: Some(low), high: None }
    }

    pub fn at_most(high: f64) -> Self {
        PaperValue::Interval { low: None, high: Some(high) }
    }

    pub fn between(low: f64, high: f64) -> Self {
        PaperValue::Interval { low: Some(low), high: Some(high) }
    }

    /// `|x − v| ≤ tol`, or `low − tol ≤ x ≤ high + tol`.
    pub fn accepts(&self, x: f64, tol: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match *self {
            PaperValue::Real(v) => (x - v).abs() <= tol,
            PaperValue::Interval { low, high } => {
                low.is_none_or(|l| x >= l - tol) && high.is_none_or(|h| x <= h + tol)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub paper_location: String,
    pub paper_value: PaperValue,
    pub computed: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ClaimRecord {
    /// A checked record: pass iff `paper_value` accepts `computed`.
    pub fn check(id: &str, location: &str, paper_value: PaperValue, computed: f64, tolerance: f64) -> Self {
        let status = if paper_value.accepts(computed, tolerance) { Status::Pass } else { Status::Fail };
        Self {
            claim_id: id.to_string(),
            paper_location: location.to_string(),
            paper_value,
            computed: Some(computed),
            tolerance,
            status,
            note: None,
            error: None,
        }
    }

    /// A documented discrepancy between the printed value and the computation.
    pub fn flagged(id: &str, location: &str, paper_value: PaperValue, computed: f64, tolerance: f64, note: &str) -> Self {
        Self { status: Status::Flagged, note: Some(note.to_string()), ..Self::check(id, location, paper_value, computed, tolerance) }
    }

    pub fn failed(id: &str, location: &str, paper_value: PaperValue, tolerance: f64, error: impl ToString) -> Self {
        Self {
            claim_id: id.to_string(),
            paper_location: location.to_string(),
            paper_value,
            computed: None,
            tolerance,
            status: Status::Fail,
            note: None,
            error: Some(error.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: u64,
    pub claims: Vec<ClaimRecord>,
}

impl Report {
    /// Sorts by `claim_id` so the output is independent of execution order.
    pub fn new(seed: u64, mut claims: Vec<ClaimRecord>) -> Self {
        claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
        Self { schema_version: SCHEMA_VERSION, seed, claims }
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    /// True iff no record failed; flagged records do not count against it.
    pub fn success(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.claims {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            let computed = c.computed.map_or_else(|| "-".to_string(), |v| format!("{v:.12}"));
            let expected = match c.paper_value {
                PaperValue::Real(v) => format!("{v:.12}"),
                PaperValue::Interval { low, high } => format!(
                    "[{}, {}]",
                    low.map_or("-inf".into(), |v| format!("{v:.6}")),
                    high.map_or("+inf".into(), |v| format!("{v:.6}"))
                ),
            };
            let _ = write!(s, "{status}  {:<34} computed {computed:>18}  expected {expected}  tol {:.0e}", c.claim_id, c.tolerance);
            if let Some(e) = &c.error {
                let _ = write!(s, "  error: {e}");
            }
            if let Some(n) = &c.note {
                let _ = write!(s, "  ({n})");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} pass, {} fail, {} flagged",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged)
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_and_reals() {
        assert!(PaperValue::Real(1.5).accepts(1.5 + 1e-10, 1e-9));
        assert!(!PaperValue::Real(1.5).accepts(1.6, 1e-9));
        assert!(PaperValue::at_most(8.0).accepts(8.0, 0.0));
        assert!(!PaperValue::at_least(0.9).accepts(0.89, 1e-3));
        assert!(PaperValue::between(1.0, 2.0).accepts(1.5, 0.0));
        assert!(!PaperValue::Real(0.0).accepts(f64::NAN, 1.0));
    }

    #[test]
    fn report_is_sorted_and_serializes() {
        let r = Report::new(
            3,
            vec![
                ClaimRecord::check("b", "x", PaperValue::Real(1.0), 1.0, 0.0),
                ClaimRecord::failed("a", "x", PaperValue::at_least(1.0), 0.0, "boom"),
            ],
        );
        assert_eq!(r.claims[0].claim_id, "a");
        assert!(!r.success());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["claims"][0]["paper_value"]["high"], serde_json::Value::Null);
        assert_eq!(json["claims"][1]["status"], "pass");
        assert!(r.render_text().contains("1 pass, 1 fail, 0 flagged"));
    }
}
