use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, data: impl Serialize) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            data: serde_json::to_value(data).expect("report data serializes"),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub seed: u64,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(config: Value, checks: Vec<Check>, seed: u64) -> Self {
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        Report {
            config,
            summary: Summary {
                passed,
                failed: checks.len() - passed,
            },
            checks,
            seed,
            version: catchi_core::VERSION,
            timing_ms: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# catchi report\n\n");
        out.push_str(&format!(
            "version {} · seed {} · {} passed, {} failed",
            self.version, self.seed, self.summary.passed, self.summary.failed
        ));
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!(" · {ms:.1} ms"));
        }
        out.push_str("\n\n| check | status |\n|---|---|\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "**fail**",
            };
            out.push_str(&format!("| {} | {} |\n", c.name, status));
        }
        out.push_str("\n## Configuration\n\n```json\n");
        out.push_str(&serde_json::to_string_pretty(&self.config).expect("config serializes"));
        out.push_str("\n```\n");
        for c in &self.checks {
            out.push_str(&format!("\n## {}\n\n```json\n", c.name));
            out.push_str(&serde_json::to_string_pretty(&c.data).expect("data serializes"));
            out.push_str("\n```\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn summary_counts() {
        let r = Report::new(
            json!({"cmd": "x"}),
            vec![
                Check::new("a", true, 1),
                Check::new("b", false, json!({"w": 0.5})),
            ],
            7,
        );
        assert_eq!((r.summary.passed, r.summary.failed), (1, 1));
        assert!(!r.all_passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][1]["status"], "fail");
        assert_eq!(v["seed"], 7);
        assert!(v.get("timing_ms").is_none());
        let md = r.to_markdown();
        assert!(md.contains("| b | **fail** |"));
    }
}
