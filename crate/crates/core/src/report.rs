//! Structured subcommand results with deterministic text and JSON
//! renderings and the exit-code contract (0 pass, 1 fail, 2 usage/parse).

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Details are an ordered list of (label, value) pairs; ordering is part
/// of the report value, so rendering is deterministic.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub details: Vec<(String, String)>,
}

impl Report {
    pub fn pass(command: &str) -> Report {
        Report {
            command: command.into(),
            verdict: Verdict::Pass,
            details: Vec::new(),
        }
    }

    pub fn fail(command: &str) -> Report {
        Report {
            command: command.into(),
            verdict: Verdict::Fail,
            details: Vec::new(),
        }
    }

    pub fn with(mut self, label: &str, value: impl std::fmt::Display) -> Report {
        self.details.push((label.into(), value.to_string()));
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match self.verdict {
            Verdict::Pass => out.push_str("PASS"),
            Verdict::Fail => out.push_str("FAIL"),
        }
        out.push_str(&format!(" [{}]\n", self.command));
        for (label, value) in &self.details {
            if value.contains('\n') {
                out.push_str(&format!("{}:\n", label));
                for line in value.lines() {
                    out.push_str(&format!("  {}\n", line));
                }
            } else {
                out.push_str(&format!("{}: {}\n", label, value));
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = Report::pass("check-integrability").with("system", "chebyshev");
        let json = r.render_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        // deterministic: byte-identical on repeat
        assert_eq!(r.render_json(), json);
        assert_eq!(r.render_text(), r.render_text());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Report::pass("x").exit_code(), 0);
        assert_eq!(Report::fail("x").exit_code(), 1);
    }

    #[test]
    fn text_layout() {
        let r = Report::fail("specialize").with("residual", "a\nb");
        let text = r.render_text();
        assert!(text.starts_with("FAIL [specialize]\n"));
        assert!(text.contains("residual:\n  a\n  b\n"));
    }
}
