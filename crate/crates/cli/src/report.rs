use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub model: String,
    /// sha256 of the canonical model text.
    pub digest: String,
    pub semantics: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<Iterations>,
    pub result: Payload,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Iterations {
    pub count: usize,
    pub bound: usize,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Relation {
        pairs: Vec<PairEntry>,
    },
    Distance {
        from: Vec<String>,
        to: Vec<String>,
        value: String,
    },
    Denotation {
        values: Vec<StateValue>,
    },
    Verification {
        passed: usize,
        failed: usize,
    },
}

#[derive(Debug, Serialize)]
pub struct PairEntry {
    pub left: String,
    pub right: String,
    pub related: bool,
}

#[derive(Debug, Serialize)]
pub struct StateValue {
    pub state: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| !c.passed)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        let mut line = |fields: &[&str]| {
            out.push_str(&fields.join("\t"));
            out.push('\n');
        };
        line(&["command", &self.command.join(" ")]);
        line(&["model", &self.model]);
        line(&["digest", &self.digest]);
        line(&["semantics", &self.semantics]);
        if let Some(it) = self.iterations {
            line(&["iterations", &it.count.to_string(), &it.bound.to_string()]);
        }
        match &self.result {
            Payload::Relation { pairs } => {
                for p in pairs {
                    let verdict = if p.related { "related" } else { "not-related" };
                    line(&["pair", &p.left, &p.right, verdict]);
                }
            }
            Payload::Distance { from, to, value } => {
                line(&["from", &braced(from)]);
                line(&["to", &braced(to)]);
                line(&["distance", value]);
            }
            Payload::Denotation { values } => {
                for v in values {
                    line(&["value", &v.state, &v.value]);
                }
            }
            Payload::Verification { .. } => {}
        }
        for c in &self.checks {
            line(&[
                "check",
                if c.passed { "PASS" } else { "FAIL" },
                &c.name,
                &c.detail,
            ]);
        }
        if let Payload::Verification { passed, failed } = &self.result {
            let mut summary = String::new();
            write!(summary, "{passed} passed, {failed} failed").expect("string write");
            line(&["summary", &summary]);
        }
        out
    }
}

pub fn braced(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}
