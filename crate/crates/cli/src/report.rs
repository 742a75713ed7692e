use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use tokenalg::algebras::Section;
use tokenalg::Check;

/// What one subcommand produced before it is wrapped into a [`RunReport`].
pub struct Outcome {
    pub results: Value,
    pub sections: Vec<Section>,
    /// Tabular rendering for `--format csv`; `None` falls back to the check list.
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(results: Value) -> Self {
        Self {
            results,
            sections: Vec::new(),
            csv: None,
        }
    }

    pub fn section(mut self, title: &str, checks: Vec<Check>) -> Self {
        self.sections.push(Section {
            title: title.into(),
            checks,
        });
        self
    }

    pub fn csv(mut self, table: String) -> Self {
        self.csv = Some(table);
        self
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| tokenalg::report::all_passed(&s.checks))
    }
}

#[derive(Serialize)]
pub struct InputFingerprint {
    pub path: String,
    pub sha256: String,
}

impl InputFingerprint {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        Self {
            path: path.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Serialize)]
pub struct Stage {
    pub stage: String,
    pub seconds: f64,
}

/// Wall-clock stage timings, kept apart from the deterministic results.
#[derive(Default)]
pub struct Timer {
    stages: Vec<Stage>,
}

impl Timer {
    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push(Stage {
            stage: stage.into(),
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input: Option<InputFingerprint>,
    pub passed: bool,
    pub results: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Section>,
    pub timing: Vec<Stage>,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: Option<InputFingerprint>, outcome: Outcome, timer: Timer) -> Self {
        Self {
            command,
            input,
            passed: outcome.passed(),
            results: outcome.results,
            checks: outcome.sections,
            timing: timer.stages,
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut line = fields.into_iter().map(|f| csv_field(f.as_ref())).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

pub fn checks_csv(sections: &[Section]) -> String {
    let mut out = csv_row(["section", "check", "passed", "witness"]);
    for s in sections {
        for c in &s.checks {
            out += &csv_row([
                s.title.as_str(),
                c.name.as_str(),
                if c.passed { "true" } else { "false" },
                c.witness.as_deref().unwrap_or(""),
            ]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_row(["a", "b,c", "say \"x\""]), "a,\"b,c\",\"say \"\"x\"\"\"\n");
    }

    #[test]
    fn fingerprint_is_sha256() {
        let f = InputFingerprint::new("x", b"abc");
        assert_eq!(f.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn outcome_fails_on_any_check() {
        let o = Outcome::new(Value::Null)
            .section("a", vec![Check::pass("x")])
            .section("b", vec![Check::fail("y", "w")]);
        assert!(!o.passed());
        assert!(checks_csv(&o.sections).contains("b,y,false,w"));
    }
}
