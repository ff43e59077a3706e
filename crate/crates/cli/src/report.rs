use std::fmt::{self, Write as _};

/// Report text plus the verdict of its checks.
#[derive(Debug, Default)]
pub struct Report {
    text: String,
    failed: bool,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl fmt::Display) {
        let _ = writeln!(self.text, "{s}");
    }

    pub fn kv(&mut self, key: &str, value: impl fmt::Display) {
        let _ = writeln!(self.text, "{key}: {value}");
    }

    /// Records a check; a failing one marks the report and prints the witness.
    pub fn check(&mut self, key: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.kv(key, ok);
        if !ok {
            self.failed = true;
            self.kv("witness", witness());
        }
    }

    pub fn fail(&mut self, reason: impl fmt::Display) {
        self.failed = true;
        self.kv("failure", reason);
    }

    pub fn ok(&self) -> bool {
        !self.failed
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}
