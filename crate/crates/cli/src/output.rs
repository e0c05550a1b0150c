use std::fmt::Display;
use std::fs;
use std::path::Path;

use mdtw_core::Report;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(msg: impl Display) -> Self {
        Self {
            code: 2,
            message: msg.to_string(),
        }
    }

    pub fn violation(msg: impl Display) -> Self {
        Self {
            code: 1,
            message: msg.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::input(format!("{e:#}"))
    }
}

/// Report lines plus fact lines; violations are remembered so the command can
/// exit 1 once everything has been printed.
pub struct Sheet {
    lines: Vec<String>,
    facts: Vec<String>,
    first_violation: Option<String>,
}

impl Sheet {
    /// Every report starts with the command and the seed.
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        let seed = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        Self {
            lines: vec![format!("# mdtw {command} seed={seed}")],
            facts: Vec::new(),
            first_violation: None,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn fact(&mut self, name: &str, holds: bool, witness: Option<&str>) {
        let status = if holds { "pass" } else { "fail" };
        let mut f = format!("fact {name} {status}");
        if let Some(w) = witness.filter(|_| !holds) {
            f.push(' ');
            f.push_str(w);
        }
        self.lines.push(format!("{} {name}", status.to_uppercase()));
        if !holds && self.first_violation.is_none() {
            self.first_violation = Some(format!("{name}: {}", witness.unwrap_or("violated")));
        }
        self.facts.push(f);
    }

    pub fn report(&mut self, name: &str, rep: &Report) {
        self.fact(name, rep.is_ok(), rep.violations.first().map(String::as_str));
        self.lines.push(format!("  {} checks, {} violations", rep.checks, rep.violations.len()));
    }

    pub fn finish(self, facts_path: Option<&Path>) -> Result<(), Failure> {
        println!("{}", self.lines.join("\n"));
        if let Some(p) = facts_path {
            let mut text = self.facts.join("\n");
            text.push('\n');
            fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
        }
        match self.first_violation {
            Some(v) => Err(Failure::violation(v)),
            None => Ok(()),
        }
    }
}
