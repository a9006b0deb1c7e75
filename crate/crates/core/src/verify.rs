//! Shared outcome type for the exhaustive verification routines.
//!
//! Each verifier collects every failed check as a counterexample string in
//! a deterministic order; `pass` is true exactly when no check failed.
//! Timing and serialization are the CLI layer's business.

use alloc::string::String;
use alloc::vec::Vec;

/// Identifies which claim a verification run exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Theorem1,
    Fact1,
    Prop1,
    Prop2,
    Prop3,
    Cor1,
    Cor2,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Theorem1 => "theorem1",
            Claim::Fact1 => "fact1",
            Claim::Prop1 => "prop1",
            Claim::Prop2 => "prop2",
            Claim::Prop3 => "prop3",
            Claim::Cor1 => "cor1",
            Claim::Cor2 => "cor2",
        }
    }
}

/// Structured result of one verification run.
#[derive(Debug, Clone)]
pub struct Verification {
    pub claim: Claim,
    pub p: u32,
    pub k: u32,
    pub pass: bool,
    /// Number of individual assertions evaluated.
    pub checks: u64,
    pub counterexamples: Vec<String>,
    /// Informational lines (deterministic), e.g. the qualifying set of a scan.
    pub notes: Vec<String>,
}

impl Verification {
    pub fn new(claim: Claim, p: u32, k: u32) -> Verification {
        Verification {
            claim,
            p,
            k,
            pass: true,
            checks: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Record one assertion; on failure the message lands in the
    /// counterexample list and the run is marked failed.
    pub fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.pass = false;
            self.counterexamples.push(msg());
        }
    }

    pub fn note(&mut self, line: String) {
        self.notes.push(line);
    }
}
