//! Check reports shared by every law suite.
//!
//! Passing instances are only counted; failing instances keep a full record
//! (capped per law so a badly broken structure cannot flood the output).

use std::fmt;

use serde::{Deserialize, Serialize};

/// Failing records kept per law before further failures are only counted.
pub const FAILURES_KEPT_PER_LAW: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One evaluated law instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawInstance {
    pub law: String,
    pub grades: Vec<String>,
    pub set_sizes: Vec<usize>,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawTally {
    pub law: String,
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub tallies: Vec<LawTally>,
    pub failures: Vec<LawInstance>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report { subject: subject.into(), ..Report::default() }
    }

    fn tally_mut(&mut self, law: &str) -> &mut LawTally {
        let pos = match self.tallies.iter().position(|t| t.law == law) {
            Some(p) => p,
            None => {
                self.tallies.push(LawTally { law: law.to_string(), checked: 0, failed: 0 });
                self.tallies.len() - 1
            }
        };
        &mut self.tallies[pos]
    }

    /// Registers a law so it shows up even when it has no instances.
    pub fn declare(&mut self, law: &str) {
        self.tally_mut(law);
    }

    pub fn pass(&mut self, law: &str) {
        self.tally_mut(law).checked += 1;
    }

    pub fn fail(&mut self, instance: LawInstance) {
        let tally = self.tally_mut(&instance.law);
        tally.checked += 1;
        tally.failed += 1;
        let kept = tally.failed as usize;
        if kept <= FAILURES_KEPT_PER_LAW {
            self.failures.push(LawInstance { verdict: Verdict::Fail, ..instance });
        }
    }

    /// Records a pass when `ok`, otherwise builds and stores the failure.
    pub fn check(&mut self, law: &str, ok: bool, failure: impl FnOnce() -> LawInstance) {
        if ok {
            self.pass(law);
        } else {
            self.fail(failure());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        for t in other.tallies {
            let mine = self.tally_mut(&t.law);
            mine.checked += t.checked;
            mine.failed += t.failed;
        }
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }

    pub fn failed_count(&self) -> u64 {
        self.tallies.iter().map(|t| t.failed).sum()
    }

    pub fn checked_count(&self) -> u64 {
        self.tallies.iter().map(|t| t.checked).sum()
    }

    pub fn failures_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a LawInstance> + 'a {
        self.failures.iter().filter(move |f| f.law == law)
    }

    pub fn tally(&self, law: &str) -> Option<&LawTally> {
        self.tallies.iter().find(|t| t.law == law)
    }

    /// One JSON object per failing record followed by one per tally.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            out.push_str(&serde_json::to_string(f).expect("serializable"));
            out.push('\n');
        }
        for t in &self.tallies {
            out.push_str(&serde_json::to_string(t).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.subject)?;
        for t in &self.tallies {
            let mark = if t.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "  [{mark}] {:<32} {:>8} checked {:>6} failed", t.law, t.checked, t.failed)?;
        }
        for x in &self.failures {
            writeln!(
                f,
                "  witness {} grades=[{}] sizes={:?} in={} lhs={} rhs={}",
                x.law,
                x.grades.join(","),
                x.set_sizes,
                x.witness,
                x.lhs,
                x.rhs
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Shorthand for building a failing record.
pub fn instance(
    law: &str,
    grades: &[&str],
    set_sizes: &[usize],
    witness: impl fmt::Display,
    lhs: impl fmt::Display,
    rhs: impl fmt::Display,
) -> LawInstance {
    LawInstance {
        law: law.to_string(),
        grades: grades.iter().map(|g| g.to_string()).collect(),
        set_sizes: set_sizes.to_vec(),
        witness: witness.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        verdict: Verdict::Fail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_capped_but_counted() {
        let mut r = Report::new("cap");
        for i in 0..20 {
            r.fail(instance("law", &[], &[], i, "l", "r"));
        }
        assert_eq!(r.tally("law").unwrap().failed, 20);
        assert_eq!(r.failures.len(), FAILURES_KEPT_PER_LAW);
        assert!(!r.passed());
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("rt");
        r.pass("a");
        r.fail(instance("b", &["wa", "wb"], &[1, 2], "(x:y0,c:a)", "x", "y"));
        r.note("hello");
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        for line in r.to_json_lines().lines() {
            let _: serde_json::Value = serde_json::from_str(line).unwrap();
        }
    }
}
