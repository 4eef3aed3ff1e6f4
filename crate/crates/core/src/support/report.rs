use std::fmt;

use crate::error::{Error, Result};

/// Every check id, in report order within a character.
pub const KNOWN_CHECKS: [&str; 20] = [
    "A.k_supp_bound",
    "A.order_bound",
    "A.order_exponent",
    "A.monomial_witness",
    "B.abs_square",
    "B.root_of_unity",
    "B.class_count",
    "B.power_closure",
    "B.order_divides",
    "B.frc_witness",
    "C.order_divides",
    "lemmas.lem1_formula",
    "lemmas.cyclic_divides",
    "lemmas.power_into_normal",
    "lemmas.corefree",
    "lemmas.field_bound",
    "lemmas.baseline_classes",
    "lemmas.norm",
    "sigma.inequality",
    "sigma.equality",
];

/// The negative controls shipped with the crate.
pub const BUNDLED_CONTROLS: &str = include_str!("../../../../fixtures/controls.manifest");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

/// One report line. `chi` is a 0-based row index and is printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub check: &'static str,
    pub group: String,
    pub chi: Option<usize>,
    pub outcome: Outcome,
    /// Evaluated as a declared negative control.
    pub declared: bool,
    pub expected: String,
    pub got: String,
}

impl CheckEntry {
    pub fn is_unexpected_failure(&self) -> bool {
        self.outcome == Outcome::Fail && !self.declared
    }

    pub fn line(&self) -> String {
        let chi = self.chi.map_or_else(|| "-".to_string(), |c| (c + 1).to_string());
        let control = if self.declared { "control:" } else { "" };
        format!(
            "CHECK {} group={} chi={} result={} expected={}{} got={}",
            self.check, self.group, chi, self.outcome, control, self.expected, self.got
        )
    }
}

/// Declared negative controls: a check id, optionally scoped to one group.
#[derive(Clone, Debug, Default)]
pub struct Controls {
    entries: Vec<(Option<String>, &'static str)>,
}

impl Controls {
    pub fn bundled() -> Controls {
        Controls::parse(BUNDLED_CONTROLS).expect("bundled manifest is well formed")
    }

    /// One declaration per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Controls> {
        let mut c = Controls::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            c.add(line).map_err(|e| Error::Parse {
                line: i + 1,
                column: 1,
                message: e.to_string(),
            })?;
        }
        Ok(c)
    }

    /// Accepts `<suite>.<name>` or `<group>:<suite>.<name>`.
    pub fn add(&mut self, spec: &str) -> Result<()> {
        let (group, check) = match spec.rsplit_once(':') {
            Some((g, c)) if !g.is_empty() => (Some(g.to_string()), c),
            Some(_) => return Err(Error::InvalidInput(format!("empty group in `{spec}`"))),
            None => (None, spec),
        };
        let known = KNOWN_CHECKS
            .iter()
            .find(|&&k| k == check)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check id `{check}`")))?;
        if !self.entries.iter().any(|(g, k)| *g == group && k == known) {
            self.entries.push((group, known));
        }
        Ok(())
    }

    pub fn declares(&self, group: &str, check: &str) -> bool {
        self.entries
            .iter()
            .any(|(g, k)| *k == check && g.as_deref().is_none_or(|g| g == group))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn describe(group: &Option<String>, check: &str) -> String {
        match group {
            Some(g) => format!("{g}:{check}"),
            None => check.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub expected_failures: usize,
    pub skipped: usize,
    /// Declared controls that were evaluated somewhere but never failed.
    pub silent_controls: Vec<String>,
}

impl Summary {
    pub fn of(entries: &[CheckEntry], controls: &Controls) -> Summary {
        let mut s = Summary::default();
        for e in entries {
            match (e.outcome, e.declared) {
                (Outcome::Pass, _) => s.passed += 1,
                (Outcome::Fail, true) => s.expected_failures += 1,
                (Outcome::Fail, false) => s.failed += 1,
                (Outcome::Skip, _) => s.skipped += 1,
            }
        }
        for (group, check) in &controls.entries {
            let mut relevant = entries
                .iter()
                .filter(|e| e.check == *check && group.as_ref().is_none_or(|g| *g == e.group) && e.outcome != Outcome::Skip)
                .peekable();
            if relevant.peek().is_some() && !relevant.any(|e| e.outcome == Outcome::Fail) {
                s.silent_controls.push(Controls::describe(group, check));
            }
        }
        s
    }

    /// 0 when nothing failed unexpectedly and every exercised control failed.
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 && self.silent_controls.is_empty() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "summary: pass={} fail={} expected_fail={} skip={}",
            self.passed, self.failed, self.expected_failures, self.skipped
        )?;
        for c in &self.silent_controls {
            write!(f, "\ncontrol {c} was evaluated but never failed")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(check: &'static str, group: &str, outcome: Outcome, declared: bool) -> CheckEntry {
        CheckEntry {
            check,
            group: group.into(),
            chi: Some(4),
            outcome,
            declared,
            expected: "x".into(),
            got: "y".into(),
        }
    }

    #[test]
    fn line_format() {
        let e = entry("A.k_supp_bound", "g", Outcome::Fail, true);
        assert_eq!(e.line(), "CHECK A.k_supp_bound group=g chi=5 result=FAIL expected=control:x got=y");
    }

    #[test]
    fn controls_and_summary() {
        let c = Controls::bundled();
        assert!(c.declares("dihedral_16", "B.power_closure"));
        assert!(!c.declares("dihedral_32", "B.power_closure"));
        assert!(c.declares("smallgroup_512_2015", "A.k_supp_bound"));
        let mut c2 = Controls::default();
        c2.add("C.order_divides").unwrap();
        assert!(c2.declares("anything", "C.order_divides"));
        assert!(c2.add("C.nope").is_err());
        assert!(c2.add(":C.order_divides").is_err());
        assert!(Controls::parse("# comment\n\nD.x\n").is_err());

        let entries = vec![
            entry("C.order_divides", "a", Outcome::Pass, true),
            entry("C.order_divides", "b", Outcome::Fail, true),
            entry("A.k_supp_bound", "b", Outcome::Skip, false),
        ];
        let s = Summary::of(&entries, &c2);
        assert_eq!((s.passed, s.expected_failures, s.skipped, s.failed), (1, 1, 1, 0));
        assert_eq!(s.exit_code(), 0);
        let s = Summary::of(&entries[..1], &c2);
        assert_eq!(s.silent_controls, vec!["C.order_divides".to_string()]);
        assert_eq!(s.exit_code(), 1);
        let s = Summary::of(&[entry("A.k_supp_bound", "b", Outcome::Fail, false)], &c2);
        assert_eq!(s.exit_code(), 1);
    }
}
