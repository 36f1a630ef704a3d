//! The eleven acceptance criteria as runnable checks, shared by the
//! `acceptance` test target and `verify all`.

mod algebra;
mod analytic;
mod negative;

use serde::Serialize;

pub use algebra::{criterion_1, criterion_11, criterion_2, criterion_3, default_pool_trees};
pub use analytic::{criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9};
pub use negative::criterion_10;

use crate::error::Result;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: usize,
    pub max_gap: f64,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {} checks, max gap {:.3e}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.max_gap
        )
    }
}

/// Running totals for one criterion.
pub(crate) struct Tally {
    id: u32,
    title: String,
    checks: usize,
    max_gap: f64,
    notes: Vec<String>,
    failures: Vec<String>,
}

const MAX_FAILURES: usize = 20;

impl Tally {
    pub(crate) fn new(id: u32, title: &str) -> Tally {
        Tally {
            id,
            title: title.to_string(),
            checks: 0,
            max_gap: 0.0,
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, what: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(what);
        } else if self.failures.len() == MAX_FAILURES {
            self.failures.push("further failures omitted".into());
        }
    }

    /// An exact check.
    pub(crate) fn exact(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    /// A numeric check against `tol`.
    pub(crate) fn gap(&mut self, gap: f64, tol: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        if gap.is_nan() || gap >= tol {
            self.fail(format!("{} (gap {gap:.3e})", what()));
        }
        if gap.is_nan() {
            self.max_gap = f64::NAN;
        } else if !self.max_gap.is_nan() {
            self.max_gap = self.max_gap.max(gap);
        }
    }

    /// Records a check that could not be evaluated.
    pub(crate) fn error(&mut self, what: String, e: crate::error::Error) {
        self.checks += 1;
        self.fail(format!("{what}: {e}"));
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub(crate) fn finish(self) -> CriterionReport {
        CriterionReport {
            id: self.id,
            pass: self.failures.is_empty() && self.checks > 0,
            title: self.title,
            checks: self.checks,
            max_gap: self.max_gap,
            notes: self.notes,
            failures: self.failures,
        }
    }
}

/// Runs `f`, turning an evaluation error into a recorded failure.
pub(crate) fn guard<T>(
    t: &mut Tally,
    what: impl Fn() -> String,
    f: impl FnOnce() -> Result<T>,
) -> Option<T> {
    match f() {
        Ok(v) => Some(v),
        Err(e) => {
            t.error(what(), e);
            None
        }
    }
}

/// Size of a symmetric tensor: its expectation and its values at a few points.
pub(crate) fn sym_size(s: &crate::targets::SymTensor) -> f64 {
    let mut m = s.expectation().abs();
    for p in [-0.7, 0.0, 0.3, 1.1] {
        let y = vec![p; s.dim()];
        m = m.max(s.eval(&y).abs());
    }
    m
}

/// Every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(seed),
        criterion_3(),
        criterion_4(seed),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(seed),
        criterion_10(),
        criterion_11(),
    ]
}

/// Runs one criterion by number.
pub fn run_one(id: u32, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(seed),
        3 => criterion_3(),
        4 => criterion_4(seed),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(seed),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => return None,
    })
}
