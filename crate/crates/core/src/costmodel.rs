//! Operation accounting for the cascade and the addition-chain baseline.
//!
//! Counts come in two flavors: closed-form predictions (`predict_*`) and
//! counters collected while actually running the exact arithmetic
//! (`measure_*`). The two must agree exactly.

use std::io::{self, Write};
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::cascade::CascadeState;
use crate::exactmath::ExactInt;
use crate::oracle::{baseline_sum, chain_length};

/// Tally of arithmetic operations.
///
/// General multiplications take two runtime operands; constant
/// multiplications have one fixed, precomputable operand.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct OpCount {
    pub general_mults: u64,
    pub constant_mults: u64,
    pub additions: u64,
}

impl OpCount {
    pub fn total_mults(&self) -> u64 {
        self.general_mults + self.constant_mults
    }
}

impl Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            general_mults: self.general_mults + rhs.general_mults,
            constant_mults: self.constant_mults + rhs.constant_mults,
            additions: self.additions + rhs.additions,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

/// Cascade cost: `K + 1` constant multiplications and `(K + 1) N - 1`
/// additions.
pub fn predict_proposed(power: usize, len: u64) -> OpCount {
    let stages = power as u64 + 1;
    OpCount {
        general_mults: 0,
        constant_mults: stages,
        additions: (stages * len).saturating_sub(1),
    }
}

/// Baseline cost, counting the multiplication by `v[n]`:
/// `N (l(K) + 1)` general multiplications for `K >= 1`, none for `K = 0`,
/// and `N - 1` additions.
pub fn predict_baseline(power: usize, len: u64) -> OpCount {
    let per_sample = if power == 0 {
        0
    } else {
        chain_length(power) + 1
    };
    OpCount {
        general_mults: len * per_sample,
        constant_mults: 0,
        additions: len.saturating_sub(1),
    }
}

/// Baseline multiplications spent on forming `n^K` only: `N l(K)`.
pub fn predict_baseline_chain_only(power: usize, len: u64) -> u64 {
    len * chain_length(power)
}

/// Runs the exact cascade over `samples` and returns the counted cost of
/// producing the power-`K` sum. Empty input costs nothing.
pub fn measure_proposed(samples: &[ExactInt], power: usize) -> OpCount {
    let mut cascade = CascadeState::new(power);
    cascade.push_all(samples);
    match cascade.moment_counted(power) {
        Ok((_, ops)) => ops,
        Err(_) => OpCount::default(),
    }
}

/// Runs the baseline evaluator over `samples` and returns its counted cost.
pub fn measure_baseline(samples: &[ExactInt], power: usize) -> OpCount {
    baseline_sum(samples, power).1
}

/// One `(K, N)` point of the complexity comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    #[serde(rename = "K")]
    pub power: usize,
    #[serde(rename = "N")]
    pub len: u64,
    pub proposed: OpCount,
    pub baseline: OpCount,
    pub baseline_chain_only_mults: u64,
}

impl ComplexityReport {
    pub fn predict(power: usize, len: u64) -> Self {
        Self {
            power,
            len,
            proposed: predict_proposed(power, len),
            baseline: predict_baseline(power, len),
            baseline_chain_only_mults: predict_baseline_chain_only(power, len),
        }
    }
}

/// Cross product of `powers` and `lens`, power-major.
pub fn complexity_table(powers: &[usize], lens: &[u64]) -> Vec<ComplexityReport> {
    powers
        .iter()
        .flat_map(|&k| lens.iter().map(move |&n| ComplexityReport::predict(k, n)))
        .collect()
}

pub const CSV_HEADER: &str = "K,N,method,general_mults,constant_mults,additions";

/// Writes three rows per report: `proposed`, `baseline` (inclusive of the
/// multiplication by `v[n]`) and `baseline_chain_only`.
pub fn write_csv<W: Write>(reports: &[ComplexityReport], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in reports {
        let chain_only = OpCount {
            general_mults: r.baseline_chain_only_mults,
            ..r.baseline
        };
        for (method, ops) in [
            ("proposed", r.proposed),
            ("baseline", r.baseline),
            ("baseline_chain_only", chain_only),
        ] {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.power, r.len, method, ops.general_mults, ops.constant_mults, ops.additions
            )?;
        }
    }
    Ok(())
}
