//! Cascade of `K + 1` accumulators, one sample per step.
//!
//! Stage `k` computes `A_k[n] = A_k[n-1] + A_{k-1}[n]` with `A_0[n] = v[n]`
//! and zero initial state. After `N` samples the stage outputs combine
//! with [`CoefficientSet`] constants into `sum_{n<N} n^K v[n]`.
//!
//! Operation counting follows the runtime model: each push after the first
//! costs one addition per stage (the first push only loads the zeroed
//! registers), and a combine costs `K + 1` constant multiplications plus
//! `K` additions. Coefficient generation is not counted.

use num_traits::{ToPrimitive, Zero};

use crate::coeffs::{coefficients_closed, CoefficientSet};
use crate::costmodel::OpCount;
use crate::error::{Error, Result};
use crate::exactmath::ExactInt;

/// Running registers of an exact accumulator cascade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeState {
    registers: Vec<ExactInt>,
    stage_additions: Vec<u64>,
    samples_seen: u64,
}

impl CascadeState {
    /// A cascade for power `power`, holding `power + 1` zeroed registers.
    pub fn new(power: usize) -> Self {
        Self {
            registers: vec![ExactInt::zero(); power + 1],
            stage_additions: vec![0; power + 1],
            samples_seen: 0,
        }
    }

    pub fn power(&self) -> usize {
        self.registers.len() - 1
    }

    pub fn samples_seen(&self) -> u64 {
        self.samples_seen
    }

    /// Current `A_1..A_{K+1}`.
    pub fn snapshot(&self) -> &[ExactInt] {
        &self.registers
    }

    /// Feeds one sample through every stage, lowest stage first, so each
    /// stage sees the value its predecessor produced in the same step.
    pub fn push(&mut self, sample: &ExactInt) {
        let counted = self.samples_seen > 0;
        self.registers[0] += sample;
        for stage in 1..self.registers.len() {
            let (done, rest) = self.registers.split_at_mut(stage);
            rest[0] += &done[stage - 1];
        }
        if counted {
            self.stage_additions.iter_mut().for_each(|a| *a += 1);
        }
        self.samples_seen += 1;
    }

    pub fn push_all<'a, I>(&mut self, samples: I)
    where
        I: IntoIterator<Item = &'a ExactInt>,
    {
        for s in samples {
            self.push(s);
        }
    }

    /// Additions spent so far by the first `power + 1` stages.
    pub fn accumulation_ops(&self, power: usize) -> OpCount {
        OpCount {
            additions: self.stage_additions[..=power.min(self.power())]
                .iter()
                .sum(),
            ..OpCount::default()
        }
    }

    /// `sum_k c_k A_k` for a coefficient set matching this cascade's power
    /// and sample count. Does not modify the registers.
    pub fn finalize(&self, coeffs: &CoefficientSet) -> Result<ExactInt> {
        self.finalize_counted(coeffs).map(|(s, _)| s)
    }

    /// As [`finalize`](Self::finalize), also returning the operations spent
    /// on the combination.
    pub fn finalize_counted(&self, coeffs: &CoefficientSet) -> Result<(ExactInt, OpCount)> {
        if coeffs.power() != self.power() {
            return Err(Error::PowerMismatch {
                expected: coeffs.power(),
                actual: self.power(),
            });
        }
        self.check_len(coeffs)?;
        Ok(combine(&self.registers, coeffs.coeffs()))
    }

    /// Weighted sum for any power up to the cascade's own, using the first
    /// `power + 1` registers and coefficients for `N = samples_seen`.
    pub fn moment(&self, power: usize) -> Result<ExactInt> {
        self.moment_counted(power).map(|(s, _)| s)
    }

    /// Weighted sum for `power` plus the full runtime cost attributable to
    /// it: accumulation additions of its stages and the combination.
    pub fn moment_counted(&self, power: usize) -> Result<(ExactInt, OpCount)> {
        if power > self.power() {
            return Err(Error::PowerTooLarge {
                requested: power,
                available: self.power(),
            });
        }
        if self.samples_seen == 0 {
            return Err(Error::NoSamples);
        }
        let coeffs = coefficients_closed(power, self.samples_seen)?;
        let (sum, ops) = combine(&self.registers[..=power], coeffs.coeffs());
        Ok((sum, ops + self.accumulation_ops(power)))
    }

    /// One weighted sum per requested power, all from this single cascade.
    pub fn multi_moment_finalize(&self, powers: &[usize]) -> Result<Vec<ExactInt>> {
        powers.iter().map(|&p| self.moment(p)).collect()
    }

    fn check_len(&self, coeffs: &CoefficientSet) -> Result<()> {
        if self.samples_seen == 0 {
            return Err(Error::NoSamples);
        }
        if coeffs.sample_count() != self.samples_seen {
            return Err(Error::LengthMismatch {
                expected: coeffs.sample_count(),
                actual: self.samples_seen,
            });
        }
        Ok(())
    }
}

fn combine(registers: &[ExactInt], coeffs: &[ExactInt]) -> (ExactInt, OpCount) {
    debug_assert_eq!(registers.len(), coeffs.len());
    let mut ops = OpCount::default();
    let mut terms = coeffs.iter().zip(registers).map(|(c, a)| {
        ops.constant_mults += 1;
        c * a
    });
    let first = terms.next().expect("at least one register");
    let sum = terms.fold(first, |acc, t| acc + t);
    ops.additions += registers.len() as u64 - 1;
    (sum, ops)
}

/// Power and length fixed up front, with coefficients precomputed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentRequest {
    coeffs: CoefficientSet,
}

impl MomentRequest {
    pub fn new(power: usize, len: u64) -> Result<Self> {
        Ok(Self {
            coeffs: coefficients_closed(power, len)?,
        })
    }

    pub fn power(&self) -> usize {
        self.coeffs.power()
    }

    pub fn sample_count(&self) -> u64 {
        self.coeffs.sample_count()
    }

    pub fn coefficients(&self) -> &CoefficientSet {
        &self.coeffs
    }

    pub fn cascade(&self) -> CascadeState {
        CascadeState::new(self.power())
    }

    pub fn finalize(&self, state: &CascadeState) -> Result<ExactInt> {
        state.finalize(&self.coeffs)
    }
}

/// Double-precision cascade.
///
/// Registers grow like `N^K max|v|`, so results lose precision once they
/// pass 2^53. Only the exact [`CascadeState`] carries correctness
/// guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatCascade {
    registers: Vec<f64>,
    samples_seen: u64,
}

impl FloatCascade {
    pub fn new(power: usize) -> Self {
        Self {
            registers: vec![0.0; power + 1],
            samples_seen: 0,
        }
    }

    pub fn power(&self) -> usize {
        self.registers.len() - 1
    }

    pub fn samples_seen(&self) -> u64 {
        self.samples_seen
    }

    pub fn snapshot(&self) -> &[f64] {
        &self.registers
    }

    pub fn push(&mut self, sample: f64) {
        let mut carry = sample;
        for r in &mut self.registers {
            *r += carry;
            carry = *r;
        }
        self.samples_seen += 1;
    }

    /// Weighted sum for `power`, with exact coefficients rounded to `f64`.
    pub fn moment(&self, power: usize) -> Result<f64> {
        if power > self.power() {
            return Err(Error::PowerTooLarge {
                requested: power,
                available: self.power(),
            });
        }
        if self.samples_seen == 0 {
            return Err(Error::NoSamples);
        }
        let coeffs = coefficients_closed(power, self.samples_seen)?;
        Ok(coeffs
            .coeffs()
            .iter()
            .zip(&self.registers)
            .map(|(c, a)| c.to_f64().unwrap_or(f64::NAN) * a)
            .sum())
    }
}
