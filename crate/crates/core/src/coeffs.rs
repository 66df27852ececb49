//! Combination coefficients `c_1..c_{K+1}` that turn the accumulator
//! outputs into the powered sum.
//!
//! Two independent numeric routes are provided: the closed form
//! `c_k = sum_{j=0}^{k-1} (-1)^j C(k-1, j) (N + j)^K` and the Stirling form
//! `c_k = (-1)^{k-1} (k-1)! sum_{m=k-1}^{K} C(K, m) N^{K-m} S(m, k-1)`.
//! [`coefficient_polynomials`] expands the closed form symbolically in `N`.
//!
//! Coefficients are documented 1-based (`c_1` first) and stored 0-based:
//! `coeffs()[k - 1]` is `c_k`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, factorial, pow, stirling2, ExactInt};

/// The `K + 1` coefficients for a concrete power `K` and length `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSet {
    power: usize,
    len: u64,
    coeffs: Vec<ExactInt>,
}

impl CoefficientSet {
    /// Builds a set from raw values. `coeffs` must hold exactly `power + 1`
    /// entries.
    pub fn from_values(power: usize, len: u64, coeffs: Vec<ExactInt>) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyLength(len));
        }
        assert_eq!(coeffs.len(), power + 1, "coefficient count must be K + 1");
        Ok(Self { power, len, coeffs })
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn sample_count(&self) -> u64 {
        self.len
    }

    /// `c_1..c_{K+1}`, stored 0-based.
    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// `c_k` for 1-based `k`.
    pub fn get(&self, k: usize) -> Option<&ExactInt> {
        k.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    /// Whether `N >= K + 1`, the condition under which these coefficients
    /// are the only ones reproducing `n^K` on the grid `n = 0..N-1`.
    pub fn is_unique_on_grid(&self) -> bool {
        self.len > self.power as u64
    }

    pub fn into_values(self) -> Vec<ExactInt> {
        self.coeffs
    }
}

fn check_len(len: u64) -> Result<()> {
    if len == 0 {
        Err(Error::EmptyLength(len))
    } else {
        Ok(())
    }
}

fn alternating(j: u64) -> ExactInt {
    if j.is_multiple_of(2) {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

/// Coefficients by the closed form, a `(k-1)`-th forward difference of
/// `(N + j)^K`.
pub fn coefficients_closed(power: usize, len: u64) -> Result<CoefficientSet> {
    check_len(len)?;
    let k_pow = power as u32;
    let coeffs = (1..=power as u64 + 1)
        .map(|k| {
            (0..k).fold(ExactInt::zero(), |acc, j| {
                let base = ExactInt::from(len) + j;
                acc + alternating(j) * binomial(k - 1, j) * pow(&base, k_pow)
            })
        })
        .collect();
    Ok(CoefficientSet { power, len, coeffs })
}

/// Coefficients by the Stirling-number form. Shares no code path with
/// [`coefficients_closed`] beyond the exact primitives.
pub fn coefficients_stirling(power: usize, len: u64) -> Result<CoefficientSet> {
    check_len(len)?;
    let k_pow = power as u32;
    let n = ExactInt::from(len);
    let coeffs = (1..=k_pow + 1)
        .map(|k| {
            let inner = (k - 1..=k_pow).fold(ExactInt::zero(), |acc, m| {
                acc + binomial(power as u64, m as u64) * pow(&n, k_pow - m) * stirling2(m, k - 1)
            });
            alternating((k - 1) as u64) * factorial(k - 1) * inner
        })
        .collect();
    Ok(CoefficientSet { power, len, coeffs })
}

/// Dense polynomial in `N` with exact integer coefficients; index `i`
/// holds the coefficient of `N^i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactInt::from(c)).collect())
    }

    /// Degree, or `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &ExactInt) -> ExactInt {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactInt::zero(), |acc, c| acc * at + c)
    }
}

impl fmt::Display for IntPolynomial {
    /// Canonical form: descending powers of `N`, explicit signs, unit
    /// coefficients elided, `^` without spaces, ASCII `-`. For example
    /// `20N^3+60N^2+70N+30`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if exp == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match exp {
                0 => {}
                1 => f.write_str("N")?,
                _ => write!(f, "N^{exp}")?,
            }
        }
        Ok(())
    }
}

/// `c_1(N)..c_{K+1}(N)` as polynomials in `N`, from the binomial-theorem
/// expansion `(N + j)^K = sum_i C(K, i) j^{K-i} N^i` summed coefficient-wise.
pub fn coefficient_polynomials(power: usize) -> Vec<IntPolynomial> {
    let k_pow = power as u32;
    (1..=power as u64 + 1)
        .map(|k| {
            let mut acc = vec![ExactInt::zero(); power + 1];
            for j in 0..k {
                let weight = alternating(j) * binomial(k - 1, j);
                let j_big = ExactInt::from(j);
                for (i, slot) in acc.iter_mut().enumerate() {
                    let term = binomial(power as u64, i as u64) * pow(&j_big, k_pow - i as u32);
                    *slot += &weight * term;
                }
            }
            IntPolynomial::new(acc)
        })
        .collect()
}
