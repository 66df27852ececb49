//! Brute-force evaluators of `sum_{n<N} n^K v[n]`.
//!
//! [`direct_sum`] is the ground truth for every equivalence test. The
//! baseline evaluator spends a minimal addition chain per sample to form
//! `n^K`, then one general multiplication by `v[n]`.

use num_traits::{One, Zero};

use crate::costmodel::OpCount;
use crate::error::{Error, Result};
use crate::exactmath::ExactInt;

/// Largest exponent [`optimal_chain`] will search for.
pub const MAX_CHAIN_TARGET: u32 = 64;

/// `sum_n n^K v[n]` with `n^K` formed by repeated multiplication and
/// `0^0 = 1`.
pub fn direct_sum(samples: &[ExactInt], power: usize) -> ExactInt {
    samples
        .iter()
        .enumerate()
        .fold(ExactInt::zero(), |acc, (n, v)| {
            let n = ExactInt::from(n);
            let mut p = ExactInt::one();
            for _ in 0..power {
                p *= &n;
            }
            acc + p * v
        })
}

/// Addition chain `1 = a_0, a_1, ..., a_r = target`, stored as index pairs:
/// step `(i, j)` appends `a_i + a_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditionChain {
    target: u32,
    steps: Vec<(usize, usize)>,
}

impl AdditionChain {
    /// Validates that every step references earlier elements and that the
    /// chain ends at `target`.
    pub fn new(target: u32, steps: Vec<(usize, usize)>) -> Option<Self> {
        let mut values = vec![1u64];
        for &(i, j) in &steps {
            if i >= values.len() || j >= values.len() {
                return None;
            }
            values.push(values[i] + values[j]);
        }
        (*values.last()? == target as u64).then_some(Self { target, steps })
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    /// Number of steps, i.e. multiplications needed for `x^target`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn values(&self) -> Vec<u32> {
        let mut values = vec![1u32];
        for &(i, j) in &self.steps {
            values.push(values[i] + values[j]);
        }
        values
    }
}

/// Minimal-length addition chain for `target`, by iterative deepening over
/// ascending chains.
///
/// Pairs are tried in lexicographic order, so the first chain found at the
/// minimal depth has the lexicographically smallest step sequence among
/// ascending chains.
pub fn optimal_chain(target: u32) -> Result<AdditionChain> {
    if !(1..=MAX_CHAIN_TARGET).contains(&target) {
        return Err(Error::ChainTarget(target));
    }
    let lower_bound = (32 - (target - 1).leading_zeros()) as usize;
    let mut values = vec![1u32];
    let mut steps = Vec::new();
    for depth in lower_bound.. {
        if search(target, depth, &mut values, &mut steps) {
            return Ok(AdditionChain { target, steps });
        }
    }
    unreachable!("binary method bounds the depth")
}

fn search(
    target: u32,
    depth: usize,
    values: &mut Vec<u32>,
    steps: &mut Vec<(usize, usize)>,
) -> bool {
    let last = *values.last().expect("chain starts at 1");
    if last == target {
        return true;
    }
    let remaining = depth - steps.len();
    if remaining == 0 || (last as u64) << remaining < target as u64 {
        return false;
    }
    let mut tried = Vec::new();
    for i in 0..values.len() {
        for j in i..values.len() {
            let next = values[i] + values[j];
            if next <= last || next > target || tried.contains(&next) {
                continue;
            }
            tried.push(next);
            values.push(next);
            steps.push((i, j));
            if search(target, depth, values, steps) {
                return true;
            }
            values.pop();
            steps.pop();
        }
    }
    false
}

/// `base^chain.target()` using exactly `chain.len()` multiplications.
/// Returns the power and the multiplication count.
pub fn chain_power(base: &ExactInt, chain: &AdditionChain) -> (ExactInt, u64) {
    let mut powers = vec![base.clone()];
    let mut mults = 0;
    for &(i, j) in chain.steps() {
        let p = &powers[i] * &powers[j];
        mults += 1;
        powers.push(p);
    }
    (powers.pop().expect("chain starts at base"), mults)
}

/// Baseline evaluation with counted operations.
///
/// For `K >= 1` every sample costs `len(chain)` multiplications for `n^K`
/// plus one by `v[n]`, including `n = 0`. `K = 0` needs no multiplication.
/// Summing `N` terms costs `N - 1` additions.
pub fn baseline_sum(samples: &[ExactInt], power: usize) -> (ExactInt, OpCount) {
    let mut ops = OpCount::default();
    let chain =
        (power >= 1).then(|| optimal_chain(power as u32).expect("power within chain range"));
    let mut sum: Option<ExactInt> = None;
    for (n, v) in samples.iter().enumerate() {
        let term = match &chain {
            Some(chain) => {
                let (p, mults) = chain_power(&ExactInt::from(n), chain);
                ops.general_mults += mults + 1;
                p * v
            }
            None => v.clone(),
        };
        sum = Some(match sum {
            Some(acc) => {
                ops.additions += 1;
                acc + term
            }
            None => term,
        });
    }
    (sum.unwrap_or_default(), ops)
}

/// Chain-only multiplications per sample (`l(K)`, zero for `K = 0`).
pub fn chain_length(power: usize) -> u64 {
    if power == 0 {
        0
    } else {
        optimal_chain(power as u32)
            .expect("power within chain range")
            .len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| ExactInt::from(x)).collect()
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&ints(&[3, 1, 4]), 2), ExactInt::from(17));
        assert_eq!(direct_sum(&ints(&[5, 7]), 0), ExactInt::from(12));
        assert_eq!(direct_sum(&[], 3), ExactInt::zero());
    }

    #[test]
    fn chain_lengths() {
        let lens: Vec<usize> = (1..=8).map(|k| optimal_chain(k).unwrap().len()).collect();
        assert_eq!(lens, [0, 1, 2, 2, 3, 3, 4, 3]);
    }

    /// All ascending chains of length <= `max_len` reaching `target`,
    /// enumerated without pruning.
    fn shortest_by_enumeration(target: u32, max_len: usize) -> Option<usize> {
        fn go(values: &mut Vec<u32>, target: u32, left: usize) -> Option<usize> {
            if *values.last().unwrap() == target {
                return Some(0);
            }
            if left == 0 {
                return None;
            }
            let mut best: Option<usize> = None;
            for i in 0..values.len() {
                for j in i..values.len() {
                    let next = values[i] + values[j];
                    if next <= *values.last().unwrap() || next > target {
                        continue;
                    }
                    values.push(next);
                    if let Some(d) = go(values, target, left - 1) {
                        best = Some(best.map_or(d + 1, |b| b.min(d + 1)));
                    }
                    values.pop();
                }
            }
            best
        }
        go(&mut vec![1], target, max_len)
    }

    #[test]
    fn chain_lengths_match_unpruned_enumeration() {
        for k in 1..=20 {
            let want = shortest_by_enumeration(k, 6).unwrap();
            assert_eq!(optimal_chain(k).unwrap().len(), want, "k={k}");
        }
    }

    #[test]
    fn chain_for_seven() {
        let chain = optimal_chain(7).unwrap();
        assert_eq!(chain.len(), 4);
        assert_eq!(*chain.values().last().unwrap(), 7);
        let (v, mults) = chain_power(&ExactInt::from(2), &chain);
        assert_eq!(v, ExactInt::from(128));
        assert_eq!(mults, 4);
    }

    #[test]
    fn chain_power_small() {
        let one = optimal_chain(1).unwrap();
        assert!(one.is_empty());
        assert_eq!(
            chain_power(&ExactInt::from(-9), &one),
            (ExactInt::from(-9), 0)
        );
        let four = optimal_chain(4).unwrap();
        assert_eq!(
            chain_power(&ExactInt::from(3), &four),
            (ExactInt::from(81), 2)
        );
    }

    #[test]
    fn chain_power_matches_repeated_product() {
        for k in 1..=16u32 {
            let chain = optimal_chain(k).unwrap();
            for n in 0..=10i64 {
                let want = (0..k).fold(ExactInt::one(), |acc, _| acc * n);
                assert_eq!(chain_power(&ExactInt::from(n), &chain).0, want);
            }
        }
    }

    #[test]
    fn chain_length_within_binary_bound() {
        for k in 2..=MAX_CHAIN_TARGET {
            let chain = optimal_chain(k).unwrap();
            assert!(
                chain.len() <= 2 * (31 - k.leading_zeros()) as usize,
                "k={k}"
            );
            assert!(AdditionChain::new(k, chain.steps().to_vec()).is_some());
        }
    }

    #[test]
    fn chain_target_range() {
        assert_eq!(optimal_chain(0), Err(Error::ChainTarget(0)));
        assert_eq!(optimal_chain(65), Err(Error::ChainTarget(65)));
    }

    #[test]
    fn chain_validation() {
        assert!(AdditionChain::new(3, vec![(0, 0), (0, 1)]).is_some());
        assert!(AdditionChain::new(3, vec![(0, 0), (0, 2)]).is_none());
        assert!(AdditionChain::new(4, vec![(0, 0), (0, 1)]).is_none());
    }

    #[test]
    fn baseline_examples() {
        let (s, ops) = baseline_sum(&ints(&[3, 1, 4]), 2);
        assert_eq!(s, ExactInt::from(17));
        assert_eq!(
            ops,
            OpCount {
                general_mults: 6,
                constant_mults: 0,
                additions: 2
            }
        );

        let v = ints(&[2; 10]);
        let (s, ops) = baseline_sum(&v, 0);
        assert_eq!(s, ExactInt::from(20));
        assert_eq!(
            ops,
            OpCount {
                general_mults: 0,
                constant_mults: 0,
                additions: 9
            }
        );

        let v: Vec<ExactInt> = (0..1000).map(|i| ExactInt::from(i % 17 - 8)).collect();
        let (s, ops) = baseline_sum(&v, 7);
        assert_eq!(s, direct_sum(&v, 7));
        assert_eq!(ops.general_mults, 5000);
        assert_eq!(ops.additions, 999);

        assert_eq!(baseline_sum(&[], 3), (ExactInt::zero(), OpCount::default()));
    }
}
