//! Exact integer combinatorics.
//!
//! Every quantity is an unbounded [`ExactInt`]. Arguments that must be
//! non-negative are taken as unsigned integers, so the negative-argument
//! domain is ruled out by the signature.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

/// Scalar for all exact computation.
pub type ExactInt = BigInt;

/// `n!`, with `0! = 1`.
pub fn factorial(n: u32) -> ExactInt {
    (2..=n).fold(ExactInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is C(n - k + i, i), so the division is exact.
    let mut acc = ExactInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Rising factorial (Pochhammer symbol) `x (x+1) ... (x+j-1)`; the empty
/// product for `j = 0` is 1.
pub fn rising_factorial(x: i64, j: u32) -> ExactInt {
    (0..j as i64).fold(ExactInt::one(), |acc, i| acc * (ExactInt::from(x) + i))
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow(base: &ExactInt, exp: u32) -> ExactInt {
    Pow::pow(base, exp)
}

/// `(-1)^e` as a sign multiplier.
fn sign(e: u64) -> ExactInt {
    if e.is_multiple_of(2) {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

/// Stirling number of the second kind `S(n, k)`.
///
/// Evaluated by the explicit alternating sum
/// `S(n, k) = (1/k!) * sum_{i=0}^{k} (-1)^i C(k, i) (k - i)^n`
/// rather than the triangle recurrence, which is kept for testing.
pub fn stirling2(n: u32, k: u32) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let sum = (0..=k).fold(ExactInt::zero(), |acc, i| {
        let term = binomial(k as u64, i as u64) * pow(&ExactInt::from(k - i), n);
        acc + sign(i as u64) * term
    });
    sum / factorial(k)
}

/// `(-1)^(k-1) (k-1)! S(m, k-1)`.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn appendix_identity_lhs(m: u32, k: u32) -> ExactInt {
    assert!(k >= 1, "k must be positive");
    sign((k - 1) as u64) * factorial(k - 1) * stirling2(m, k - 1)
}

/// `sum_{j=0}^{k-1} (-1)^j C(k-1, j) j^m`, with `0^0 = 1`.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn appendix_identity_rhs(m: u32, k: u32) -> ExactInt {
    assert!(k >= 1, "k must be positive");
    (0..k).fold(ExactInt::zero(), |acc, j| {
        let term = binomial((k - 1) as u64, j as u64) * pow(&ExactInt::from(j), m);
        acc + sign(j as u64) * term
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(1), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn binomial_values() {
        // 2-subsets of a 5-set, enumerated.
        let pairs = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).count();
        assert_eq!(binomial(5, 2), int(pairs as i64));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=20u64 {
            for k in 1..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn rising_factorial_values() {
        assert_eq!(rising_factorial(3, 0), int(1));
        assert_eq!(rising_factorial(2, 3), int(24));
        assert_eq!(rising_factorial(4, 2), int(20));
        assert_eq!(rising_factorial(4, 2), factorial(2) * binomial(5, 2));
        assert_eq!(rising_factorial(-3, 3), int(-6));
        assert_eq!(rising_factorial(0, 4), int(0));
    }

    #[test]
    fn rising_factorial_binomial_form() {
        for x in 1..=20i64 {
            for j in 0..=10u32 {
                assert_eq!(
                    rising_factorial(x, j),
                    factorial(j) * binomial((x + j as i64 - 1) as u64, j as u64)
                );
            }
        }
    }

    /// Counts set partitions of {0..n} into exactly k blocks by restricted
    /// growth strings.
    fn count_partitions(n: u32, k: u32) -> u64 {
        fn go(pos: u32, n: u32, k: u32, blocks: u32) -> u64 {
            if pos == n {
                return (blocks == k) as u64;
            }
            (0..=blocks.min(k.saturating_sub(1)))
                .map(|b| go(pos + 1, n, k, blocks.max(b + 1)))
                .sum()
        }
        go(0, n, k, 0)
    }

    #[test]
    fn stirling2_values() {
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(4, 4), int(1));
        assert_eq!(stirling2(3, 5), int(0));
        assert_eq!(stirling2(4, 0), int(0));
    }

    #[test]
    fn stirling2_counts_partitions() {
        for n in 1..=8 {
            for k in 1..=n {
                assert_eq!(
                    stirling2(n, k),
                    int(count_partitions(n, k) as i64),
                    "S({n},{k})"
                );
            }
        }
    }

    #[test]
    fn stirling2_recurrence() {
        for n in 1..=15u32 {
            for k in 1..=n {
                assert_eq!(
                    stirling2(n, k),
                    int(k as i64) * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
                );
            }
        }
    }

    #[test]
    fn monomial_rising_factorial_expansion() {
        for m in 0..=12u32 {
            for x in 0..=12i64 {
                let rhs = (0..=m).fold(ExactInt::zero(), |acc, j| {
                    acc + stirling2(m, j) * sign((m - j) as u64) * rising_factorial(x, j)
                });
                assert_eq!(pow(&int(x), m), rhs, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn appendix_identity_examples() {
        assert_eq!(appendix_identity_lhs(2, 2), int(-1));
        assert_eq!(appendix_identity_lhs(0, 1), int(1));
        assert_eq!(appendix_identity_lhs(3, 3), int(6));
        assert_eq!(appendix_identity_rhs(2, 2), int(-1));
        assert_eq!(appendix_identity_rhs(0, 1), int(1));
        assert_eq!(appendix_identity_rhs(3, 3), int(6));
    }

    #[test]
    fn appendix_identity_holds() {
        for m in 0..=12 {
            for k in 1..=13 {
                assert_eq!(appendix_identity_lhs(m, k), appendix_identity_rhs(m, k));
            }
        }
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&int(0), 3), int(0));
    }
}
