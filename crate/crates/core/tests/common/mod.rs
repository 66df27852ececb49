#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use powersum_cascade::ExactInt;

/// Table I, transcribed: row K holds c_1(N)..c_{K+1}(N) in canonical form.
pub const TABLE_I: [&[&str]; 6] = [
    &["1"],
    &["N", "-1"],
    &["N^2", "-2N-1", "2"],
    &["N^3", "-3N^2-3N-1", "6N+6", "-6"],
    &["N^4", "-4N^3-6N^2-4N-1", "12N^2+24N+14", "-24N-36", "24"],
    &[
        "N^5",
        "-5N^4-10N^3-10N^2-5N-1",
        "20N^3+60N^2+70N+30",
        "-60N^2-180N-150",
        "120N+240",
        "-120",
    ],
];

pub fn random_samples(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<ExactInt> {
    (0..len)
        .map(|_| ExactInt::from(rng.gen_range(-bound..=bound)))
        .collect()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generalized binomial `x (x-1) ... (x-j+1) / j!` for any integer `x`,
/// i.e. the basis polynomial evaluated off the sample grid.
pub fn binomial_poly(x: i64, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j as i64 {
        acc *= BigRational::from_integer(BigInt::from(x - i));
        acc /= BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Solves `m x = b` exactly by Gauss-Jordan elimination. `None` if `m` is
/// singular.
pub fn solve(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = BigRational::one() / m[col][col].clone();
        m[col].iter_mut().for_each(|x| *x = &*x * &inv);
        b[col] = &b[col] * &inv;
        let pivot_row = m[col].clone();
        let pivot_rhs = b[col].clone();
        for (r, (row, rhs)) in m.iter_mut().zip(b.iter_mut()).enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
            *rhs -= &factor * &pivot_rhs;
        }
    }
    Some(b)
}

/// Coefficients solving `n^K = sum_k c_k C(N - n + k - 2, k - 1)` at the
/// points `n = 0..=K`, with the basis continued as polynomials in `n`.
/// Unique for every `N >= 1`.
pub fn solve_coefficients(power: usize, len: u64) -> Vec<BigInt> {
    let rows = power + 1;
    let matrix = (0..rows as i64)
        .map(|n| {
            (0..rows as u64)
                .map(|j| binomial_poly(len as i64 - n + j as i64 - 1, j))
                .collect()
        })
        .collect();
    let rhs = (0..rows as i64)
        .map(|n| BigRational::from_integer(BigInt::from(n).pow(power as u32)))
        .collect();
    solve(matrix, rhs)
        .expect("basis is triangular in n")
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "non-integer coefficient {c}");
            c.to_integer()
        })
        .collect()
}
