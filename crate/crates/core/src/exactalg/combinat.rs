//! Integer sequences: factorials, binomials, Stirling numbers, differences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Stirling number of the second kind via `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k as usize;
    // row[j] = S(m, j) for the current m
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row.swap_remove(k)
}

/// `Δ^order` of `seq` at its first term `at`:
/// `sum_m (-1)^(order-m) C(order,m) seq(at+m)`.
pub fn finite_difference<F>(seq: F, order: u32, at: i64) -> Rational
where
    F: Fn(i64) -> Rational,
{
    let mut acc = Rational::zero();
    for m in 0..=order {
        let c = Rational::from_integer(binomial(order, m));
        let term = c * seq(at + m as i64);
        if (order - m) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
