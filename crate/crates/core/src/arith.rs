//! Exact factorial-scale arithmetic with overflow detection.

use crate::error::{Error, Result};

pub fn factorial(n: usize) -> Result<u128> {
    falling_product(1, n, "factorial")
}

/// Product `lo * (lo + 1) * ... * hi`, or 1 when the range is empty.
fn falling_product(lo: usize, hi: usize, what: &'static str) -> Result<u128> {
    (lo.max(1)..=hi).try_fold(1u128, |acc, v| {
        acc.checked_mul(v as u128).ok_or(Error::Overflow(what))
    })
}

pub fn binomial(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// Number of linear orders of `n` vertices that make a fixed oriented
/// `k`-edge consistent: `C(n, k) * (n - k)! = n! / k!`.
pub fn count_consistent_orders(k: usize, n: usize) -> Result<u128> {
    if k < 2 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u128,
            min: 2,
            max: n as u128,
        });
    }
    falling_product(k + 1, n, "n!/k!")
}
