//! Lexicographic permutation generation, ranking and unranking.

use crate::arith::factorial;
use crate::error::{Error, Result};

/// Advances `items` to the next permutation in lexicographic order.
/// Returns `false` (leaving `items` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// The `rank`-th (0-based) permutation of `0..len` in lexicographic order.
pub fn unrank(len: usize, rank: u128) -> Result<Vec<usize>> {
    let total = factorial(len)?;
    if rank >= total {
        return Err(Error::OutOfRange {
            what: "permutation rank",
            value: rank,
            min: 0,
            max: total - 1,
        });
    }
    let mut pool: Vec<usize> = (0..len).collect();
    let mut out = Vec::with_capacity(len);
    let mut rest = rank;
    let mut block = total;
    for remaining in (1..=len).rev() {
        block /= remaining as u128;
        let idx = (rest / block) as usize;
        rest %= block;
        out.push(pool.remove(idx));
    }
    Ok(out)
}

/// Lexicographic rank of a permutation of `0..perm.len()`.
pub fn rank(perm: &[usize]) -> Result<u128> {
    let n = perm.len();
    let mut rank: u128 = 0;
    let mut block = factorial(n)?;
    let mut seen = vec![false; n];
    for (i, &v) in perm.iter().enumerate() {
        if v >= n || seen[v] {
            return Err(Error::Invariant(format!("{perm:?} is not a permutation")));
        }
        block /= (n - i) as u128;
        let smaller_unused = seen[..v].iter().filter(|&&s| !s).count();
        rank += smaller_unused as u128 * block;
        seen[v] = true;
    }
    Ok(rank)
}

/// All permutations of `0..len` in lexicographic order.
pub fn all_permutations(len: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..len).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}
