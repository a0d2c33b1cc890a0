//! Colex enumeration of fixed-size subsets of `[0, n)`.
//!
//! Colex order compares two sets by their largest differing element, so all
//! subsets with maximum `t` precede those with maximum `t + 1`. The parallel
//! scans rely on that: they split work by the largest element and reduce by
//! picking the smallest one that produced a hit.

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Position of a sorted subset in colex order among subsets of the same size.
pub fn colex_rank(subset: &[usize]) -> u128 {
    subset.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Advance `c` (ascending, distinct, all `< n`) to its colex successor.
/// Returns `false` when `c` was the last subset.
pub fn next_colex(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, slot) in c.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every `k`-subset of `[0, n)` in colex order until it returns `false`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if !f(&c) {
            return;
        }
        if !next_colex(&mut c, n) {
            return;
        }
    }
}
