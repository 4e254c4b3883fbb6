//! Enumeration and sampling of fixed-size subsets of `{0, .., n-1}`.
//!
//! Size classes are walked in lexicographic order. A class can be split into
//! rank ranges (`unrank` + `next_combination`) so that workers scan disjoint
//! blocks and the lowest-ranked hit can be recovered deterministically.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// The `rank`-th k-subset of `{0..n-1}` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    debug_assert!(rank < binomial(n, k));
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let with_next = binomial(n - next - 1, remaining);
            if rank < with_next {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with_next;
            next += 1;
        }
    }
    out
}

/// Advance `c` to the next k-subset in lexicographic order. Returns `false`
/// once `c` was the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterator over all k-subsets of `{0..n-1}` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_combination(&mut succ, self.n) {
            self.current = Some(succ);
        }
        Some(out)
    }
}

/// `count` distinct uniformly random k-subsets, each sorted, in draw order.
/// When `count >= C(n, k)` every subset is returned in lexicographic order.
pub fn sample_distinct<R: Rng>(rng: &mut R, n: usize, k: usize, count: u64) -> Vec<Vec<usize>> {
    let total = binomial(n, k);
    if (count as u128) >= total {
        return Combinations::new(n, k).collect();
    }
    let mut seen = HashSet::with_capacity(count as usize);
    let mut out = Vec::with_capacity(count as usize);
    while (out.len() as u64) < count {
        let mut s = index::sample(rng, n, k).into_vec();
        s.sort_unstable();
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}
