//! Subset enumeration helpers used by wedge bases, face lattices, and
//! support iteration. Orders are always lexicographic so downstream output
//! is schedule-independent.

/// All k-element subsets of {0..n}, lexicographic.
pub fn subsets_k(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=n.saturating_sub(need) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Indices of set bits, ascending.
pub fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// All non-empty subsets of {0..n} as bitmasks, ascending. n ≤ 63.
pub fn nonempty_masks(n: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 63, "support universe too large for a u64 mask");
    1..(1u64 << n)
}
