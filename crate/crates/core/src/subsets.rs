//! Binomial counts, combination orders, and seeded subset sampling for the
//! verification sweeps.

use rand::seq::index;
use rand::Rng;

/// `C(n, k)` saturating at `u128::MAX`.
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

/// Next k-combination of `0..n` in lexicographic order, in place.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
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

/// All k-subsets of `0..n` (as bitmasks, `n <= 64`) in revolving-door
/// order: consecutive subsets differ by removing one element and adding
/// another.
pub fn revolving_door(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64, "revolving_door supports n <= 64");
    let mut out = Vec::with_capacity(binomial(n, k).min(1 << 24) as usize);
    door(n, k, false, &mut out);
    out
}

// R(n, k) = R(n-1, k) followed by reverse(R(n-1, k-1)) with n-1 added.
fn door(n: usize, k: usize, reversed: bool, out: &mut Vec<u64>) {
    if k == 0 {
        out.push(0);
        return;
    }
    if k == n {
        out.push(if n == 64 { u64::MAX } else { (1u64 << n) - 1 });
        return;
    }
    let top = 1u64 << (n - 1);
    if !reversed {
        door(n - 1, k, false, out);
        let start = out.len();
        door(n - 1, k - 1, true, out);
        for m in &mut out[start..] {
            *m |= top;
        }
    } else {
        let start = out.len();
        door(n - 1, k - 1, false, out);
        for m in &mut out[start..] {
            *m |= top;
        }
        door(n - 1, k, true, out);
    }
}

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Uniform k-subset of `0..n`, sorted.
pub fn sample_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut v = index::sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}
