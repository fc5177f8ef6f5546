//! Generators for the integer sequences attached to the inverse
//! Prouhet-Thue-Morse series.
//!
//! Every sequence here has at least two independent computation paths; the
//! test suites cross-validate them. Single-term access is O(log n) where a
//! digit characterization exists (`c`, `a`, `b`, `d`, `u`, `z`) and the
//! arbitrary-precision variants accept indices with thousands of bits.
//!
//! Indexing conventions: `o` and `e` are 1-based (o_1 = 1, e_1 = 0); `a`
//! is 0-based with a_0 = 0; `d` is 0-based with d_0 = 3 — the relation
//! u_n = (d_{4n} + 1)/4 is integral only under 0-based indexing of `d`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigUint;
use num::traits::{One, ToPrimitive, Zero};

use crate::bits::spread_u32;
use crate::fps;

/// Parity of the binary digit sum of `n` (popcount path).
pub fn thue_morse(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// First `count` terms of the Thue-Morse sequence via the doubling
/// recurrence t_{2n} = t_n, t_{2n+1} = 1 - t_n; an independent path from
/// the popcount one.
pub fn thue_morse_batch(count: usize) -> Vec<u8> {
    let mut t = vec![0u8; count.max(1)];
    for i in 1..count {
        t[i] = if i & 1 == 1 { 1 - t[i >> 1] } else { t[i >> 1] };
    }
    t.truncate(count);
    t
}

/// Digit sum of `n` in the given base.
pub fn digit_sum(mut n: u64, base: u64) -> u64 {
    assert!(base >= 2);
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    s
}

/// n-th odious number (odd binary digit sum), 1-based: 1, 2, 4, 7, ...
/// Panics at n = 0.
pub fn odious(n: u64) -> u64 {
    assert!(n >= 1, "odious numbers are 1-based");
    2 * n - 1 - thue_morse(n - 1) as u64
}

/// n-th evil number (even binary digit sum), 1-based: 0, 3, 5, 6, ...
/// Panics at n = 0.
pub fn evil(n: u64) -> u64 {
    assert!(n >= 1, "evil numbers are 1-based");
    2 * (n - 1) + thue_morse(n - 1) as u64
}

/// Computation paths for the inverse-PTM coefficient sequence `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IptmMethod {
    /// Mod-4 recurrences c_{4n+i} = c_{4n-1} (i = 0, 1, 2),
    /// c_{4n+3} = c_{4n-1} + c_n.
    Recurrence4,
    /// Mod-8 relations c_{8n-1} = ... = c_{8n+2} = c_{2n-1},
    /// c_{8n+3} = ... = c_{8n+6} = 0.
    Recurrence8,
    /// Base-4 digit test on n + 1.
    Digits4,
    /// Coefficient extraction from the compositional inverse of the PTM
    /// series.
    Reversion,
}

impl fmt::Display for IptmMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IptmMethod::Recurrence4 => "recurrence4",
            IptmMethod::Recurrence8 => "recurrence8",
            IptmMethod::Digits4 => "digits4",
            IptmMethod::Reversion => "reversion",
        };
        f.write_str(s)
    }
}

const EVEN_DIGIT_MASK: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

/// c_n by the base-4 digit test: c_n = 1 (n >= 1) exactly when every
/// base-4 digit of n + 1 above the least significant lies in {0, 2}.
pub fn iptm_digits4(n: u64) -> u8 {
    if n == 0 {
        return 0;
    }
    let m = (n as u128 + 1) >> 2;
    (m & EVEN_DIGIT_MASK == 0) as u8
}

/// Digit-test path for indices beyond u64, used by the automata kernel
/// probes.
pub fn iptm_digits4_wide(n: u128) -> u8 {
    if n == 0 {
        return 0;
    }
    let m = (n + 1) >> 2;
    (m & EVEN_DIGIT_MASK == 0) as u8
}

fn iptm_batch_rec4(count: usize) -> Vec<u8> {
    let mut c = vec![0u8; count.max(4)];
    c[1] = 1;
    c[2] = 1;
    for n in 4..c.len() {
        let r = n & 3;
        c[n] = if r == 3 {
            c[n - 4] ^ c[n >> 2]
        } else {
            // c_{4m+r} = c_{4m-1} for r = 0, 1, 2
            c[n - r - 1]
        };
    }
    c.truncate(count);
    c
}

fn iptm_batch_rec8(count: usize) -> Vec<u8> {
    let base = [0u8, 1, 1, 0, 0, 0, 0];
    let mut c = vec![0u8; count.max(8)];
    c[..7].copy_from_slice(&base);
    for n in 7..c.len() {
        let r = n & 7;
        c[n] = match r {
            3..=6 => 0,
            7 => c[2 * ((n + 1) >> 3) - 1],
            _ => c[2 * (n >> 3) - 1],
        };
    }
    c.truncate(count);
    c
}

/// c_n by the requested method. The recurrence methods fill a table up to
/// `n`; the digit test is O(log n); the reversion method computes the
/// compositional inverse to order `n` and reads one coefficient.
pub fn iptm(n: u64, method: IptmMethod) -> u8 {
    match method {
        IptmMethod::Digits4 => iptm_digits4(n),
        _ => {
            let idx = usize::try_from(n).expect("index fits in memory");
            iptm_batch(idx + 1, method)[idx]
        }
    }
}

/// First `count` terms of `c` by the requested method.
pub fn iptm_batch(count: usize, method: IptmMethod) -> Vec<u8> {
    assert!(count >= 1);
    match method {
        IptmMethod::Recurrence4 => iptm_batch_rec4(count),
        IptmMethod::Recurrence8 => iptm_batch_rec8(count),
        IptmMethod::Digits4 => (0..count as u64).map(iptm_digits4).collect(),
        IptmMethod::Reversion => {
            if count == 1 {
                return vec![0];
            }
            let g = fps::ptm_series(count - 1).reverse().expect("PTM series is invertible");
            (0..count).map(|i| g.coeff_residue(i) as u8).collect()
        }
    }
}

/// Digit-test prefix of `c`; the crate-internal ground-truth batch.
pub(crate) fn iptm_prefix(count: usize) -> Vec<u8> {
    iptm_batch(count, IptmMethod::Digits4)
}

/// n-th non-negative integer whose base-4 digits all lie in {0, 2}:
/// the binary digits of n, doubled, read in base 4.
pub fn b_seq(n: u64) -> u64 {
    assert!(n <= u32::MAX as u64, "b_seq overflows u64 beyond 32-bit indices; use b_seq_big");
    spread_u32(n as u32) << 1
}

/// Arbitrary-precision `b`.
pub fn b_seq_big(n: &BigUint) -> BigUint {
    let mut out = BigUint::zero();
    for (i, bit) in (0..n.bits()).map(|i| (i, n.bit(i))) {
        if bit {
            out.set_bit(2 * i + 1, true);
        }
    }
    out
}

/// n-th index with c = 1, 0-based (a_0 = 0): a_{4k+r} = 4 b_k + r for
/// r in {-1, 0, 1, 2}.
pub fn a_seq(n: u64) -> u64 {
    let k = (n + 1) >> 2;
    let r = ((n + 1) & 3) as i64 - 1;
    (4 * b_seq(k) as i128 + r as i128) as u64
}

fn rank_b_below(x: u64) -> u64 {
    // Counts integers y < x whose base-4 digits lie in {0, 2}: walk the
    // digits of x from the most significant, counting smaller admissible
    // choices with free {0,2} suffixes.
    if x == 0 {
        return 0;
    }
    let digits = (67 - x.leading_zeros() as usize) / 2; // ceil(bitlen/2)
    let mut count = 0u64;
    for pos in (0..digits).rev() {
        let d = (x >> (2 * pos)) & 3;
        let smaller = match d {
            0 => 0,
            1 | 2 => 1,
            _ => 2,
        };
        count += smaller << pos;
        if d != 0 && d != 2 {
            return count;
        }
    }
    count // x itself admissible; strict bound excludes it
}

/// n-th positive integer with at least one base-4 digit equal to 1 or 3,
/// 0-based (u_0 = 1). Select-on-complement: binary search driven by the
/// O(log x) rank of {0,2}-digit integers.
pub fn u_seq(n: u64) -> u64 {
    let target = n + 1;
    let mut lo = 0u64;
    let mut hi = 2 * n + 8;
    // invariant: non_b_count(lo) < target <= non_b_count(hi)
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        let non_b = mid - rank_b_below(mid);
        if non_b >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

fn pow4(l: u32) -> BigUint {
    BigUint::one() << (2 * l)
}

/// Arbitrary-precision `u` by descent over the leading base-4 digit. The
/// non-complement count below 4^L is 4^L - 2^L, which picks out the digit
/// block; blocks with leading digit 1 or 3 are contiguous runs, the
/// leading-2 block recurses.
pub fn u_seq_big(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::one();
    }
    if *n == BigUint::one() {
        return BigUint::from(3u32);
    }
    let s = |l: u32| pow4(l) - (BigUint::one() << l); // count below 4^l
    // find L >= 1 with S(L) <= n < S(L+1); bitlen(S(L)) = 2L
    let mut l = (n.bits() as u32).div_ceil(2);
    while s(l) > *n {
        l -= 1;
    }
    while s(l + 1) <= *n {
        l += 1;
    }
    let j = n - s(l);
    let block = pow4(l);
    if j < block {
        block + j
    } else {
        let j2 = &j - &block;
        if j2 < s(l) {
            (block << 1) + u_seq_big(&j2)
        } else {
            BigUint::from(3u32) * block + (j2 - s(l))
        }
    }
}

/// n-th positive index with c = 0, 0-based (d_0 = 3):
/// d_{4q+i} = 4 u_q - 1 + i.
pub fn d_seq(n: u64) -> u64 {
    4 * u_seq(n >> 2) - 1 + (n & 3)
}

/// Arbitrary-precision `d`.
pub fn d_seq_big(n: &BigUint) -> BigUint {
    let q = n >> 2;
    let i = (n & BigUint::from(3u32)).to_u64().unwrap();
    (u_seq_big(&q) << 2) - BigUint::one() + BigUint::from(i)
}

/// Parity witness z_n = (u_n - n) mod 2 built from the zero-position
/// sequence via d_{4n} + 1 = 4 u_n.
pub fn z_seq(n: u64) -> u8 {
    ((u_seq(n) ^ n) & 1) as u8
}

/// Arbitrary-precision `z`.
pub fn z_seq_big(n: &BigUint) -> u8 {
    (u_seq_big(n).bit(0) ^ n.bit(0)) as u8
}

/// Whether `n` is a sum of distinct powers of 4 (all base-4 digits in
/// {0, 1}).
pub fn mdb_pred(n: u64) -> bool {
    n & 0xaaaa_aaaa_aaaa_aaaa == 0
}

fn generator(m: u64) -> BigUint {
    // g_m = 2^(m-1) (2^m - 1)
    (BigUint::one() << (2 * m - 1)) - (BigUint::one() << (m - 1))
}

/// Whether `n` is a sum of distinct generators g_m = 2^(m-1)(2^m - 1)
/// with strictly increasing m >= 2. The generators are super-increasing
/// (g_{m+1} exceeds the sum of all smaller ones), so greedy subtraction of
/// the largest fitting generator decides membership.
pub fn z_char_pred(n: &BigUint) -> bool {
    let mut r = n.clone();
    let mut prev_m = u64::MAX;
    while !r.is_zero() {
        // bitlen(g_m) = 2m, so the largest candidate is at bitlen/2 + 1.
        let mut m = (r.bits() + 1) / 2 + 1;
        while m >= 2 && generator(m) > r {
            m -= 1;
        }
        if m < 2 || m >= prev_m {
            return false;
        }
        r -= generator(m);
        prev_m = m;
    }
    true
}

/// [`z_char_pred`] for machine-word indices.
pub fn z_char_pred_u64(n: u64) -> bool {
    z_char_pred(&BigUint::from(n))
}

/// Named access to every sequence in the crate, for batch emission.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqName {
    /// Thue-Morse parity t.
    T,
    /// Binary digit sum s2.
    S2,
    /// Odious numbers o (1-based).
    O,
    /// Evil numbers e (1-based).
    E,
    /// Inverse-PTM coefficients c.
    C,
    /// Positions of ones a.
    A,
    /// {0,2}-digit integers b.
    B,
    /// Positions of zeros d.
    D,
    /// Integers with a base-4 digit in {1,3}, u.
    U,
    /// Parity witness z.
    Z,
    /// Moser-de Bruijn membership.
    Mdb,
}

impl SeqName {
    pub const ALL: [SeqName; 11] = [
        SeqName::T,
        SeqName::S2,
        SeqName::O,
        SeqName::E,
        SeqName::C,
        SeqName::A,
        SeqName::B,
        SeqName::D,
        SeqName::U,
        SeqName::Z,
        SeqName::Mdb,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SeqName::T => "t",
            SeqName::S2 => "s2",
            SeqName::O => "o",
            SeqName::E => "e",
            SeqName::C => "c",
            SeqName::A => "a",
            SeqName::B => "b",
            SeqName::D => "d",
            SeqName::U => "u",
            SeqName::Z => "z",
            SeqName::Mdb => "mdb",
        }
    }

    /// First meaningful index: 1 for the 1-based sequences o and e, 0
    /// otherwise.
    pub fn first_index(&self) -> u64 {
        match self {
            SeqName::O | SeqName::E => 1,
            _ => 0,
        }
    }

    /// Term at index `n` (respecting the sequence's indexing convention).
    pub fn term(&self, n: u64) -> u64 {
        match self {
            SeqName::T => thue_morse(n) as u64,
            SeqName::S2 => digit_sum(n, 2),
            SeqName::O => odious(n),
            SeqName::E => evil(n),
            SeqName::C => iptm_digits4(n) as u64,
            SeqName::A => a_seq(n),
            SeqName::B => b_seq(n),
            SeqName::D => d_seq(n),
            SeqName::U => u_seq(n),
            SeqName::Z => z_seq(n) as u64,
            SeqName::Mdb => mdb_pred(n) as u64,
        }
    }

    /// First `count` terms starting at [`Self::first_index`], as
    /// (index, value) rows.
    pub fn batch(&self, count: u64) -> Vec<(u64, u64)> {
        let start = self.first_index();
        (start..start + count).map(|n| (n, self.term(n))).collect()
    }
}

impl fmt::Display for SeqName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeqName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeqName::ALL
            .iter()
            .find(|name| name.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown sequence name: {s}"))
    }
}

#[cfg(test)]
mod tests;
