//! Bit-packed series arithmetic over F2.
//!
//! A series truncated at order N is stored as N+1 coefficient bits in
//! little-endian `u64` words. Addition is XOR, squaring is the Frobenius
//! bit-spread, multiplication is a 4-bit-windowed shift-XOR convolution,
//! and composition uses baby-step/giant-step so that only O(sqrt(N)) full
//! multiplications are needed. Everything here takes and returns plain word
//! slices; truncation orders are passed as bit counts (`nbits = order + 1`).

use crate::bits::{get_bit, mask_top, set_bit, spread_u32, words_for, xor_shifted};

pub(crate) fn add(a: &[u64], b: &[u64], nbits: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_for(nbits)];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = x ^ y;
    }
    mask_top(&mut out, nbits);
    out
}

pub(crate) fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&w| w == 0)
}

/// Index of the lowest set bit, if any.
pub(crate) fn lowest_bit(a: &[u64]) -> Option<usize> {
    for (i, &w) in a.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Product truncated to `nbits` coefficients, 4-bit window over `a`.
pub(crate) fn mul(a: &[u64], b: &[u64], nbits: usize) -> Vec<u64> {
    let out_words = words_for(nbits);
    let mut acc = vec![0u64; out_words];
    if is_zero(a) || is_zero(b) {
        return acc;
    }
    // table[m] = b * (polynomial with coefficient bits m), m in 0..16
    let tw = out_words + 1;
    let mut table = vec![vec![0u64; tw]; 16];
    for (i, &w) in b.iter().enumerate().take(out_words) {
        table[1][i] = w;
    }
    for m in 2..16usize {
        let low = m & (m - 1);
        let bit = (m & m.wrapping_neg()).trailing_zeros() as usize;
        // table[m] = table[low] ^ (b << bit)
        let (done, rest) = table.split_at_mut(m);
        rest[0].copy_from_slice(&done[low]);
        let shifted_src: Vec<u64> = done[1].clone();
        xor_shifted(&mut rest[0], &shifted_src, bit, tw * 64);
    }
    let chunk_count = nbits.div_ceil(4);
    for c in 0..chunk_count {
        let bit_pos = 4 * c;
        let word = bit_pos / 64;
        let off = bit_pos % 64;
        if word >= a.len() {
            break;
        }
        // 64 is a multiple of 4, so a chunk never straddles a word boundary.
        let m = (a[word] >> off) & 0xf;
        if m != 0 {
            xor_shifted(&mut acc, &table[m as usize], bit_pos, nbits);
        }
    }
    mask_top(&mut acc, nbits);
    acc
}

/// Frobenius square: coefficient `2i` of the output is coefficient `i` of
/// the input, everything else zero.
pub(crate) fn square(a: &[u64], nbits: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_for(nbits)];
    for (i, &w) in a.iter().enumerate() {
        let lo = spread_u32(w as u32);
        let hi = spread_u32((w >> 32) as u32);
        if 2 * i < out.len() {
            out[2 * i] = lo;
        }
        if 2 * i + 1 < out.len() {
            out[2 * i + 1] = hi;
        }
    }
    mask_top(&mut out, nbits);
    out
}

/// Formal derivative: in characteristic 2 only odd-degree terms survive,
/// so the result is `(a >> 1)` masked to even positions.
pub(crate) fn derivative(a: &[u64], nbits: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_for(nbits)];
    for i in 0..out.len() {
        let mut w = a.get(i).copied().unwrap_or(0) >> 1;
        if i + 1 < a.len() {
            w |= a[i + 1] << 63;
        }
        out[i] = w & 0x5555_5555_5555_5555;
    }
    mask_top(&mut out, nbits);
    out
}

/// Multiplicative series inverse of `d` (requires d_0 = 1) to `nbits`
/// coefficients, by Newton doubling: S -> D * S^2.
pub(crate) fn inv_series(d: &[u64], nbits: usize) -> Vec<u64> {
    assert!(get_bit(d, 0), "constant term must be 1");
    let mut s = vec![0u64; words_for(nbits)];
    s[0] = 1;
    let mut prec = 1usize;
    while prec < nbits {
        let nprec = (2 * prec).min(nbits);
        let sq = square(&s, nprec);
        s = mul(d, &sq, nprec);
        prec = nprec;
    }
    s
}

/// U(V) truncated to `nbits` coefficients. `v` must have zero constant
/// term. Baby-step/giant-step: over F2 the inner block sums are free XORs.
pub(crate) fn compose(u: &[u64], v: &[u64], nbits: usize) -> Vec<u64> {
    let out_words = words_for(nbits);
    debug_assert!(!get_bit(v, 0), "inner series must have zero constant term");
    // Coefficients of u beyond nbits cannot contribute: val(V^i) >= i.
    let deg_bound = nbits.min(u.len() * 64);
    let u_bits = match (0..deg_bound).rev().find(|&i| get_bit(u, i)) {
        Some(top) => top + 1,
        None => return vec![0u64; out_words],
    };
    let s = (u_bits as f64).sqrt().ceil() as usize;
    let s = s.max(1);
    let mut pows: Vec<Vec<u64>> = Vec::with_capacity(s + 1);
    let mut one = vec![0u64; out_words];
    one[0] = 1;
    pows.push(one);
    for i in 1..=s {
        let next = mul(&pows[i - 1], v, nbits);
        pows.push(next);
    }
    let giant = &pows[s];
    let blocks = u_bits.div_ceil(s);
    let block_sum = |j: usize| -> Vec<u64> {
        let mut acc = vec![0u64; out_words];
        for i in 0..s {
            let idx = j * s + i;
            if idx < u_bits && get_bit(u, idx) {
                for (w, p) in acc.iter_mut().zip(pows[i].iter()) {
                    *w ^= p;
                }
            }
        }
        acc
    };
    let mut result = block_sum(blocks - 1);
    for j in (0..blocks - 1).rev() {
        result = mul(&result, giant, nbits);
        let bs = block_sum(j);
        for (w, p) in result.iter_mut().zip(bs.iter()) {
            *w ^= p;
        }
    }
    mask_top(&mut result, nbits);
    result
}

/// Compositional inverse of `u` to `nbits` coefficients by Newton
/// order-doubling on U(V) = X. Requires u_0 = 0 and u_1 = 1.
pub(crate) fn reverse(u: &[u64], nbits: usize) -> Vec<u64> {
    assert!(!get_bit(u, 0) && get_bit(u, 1));
    let order = nbits - 1;
    let mut v = vec![0u64; words_for(nbits)];
    set_bit(&mut v, 1);
    if order <= 1 {
        mask_top(&mut v, nbits);
        return v;
    }
    let du = derivative(u, nbits);
    let mut prec = 1usize; // v correct through order `prec`
    while prec < order {
        let nprec = (2 * prec).min(order);
        let nb = nprec + 1;
        // residual E = U(V) - X, valuation > prec
        let mut e = compose(u, &v, nb);
        e[0] ^= 2; // flip coefficient of X
        if is_zero(&e) {
            prec = nprec;
            continue;
        }
        let d = compose(&du, &v, nb);
        let w = inv_series(&d, nb);
        let corr = mul(&e, &w, nb);
        for (dst, c) in v.iter_mut().zip(corr.iter()) {
            *dst ^= c;
        }
        mask_top(&mut v, nb);
        prec = nprec;
    }
    mask_top(&mut v, nbits);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_bits(bits: &[u8]) -> Vec<u64> {
        let mut w = vec![0u64; words_for(bits.len().max(1))];
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                set_bit(&mut w, i);
            }
        }
        w
    }

    fn to_bits(words: &[u64], nbits: usize) -> Vec<u8> {
        (0..nbits).map(|i| get_bit(words, i) as u8).collect()
    }

    // Schoolbook convolution, the independent reference for `mul`.
    fn naive_mul(a: &[u8], b: &[u8], nbits: usize) -> Vec<u8> {
        let mut out = vec![0u8; nbits];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if i + j < nbits {
                    out[i + j] ^= y;
                }
            }
        }
        out
    }

    #[test]
    fn mul_squares_in_char_two() {
        // (X + X^2)^2 = X^2 + X^4
        let a = from_bits(&[0, 1, 1, 0, 0]);
        let prod = mul(&a, &a, 5);
        assert_eq!(to_bits(&prod, 5), vec![0, 0, 1, 0, 1]);
        assert_eq!(to_bits(&square(&a, 5), 5), vec![0, 0, 1, 0, 1]);
    }

    #[test]
    fn mul_matches_naive_on_pseudorandom_input() {
        let nbits = 300;
        let mut x = 0x243f_6a88_85a3_08d3u64;
        let mut step = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        let a_bits: Vec<u8> = (0..nbits).map(|_| (step() & 1) as u8).collect();
        let b_bits: Vec<u8> = (0..nbits).map(|_| (step() & 1) as u8).collect();
        let a = from_bits(&a_bits);
        let b = from_bits(&b_bits);
        assert_eq!(to_bits(&mul(&a, &b, nbits), nbits), naive_mul(&a_bits, &b_bits, nbits));
    }

    #[test]
    fn inverse_of_one_plus_x_is_geometric() {
        let d = from_bits(&[1, 1]);
        let inv = inv_series(&d, 9);
        assert_eq!(to_bits(&inv, 9), vec![1; 9]);
        assert_eq!(to_bits(&mul(&d, &inv, 9), 9), {
            let mut e = vec![0u8; 9];
            e[0] = 1;
            e
        });
    }

    #[test]
    fn compose_with_identity_is_identity() {
        let u = from_bits(&[0, 1, 1, 0, 1, 1, 1]);
        let x = from_bits(&[0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(compose(&u, &x, 7), u);
    }

    #[test]
    fn derivative_keeps_odd_terms_only() {
        // d/dX (X + X^2 + X^3 + X^66) = 1 + X^2 + X^65  (char 2)
        let mut bits = vec![0u8; 67];
        bits[1] = 1;
        bits[2] = 1;
        bits[3] = 1;
        bits[66] = 1;
        let a = from_bits(&bits);
        let d = derivative(&a, 67);
        let mut expect = vec![0u8; 67];
        expect[0] = 1;
        expect[2] = 1;
        assert_eq!(to_bits(&d, 67), expect);
    }

    #[test]
    fn reverse_round_trips_through_compose() {
        // u = X + X^3 + X^4 over F2
        let nbits = 64;
        let mut bits = vec![0u8; nbits];
        bits[1] = 1;
        bits[3] = 1;
        bits[4] = 1;
        let u = from_bits(&bits);
        let v = reverse(&u, nbits);
        let id = compose(&u, &v, nbits);
        let mut expect = vec![0u8; nbits];
        expect[1] = 1;
        assert_eq!(to_bits(&id, nbits), expect);
        let id2 = compose(&v, &u, nbits);
        assert_eq!(to_bits(&id2, nbits), expect);
    }
}
