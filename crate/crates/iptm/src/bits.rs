//! Word-level bit utilities shared by the packed-F2 series engine and the
//! base-4 sequence generators.

/// Interleaves the bits of `x` with zeros: bit `i` of the input lands at
/// bit `2i` of the output.
pub(crate) fn spread_u32(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1u64 << (i % 64);
}

/// Clears every bit at position >= `nbits`.
pub(crate) fn mask_top(words: &mut [u64], nbits: usize) {
    let full = nbits / 64;
    let rem = nbits % 64;
    if full < words.len() {
        if rem > 0 {
            words[full] &= (1u64 << rem) - 1;
            for w in &mut words[full + 1..] {
                *w = 0;
            }
        } else {
            for w in &mut words[full..] {
                *w = 0;
            }
        }
    }
}

/// `dst ^= src << shift`, keeping only bits below `nbits`.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize, nbits: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    let dst_words = words_for(nbits);
    if bit_shift == 0 {
        for (i, &s) in src.iter().enumerate() {
            let d = i + word_shift;
            if d >= dst_words {
                break;
            }
            dst[d] ^= s;
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            let d = i + word_shift;
            if d >= dst_words {
                break;
            }
            dst[d] ^= s << bit_shift;
            if d + 1 < dst_words {
                dst[d + 1] ^= s >> (64 - bit_shift);
            }
        }
    }
    mask_top(dst, nbits);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_places_bits_at_even_positions() {
        assert_eq!(spread_u32(0), 0);
        assert_eq!(spread_u32(1), 1);
        assert_eq!(spread_u32(0b101), 0b10001);
        assert_eq!(spread_u32(u32::MAX), 0x5555_5555_5555_5555);
    }

    #[test]
    fn xor_shifted_crosses_word_boundaries() {
        let src = vec![u64::MAX];
        let mut dst = vec![0u64; 2];
        xor_shifted(&mut dst, &src, 60, 128);
        assert_eq!(dst[0], 0xf000_0000_0000_0000);
        assert_eq!(dst[1], 0x0fff_ffff_ffff_ffff);

        let mut capped = vec![0u64; 2];
        xor_shifted(&mut capped, &src, 60, 70);
        assert_eq!(capped[0], 0xf000_0000_0000_0000);
        assert_eq!(capped[1], 0x3f);
    }

    #[test]
    fn mask_top_clears_high_bits() {
        let mut w = vec![u64::MAX; 2];
        mask_top(&mut w, 65);
        assert_eq!(w, vec![u64::MAX, 1]);
    }
}
