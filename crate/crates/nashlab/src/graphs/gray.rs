//! Reflected binary Gray codes for layer indices.
//!
//! Layer rings (the glued butterflies wrap around) need the code to be
//! cyclic, so even-length index sets use the reflection construction: walk
//! the `(bits-1)`-bit reflected code with top bit 0 for the first half and
//! walk it back with top bit 1 for the second half. For `len` a power of two
//! this is exactly the standard reflected code; for any even `len` it keeps
//! Hamming distance 1 between *all* cyclically consecutive indices.

/// Standard reflected binary Gray code.
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Number of bits needed to Gray-encode `len` values.
pub fn gray_width(len: usize) -> u32 {
    assert!(len >= 1);
    usize::BITS - (len - 1).leading_zeros()
}

/// Gray label of `i` in a cyclic ring of even length `len`.
///
/// Consecutive indices mod `len` map to labels at Hamming distance exactly 1,
/// including the wrap `len-1 -> 0`.
pub fn gray_cyclic(i: usize, len: usize) -> u64 {
    assert!(len >= 2 && len % 2 == 0, "cyclic Gray code needs even length");
    assert!(i < len);
    let half = len / 2;
    let top = 1u64 << (gray_width(len) - 1);
    if i < half {
        gray(i as u64)
    } else {
        top | gray((len - 1 - i) as u64)
    }
}

/// Gray label of `i` in a non-wrapping chain of length `len`.
pub fn gray_linear(i: usize, len: usize) -> u64 {
    assert!(i < len);
    gray(i as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_steps_have_distance_one() {
        for len in [2usize, 5, 7, 11, 16] {
            for i in 0..len - 1 {
                let d = (gray_linear(i, len) ^ gray_linear(i + 1, len)).count_ones();
                assert_eq!(d, 1, "len={len} i={i}");
            }
        }
    }

    #[test]
    fn cyclic_steps_have_distance_one_including_wrap() {
        for len in [2usize, 4, 6, 10, 12, 16, 20, 24] {
            for i in 0..len {
                let a = gray_cyclic(i, len);
                let b = gray_cyclic((i + 1) % len, len);
                assert_eq!((a ^ b).count_ones(), 1, "len={len} i={i}");
            }
            // all labels distinct and within width
            let mut seen: Vec<u64> = (0..len).map(|i| gray_cyclic(i, len)).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), len);
            let w = gray_width(len);
            assert!(seen.iter().all(|v| v >> w == 0));
        }
    }

    #[test]
    fn power_of_two_matches_standard_code() {
        for i in 0..16usize {
            assert_eq!(gray_cyclic(i, 16), gray(i as u64));
        }
    }
}
