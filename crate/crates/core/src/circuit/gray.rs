/// Binary reflected Gray code `i ^ (i >> 1)`.
pub fn gray_code(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// `gray_code(i)` as a `width`-character bit string, most significant bit first.
pub fn gray_bits(i: u64, width: usize) -> String {
    let g = gray_code(i);
    (0..width)
        .rev()
        .map(|b| if (g >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Bit position (0 = least significant) that differs between `gray_code(i)`
/// and `gray_code(i + 1)`.
pub fn gray_transition_bit(i: u64) -> u32 {
    (i + 1).trailing_zeros()
}
