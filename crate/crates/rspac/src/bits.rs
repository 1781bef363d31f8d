//! Bit/byte packing shared by the PAC layer and the concatenation schemes.
//!
//! Wire convention throughout: bytes in index order, bits within a byte
//! LSB-first (bit 0 carries the coefficient of x⁰ of the GF(2^8) symbol).

/// Unpack bytes into 0/1 bits, LSB-first within each byte.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<u8> {
    let mut bits = Vec::with_capacity(bytes.len() * 8);
    for &b in bytes {
        for i in 0..8 {
            bits.push((b >> i) & 1);
        }
    }
    bits
}

/// Pack 0/1 bits into bytes, LSB-first. The bit count must be a multiple of 8.
pub fn bits_to_bytes(bits: &[u8]) -> Vec<u8> {
    debug_assert_eq!(bits.len() % 8, 0);
    bits.chunks_exact(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &bit)| acc | ((bit & 1) << i))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lsb_first_round_trip() {
        let bytes = [0x01, 0x80, 0xA5, 0x00, 0xFF];
        let bits = bytes_to_bits(&bytes);
        assert_eq!(&bits[..8], &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&bits[8..16], &[0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(bits_to_bytes(&bits), bytes);
    }
}
