//! Rate-1 convolutional precoding: `u = v·T` with `T` the upper-triangular
//! Toeplitz matrix whose first row holds the connection polynomial.

use crate::error::{Error, Result};

/// Connection polynomial `c = (c₀, …, c_m)` with `c₀ = c_m = 1`. The unit
/// leading tap keeps `T` invertible, so the precoder is rate 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvSpec {
    taps: Vec<u8>,
}

impl ConvSpec {
    /// The identity precoder (`c = 1`), which turns PAC into a plain
    /// polar code.
    pub fn identity() -> ConvSpec {
        ConvSpec { taps: vec![1] }
    }

    /// Parse an octal connection polynomial: the bits of the value, most
    /// significant first and leading zeros stripped, are `(c₀, …, c_m)`.
    /// `"3211"` → `(1,1,0,1,0,0,0,1,0,0,1)`, memory 10.
    pub fn from_octal(text: &str) -> Result<ConvSpec> {
        let value = u128::from_str_radix(text, 8).map_err(|_| {
            Error::InvalidConnection(format!("'{text}' is not a valid octal value"))
        })?;
        if value == 0 {
            return Err(Error::InvalidConnection(
                "connection polynomial must be nonzero".into(),
            ));
        }
        if value & 1 == 0 {
            return Err(Error::InvalidConnection(format!(
                "'{text}' is even: the last tap c_m must be 1"
            )));
        }
        let bits = 128 - value.leading_zeros();
        let taps = (0..bits)
            .rev()
            .map(|i| ((value >> i) & 1) as u8)
            .collect();
        Ok(ConvSpec { taps })
    }

    pub fn taps(&self) -> &[u8] {
        &self.taps
    }

    /// Encoder memory `m` (degree of the connection polynomial).
    pub fn memory(&self) -> usize {
        self.taps.len() - 1
    }

    /// `u_i = Σ_j c_j v_{i−j}` over GF(2); terms reaching before the
    /// start of `v` are dropped.
    pub fn encode(&self, v: &[u8]) -> Vec<u8> {
        (0..v.len()).map(|i| self.output_at(v, i)).collect()
    }

    /// One convolution output `u_i`, from `v[..=i]`.
    #[inline]
    pub fn output_at(&self, v: &[u8], i: usize) -> u8 {
        let mut acc = 0u8;
        for (j, &c) in self.taps.iter().enumerate() {
            if j > i {
                break;
            }
            acc ^= c & v[i - j];
        }
        acc
    }

    /// Contribution of already-decided bits to `u_i`: `Σ_{j≥1} c_j v_{i−j}`,
    /// where `prefix` holds `v_0..v_{i−1}`.
    #[inline]
    pub fn feedback(&self, prefix: &[u8], i: usize) -> u8 {
        let mut acc = 0u8;
        for (j, &c) in self.taps.iter().enumerate().skip(1) {
            if j > i {
                break;
            }
            acc ^= c & prefix[i - j];
        }
        acc
    }

    /// Invert the precoder (`v = u·T⁻¹`) by forward substitution; exact
    /// because `c₀ = 1`.
    pub fn invert(&self, u: &[u8]) -> Vec<u8> {
        let mut v = vec![0u8; u.len()];
        for i in 0..u.len() {
            v[i] = u[i] ^ self.feedback(&v[..i], i);
        }
        v
    }
}
