//! PAC codes: a rate-1 convolutional precoder in front of the polar
//! transform, decoded sequentially over the code tree.
//!
//! A code is `(N, K, 𝒜, c)`: length, data size, rate profile, connection
//! polynomial. Encoding inserts the data into the carrier `v` (`v_𝒜 = h`,
//! `v_{𝒜^c} = 0`), precodes `u = v·T`, and transforms `x = u·F^⊗n`. The
//! systematic variant instead pins `x_𝒜 = h` and solves for the rest, so
//! data bits travel in known codeword positions; both produce words of
//! the same codebook.

pub mod bias;
pub mod conv;
pub mod fano;
pub mod profile;

pub use bias::{estimate_biases, BiasHeader};
pub use conv::ConvSpec;
pub use fano::{fano_decode, fano_metric_increment, FanoResult, DEFAULT_DELTA, DEFAULT_VISIT_BUDGET};
pub use profile::RateProfile;

use crate::error::{Error, Result};
use crate::polar::polar_transform;

/// A fully-specified PAC code: profile, precoder, and the per-bit-channel
/// metric biases the sequential decoder needs.
#[derive(Clone, Debug)]
pub struct PacCode {
    profile: RateProfile,
    conv: ConvSpec,
    biases: Vec<f64>,
    /// Complement of the data set, ascending.
    frozen_set: Vec<usize>,
    /// K×(N−K) GF(2) matrix taking `h` to `x_{𝒜^c}` for systematic
    /// encoding: `(G_{𝒜,𝒜})⁻¹ G_{𝒜,𝒜^c}` with `G = T·F^⊗n`.
    sys_matrix: Vec<Vec<u8>>,
}

impl PacCode {
    pub fn new(profile: RateProfile, conv: ConvSpec, biases: Vec<f64>) -> Result<PacCode> {
        if biases.len() != profile.n() {
            return Err(Error::LengthMismatch {
                expected: profile.n(),
                actual: biases.len(),
            });
        }
        if let Some(bad) = biases.iter().find(|b| !(0.0..=1.0).contains(*b)) {
            return Err(Error::InvalidParameters(format!(
                "bias {bad} outside [0, 1]"
            )));
        }
        let frozen_set: Vec<usize> = (0..profile.n()).filter(|&i| !profile.is_data(i)).collect();
        let sys_matrix = systematic_matrix(&profile, &conv)?;
        Ok(PacCode {
            profile,
            conv,
            biases,
            frozen_set,
            sys_matrix,
        })
    }

    /// Build the code and estimate its biases at `design_snr_db` (Eb/N0
    /// for this code's rate).
    pub fn with_estimated_biases(
        profile: RateProfile,
        conv: ConvSpec,
        design_snr_db: f64,
        samples: usize,
        seed: u64,
    ) -> Result<PacCode> {
        let biases = estimate_biases(profile.n(), profile.rate(), design_snr_db, samples, seed)?;
        PacCode::new(profile, conv, biases)
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn k(&self) -> usize {
        self.profile.k()
    }

    pub fn profile(&self) -> &RateProfile {
        &self.profile
    }

    pub fn conv(&self) -> &ConvSpec {
        &self.conv
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    /// The carrier word for data `h`: `v_𝒜 = h`, `v_{𝒜^c} = 0`.
    pub fn carrier_of(&self, h: &[u8]) -> Result<Vec<u8>> {
        if h.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                actual: h.len(),
            });
        }
        let mut v = vec![0u8; self.n()];
        for (&i, &bit) in self.profile.data_set().iter().zip(h) {
            v[i] = bit & 1;
        }
        Ok(v)
    }

    /// `x = v·T·F^⊗n` for a full carrier word.
    pub fn codeword_of_carrier(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: v.len(),
            });
        }
        let mut x = self.conv.encode(v);
        polar_transform(&mut x)?;
        Ok(x)
    }

    /// Recover the carrier from a codeword: `v = x·F^⊗n·T⁻¹`
    /// (the transform is self-inverse). A word is in the codebook exactly
    /// when the result is zero on `𝒜^c`.
    pub fn carrier_of_codeword(&self, x: &[u8]) -> Result<Vec<u8>> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        let mut u = x.to_vec();
        polar_transform(&mut u)?;
        Ok(self.conv.invert(&u))
    }

    /// Non-systematic encoding: data → carrier → precoder → transform.
    pub fn encode_nonsystematic(&self, h: &[u8]) -> Result<Vec<u8>> {
        let v = self.carrier_of(h)?;
        self.codeword_of_carrier(&v)
    }

    /// Systematic encoding: `x_𝒜 = h` bit-exact, `x_{𝒜^c}` solved so the
    /// result is a valid PAC codeword.
    pub fn encode_systematic(&self, h: &[u8]) -> Result<Vec<u8>> {
        if h.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                actual: h.len(),
            });
        }
        let mut x = vec![0u8; self.n()];
        for (&i, &bit) in self.profile.data_set().iter().zip(h) {
            x[i] = bit & 1;
        }
        for (ci, &c) in self.frozen_set.iter().enumerate() {
            let mut acc = 0u8;
            for (r, &hr) in h.iter().enumerate() {
                acc ^= hr & self.sys_matrix[r][ci];
            }
            x[c] = acc;
        }
        Ok(x)
    }

    /// Data carried by a decoded carrier word under systematic framing:
    /// re-encode and read the codeword at the data positions.
    pub fn systematic_data_of_carrier(&self, v: &[u8]) -> Result<Vec<u8>> {
        let x = self.codeword_of_carrier(v)?;
        Ok(self.profile.data_set().iter().map(|&i| x[i]).collect())
    }

    /// Data carried by a carrier word under non-systematic framing: `v_𝒜`.
    pub fn nonsystematic_data_of_carrier(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: v.len(),
            });
        }
        Ok(self.profile.data_set().iter().map(|&i| v[i]).collect())
    }
}

/// `(G_{𝒜,𝒜})⁻¹ G_{𝒜,𝒜^c}` over GF(2) by Gauss-Jordan on the augmented
/// block; errors if `G_{𝒜,𝒜}` is singular (the profile/precoder pair then
/// admits no systematic encoder).
fn systematic_matrix(profile: &RateProfile, conv: &ConvSpec) -> Result<Vec<Vec<u8>>> {
    let n = profile.n();
    let data = profile.data_set();
    let k = data.len();
    let comp: Vec<usize> = (0..n).filter(|&i| !profile.is_data(i)).collect();

    // rows of G = T·F^⊗n restricted to rows 𝒜
    let mut aug: Vec<Vec<u8>> = Vec::with_capacity(k);
    for &r in data {
        let mut g_row = vec![0u8; n];
        for (j, &c) in conv.taps().iter().enumerate() {
            if c == 1 && r + j < n {
                g_row[r + j] = 1;
            }
        }
        polar_transform(&mut g_row)?;
        let mut row = Vec::with_capacity(n);
        row.extend(data.iter().map(|&c| g_row[c]));
        row.extend(comp.iter().map(|&c| g_row[c]));
        aug.push(row);
    }

    for col in 0..k {
        let pivot = (col..k).find(|&r| aug[r][col] == 1).ok_or_else(|| {
            Error::InvalidParameters(
                "G_{A,A} is singular: profile does not admit a systematic encoder".into(),
            )
        })?;
        aug.swap(col, pivot);
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != col && row[col] == 1 {
                for (dst, &src) in row.iter_mut().zip(&pivot_row) {
                    *dst ^= src;
                }
            }
        }
    }

    Ok(aug.into_iter().map(|row| row[k..].to_vec()).collect())
}
