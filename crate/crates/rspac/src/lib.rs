//! Forward error correction built around two concatenations of Reed-Solomon
//! outer codes with polarization-adjusted convolutional (PAC) inner codes,
//! plus the classic RS + convolutional baseline, and a seeded Monte-Carlo
//! harness that measures BER/FER and sequential-decoding effort.
//!
//! Layering, bottom up:
//!
//! - [`gf256`] — GF(2^8) arithmetic and polynomials.
//! - [`rs`] — systematic Reed-Solomon encoding and algebraic decoding
//!   (syndromes, Berlekamp-Massey, Chien, Forney) with explicit
//!   failure reporting and code shortening.
//! - [`polar`] — the polar transform and the successive-cancellation
//!   LLR demapper with commit/rewind support.
//! - [`pac`] — rate profiles, convolutional precoding, systematic and
//!   non-systematic PAC encoders, per-bit-channel metric biases, and the
//!   Fano sequential decoder with visit accounting.
//! - [`cc`] — the rate-1/2 64-state convolutional code and soft-decision
//!   Viterbi decoding used by the baseline.
//! - [`mod@concat`] — the concatenation schemes: RS(252,220) + 63×PAC(64,32),
//!   depth-D interleaved RS(255,223) + PAC, and RS + CC.
//! - [`sim`] — BPSK/AWGN channel, reproducible Monte-Carlo runner,
//!   CSV emission, and run configuration.

pub mod bits;
pub mod cc;
pub mod concat;
pub mod error;
pub mod gf256;
pub mod pac;
pub mod polar;
pub mod rs;
pub mod sim;

pub use error::{Error, Result};
