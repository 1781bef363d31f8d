//! Seeded Monte-Carlo measurement of BER/FER/ANV per SNR point.
//!
//! Reproducibility: each frame gets its own ChaCha8 stream — the cipher
//! key comes from `seed`, the stream id is the frame index — and draws
//! its data bits and then its noise from that stream. The stopping rule
//! is evaluated on prefix sums in frame-index order, and frames are
//! dispatched in fixed-size batches, so the simulated frame set (hence
//! the CSV, minus wall time) is identical for any worker count.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

use crate::bits::{bits_to_bytes, bytes_to_bits};
use crate::concat::{InterleavedScheme, RsCcScheme, Scheme1};
use crate::error::{Error, Result};
use crate::pac::{fano_decode, PacCode};
use crate::sim::channel::{awgn_llrs, bpsk_modulate, ChannelSpec};
use crate::sim::config::{SchemeKind, SimConfig};
use crate::sim::record::SimRecord;

/// Upper bound on frames dispatched per parallel batch.
const MAX_BATCH: u64 = 32;

/// One configured, ready-to-simulate scheme.
pub enum SchemeInstance {
    Pac(Box<PacCode>),
    RsPac1(Box<Scheme1>),
    RsPacIl(Box<InterleavedScheme>),
    RsCc(Box<RsCcScheme>),
}

/// Per-frame tallies folded into a [`SimRecord`].
#[derive(Clone, Copy, Debug, Default)]
struct FrameOutcome {
    bit_errors: u64,
    frame_error: bool,
    visits: u64,
    decoded_bits: u64,
}

impl SchemeInstance {
    /// Instance with the single-set bias default (file-level codecs).
    pub fn from_config(cfg: &SimConfig) -> Result<SchemeInstance> {
        SchemeInstance::build(cfg, None)
    }

    /// Instance whose Fano metric biases track the given operating point
    /// (unless the config pins a bias file or design SNR).
    pub fn for_point(cfg: &SimConfig, operating_snr_db: f64) -> Result<SchemeInstance> {
        SchemeInstance::build(cfg, Some(operating_snr_db))
    }

    fn build(cfg: &SimConfig, operating_snr_db: Option<f64>) -> Result<SchemeInstance> {
        match cfg.scheme {
            SchemeKind::Pac => Ok(SchemeInstance::Pac(Box::new(
                cfg.build_pac(operating_snr_db)?,
            ))),
            SchemeKind::RsPac1 => {
                let (rs_n, rs_k) = cfg.rs_dims();
                let scheme = Scheme1::new(
                    crate::rs::RsCode::new(rs_n, rs_k)?,
                    cfg.build_pac(operating_snr_db)?,
                )?;
                Ok(SchemeInstance::RsPac1(Box::new(scheme)))
            }
            SchemeKind::RsPacIl => {
                let (rs_n, rs_k) = cfg.rs_dims();
                let scheme = InterleavedScheme::new(
                    cfg.depth,
                    crate::rs::RsCode::new(rs_n, rs_k)?,
                    cfg.build_pac(operating_snr_db)?,
                )?;
                Ok(SchemeInstance::RsPacIl(Box::new(scheme)))
            }
            SchemeKind::RsCc => {
                let (rs_n, rs_k) = cfg.rs_dims();
                let scheme = RsCcScheme::new(
                    cfg.depth,
                    crate::rs::RsCode::new(rs_n, rs_k)?,
                    crate::cc::CcSpec::nasa(),
                )?;
                Ok(SchemeInstance::RsCc(Box::new(scheme)))
            }
        }
    }

    /// Information bits measured per frame.
    pub fn data_bits(&self) -> usize {
        match self {
            SchemeInstance::Pac(c) => c.k(),
            SchemeInstance::RsPac1(s) => s.data_bits(),
            SchemeInstance::RsPacIl(s) => s.data_bits(),
            SchemeInstance::RsCc(s) => s.data_bits(),
        }
    }

    /// Channel bits transmitted per frame (tail overheads included).
    pub fn channel_bits(&self) -> usize {
        match self {
            SchemeInstance::Pac(c) => c.n(),
            SchemeInstance::RsPac1(s) => s.channel_bits(),
            SchemeInstance::RsPacIl(s) => s.channel_bits(),
            SchemeInstance::RsCc(s) => s.channel_bits(),
        }
    }

    /// Overall rate used for Eb/N0 normalization.
    pub fn rate(&self) -> f64 {
        self.data_bits() as f64 / self.channel_bits() as f64
    }

    pub fn describe(&self) -> String {
        match self {
            SchemeInstance::Pac(c) => format!("PAC({}, {})", c.n(), c.k()),
            SchemeInstance::RsPac1(s) => format!(
                "RS({}, {}) + {}×PAC({}, {})",
                s.rs().n(),
                s.rs().k(),
                s.blocks(),
                s.inner().n(),
                s.inner().k()
            ),
            SchemeInstance::RsPacIl(s) => format!(
                "{}×RS({}, {}) interleaved + {}×PAC({}, {})",
                s.depth(),
                s.rs().n(),
                s.rs().k(),
                s.columns(),
                s.inner().n(),
                s.inner().k()
            ),
            SchemeInstance::RsCc(s) => format!(
                "{}×RS({}, {}) interleaved + rate-1/2 64-state CC",
                s.depth(),
                s.rs().n(),
                s.rs().k()
            ),
        }
    }

    fn simulate_frame(
        &self,
        ch: &ChannelSpec,
        rng: &mut ChaCha8Rng,
        delta: f64,
        visit_budget: u64,
    ) -> Result<FrameOutcome> {
        match self {
            SchemeInstance::Pac(code) => {
                let h: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
                let x = code.encode_systematic(&h)?;
                let llrs = awgn_llrs(&bpsk_modulate(&x), ch, rng);
                let out = fano_decode(code, &llrs, delta, visit_budget)?;
                let h_hat = code.systematic_data_of_carrier(&out.carrier)?;
                let bit_errors = h
                    .iter()
                    .zip(&h_hat)
                    .filter(|(a, b)| a != b)
                    .count() as u64;
                Ok(FrameOutcome {
                    bit_errors,
                    frame_error: bit_errors > 0 || out.budget_exhausted,
                    visits: out.visits,
                    decoded_bits: code.n() as u64,
                })
            }
            SchemeInstance::RsPac1(scheme) => {
                let data: Vec<u8> = (0..scheme.data_symbols()).map(|_| rng.random()).collect();
                let frames: Vec<Vec<f64>> = scheme
                    .encode(&data)?
                    .iter()
                    .map(|cw| awgn_llrs(&bpsk_modulate(cw), ch, rng))
                    .collect();
                let out = scheme.decode(&frames, delta, visit_budget)?;
                let bit_errors = byte_bit_errors(&data, &out.data);
                Ok(FrameOutcome {
                    bit_errors,
                    frame_error: bit_errors > 0,
                    visits: out.stats.visits,
                    decoded_bits: out.stats.decoded_bits,
                })
            }
            SchemeInstance::RsPacIl(scheme) => {
                let data: Vec<Vec<u8>> = (0..scheme.depth())
                    .map(|_| (0..scheme.rs().k()).map(|_| rng.random()).collect())
                    .collect();
                let frames: Vec<Vec<f64>> = scheme
                    .encode(&data)?
                    .iter()
                    .map(|cw| awgn_llrs(&bpsk_modulate(cw), ch, rng))
                    .collect();
                let out = scheme.decode(&frames, delta, visit_budget)?;
                let bit_errors: u64 = data
                    .iter()
                    .zip(&out.data)
                    .map(|(a, b)| byte_bit_errors(a, b))
                    .sum();
                Ok(FrameOutcome {
                    bit_errors,
                    frame_error: bit_errors > 0,
                    visits: out.stats.visits,
                    decoded_bits: out.stats.decoded_bits,
                })
            }
            SchemeInstance::RsCc(scheme) => {
                let data: Vec<Vec<u8>> = (0..scheme.depth())
                    .map(|_| (0..scheme.rs().k()).map(|_| rng.random()).collect())
                    .collect();
                let code = scheme.encode(&data)?;
                let llrs = awgn_llrs(&bpsk_modulate(&code), ch, rng);
                let out = scheme.decode(&llrs)?;
                let bit_errors: u64 = data
                    .iter()
                    .zip(&out.data)
                    .map(|(a, b)| byte_bit_errors(a, b))
                    .sum();
                // Viterbi effort is fixed: every step touches all 64 states.
                let decoded_bits = scheme.serialized_bits() as u64;
                Ok(FrameOutcome {
                    bit_errors,
                    frame_error: bit_errors > 0,
                    visits: decoded_bits * scheme.fixed_anv() as u64,
                    decoded_bits,
                })
            }
        }
    }

    /// Hard-decision single-shot encode for the file-level CLI: data
    /// bytes in, packed codeword bits out.
    pub fn encode_bytes(&self, data: &[u8]) -> Result<Vec<u8>> {
        let expected = self.data_bits() / 8;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: data.len(),
            });
        }
        let bits = match self {
            SchemeInstance::Pac(code) => code.encode_systematic(&bytes_to_bits(data))?,
            SchemeInstance::RsPac1(scheme) => {
                scheme.encode(data)?.into_iter().flatten().collect()
            }
            SchemeInstance::RsPacIl(scheme) => {
                let rows = split_rows(data, self.rows(), self.row_len());
                scheme.encode(&rows)?.into_iter().flatten().collect()
            }
            SchemeInstance::RsCc(scheme) => {
                let rows = split_rows(data, self.rows(), self.row_len());
                scheme.encode(&rows)?
            }
        };
        Ok(pack_padded(&bits))
    }

    /// Inverse of [`Self::encode_bytes`] over a hard-decision channel:
    /// packed codeword bits in, data bytes out.
    pub fn decode_bytes(&self, packed: &[u8], delta: f64, visit_budget: u64) -> Result<Vec<u8>> {
        let n_bits = self.channel_bits();
        let expected = n_bits.div_ceil(8);
        if packed.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: packed.len(),
            });
        }
        let bits = &bytes_to_bits(packed)[..n_bits];
        let llrs: Vec<f64> = bits
            .iter()
            .map(|&b| {
                if b == 0 {
                    crate::polar::LLR_SAT
                } else {
                    -crate::polar::LLR_SAT
                }
            })
            .collect();
        match self {
            SchemeInstance::Pac(code) => {
                let out = fano_decode(code, &llrs, delta, visit_budget)?;
                Ok(bits_to_bytes(&code.systematic_data_of_carrier(&out.carrier)?))
            }
            SchemeInstance::RsPac1(scheme) => {
                let frames: Vec<Vec<f64>> = llrs
                    .chunks(scheme.inner().n())
                    .map(|c| c.to_vec())
                    .collect();
                Ok(scheme.decode(&frames, delta, visit_budget)?.data)
            }
            SchemeInstance::RsPacIl(scheme) => {
                let frames: Vec<Vec<f64>> = llrs
                    .chunks(scheme.inner().n())
                    .map(|c| c.to_vec())
                    .collect();
                let out = scheme.decode(&frames, delta, visit_budget)?;
                Ok(out.data.into_iter().flatten().collect())
            }
            SchemeInstance::RsCc(scheme) => {
                let out = scheme.decode(&llrs)?;
                Ok(out.data.into_iter().flatten().collect())
            }
        }
    }

    fn rows(&self) -> usize {
        match self {
            SchemeInstance::RsPacIl(s) => s.depth(),
            SchemeInstance::RsCc(s) => s.depth(),
            _ => 1,
        }
    }

    fn row_len(&self) -> usize {
        match self {
            SchemeInstance::RsPacIl(s) => s.rs().k(),
            SchemeInstance::RsCc(s) => s.rs().k(),
            SchemeInstance::RsPac1(s) => s.data_symbols(),
            SchemeInstance::Pac(c) => c.k() / 8,
        }
    }
}

fn split_rows(data: &[u8], rows: usize, row_len: usize) -> Vec<Vec<u8>> {
    debug_assert_eq!(data.len(), rows * row_len);
    data.chunks(row_len).map(|c| c.to_vec()).collect()
}

/// Pack bits into bytes, zero-padding to a byte boundary.
fn pack_padded(bits: &[u8]) -> Vec<u8> {
    let mut padded = bits.to_vec();
    padded.resize(bits.len().div_ceil(8) * 8, 0);
    bits_to_bytes(&padded)
}

fn byte_bit_errors(a: &[u8], b: &[u8]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x ^ y).count_ones() as u64)
        .sum()
}

/// ChaCha8 stream for one frame: key from `seed`, stream id = frame index.
fn frame_rng(seed: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame);
    rng
}

/// Simulate one SNR point until `target_bit_errors` accumulate or
/// `max_frames` are spent. The codecs are built for this point, so the
/// default (unpinned) bias estimate follows the operating SNR.
pub fn run_point(cfg: &SimConfig, snr_db: f64) -> Result<SimRecord> {
    let inst = SchemeInstance::for_point(cfg, snr_db)?;
    run_point_with(&inst, cfg, snr_db)
}

/// [`run_point`] against an already-built instance.
pub fn run_point_with(inst: &SchemeInstance, cfg: &SimConfig, snr_db: f64) -> Result<SimRecord> {
    let ch = ChannelSpec::new(snr_db, inst.rate())?;
    let start = Instant::now();
    let mut frames = 0u64;
    let mut bit_errors = 0u64;
    let mut frame_errors = 0u64;
    let mut visits = 0u64;
    let mut decoded_bits = 0u64;

    let mut next_frame = 0u64;
    let mut batch_size = 1u64;
    'outer: while next_frame < cfg.max_frames {
        // Grow the batch while nothing has gone wrong yet; once errors
        // show up, size it to the estimated frames still needed. Both
        // inputs are deterministic accumulations, so the simulated frame
        // set never depends on worker count or timing.
        batch_size = if bit_errors == 0 {
            (batch_size * 2).min(MAX_BATCH)
        } else {
            let remaining = cfg.target_bit_errors.saturating_sub(bit_errors);
            let per_frame = bit_errors as f64 / frames as f64;
            ((remaining as f64 / per_frame).ceil() as u64).clamp(1, MAX_BATCH)
        };
        let hi = (next_frame + batch_size).min(cfg.max_frames);
        let batch: Vec<Result<FrameOutcome>> = (next_frame..hi)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .map(|f| {
                let mut rng = frame_rng(cfg.seed, f);
                inst.simulate_frame(&ch, &mut rng, cfg.fano_delta, cfg.visit_budget)
            })
            .collect();
        for outcome in batch {
            let out = outcome?;
            frames += 1;
            bit_errors += out.bit_errors;
            frame_errors += out.frame_error as u64;
            visits += out.visits;
            decoded_bits += out.decoded_bits;
            if bit_errors >= cfg.target_bit_errors {
                break 'outer;
            }
        }
        next_frame = hi;
    }

    let data_bits = inst.data_bits() as u64;
    Ok(SimRecord {
        snr_db,
        frames,
        bit_errors,
        frame_errors,
        ber: bit_errors as f64 / (frames * data_bits) as f64,
        fer: frame_errors as f64 / frames as f64,
        anv: if decoded_bits == 0 {
            0.0
        } else {
            visits as f64 / decoded_bits as f64
        },
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Run every configured SNR point.
pub fn run_all(cfg: &SimConfig) -> Result<Vec<SimRecord>> {
    cfg.validate()?;
    cfg.snr_db.iter().map(|&snr| run_point(cfg, snr)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> SimConfig {
        SimConfig {
            snr_db: vec![3.0],
            max_frames: 20,
            target_bit_errors: 1_000_000,
            bias_samples: 10_000,
            ..SimConfig::default()
        }
    }

    #[test]
    fn same_seed_reproduces_records() {
        let cfg = tiny_config();
        let a = run_point(&cfg, 3.0).unwrap();
        let b = run_point(&cfg, 3.0).unwrap();
        assert_eq!(a.frames, b.frames);
        assert_eq!(a.bit_errors, b.bit_errors);
        assert_eq!(a.frame_errors, b.frame_errors);
        assert_eq!(a.ber, b.ber);
        assert_eq!(a.anv, b.anv);
    }

    #[test]
    fn records_do_not_depend_on_worker_count() {
        let mut cfg = tiny_config();
        cfg.snr_db = vec![2.0];
        cfg.max_frames = 200;
        cfg.target_bit_errors = 40; // exercise the stopping rule mid-run
        let run_with_threads = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_point(&cfg, 2.0).unwrap())
        };
        let one = run_with_threads(1);
        let four = run_with_threads(4);
        assert_eq!(one.frames, four.frames);
        assert_eq!(one.bit_errors, four.bit_errors);
        assert_eq!(one.frame_errors, four.frame_errors);
        assert_eq!(one.anv, four.anv);
    }

    #[test]
    fn ber_is_nonincreasing_in_snr_on_the_default_grid() {
        let cfg = SimConfig {
            target_bit_errors: 150,
            max_frames: 100_000,
            bias_samples: 10_000,
            ..SimConfig::default()
        };
        let mut prev = f64::INFINITY;
        for &snr in &cfg.snr_db {
            let rec = run_point(&cfg, snr).unwrap();
            assert!(rec.bit_errors >= 100, "need ≥100 bit errors at {snr} dB");
            assert!(
                rec.ber <= prev,
                "BER rose with SNR at {snr} dB: {} after {prev}",
                rec.ber
            );
            prev = rec.ber;
        }
    }

    #[test]
    fn raising_target_never_reduces_frames() {
        let mut cfg = tiny_config();
        cfg.snr_db = vec![1.0]; // noisy enough to hit the target
        cfg.max_frames = 500;
        cfg.target_bit_errors = 10;
        let small = run_point(&cfg, 1.0).unwrap();
        cfg.target_bit_errors = 20;
        let large = run_point(&cfg, 1.0).unwrap();
        assert!(large.frames >= small.frames);
    }

    #[test]
    fn stock_depths_construct_and_round_trip() {
        for depth in [4usize, 5, 8] {
            let cfg = SimConfig {
                scheme: SchemeKind::RsPacIl,
                depth,
                bias_samples: 10_000,
                ..SimConfig::default()
            };
            let inst = SchemeInstance::from_config(&cfg)
                .unwrap_or_else(|e| panic!("depth {depth}: {e}"));
            let data: Vec<u8> = (0..inst.data_bits() / 8).map(|i| (i * 13 + 1) as u8).collect();
            let packed = inst.encode_bytes(&data).unwrap();
            let back = inst
                .decode_bytes(&packed, crate::pac::DEFAULT_DELTA, 1_000_000)
                .unwrap();
            assert_eq!(back, data, "depth {depth}");
        }
    }

    #[test]
    fn encode_decode_bytes_round_trip_all_schemes() {
        for scheme in [
            SchemeKind::Pac,
            SchemeKind::RsPac1,
            SchemeKind::RsPacIl,
            SchemeKind::RsCc,
        ] {
            let cfg = SimConfig {
                scheme,
                bias_samples: 10_000,
                ..SimConfig::default()
            };
            let inst = SchemeInstance::from_config(&cfg).unwrap();
            let data: Vec<u8> = (0..inst.data_bits() / 8).map(|i| (i * 37 + 11) as u8).collect();
            let packed = inst.encode_bytes(&data).unwrap();
            assert_eq!(packed.len(), inst.channel_bits().div_ceil(8));
            let back = inst
                .decode_bytes(&packed, crate::pac::DEFAULT_DELTA, 1_000_000)
                .unwrap();
            assert_eq!(back, data, "{scheme:?}");
        }
    }
}
