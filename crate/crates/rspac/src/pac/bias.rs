//! Per-bit-channel metric biases: the cutoff rates `E0(1, W_N^(j))` that
//! the Fano path metric subtracts per branch.
//!
//! For a binary-input symmetric channel, `E0(1, W) = 1 − log₂(1 + Z(W))`
//! with `Z` the Bhattacharyya parameter, and `Z = E[e^{−L/2}]` over the
//! LLR `L` of the true bit. Each synthesized bit channel is therefore
//! estimated by genie-aided Monte Carlo: transmit the all-zero codeword
//! at the design SNR, run the demapper committing the true (zero) bits,
//! and average `e^{−L_j/2}` per index.

use std::fmt::Write as _;
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::polar::Demapper;

/// Minimum Monte-Carlo sample count accepted for a bias estimate.
pub const MIN_BIAS_SAMPLES: usize = 10_000;

/// Caps a single sample's Bhattacharyya weight `e^{−L/2}`; only channels
/// whose bias is 0 anyway can hit it, and it keeps the accumulator finite.
const MAX_SAMPLE_EXPONENT: f64 = 32.0;

/// Identifies the estimate a bias file caches.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasHeader {
    pub n: usize,
    pub design_snr_db: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Noise std-dev at `snr_db` (taken as Eb/N0) for a rate-`rate` code:
/// `σ² = 1 / (2·R·10^{snr/10})`.
pub fn sigma_for(snr_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(snr_db / 10.0))).sqrt()
}

/// Monte-Carlo estimate of `E0(1, W_N^(j))` for every bit channel of
/// length `n`, at design SNR `design_snr_db` (Eb/N0 for a rate-`rate`
/// code). Returns `n` biases clamped to `[0, 1]`.
pub fn estimate_biases(
    n: usize,
    rate: f64,
    design_snr_db: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidParameters(format!(
            "bias estimation length {n} is not a power of two"
        )));
    }
    if samples < MIN_BIAS_SAMPLES {
        return Err(Error::InvalidParameters(format!(
            "bias estimation needs at least {MIN_BIAS_SAMPLES} samples, got {samples}"
        )));
    }
    let sigma = sigma_for(design_snr_db, rate);
    let llr_scale = 2.0 / (sigma * sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z_acc = vec![0.0f64; n];
    let mut llrs = vec![0.0f64; n];
    for _ in 0..samples {
        // all-zero codeword: every BPSK symbol is +1
        for l in llrs.iter_mut() {
            let noise: f64 = rng.sample(StandardNormal);
            *l = llr_scale * (1.0 + sigma * noise);
        }
        let mut demapper = Demapper::new(&llrs)?;
        for (j, acc) in z_acc.iter_mut().enumerate() {
            let l = demapper.next_llr(j)?;
            *acc += (-l / 2.0).min(MAX_SAMPLE_EXPONENT).exp();
            demapper.commit(j, 0)?;
        }
    }
    Ok(z_acc
        .into_iter()
        .map(|acc| {
            let z = acc / samples as f64;
            (1.0 - (1.0 + z).log2()).clamp(0.0, 1.0)
        })
        .collect())
}

/// Render a bias cache file: header line `N design_snr_db samples seed`,
/// then one bias per line.
pub fn render_biases(header: &BiasHeader, biases: &[f64]) -> String {
    let mut out = format!(
        "{} {} {} {}\n",
        header.n, header.design_snr_db, header.samples, header.seed
    );
    for b in biases {
        let _ = writeln!(out, "{b:.12}");
    }
    out
}

pub fn save_biases(path: impl AsRef<Path>, header: &BiasHeader, biases: &[f64]) -> Result<()> {
    Ok(std::fs::write(path, render_biases(header, biases))?)
}

/// Parse a bias cache file; validates the count against the header and
/// each value against `[0, 1]`.
pub fn parse_biases(text: &str) -> Result<(BiasHeader, Vec<f64>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Config("empty bias file".into()))?;
    let fields: Vec<&str> = header_line.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Error::Config(
            "bias header must be 'N design_snr_db samples seed'".into(),
        ));
    }
    let header = BiasHeader {
        n: fields[0]
            .parse()
            .map_err(|_| Error::Config("bad N in bias header".into()))?,
        design_snr_db: fields[1]
            .parse()
            .map_err(|_| Error::Config("bad design SNR in bias header".into()))?,
        samples: fields[2]
            .parse()
            .map_err(|_| Error::Config("bad sample count in bias header".into()))?,
        seed: fields[3]
            .parse()
            .map_err(|_| Error::Config("bad seed in bias header".into()))?,
    };
    let mut biases = Vec::with_capacity(header.n);
    for line in lines {
        let b: f64 = line
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad bias value '{}'", line.trim())))?;
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::Config(format!("bias {b} outside [0, 1]")));
        }
        biases.push(b);
    }
    if biases.len() != header.n {
        return Err(Error::Config(format!(
            "bias file promises {} values, found {}",
            header.n,
            biases.len()
        )));
    }
    Ok((header, biases))
}

pub fn load_biases(path: impl AsRef<Path>) -> Result<(BiasHeader, Vec<f64>)> {
    parse_biases(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_channels_hit_the_bounds() {
        // perfect channel: huge design SNR → Z → 0 → bias → 1
        let b = estimate_biases(2, 0.5, 40.0, MIN_BIAS_SAMPLES, 7).unwrap();
        assert!(b.iter().all(|&x| x > 0.999), "{b:?}");
        // useless channel: very low SNR → Z → 1 → bias → 0
        let b = estimate_biases(2, 0.5, -40.0, MIN_BIAS_SAMPLES, 7).unwrap();
        assert!(b.iter().all(|&x| x < 0.01), "{b:?}");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(estimate_biases(3, 0.5, 1.0, MIN_BIAS_SAMPLES, 0).is_err());
        assert!(estimate_biases(2, 0.5, 1.0, 100, 0).is_err());
    }

    /// Gallager E0(1, W) = −log₂ ∫ (½√W(y|0) + ½√W(y|1))² dy via plain
    /// numerical quadrature, for the two bit channels synthesized from a
    /// pair of BPSK/AWGN uses.
    fn quadrature_e0_n2(sigma: f64) -> (f64, f64) {
        let steps = 801usize;
        let span = 1.0 + 8.0 * sigma;
        let h = 2.0 * span / (steps - 1) as f64;
        let dens = |y: f64, x: f64| {
            let d = y - x;
            (-d * d / (2.0 * sigma * sigma)).exp()
                / (sigma * (2.0 * std::f64::consts::PI).sqrt())
        };
        let bpsk = |bit: u8| if bit == 0 { 1.0 } else { -1.0 };
        // W⁻(y₁,y₂|u₁) = ½ Σ_{u₂} W(y₁|u₁⊕u₂) W(y₂|u₂)
        // W⁺(y₁,y₂,u₁|u₂) = ½ W(y₁|u₁⊕u₂) W(y₂|u₂)
        let mut minus_int = 0.0;
        let mut plus_int = 0.0;
        for iy1 in 0..steps {
            let y1 = -span + iy1 as f64 * h;
            for iy2 in 0..steps {
                let y2 = -span + iy2 as f64 * h;
                let w = |u1: u8, u2: u8| dens(y1, bpsk(u1 ^ u2)) * dens(y2, bpsk(u2));
                let wm0 = 0.5 * (w(0, 0) + w(0, 1));
                let wm1 = 0.5 * (w(1, 0) + w(1, 1));
                minus_int += (0.5 * wm0.sqrt() + 0.5 * wm1.sqrt()).powi(2) * h * h;
                for u1 in [0u8, 1] {
                    let wp0 = 0.5 * w(u1, 0);
                    let wp1 = 0.5 * w(u1, 1);
                    plus_int += (0.5 * wp0.sqrt() + 0.5 * wp1.sqrt()).powi(2) * h * h;
                }
            }
        }
        (-minus_int.log2(), -plus_int.log2())
    }

    #[test]
    fn n2_estimate_matches_quadrature_oracle() {
        let snr_db = 0.0;
        let rate = 0.5;
        let sigma = sigma_for(snr_db, rate);
        let (e0_minus, e0_plus) = quadrature_e0_n2(sigma);
        let est = estimate_biases(2, rate, snr_db, 200_000, 99).unwrap();
        assert!(
            (est[0] - e0_minus).abs() / e0_minus < 0.02,
            "W⁻: {} vs {}",
            est[0],
            e0_minus
        );
        assert!(
            (est[1] - e0_plus).abs() / e0_plus < 0.02,
            "W⁺: {} vs {}",
            est[1],
            e0_plus
        );
    }

    #[test]
    fn bias_file_round_trip() {
        let header = BiasHeader {
            n: 4,
            design_snr_db: 3.5,
            samples: 10_000,
            seed: 42,
        };
        let biases = vec![0.1, 0.5, 0.987654321, 1.0];
        let text = render_biases(&header, &biases);
        let (h2, b2) = parse_biases(&text).unwrap();
        assert_eq!(h2, header);
        for (a, b) in biases.iter().zip(&b2) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(parse_biases("").is_err());
        assert!(parse_biases("4 3.5 10000\n0.1\n0.2\n0.3\n0.4\n").is_err());
        assert!(parse_biases("2 3.5 10000 42\n0.1\n").is_err());
        assert!(parse_biases("1 3.5 10000 42\n1.5\n").is_err());
    }
}
