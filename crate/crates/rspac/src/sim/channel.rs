//! BPSK modulation and the AWGN channel, expressed directly in LLRs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Channel operating point: Eb/N0 in dB with Eb normalized by the overall
/// code rate, so `σ² = 1 / (2·R·10^{Eb/N0 / 10})`.
#[derive(Clone, Copy, Debug)]
pub struct ChannelSpec {
    ebn0_db: f64,
    overall_rate: f64,
    sigma: f64,
}

impl ChannelSpec {
    pub fn new(ebn0_db: f64, overall_rate: f64) -> Result<ChannelSpec> {
        if overall_rate.is_nan() || overall_rate <= 0.0 || overall_rate > 1.0 {
            return Err(Error::InvalidParameters(format!(
                "overall rate {overall_rate} outside (0, 1]"
            )));
        }
        let sigma_sq = 1.0 / (2.0 * overall_rate * 10f64.powf(ebn0_db / 10.0));
        Ok(ChannelSpec {
            ebn0_db,
            overall_rate,
            sigma: sigma_sq.sqrt(),
        })
    }

    pub fn ebn0_db(&self) -> f64 {
        self.ebn0_db
    }

    pub fn overall_rate(&self) -> f64 {
        self.overall_rate
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Antipodal map: bit 0 → +1.0, bit 1 → −1.0.
pub fn bpsk_modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter()
        .map(|&b| if b & 1 == 0 { 1.0 } else { -1.0 })
        .collect()
}

/// Transmit symbols through AWGN and emit per-bit LLRs
/// `log P(y|0)/P(y|1) = 2y/σ²` (matching the BPSK map above).
pub fn awgn_llrs(symbols: &[f64], ch: &ChannelSpec, rng: &mut impl Rng) -> Vec<f64> {
    let sigma = ch.sigma();
    let scale = 2.0 / (sigma * sigma);
    symbols
        .iter()
        .map(|&s| {
            let noise: f64 = rng.sample(StandardNormal);
            scale * (s + sigma * noise)
        })
        .collect()
}

/// `Q(x)`: upper tail of the standard normal; the uncoded BPSK bit error
/// rate is `Q(√(2·Eb/N0))`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc_scalar(x / std::f64::consts::SQRT_2)
}

/// Complementary error function (Abramowitz-Stegun 7.1.26 style rational
/// approximation, |error| < 1.5e-7, plenty for 3σ comparisons).
fn erfc_scalar(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let tau = t
        * (-z * z - 1.26551223
            + t * (1.00002368
                + t * (0.37409196
                    + t * (0.09678418
                        + t * (-0.18628806
                            + t * (0.27886807
                                + t * (-1.13520398
                                    + t * (1.48851587
                                        + t * (-0.82215223 + t * 0.17087277)))))))))
        .exp();
    if x >= 0.0 {
        tau
    } else {
        2.0 - tau
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bpsk_map() {
        assert_eq!(bpsk_modulate(&[0]), vec![1.0]);
        assert_eq!(bpsk_modulate(&[1]), vec![-1.0]);
        assert_eq!(bpsk_modulate(&[0, 1, 0]), vec![1.0, -1.0, 1.0]);
    }

    #[test]
    fn sigma_matches_definition() {
        let ch = ChannelSpec::new(0.0, 0.5).unwrap();
        assert!((ch.sigma() - 1.0).abs() < 1e-12);
        let ch = ChannelSpec::new(3.0, 1.0).unwrap();
        let expect = (1.0 / (2.0 * 10f64.powf(0.3))).sqrt();
        assert!((ch.sigma() - expect).abs() < 1e-12);
        assert!(ChannelSpec::new(1.0, 0.0).is_err());
        assert!(ChannelSpec::new(1.0, 1.5).is_err());
    }

    #[test]
    fn llr_scale_and_noiseless_limit() {
        // very high SNR: LLR signs match the transmitted bits
        let ch = ChannelSpec::new(40.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let bits = [0u8, 1, 1, 0, 1];
        let llrs = awgn_llrs(&bpsk_modulate(&bits), &ch, &mut rng);
        for (&b, &l) in bits.iter().zip(&llrs) {
            assert!(if b == 0 { l > 0.0 } else { l < 0.0 });
            assert!(l.abs() > 100.0);
        }
        // y = 0 is the decision boundary: LLR = 0 (checked via the formula)
        let ch = ChannelSpec::new(0.0, 0.5).unwrap();
        let y = 0.0;
        assert_eq!(2.0 * y / (ch.sigma() * ch.sigma()), 0.0);
    }

    #[test]
    fn q_function_reference_values() {
        assert!((q_function(0.0) - 0.5).abs() < 1e-7);
        assert!((q_function(1.0) - 0.158655).abs() < 1e-5);
        assert!((q_function(3.0) - 1.349898e-3).abs() < 1e-7);
        // BER at Eb/N0 = 6.8 dB is about 1e-3
        let ber = q_function((2.0 * 10f64.powf(0.68)).sqrt());
        assert!((ber - 1.0e-3).abs() < 1.5e-4, "{ber}");
    }

    #[test]
    fn empirical_ber_matches_q_function() {
        // quick sanity at 4 dB with 1e6 bits; the acceptance suite does
        // the full 1e7-bit sweep
        let ebn0 = 4.0;
        let ch = ChannelSpec::new(ebn0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 1_000_000usize;
        let bits = vec![0u8; n];
        let llrs = awgn_llrs(&bpsk_modulate(&bits), &ch, &mut rng);
        let errors = llrs.iter().filter(|&&l| l < 0.0).count();
        let p = q_function((2.0 * 10f64.powf(ebn0 / 10.0)).sqrt());
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let got = errors as f64 / n as f64;
        assert!(
            (got - p).abs() < 3.0 * se + 1e-9,
            "got {got}, expected {p} ± {se}"
        );
    }
}
