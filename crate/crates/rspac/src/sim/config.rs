//! Run configuration: a TOML file plus CLI flag overrides, resolved into
//! fully-validated codec instances.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pac::{bias, ConvSpec, PacCode, RateProfile};

/// Shipped rate profiles for the two inner codes whose construction is
/// external to this crate: Monte-Carlo bit-channel rankings at 5 dB and
/// 6 dB design SNR (regenerable with `profile --method mc`).
pub const PROFILE_64_32: &str = include_str!("../../data/pac64_32.profile");
pub const PROFILE_64_40: &str = include_str!("../../data/pac64_40.profile");

/// Connection polynomial used by every PAC instance here.
pub const CONNECTION_OCTAL: &str = "3211";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemeKind {
    /// Standalone PAC code.
    #[serde(rename = "pac")]
    Pac,
    /// RS(252,220,33) + parallel PAC blocks, no interleaver.
    #[serde(rename = "rs-pac-1")]
    RsPac1,
    /// Depth-D interleaved RS(255,223,33) + parallel PAC blocks.
    #[serde(rename = "rs-pac-il")]
    RsPacIl,
    /// The RS + convolutional baseline.
    #[serde(rename = "rs-cc")]
    RsCc,
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SchemeKind::Pac => "pac",
            SchemeKind::RsPac1 => "rs-pac-1",
            SchemeKind::RsPacIl => "rs-pac-il",
            SchemeKind::RsCc => "rs-cc",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<SchemeKind> {
        match s {
            "pac" => Ok(SchemeKind::Pac),
            "rs-pac-1" => Ok(SchemeKind::RsPac1),
            "rs-pac-il" => Ok(SchemeKind::RsPacIl),
            "rs-cc" => Ok(SchemeKind::RsCc),
            other => Err(Error::Config(format!(
                "unknown scheme '{other}' (expected pac | rs-pac-1 | rs-pac-il | rs-cc)"
            ))),
        }
    }
}

/// Everything a simulation run needs. Optional fields resolve to
/// per-scheme defaults; `simulate --show-config` prints the result.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub scheme: SchemeKind,
    pub snr_db: Vec<f64>,
    pub max_frames: u64,
    pub target_bit_errors: u64,
    pub seed: u64,
    pub fano_delta: f64,
    pub visit_budget: u64,
    /// Inner PAC dimensions; omitted → per-scheme defaults.
    pub pac_n: Option<usize>,
    pub pac_k: Option<usize>,
    /// Outer RS dimensions; omitted → per-scheme defaults.
    pub rs_n: Option<usize>,
    pub rs_k: Option<usize>,
    /// Interleaver depth for `rs-pac-il` (4, 5, or 8 in the stock configs).
    pub depth: usize,
    /// Rate-profile file; omitted → shipped profile or RM construction.
    pub profile: Option<PathBuf>,
    /// Bias cache file; omitted → estimate at `bias_design_snr_db`.
    pub biases: Option<PathBuf>,
    pub bias_design_snr_db: Option<f64>,
    pub bias_samples: usize,
    pub bias_seed: u64,
}

impl Default for SimConfig {
    fn default() -> SimConfig {
        SimConfig {
            scheme: SchemeKind::Pac,
            snr_db: vec![1.5, 2.0, 2.5, 3.0],
            max_frames: 1_000_000,
            target_bit_errors: 200,
            seed: 1,
            fano_delta: crate::pac::DEFAULT_DELTA,
            visit_budget: crate::pac::DEFAULT_VISIT_BUDGET,
            pac_n: None,
            pac_k: None,
            rs_n: None,
            rs_k: None,
            depth: 8,
            profile: None,
            biases: None,
            bias_design_snr_db: None,
            bias_samples: 100_000,
            bias_seed: 0x5eed,
        }
    }
}

impl SimConfig {
    pub fn from_toml(text: &str) -> Result<SimConfig> {
        let cfg: SimConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<SimConfig> {
        SimConfig::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.snr_db.is_empty() {
            return Err(Error::Config("snr_db list is empty".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be at least 1".into()));
        }
        if self.target_bit_errors == 0 {
            return Err(Error::Config("target_bit_errors must be at least 1".into()));
        }
        if self.fano_delta.is_nan() || self.fano_delta <= 0.0 {
            return Err(Error::Config("fano_delta must be positive".into()));
        }
        if self.visit_budget == 0 {
            return Err(Error::Config("visit_budget must be positive".into()));
        }
        Ok(())
    }

    /// Inner PAC dimensions after per-scheme defaulting.
    pub fn pac_dims(&self) -> (usize, usize) {
        match (self.pac_n, self.pac_k) {
            (Some(n), Some(k)) => (n, k),
            _ => match self.scheme {
                SchemeKind::Pac | SchemeKind::RsPac1 => (64, 32),
                SchemeKind::RsPacIl => match self.depth {
                    4 => (64, 32),
                    5 => (64, 40),
                    _ => (16 * self.depth, 8 * self.depth),
                },
                SchemeKind::RsCc => (0, 0),
            },
        }
    }

    /// Outer RS dimensions after per-scheme defaulting.
    pub fn rs_dims(&self) -> (usize, usize) {
        match (self.rs_n, self.rs_k) {
            (Some(n), Some(k)) => (n, k),
            _ => match self.scheme {
                SchemeKind::RsPac1 => (252, 220),
                _ => (255, 223),
            },
        }
    }

    /// Design SNR for a single standalone bias estimate (used by the
    /// file-level codecs): an explicit override, else the profile's
    /// construction SNR where one is known.
    pub fn design_snr_db(&self) -> f64 {
        if let Some(s) = self.bias_design_snr_db {
            return s;
        }
        match self.pac_dims() {
            (64, 32) => 5.0,
            (64, 40) => 6.0,
            _ => 3.5,
        }
    }

    /// Bias estimation SNR for a simulation point. The branch bias of the
    /// path metric is the cutoff rate of the bit channels actually being
    /// decoded, so by default it follows the operating point; a bias file
    /// or an explicit `bias_design_snr_db` pins one set for the whole run.
    pub fn bias_snr_for_point(&self, operating_snr_db: f64) -> f64 {
        self.bias_design_snr_db.unwrap_or(operating_snr_db)
    }

    /// Resolve the rate profile: explicit file, shipped construction, or
    /// RM fallback.
    pub fn resolve_profile(&self) -> Result<RateProfile> {
        let (n, k) = self.pac_dims();
        if let Some(path) = &self.profile {
            let p = RateProfile::from_file(path)?;
            if p.n() != n || p.k() != k {
                return Err(Error::Config(format!(
                    "profile file is ({}, {}), scheme needs ({n}, {k})",
                    p.n(),
                    p.k()
                )));
            }
            return Ok(p);
        }
        match (n, k) {
            (64, 32) => RateProfile::parse(PROFILE_64_32),
            (64, 40) => RateProfile::parse(PROFILE_64_40),
            _ => RateProfile::reed_muller(n, k),
        }
    }

    /// Resolve the per-bit-channel biases: cache file, or a fresh seeded
    /// estimate at `estimate_snr_db`.
    pub fn resolve_biases(&self, profile: &RateProfile, estimate_snr_db: f64) -> Result<Vec<f64>> {
        if let Some(path) = &self.biases {
            let (header, biases) = bias::load_biases(path)?;
            if header.n != profile.n() {
                return Err(Error::Config(format!(
                    "bias file is for N={}, scheme needs N={}",
                    header.n,
                    profile.n()
                )));
            }
            return Ok(biases);
        }
        bias::estimate_biases(
            profile.n(),
            profile.rate(),
            estimate_snr_db,
            self.bias_samples,
            self.bias_seed,
        )
    }

    /// Build the inner PAC code this config describes; `operating_snr_db`,
    /// when given, anchors the default bias estimate to that point.
    pub fn build_pac(&self, operating_snr_db: Option<f64>) -> Result<PacCode> {
        let profile = self.resolve_profile()?;
        let estimate_snr = match operating_snr_db {
            Some(snr) => self.bias_snr_for_point(snr),
            None => self.design_snr_db(),
        };
        let biases = self.resolve_biases(&profile, estimate_snr)?;
        PacCode::new(profile, ConvSpec::from_octal(CONNECTION_OCTAL)?, biases)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = SimConfig::default();
        let text = cfg.to_toml();
        let back = SimConfig::from_toml(&text).unwrap();
        assert_eq!(back.scheme, cfg.scheme);
        assert_eq!(back.snr_db, cfg.snr_db);
        assert_eq!(back.max_frames, cfg.max_frames);
        assert_eq!(back.bias_seed, cfg.bias_seed);
    }

    #[test]
    fn parses_overrides_and_rejects_unknown_keys() {
        let cfg =
            SimConfig::from_toml("scheme = \"rs-pac-il\"\ndepth = 4\nsnr_db = [2.5]\n").unwrap();
        assert_eq!(cfg.scheme, SchemeKind::RsPacIl);
        assert_eq!(cfg.pac_dims(), (64, 32));
        assert_eq!(cfg.rs_dims(), (255, 223));
        assert!(SimConfig::from_toml("schem = \"pac\"").is_err());
        assert!(SimConfig::from_toml("snr_db = []").is_err());
        assert!(SimConfig::from_toml("max_frames = 0").is_err());
    }

    #[test]
    fn per_scheme_defaults() {
        let mut cfg = SimConfig::default();
        assert_eq!(cfg.pac_dims(), (64, 32));
        assert_eq!(cfg.design_snr_db(), 5.0);
        cfg.scheme = SchemeKind::RsPacIl;
        assert_eq!(cfg.pac_dims(), (128, 64));
        assert_eq!(cfg.design_snr_db(), 3.5);
        cfg.depth = 5;
        assert_eq!(cfg.pac_dims(), (64, 40));
        assert_eq!(cfg.design_snr_db(), 6.0);
        cfg.scheme = SchemeKind::RsPac1;
        assert_eq!(cfg.rs_dims(), (252, 220));
    }

    #[test]
    fn shipped_profiles_parse() {
        let p = RateProfile::parse(PROFILE_64_32).unwrap();
        assert_eq!((p.n(), p.k()), (64, 32));
        let p = RateProfile::parse(PROFILE_64_40).unwrap();
        assert_eq!((p.n(), p.k()), (64, 40));
    }
}
