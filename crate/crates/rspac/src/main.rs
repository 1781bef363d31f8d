//! Command-line front end: self-tests, profile/bias generation, BER
//! simulation runs, and file-level single-shot encode/decode.
//!
//! Exit codes: 0 success, 1 configuration error, 2 self-test failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rspac::pac::{bias, ConvSpec, RateProfile};
use rspac::sim::{SchemeKind, SimConfig};
use rspac::{Error, Result};

#[derive(Parser)]
#[command(
    name = "rspac",
    about = "Concatenated Reed-Solomon + PAC coding and BER simulation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in invariant suites.
    Selftest,
    /// Generate a rate profile file.
    Profile(ProfileArgs),
    /// Estimate bit-channel biases and write a cache file.
    Biases(BiasArgs),
    /// Run Monte-Carlo BER/FER/ANV measurements.
    Simulate(SimulateArgs),
    /// Encode a data file into packed codeword bits.
    Encode(CodecArgs),
    /// Decode packed codeword bits (hard decisions) back into data.
    Decode(CodecArgs),
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// rm: largest polar-transform row weights; mc: Monte-Carlo
    /// bit-channel ranking at the design SNR.
    #[arg(long, default_value = "rm")]
    method: String,
    #[arg(long, default_value_t = 5.0)]
    design_snr_db: f64,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BiasArgs {
    /// Profile file supplying N and the rate; alternatively give --n/--k.
    #[arg(long)]
    profile: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    design_snr_db: f64,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Default)]
struct ConfigOverrides {
    /// TOML configuration file; flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scheme: Option<SchemeKind>,
    /// Comma-separated Eb/N0 grid in dB.
    #[arg(long, value_delimiter = ',')]
    snr_db: Option<Vec<f64>>,
    #[arg(long)]
    max_frames: Option<u64>,
    #[arg(long)]
    target_bit_errors: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    fano_delta: Option<f64>,
    #[arg(long)]
    visit_budget: Option<u64>,
    #[arg(long)]
    pac_n: Option<usize>,
    #[arg(long)]
    pac_k: Option<usize>,
    #[arg(long)]
    rs_n: Option<usize>,
    #[arg(long)]
    rs_k: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    profile: Option<PathBuf>,
    #[arg(long)]
    biases: Option<PathBuf>,
    #[arg(long)]
    bias_design_snr_db: Option<f64>,
    #[arg(long)]
    bias_samples: Option<usize>,
    #[arg(long)]
    bias_seed: Option<u64>,
}

impl ConfigOverrides {
    fn resolve(&self) -> Result<SimConfig> {
        let mut cfg = match &self.config {
            Some(path) => SimConfig::from_file(path)?,
            None => SimConfig::default(),
        };
        if let Some(v) = self.scheme {
            cfg.scheme = v;
        }
        if let Some(v) = &self.snr_db {
            cfg.snr_db = v.clone();
        }
        if let Some(v) = self.max_frames {
            cfg.max_frames = v;
        }
        if let Some(v) = self.target_bit_errors {
            cfg.target_bit_errors = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.fano_delta {
            cfg.fano_delta = v;
        }
        if let Some(v) = self.visit_budget {
            cfg.visit_budget = v;
        }
        if let Some(v) = self.pac_n {
            cfg.pac_n = Some(v);
        }
        if let Some(v) = self.pac_k {
            cfg.pac_k = Some(v);
        }
        if let Some(v) = self.rs_n {
            cfg.rs_n = Some(v);
        }
        if let Some(v) = self.rs_k {
            cfg.rs_k = Some(v);
        }
        if let Some(v) = self.depth {
            cfg.depth = v;
        }
        if let Some(v) = &self.profile {
            cfg.profile = Some(v.clone());
        }
        if let Some(v) = &self.biases {
            cfg.biases = Some(v.clone());
        }
        if let Some(v) = self.bias_design_snr_db {
            cfg.bias_design_snr_db = Some(v);
        }
        if let Some(v) = self.bias_samples {
            cfg.bias_samples = v;
        }
        if let Some(v) = self.bias_seed {
            cfg.bias_seed = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    overrides: ConfigOverrides,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the effective configuration (defaults + file + flags) and exit.
    #[arg(long)]
    show_config: bool,
}

#[derive(Args)]
struct CodecArgs {
    #[command(flatten)]
    overrides: ConfigOverrides,
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Selftest => selftest(),
        Command::Profile(args) => {
            let profile = match args.method.as_str() {
                "rm" => RateProfile::reed_muller(args.n, args.k)?,
                "mc" => mc_profile(args.n, args.k, args.design_snr_db, args.samples, args.seed)?,
                other => {
                    return Err(Error::Config(format!(
                        "unknown profile method '{other}' (rm | mc)"
                    )))
                }
            };
            profile.to_file(&args.out)?;
            println!("wrote ({}, {}) profile to {}", args.n, args.k, args.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Biases(args) => {
            let (n, rate) = match (&args.profile, args.n, args.k) {
                (Some(path), _, _) => {
                    let p = RateProfile::from_file(path)?;
                    (p.n(), p.rate())
                }
                (None, Some(n), Some(k)) => (n, k as f64 / n as f64),
                _ => {
                    return Err(Error::Config(
                        "give either --profile or both --n and --k".into(),
                    ))
                }
            };
            let biases =
                bias::estimate_biases(n, rate, args.design_snr_db, args.samples, args.seed)?;
            let header = bias::BiasHeader {
                n,
                design_snr_db: args.design_snr_db,
                samples: args.samples,
                seed: args.seed,
            };
            bias::save_biases(&args.out, &header, &biases)?;
            println!("wrote {n} biases to {}", args.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate(args) => {
            let cfg = args.overrides.resolve()?;
            if args.show_config {
                print!("{}", cfg.to_toml());
                return Ok(ExitCode::SUCCESS);
            }
            let probe = rspac::sim::SchemeInstance::from_config(&cfg)?;
            eprintln!(
                "simulating {} (rate {:.4}) at {} SNR points",
                probe.describe(),
                probe.rate(),
                cfg.snr_db.len()
            );
            let mut records = Vec::new();
            for &snr in &cfg.snr_db {
                let rec = rspac::sim::run_point(&cfg, snr)?;
                eprintln!(
                    "  {:>5.2} dB: ber {:.3e}  fer {:.3e}  anv {:.2}  ({} frames, {:.1}s)",
                    rec.snr_db, rec.ber, rec.fer, rec.anv, rec.frames, rec.wall_seconds
                );
                records.push(rec);
            }
            match &args.out {
                Some(path) => {
                    rspac::sim::write_csv(path, &records)?;
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{}", rspac::sim::render_csv(&records)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode(args) => {
            let cfg = args.overrides.resolve()?;
            let inst = rspac::sim::SchemeInstance::from_config(&cfg)?;
            let data = std::fs::read(&args.input)?;
            let packed = inst.encode_bytes(&data)?;
            std::fs::write(&args.output, packed)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode(args) => {
            let cfg = args.overrides.resolve()?;
            let inst = rspac::sim::SchemeInstance::from_config(&cfg)?;
            let packed = std::fs::read(&args.input)?;
            let data = inst.decode_bytes(&packed, cfg.fano_delta, cfg.visit_budget)?;
            std::fs::write(&args.output, data)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Monte-Carlo profile construction: rank bit channels by estimated
/// cutoff rate at the design SNR, keep the best K (larger index wins ties).
fn mc_profile(n: usize, k: usize, design_snr_db: f64, samples: usize, seed: u64) -> Result<RateProfile> {
    if k == 0 || k > n {
        return Err(Error::Config(format!("invalid profile dimensions ({n}, {k})")));
    }
    let rate = k as f64 / n as f64;
    let biases = bias::estimate_biases(n, rate, design_snr_db, samples, seed)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| biases[b].total_cmp(&biases[a]).then(b.cmp(&a)));
    let mut chosen: Vec<usize> = order.into_iter().take(k).collect();
    chosen.sort_unstable();
    RateProfile::new(n, chosen)
}

/// Fast library invariant battery; prints one line per suite.
fn selftest() -> Result<ExitCode> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let mut failures = 0u32;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    // field tables against the shift-and-reduce reference
    {
        use rspac::gf256::Gf;
        let mut ok = true;
        for a in 0..=255u8 {
            let ga = Gf(a);
            ok &= ga + Gf::ZERO == ga && ga * Gf::ONE == ga;
            if a != 0 {
                ok &= ga * ga.inv().unwrap() == Gf::ONE;
            }
            for b in 0..=255u8 {
                ok &= ga * Gf(b) == ga.mul_bitwise(Gf(b));
            }
        }
        check("gf256 identities and table agreement", ok);
    }

    // RS correction sweep
    {
        use rspac::rs::{RsCode, RsDecodeOutcome};
        let code = RsCode::new(255, 223).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut ok = true;
        for w in [1usize, 8, 16] {
            for _ in 0..20 {
                let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
                let clean = code.encode(&msg).unwrap();
                let mut cw = clean.clone();
                let mut pos: Vec<usize> = (0..255).collect();
                pos.shuffle(&mut rng);
                for &p in pos.iter().take(w) {
                    cw[p] ^= rng.random_range(1..=255u8);
                }
                ok &= matches!(
                    code.decode(&cw).unwrap(),
                    RsDecodeOutcome::Corrected { codeword, .. } if codeword == clean
                );
            }
        }
        check("rs(255,223) corrects 1/8/16 errors", ok);
    }

    // polar transform involution + demapper exactness spot check
    {
        use rspac::polar::{polar_transform, Demapper};
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        let mut ok = true;
        for _ in 0..200 {
            let u: Vec<u8> = (0..128).map(|_| rng.random_range(0..2u8)).collect();
            let mut t = u.clone();
            polar_transform(&mut t).unwrap();
            polar_transform(&mut t).unwrap();
            ok &= t == u;
        }
        let mut d = Demapper::new(&[0.9, -0.4]).unwrap();
        let l0 = d.next_llr(0).unwrap();
        ok &= (l0 - rspac::polar::f_combine(0.9, -0.4)).abs() < 1e-12;
        d.commit(0, 1).unwrap();
        ok &= (d.next_llr(1).unwrap() - (-0.4 - 0.9)).abs() < 1e-12;
        check("polar involution and demapper combines", ok);
    }

    // convolution against the Toeplitz definition
    {
        let conv = ConvSpec::from_octal("3211").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        let mut ok = true;
        for _ in 0..100 {
            let v: Vec<u8> = (0..64).map(|_| rng.random_range(0..2u8)).collect();
            let u = conv.encode(&v);
            let mut expect = vec![0u8; 64];
            for (r, &vb) in v.iter().enumerate() {
                if vb == 1 {
                    for (j, &c) in conv.taps().iter().enumerate() {
                        if r + j < 64 {
                            expect[r + j] ^= c;
                        }
                    }
                }
            }
            ok &= u == expect;
            ok &= conv.invert(&u) == v;
        }
        check("conv encode matches Toeplitz product", ok);
    }

    // noiseless Fano on the shipped PAC(64,32)
    {
        let cfg = SimConfig {
            bias_samples: 10_000,
            ..SimConfig::default()
        };
        let code = cfg.build_pac(None)?;
        let mut rng = ChaCha8Rng::seed_from_u64(104);
        let mut ok = true;
        for _ in 0..20 {
            let h: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
            let x = code.encode_systematic(&h).unwrap();
            let llrs: Vec<f64> = x
                .iter()
                .map(|&b| if b == 0 { 40.0 } else { -40.0 })
                .collect();
            let out = rspac::pac::fano_decode(&code, &llrs, 2.0, 100_000).unwrap();
            ok &= out.anv == 1.0
                && code.systematic_data_of_carrier(&out.carrier).unwrap() == h;
        }
        check("fano noiseless anv = 1 on pac(64,32)", ok);
    }

    // concatenation round trips on a perfect channel
    {
        use rspac::sim::SchemeInstance;
        let mut ok = true;
        for scheme in [SchemeKind::RsPac1, SchemeKind::RsPacIl, SchemeKind::RsCc] {
            let cfg = SimConfig {
                scheme,
                bias_samples: 10_000,
                ..SimConfig::default()
            };
            let inst = SchemeInstance::from_config(&cfg)?;
            let data: Vec<u8> = (0..inst.data_bits() / 8)
                .map(|i| (i * 131 + 7) as u8)
                .collect();
            let packed = inst.encode_bytes(&data)?;
            ok &= inst.decode_bytes(&packed, 2.0, 1_000_000)? == data;
        }
        check("concatenated schemes round trip", ok);
    }

    // CSV identity
    {
        use rspac::sim::{parse_csv, render_csv, SimRecord};
        let rec = SimRecord {
            snr_db: 2.5,
            frames: 10,
            bit_errors: 3,
            frame_errors: 1,
            ber: 3.0 / 17600.0,
            fer: 0.1,
            anv: 1.25,
            wall_seconds: 0.5,
        };
        let ok = parse_csv(&render_csv(&[rec])).map(|v| v.len() == 1).unwrap_or(false);
        check("csv render/parse round trip", ok);
    }

    if failures == 0 {
        println!("selftest passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("selftest FAILED ({failures} suites)");
        Ok(ExitCode::from(2))
    }
}
