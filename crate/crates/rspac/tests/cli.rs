//! End-to-end checks of the command-line interface: subcommands, file
//! formats, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rspac"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("rspac_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn profile_subcommand_writes_loadable_files() {
    let path = tmp("rm_128_64.profile");
    let out = run(&[
        "profile",
        "--n",
        "128",
        "--k",
        "64",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let profile = rspac::pac::RateProfile::parse(&text).unwrap();
    assert_eq!((profile.n(), profile.k()), (128, 64));
    assert_eq!(
        profile,
        rspac::pac::RateProfile::reed_muller(128, 64).unwrap()
    );
}

#[test]
fn biases_subcommand_writes_cache_files() {
    let path = tmp("biases_16.txt");
    let out = run(&[
        "biases",
        "--n",
        "16",
        "--k",
        "8",
        "--design-snr-db",
        "2.5",
        "--samples",
        "10000",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, biases) = rspac::pac::bias::load_biases(&path).unwrap();
    assert_eq!(header.n, 16);
    assert_eq!(header.design_snr_db, 2.5);
    assert_eq!(header.samples, 10_000);
    assert_eq!(header.seed, 3);
    assert_eq!(biases.len(), 16);
}

#[test]
fn simulate_show_config_prints_all_defaults() {
    let out = run(&["simulate", "--show-config"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let cfg = rspac::sim::SimConfig::from_toml(&text).unwrap();
    assert_eq!(cfg.scheme, rspac::sim::SchemeKind::Pac);
    assert_eq!(cfg.max_frames, 1_000_000);
    assert_eq!(cfg.target_bit_errors, 200);
    for key in [
        "scheme",
        "snr_db",
        "max_frames",
        "target_bit_errors",
        "seed",
        "fano_delta",
        "visit_budget",
        "depth",
        "bias_samples",
        "bias_seed",
    ] {
        assert!(text.contains(key), "--show-config misses '{key}'");
    }
}

#[test]
fn simulate_emits_csv_with_exact_header_and_is_seed_deterministic() {
    let csv_path = tmp("pac_run.csv");
    let args = [
        "simulate",
        "--scheme",
        "pac",
        "--snr-db",
        "3.0",
        "--max-frames",
        "40",
        "--target-bit-errors",
        "1000000",
        "--bias-samples",
        "10000",
        "--seed",
        "5",
        "--out",
    ];
    let out = run(&args.iter().chain([&csv_path.to_str().unwrap()]).copied().collect::<Vec<_>>());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with(
        "snr_db,frames,bit_errors,frame_errors,ber,fer,anv,wall_seconds\n"
    ));
    let records = rspac::sim::parse_csv(&text).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].frames, 40);

    // same seed, stdout this time: identical apart from wall_seconds
    let out2 = run(&args[..args.len() - 1]);
    assert!(out2.status.success());
    let records2 = rspac::sim::parse_csv(&stdout_of(&out2)).unwrap();
    assert_eq!(records[0].bit_errors, records2[0].bit_errors);
    assert_eq!(records[0].frame_errors, records2[0].frame_errors);
    assert_eq!(records[0].ber, records2[0].ber);
    assert_eq!(records[0].anv, records2[0].anv);
}

#[test]
fn simulate_accepts_config_file_with_flag_overrides() {
    let cfg_path = tmp("run.toml");
    std::fs::write(
        &cfg_path,
        "scheme = \"pac\"\nsnr_db = [2.0]\nmax_frames = 10\ntarget_bit_errors = 1000000\nbias_samples = 10000\n",
    )
    .unwrap();
    let out = run(&[
        "simulate",
        "--config",
        cfg_path.to_str().unwrap(),
        "--max-frames",
        "5",
    ]);
    assert!(out.status.success());
    let records = rspac::sim::parse_csv(&stdout_of(&out)).unwrap();
    assert_eq!(records[0].frames, 5, "flag must override the file");
}

#[test]
fn encode_decode_round_trip_via_files() {
    let input = tmp("payload.bin");
    let encoded = tmp("payload.rspac");
    let decoded = tmp("payload.out");
    let data: Vec<u8> = (0..220).map(|i| (i * 11 + 5) as u8).collect();
    std::fs::write(&input, &data).unwrap();

    let out = run(&[
        "encode",
        "--scheme",
        "rs-pac-1",
        "--bias-samples",
        "10000",
        "--input",
        input.to_str().unwrap(),
        "--output",
        encoded.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::metadata(&encoded).unwrap().len(), 4032 / 8);

    let out = run(&[
        "decode",
        "--scheme",
        "rs-pac-1",
        "--bias-samples",
        "10000",
        "--input",
        encoded.to_str().unwrap(),
        "--output",
        decoded.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&decoded).unwrap(), data);
}

#[test]
fn exit_codes_follow_the_contract() {
    // config errors exit 1
    let out = run(&["simulate", "--scheme", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["simulate", "--max-frames", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["encode", "--scheme", "pac", "--input", "/no/such/file", "--output", "/tmp/x"]);
    assert_eq!(out.status.code(), Some(1));
    // help exits 0
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn wrong_payload_size_is_a_config_error() {
    let input = tmp("short.bin");
    std::fs::write(&input, [1u8, 2, 3]).unwrap();
    let out = run(&[
        "encode",
        "--scheme",
        "pac",
        "--bias-samples",
        "10000",
        "--input",
        input.to_str().unwrap(),
        "--output",
        tmp("short.enc").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("length mismatch"));
}

/// The selftest subcommand is the expensive one; run it last and accept
/// its exit code as the verdict.
#[test]
fn selftest_passes_with_exit_zero() {
    let out = run(&["selftest"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "selftest output:\n{}",
        stdout_of(&out)
    );
    assert!(stdout_of(&out).contains("selftest passed"));
}
