//! One BER-curve point and the CSV format it is published in.

use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "snr_db,frames,bit_errors,frame_errors,ber,fer,anv,wall_seconds";

/// Measured operating point of one scheme at one SNR.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimRecord {
    pub snr_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub anv: f64,
    pub wall_seconds: f64,
}

/// Reals carry 6 significant digits.
fn fmt_real(x: f64) -> String {
    format!("{x:.5e}")
}

/// Render records as CSV, ordered by SNR.
pub fn render_csv(records: &[SimRecord]) -> String {
    let mut sorted: Vec<&SimRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in sorted {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_real(r.snr_db),
            r.frames,
            r.bit_errors,
            r.frame_errors,
            fmt_real(r.ber),
            fmt_real(r.fer),
            fmt_real(r.anv),
            fmt_real(r.wall_seconds),
        ));
    }
    out
}

pub fn write_csv(path: impl AsRef<Path>, records: &[SimRecord]) -> Result<()> {
    Ok(std::fs::write(path, render_csv(records))?)
}

/// Parse a CSV produced by [`render_csv`] (used by tooling and tests).
pub fn parse_csv(text: &str) -> Result<Vec<SimRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::Config(format!(
                "unexpected CSV header: {other:?}"
            )))
        }
    }
    let mut records = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(Error::Config(format!("bad CSV row: '{line}'")));
        }
        let real = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Config(format!("bad real '{s}'")))
        };
        let int = |s: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::Config(format!("bad integer '{s}'")))
        };
        records.push(SimRecord {
            snr_db: real(f[0])?,
            frames: int(f[1])?,
            bit_errors: int(f[2])?,
            frame_errors: int(f[3])?,
            ber: real(f[4])?,
            fer: real(f[5])?,
            anv: real(f[6])?,
            wall_seconds: real(f[7])?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(snr: f64) -> SimRecord {
        SimRecord {
            snr_db: snr,
            frames: 1234,
            bit_errors: 201,
            frame_errors: 57,
            ber: 2.0 / 30011.0,
            fer: 57.0 / 1234.0,
            anv: 1.7298,
            wall_seconds: 12.25,
        }
    }

    #[test]
    fn empty_list_is_header_only() {
        assert_eq!(render_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn one_record_is_two_lines() {
        let text = render_csv(&[sample(2.5)]);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with(CSV_HEADER));
    }

    #[test]
    fn rows_are_sorted_by_snr() {
        let text = render_csv(&[sample(3.0), sample(1.5), sample(2.0)]);
        let snrs: Vec<f64> = parse_csv(&text)
            .unwrap()
            .iter()
            .map(|r| r.snr_db)
            .collect();
        assert_eq!(snrs, vec![1.5, 2.0, 3.0]);
    }

    #[test]
    fn parse_back_reproduces_within_print_precision() {
        let records = vec![sample(1.5), sample(2.0)];
        let parsed = parse_csv(&render_csv(&records)).unwrap();
        assert_eq!(parsed.len(), records.len());
        for (a, b) in records.iter().zip(&parsed) {
            assert_eq!(a.frames, b.frames);
            assert_eq!(a.bit_errors, b.bit_errors);
            assert_eq!(a.frame_errors, b.frame_errors);
            for (x, y) in [
                (a.snr_db, b.snr_db),
                (a.ber, b.ber),
                (a.fer, b.fer),
                (a.anv, b.anv),
                (a.wall_seconds, b.wall_seconds),
            ] {
                let tol = 1e-5 * x.abs().max(1e-300);
                assert!((x - y).abs() <= tol, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n1,2,3\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\na,b,c,d,e,f,g,h\n")).is_err());
    }
}
