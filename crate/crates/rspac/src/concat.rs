//! Concatenated coding schemes: Reed-Solomon outer codes around PAC or
//! convolutional inner codes.
//!
//! Wire conventions, used consistently end to end: an RS codeword travels
//! message-first (`d_1 … d_k, p_1 … p_{n−k}`); symbols are bytes in index
//! order; bits within a byte are LSB-first. A matrix of `D` RS codewords
//! is interleaved by columns, so one garbled inner block touches at most
//! one symbol of each row codeword.
//!
//! Scheme 1 (no interleaver): one shortened RS(252,220,33) codeword split
//! into 63 four-symbol groups, each carried by a PAC(64,32) block. If the
//! RS stage fails, the scheme falls back to the raw inner estimates for
//! the data positions.
//!
//! Scheme 2 (interleaved): `D` parallel RS(255,223,33) codewords written
//! as matrix rows; each of the 255 columns (8·D bits) is carried by one
//! PAC block — depth 8 pairs with PAC(128,64), depth 4 with PAC(64,32),
//! depth 5 with PAC(64,40). Failed rows fall back to the deinterleaver
//! output.
//!
//! The RS+CC baseline replaces the PAC layer of the depth-8 scheme with a
//! single zero-terminated rate-1/2 64-state convolutional block over the
//! column-serialized matrix.

use crate::bits::{bits_to_bytes, bytes_to_bits};
use crate::cc::{viterbi_decode, CcSpec, MEMORY, STATE_COUNT};
use crate::error::{Error, Result};
use crate::pac::{fano_decode, PacCode};
use crate::rs::{RsCode, RsDecodeOutcome};

/// Write `rows` codewords as matrix rows, transmit by columns.
#[derive(Clone, Debug)]
pub struct BlockInterleaver {
    rows: usize,
    cols: usize,
}

impl BlockInterleaver {
    pub fn new(rows: usize, cols: usize) -> Result<BlockInterleaver> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameters(
                "interleaver dimensions must be positive".into(),
            ));
        }
        Ok(BlockInterleaver { rows, cols })
    }

    fn check(&self, data: &[Vec<u8>], outer: usize, inner: usize) -> Result<()> {
        if data.len() != outer || data.iter().any(|v| v.len() != inner) {
            return Err(Error::LengthMismatch {
                expected: outer * inner,
                actual: data.iter().map(Vec::len).sum(),
            });
        }
        Ok(())
    }

    /// Rows in, columns out: column `j` is `(H[0][j], …, H[D−1][j])`.
    pub fn interleave(&self, rows_data: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
        self.check(rows_data, self.rows, self.cols)?;
        Ok((0..self.cols)
            .map(|j| rows_data.iter().map(|row| row[j]).collect())
            .collect())
    }

    /// Columns in, rows out; exact inverse of [`Self::interleave`].
    pub fn deinterleave(&self, columns: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
        self.check(columns, self.cols, self.rows)?;
        Ok((0..self.rows)
            .map(|r| columns.iter().map(|col| col[r]).collect())
            .collect())
    }
}

/// Counters accumulated across the inner decodes of one or more frames.
#[derive(Clone, Copy, Debug, Default)]
pub struct InnerStats {
    pub decodes: u64,
    pub visits: u64,
    pub decoded_bits: u64,
    pub budget_exhausted: u64,
    pub rs_failures: u64,
}

impl InnerStats {
    pub fn merge(&mut self, other: &InnerStats) {
        self.decodes += other.decodes;
        self.visits += other.visits;
        self.decoded_bits += other.decoded_bits;
        self.budget_exhausted += other.budget_exhausted;
        self.rs_failures += other.rs_failures;
    }

    /// Mean visits per decoded inner bit.
    pub fn anv(&self) -> f64 {
        if self.decoded_bits == 0 {
            0.0
        } else {
            self.visits as f64 / self.decoded_bits as f64
        }
    }
}

/// RS codewords travel message-first on the wire.
fn wire_of_codeword(rs: &RsCode, cw: &[u8]) -> Vec<u8> {
    let parity = rs.n() - rs.k();
    let mut wire = Vec::with_capacity(rs.n());
    wire.extend_from_slice(&cw[parity..]);
    wire.extend_from_slice(&cw[..parity]);
    wire
}

fn codeword_of_wire(rs: &RsCode, wire: &[u8]) -> Vec<u8> {
    let parity = rs.n() - rs.k();
    let mut cw = Vec::with_capacity(rs.n());
    cw.extend_from_slice(&wire[rs.k()..]);
    cw.extend_from_slice(&wire[..rs.k()]);
    debug_assert_eq!(cw.len(), parity + rs.k());
    cw
}

/// Decode one wire-order RS word with the fallback rule: on failure the
/// data estimate is simply the first `k` received symbols.
fn outer_decode_wire(rs: &RsCode, wire: &[u8]) -> Result<(Vec<u8>, bool)> {
    match rs.decode(&codeword_of_wire(rs, wire))? {
        RsDecodeOutcome::Corrected { codeword, .. } => {
            Ok((rs.message_of(&codeword).to_vec(), false))
        }
        RsDecodeOutcome::Failure { .. } => Ok((wire[..rs.k()].to_vec(), true)),
    }
}

/// Scheme 1: one RS codeword fanned out over parallel PAC blocks, no
/// interleaver.
#[derive(Clone, Debug)]
pub struct Scheme1 {
    rs: RsCode,
    inner: PacCode,
    blocks: usize,
    symbols_per_block: usize,
}

/// Result of a scheme-1 frame decode.
#[derive(Clone, Debug)]
pub struct Scheme1Decode {
    /// The `k` estimated data symbols.
    pub data: Vec<u8>,
    pub stats: InnerStats,
}

impl Scheme1 {
    pub fn new(rs: RsCode, inner: PacCode) -> Result<Scheme1> {
        if !inner.k().is_multiple_of(8) {
            return Err(Error::InvalidParameters(format!(
                "inner data size {} is not a whole number of symbols",
                inner.k()
            )));
        }
        let symbols_per_block = inner.k() / 8;
        if !rs.n().is_multiple_of(symbols_per_block) || !rs.k().is_multiple_of(symbols_per_block) {
            return Err(Error::InvalidParameters(format!(
                "RS({}, {}) does not split into {}-symbol groups",
                rs.n(),
                rs.k(),
                symbols_per_block
            )));
        }
        let blocks = rs.n() / symbols_per_block;
        Ok(Scheme1 {
            rs,
            inner,
            blocks,
            symbols_per_block,
        })
    }

    /// The configuration used throughout: RS(252,220,33) + 63 × PAC(64,32).
    pub fn standard(inner: PacCode) -> Result<Scheme1> {
        Scheme1::new(RsCode::new(252, 220)?, inner)
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn inner(&self) -> &PacCode {
        &self.inner
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn symbols_per_block(&self) -> usize {
        self.symbols_per_block
    }

    pub fn data_symbols(&self) -> usize {
        self.rs.k()
    }

    pub fn data_bits(&self) -> usize {
        self.rs.k() * 8
    }

    pub fn channel_bits(&self) -> usize {
        self.blocks * self.inner.n()
    }

    /// Exact overall rate as a fraction (data bits, channel bits).
    pub fn rate_fraction(&self) -> (u64, u64) {
        (self.data_bits() as u64, self.channel_bits() as u64)
    }

    pub fn rate(&self) -> f64 {
        self.data_bits() as f64 / self.channel_bits() as f64
    }

    /// Encode `k` data symbols into `blocks` PAC codewords. Groups
    /// `1..=k/spb` carry the data, the rest carry RS parity.
    pub fn encode(&self, data: &[u8]) -> Result<Vec<Vec<u8>>> {
        let wire = wire_of_codeword(&self.rs, &self.rs.encode(data)?);
        wire.chunks(self.symbols_per_block)
            .map(|group| self.inner.encode_systematic(&bytes_to_bits(group)))
            .collect()
    }

    /// The outer stage alone: RS-decode a wire-order estimate of the
    /// whole 252-symbol vector, with the failure fallback applied.
    pub fn outer_decode(&self, h_hat: &[u8]) -> Result<(Vec<u8>, bool)> {
        if h_hat.len() != self.rs.n() {
            return Err(Error::LengthMismatch {
                expected: self.rs.n(),
                actual: h_hat.len(),
            });
        }
        outer_decode_wire(&self.rs, h_hat)
    }

    /// Decode one frame: Fano-decode each inner block, reassemble the RS
    /// word, correct it (or fall back).
    pub fn decode(&self, frames: &[Vec<f64>], delta: f64, visit_budget: u64) -> Result<Scheme1Decode> {
        if frames.len() != self.blocks {
            return Err(Error::LengthMismatch {
                expected: self.blocks,
                actual: frames.len(),
            });
        }
        let mut stats = InnerStats::default();
        let mut h_hat = Vec::with_capacity(self.rs.n());
        for llrs in frames {
            let out = fano_decode(&self.inner, llrs, delta, visit_budget)?;
            stats.decodes += 1;
            stats.visits += out.visits;
            stats.decoded_bits += self.inner.n() as u64;
            stats.budget_exhausted += out.budget_exhausted as u64;
            let bits = self.inner.systematic_data_of_carrier(&out.carrier)?;
            h_hat.extend(bits_to_bytes(&bits));
        }
        let (data, failed) = self.outer_decode(&h_hat)?;
        stats.rs_failures += failed as u64;
        Ok(Scheme1Decode { data, stats })
    }
}

/// Scheme 2: `D` parallel RS codewords behind a depth-`D` block
/// interleaver; each column becomes one PAC block.
#[derive(Clone, Debug)]
pub struct InterleavedScheme {
    depth: usize,
    rs: RsCode,
    inner: PacCode,
    interleaver: BlockInterleaver,
}

/// Result of an interleaved-scheme frame decode.
#[derive(Clone, Debug)]
pub struct InterleavedDecode {
    /// `depth` rows of `k` estimated data symbols each.
    pub data: Vec<Vec<u8>>,
    pub stats: InnerStats,
}

impl InterleavedScheme {
    pub fn new(depth: usize, rs: RsCode, inner: PacCode) -> Result<InterleavedScheme> {
        if inner.k() != 8 * depth {
            return Err(Error::InvalidParameters(format!(
                "inner data size {} does not match 8·D = {} for depth {depth}",
                inner.k(),
                8 * depth
            )));
        }
        let interleaver = BlockInterleaver::new(depth, rs.n())?;
        Ok(InterleavedScheme {
            depth,
            rs,
            inner,
            interleaver,
        })
    }

    /// Depth-`D` stack of RS(255,223,33) rows around the given inner code.
    pub fn standard(depth: usize, inner: PacCode) -> Result<InterleavedScheme> {
        InterleavedScheme::new(depth, RsCode::new(255, 223)?, inner)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn inner(&self) -> &PacCode {
        &self.inner
    }

    pub fn columns(&self) -> usize {
        self.rs.n()
    }

    pub fn data_bits(&self) -> usize {
        self.depth * self.rs.k() * 8
    }

    pub fn channel_bits(&self) -> usize {
        self.rs.n() * self.inner.n()
    }

    pub fn rate_fraction(&self) -> (u64, u64) {
        (self.data_bits() as u64, self.channel_bits() as u64)
    }

    pub fn rate(&self) -> f64 {
        self.data_bits() as f64 / self.channel_bits() as f64
    }

    /// RS stage only: `depth` rows of `k` symbols → wire-order codeword
    /// rows of the matrix `H`.
    pub fn outer_encode(&self, data: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
        if data.len() != self.depth {
            return Err(Error::LengthMismatch {
                expected: self.depth,
                actual: data.len(),
            });
        }
        data.iter()
            .map(|row| Ok(wire_of_codeword(&self.rs, &self.rs.encode(row)?)))
            .collect()
    }

    /// Full encode: RS rows, interleave, one PAC codeword per column.
    pub fn encode(&self, data: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
        let rows = self.outer_encode(data)?;
        let columns = self.interleaver.interleave(&rows)?;
        columns
            .iter()
            .map(|col| self.inner.encode_systematic(&bytes_to_bits(col)))
            .collect()
    }

    /// RS stage of decoding: column estimates → rows → per-row decode
    /// with the per-row deinterleaver fallback. Also returns the number
    /// of failed rows.
    pub fn outer_decode(&self, columns: &[Vec<u8>]) -> Result<(Vec<Vec<u8>>, u64)> {
        let rows = self.interleaver.deinterleave(columns)?;
        let mut data = Vec::with_capacity(self.depth);
        let mut failures = 0u64;
        for row in &rows {
            let (row_data, failed) = outer_decode_wire(&self.rs, row)?;
            failures += failed as u64;
            data.push(row_data);
        }
        Ok((data, failures))
    }

    /// Decode one frame of 255 per-column LLR vectors.
    pub fn decode(
        &self,
        frames: &[Vec<f64>],
        delta: f64,
        visit_budget: u64,
    ) -> Result<InterleavedDecode> {
        if frames.len() != self.columns() {
            return Err(Error::LengthMismatch {
                expected: self.columns(),
                actual: frames.len(),
            });
        }
        let mut stats = InnerStats::default();
        let mut columns = Vec::with_capacity(self.columns());
        for llrs in frames {
            let out = fano_decode(&self.inner, llrs, delta, visit_budget)?;
            stats.decodes += 1;
            stats.visits += out.visits;
            stats.decoded_bits += self.inner.n() as u64;
            stats.budget_exhausted += out.budget_exhausted as u64;
            let bits = self.inner.systematic_data_of_carrier(&out.carrier)?;
            columns.push(bits_to_bytes(&bits));
        }
        let (data, failures) = self.outer_decode(&columns)?;
        stats.rs_failures += failures;
        Ok(InterleavedDecode { data, stats })
    }
}

/// The RS+CC baseline: the depth-8 interleaved stack with a single
/// zero-terminated convolutional block as the inner code.
#[derive(Clone, Debug)]
pub struct RsCcScheme {
    depth: usize,
    rs: RsCode,
    cc: CcSpec,
    interleaver: BlockInterleaver,
}

/// Result of an RS+CC frame decode.
#[derive(Clone, Debug)]
pub struct RsCcDecode {
    pub data: Vec<Vec<u8>>,
    /// Rows whose RS decode failed (fallback applied).
    pub rs_failures: u64,
}

impl RsCcScheme {
    pub fn new(depth: usize, rs: RsCode, cc: CcSpec) -> Result<RsCcScheme> {
        let interleaver = BlockInterleaver::new(depth, rs.n())?;
        Ok(RsCcScheme {
            depth,
            rs,
            cc,
            interleaver,
        })
    }

    /// Depth-8 RS(255,223,33) with the standard 64-state generators.
    pub fn standard() -> Result<RsCcScheme> {
        RsCcScheme::new(8, RsCode::new(255, 223)?, CcSpec::nasa())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn cc(&self) -> &CcSpec {
        &self.cc
    }

    /// Fixed trellis effort per bit: the 64 states every Viterbi step touches.
    pub fn fixed_anv(&self) -> f64 {
        STATE_COUNT as f64
    }

    pub fn serialized_bits(&self) -> usize {
        self.depth * self.rs.n() * 8
    }

    pub fn data_bits(&self) -> usize {
        self.depth * self.rs.k() * 8
    }

    /// Channel bits including the rate loss of the 6 tail bits.
    pub fn channel_bits(&self) -> usize {
        2 * (self.serialized_bits() + MEMORY)
    }

    pub fn rate_fraction(&self) -> (u64, u64) {
        (self.data_bits() as u64, self.channel_bits() as u64)
    }

    pub fn rate(&self) -> f64 {
        self.data_bits() as f64 / self.channel_bits() as f64
    }

    /// RS stage + column-major serialization to the CC input stream.
    pub fn outer_encode(&self, data: &[Vec<u8>]) -> Result<Vec<u8>> {
        if data.len() != self.depth {
            return Err(Error::LengthMismatch {
                expected: self.depth,
                actual: data.len(),
            });
        }
        let rows: Vec<Vec<u8>> = data
            .iter()
            .map(|row| Ok(wire_of_codeword(&self.rs, &self.rs.encode(row)?)))
            .collect::<Result<_>>()?;
        let columns = self.interleaver.interleave(&rows)?;
        let serial: Vec<u8> = columns.into_iter().flatten().collect();
        Ok(bytes_to_bits(&serial))
    }

    /// Inverse of [`Self::outer_encode`] with per-row RS decode and fallback.
    pub fn outer_decode(&self, stream: &[u8]) -> Result<(Vec<Vec<u8>>, u64)> {
        if stream.len() != self.serialized_bits() {
            return Err(Error::LengthMismatch {
                expected: self.serialized_bits(),
                actual: stream.len(),
            });
        }
        let serial = bits_to_bytes(stream);
        let columns: Vec<Vec<u8>> = serial.chunks(self.depth).map(|c| c.to_vec()).collect();
        let rows = self.interleaver.deinterleave(&columns)?;
        let mut data = Vec::with_capacity(self.depth);
        let mut failures = 0u64;
        for row in &rows {
            let (row_data, failed) = outer_decode_wire(&self.rs, row)?;
            failures += failed as u64;
            data.push(row_data);
        }
        Ok((data, failures))
    }

    /// Encode to one terminated CC block of `channel_bits` code bits.
    pub fn encode(&self, data: &[Vec<u8>]) -> Result<Vec<u8>> {
        Ok(self.cc.encode(&self.outer_encode(data)?))
    }

    /// Viterbi the whole block, then run the RS stage.
    pub fn decode(&self, llrs: &[f64]) -> Result<RsCcDecode> {
        if llrs.len() != self.channel_bits() {
            return Err(Error::LengthMismatch {
                expected: self.channel_bits(),
                actual: llrs.len(),
            });
        }
        let stream = viterbi_decode(&self.cc, llrs)?;
        let (data, rs_failures) = self.outer_decode(&stream)?;
        Ok(RsCcDecode { data, rs_failures })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pac::{ConvSpec, RateProfile};
    use crate::polar::LLR_SAT;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn pac_code(n: usize, k: usize) -> PacCode {
        let profile = RateProfile::reed_muller(n, k).unwrap();
        let conv = ConvSpec::from_octal("3211").unwrap();
        PacCode::new(profile, conv, vec![0.5; n]).unwrap()
    }

    fn perfect_llrs(bits: &[u8]) -> Vec<f64> {
        bits.iter()
            .map(|&b| if b == 0 { LLR_SAT } else { -LLR_SAT })
            .collect()
    }

    fn random_symbols(r: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
        (0..n).map(|_| r.random()).collect()
    }

    #[test]
    fn interleaver_small_example_and_round_trips() {
        let il = BlockInterleaver::new(2, 3).unwrap();
        let rows = vec![vec![b'a', b'b', b'c'], vec![b'd', b'e', b'f']];
        let cols = il.interleave(&rows).unwrap();
        assert_eq!(
            cols,
            vec![vec![b'a', b'd'], vec![b'b', b'e'], vec![b'c', b'f']]
        );
        assert_eq!(il.deinterleave(&cols).unwrap(), rows);

        let mut r = rng(61);
        for (rows_n, cols_n) in [(4usize, 255usize), (5, 255), (8, 255), (2, 3)] {
            let il = BlockInterleaver::new(rows_n, cols_n).unwrap();
            let rows: Vec<Vec<u8>> =
                (0..rows_n).map(|_| random_symbols(&mut r, cols_n)).collect();
            assert_eq!(il.deinterleave(&il.interleave(&rows).unwrap()).unwrap(), rows);
        }
        assert!(il.interleave(&[vec![0u8; 2]]).is_err());
        assert!(BlockInterleaver::new(0, 3).is_err());
    }

    #[test]
    fn corrupted_column_touches_one_symbol_per_row() {
        let mut r = rng(62);
        let il = BlockInterleaver::new(8, 255).unwrap();
        let rows: Vec<Vec<u8>> = (0..8).map(|_| random_symbols(&mut r, 255)).collect();
        let mut cols = il.interleave(&rows).unwrap();
        for b in cols[100].iter_mut() {
            *b ^= 0xFF;
        }
        let back = il.deinterleave(&cols).unwrap();
        for (orig, got) in rows.iter().zip(&back) {
            let diffs = orig.iter().zip(got).filter(|(a, b)| a != b).count();
            assert_eq!(diffs, 1);
        }
    }

    #[test]
    fn scheme1_layout_and_zero_data() {
        let s = Scheme1::standard(pac_code(64, 32)).unwrap();
        assert_eq!(s.blocks(), 63);
        assert_eq!(s.symbols_per_block(), 4);
        assert_eq!(s.rate_fraction(), (1760, 4032));
        // same ratio as (220/252)·(32/64)
        assert!((s.rate() - 220.0 / 252.0 * 0.5).abs() < 1e-12);

        let zero = s.encode(&vec![0u8; 220]).unwrap();
        assert_eq!(zero.len(), 63);
        assert!(zero.iter().all(|cw| cw.iter().all(|&b| b == 0)));

        // data groups first: block i < 55 carries data symbols 4i..4i+4
        let mut data = vec![0u8; 220];
        data[8] = 0xAB; // third group
        let cws = s.encode(&data).unwrap();
        let bits = s
            .inner()
            .profile()
            .data_set()
            .iter()
            .map(|&i| cws[2][i])
            .collect::<Vec<_>>();
        assert_eq!(bits_to_bytes(&bits), vec![0xAB, 0, 0, 0]);
        // parity groups 55..63 are not all zero for nonzero data
        let parity_bits: Vec<u8> = (55..63)
            .flat_map(|b| {
                s.inner()
                    .profile()
                    .data_set()
                    .iter()
                    .map(|&i| cws[b][i])
                    .collect::<Vec<_>>()
            })
            .collect();
        assert!(parity_bits.iter().any(|&b| b != 0));
    }

    #[test]
    fn scheme1_noiseless_end_to_end() {
        let s = Scheme1::standard(pac_code(64, 32)).unwrap();
        let mut r = rng(63);
        for _ in 0..100 {
            let data = random_symbols(&mut r, 220);
            let frames: Vec<Vec<f64>> = s
                .encode(&data)
                .unwrap()
                .iter()
                .map(|cw| perfect_llrs(cw))
                .collect();
            let out = s.decode(&frames, 2.0, 100_000).unwrap();
            assert_eq!(out.data, data);
            assert_eq!(out.stats.rs_failures, 0);
            assert_eq!(out.stats.anv(), 1.0);
        }
    }

    #[test]
    fn scheme1_outer_corrects_garbled_blocks() {
        let s = Scheme1::standard(pac_code(64, 32)).unwrap();
        let mut r = rng(64);
        for garbled in 1..=4usize {
            for _ in 0..25 {
                let data = random_symbols(&mut r, 220);
                let wire = wire_of_codeword(s.rs(), &s.rs().encode(&data).unwrap());
                let mut h_hat = wire.clone();
                // garble whole 4-symbol groups (what a lost inner block does)
                let mut blocks: Vec<usize> = (0..63).collect();
                blocks.shuffle(&mut r);
                for &b in blocks.iter().take(garbled) {
                    for j in 0..4 {
                        h_hat[4 * b + j] = r.random();
                    }
                }
                let (decoded, _) = s.outer_decode(&h_hat).unwrap();
                assert_eq!(decoded, data, "{garbled} garbled blocks");
            }
        }
    }

    #[test]
    fn scheme1_fallback_returns_first_220_received() {
        let s = Scheme1::standard(pac_code(64, 32)).unwrap();
        let mut r = rng(65);
        let data = random_symbols(&mut r, 220);
        let wire = wire_of_codeword(s.rs(), &s.rs().encode(&data).unwrap());
        let mut h_hat = wire.clone();
        // 20 garbled blocks ≫ t: overwhelm the RS stage
        let mut blocks: Vec<usize> = (0..63).collect();
        blocks.shuffle(&mut r);
        for &b in blocks.iter().take(20) {
            for j in 0..4 {
                h_hat[4 * b + j] ^= r.random_range(1..=255u8);
            }
        }
        let (decoded, failed) = s.outer_decode(&h_hat).unwrap();
        if failed {
            assert_eq!(decoded, h_hat[..220].to_vec());
        } else {
            // vanishingly unlikely miscorrection; still a valid codeword
            assert!(s
                .rs()
                .syndromes(&codeword_of_wire(s.rs(), &wire))
                .unwrap()
                .iter()
                .all(|x| x.is_zero()));
        }
    }

    #[test]
    fn interleaved_scheme_validates_depth_inner_pairing() {
        assert!(InterleavedScheme::standard(8, pac_code(64, 32)).is_err());
        assert!(InterleavedScheme::standard(8, pac_code(128, 64)).is_ok());
        assert!(InterleavedScheme::standard(4, pac_code(64, 32)).is_ok());
        assert!(InterleavedScheme::standard(5, pac_code(64, 40)).is_ok());
    }

    #[test]
    fn interleaved_layout_column_carries_one_byte_per_row() {
        let s = InterleavedScheme::standard(8, pac_code(128, 64)).unwrap();
        assert_eq!(s.rate_fraction(), (14272, 32640));
        let mut r = rng(66);
        let data: Vec<Vec<u8>> = (0..8).map(|_| random_symbols(&mut r, 223)).collect();
        let rows = s.outer_encode(&data).unwrap();
        let cws = s.encode(&data).unwrap();
        assert_eq!(cws.len(), 255);
        // inspect column 17: systematic bits = bytes 17 of each row
        let bits: Vec<u8> = s
            .inner()
            .profile()
            .data_set()
            .iter()
            .map(|&i| cws[17][i])
            .collect();
        let col = bits_to_bytes(&bits);
        let expect: Vec<u8> = rows.iter().map(|row| row[17]).collect();
        assert_eq!(col, expect);
    }

    #[test]
    fn interleaved_zero_data_encodes_to_zero() {
        let s = InterleavedScheme::standard(8, pac_code(128, 64)).unwrap();
        let cws = s.encode(&vec![vec![0u8; 223]; 8]).unwrap();
        assert!(cws.iter().all(|cw| cw.iter().all(|&b| b == 0)));
    }

    #[test]
    fn interleaved_noiseless_end_to_end() {
        for (depth, n, k) in [(4usize, 64usize, 32usize), (8, 128, 64)] {
            let s = InterleavedScheme::standard(depth, pac_code(n, k)).unwrap();
            let mut r = rng(67);
            for _ in 0..50 {
                let data: Vec<Vec<u8>> =
                    (0..depth).map(|_| random_symbols(&mut r, 223)).collect();
                let frames: Vec<Vec<f64>> = s
                    .encode(&data)
                    .unwrap()
                    .iter()
                    .map(|cw| perfect_llrs(cw))
                    .collect();
                let out = s.decode(&frames, 2.0, 100_000).unwrap();
                assert_eq!(out.data, data);
                assert_eq!(out.stats.rs_failures, 0);
            }
        }
    }

    #[test]
    fn interleaved_outer_corrects_any_16_corrupted_columns() {
        let s = InterleavedScheme::standard(8, pac_code(128, 64)).unwrap();
        let mut r = rng(68);
        for _ in 0..50 {
            let data: Vec<Vec<u8>> = (0..8).map(|_| random_symbols(&mut r, 223)).collect();
            let rows = s.outer_encode(&data).unwrap();
            let mut cols = s.interleaver.interleave(&rows).unwrap();
            let mut idx: Vec<usize> = (0..255).collect();
            idx.shuffle(&mut r);
            for &j in idx.iter().take(16) {
                for b in cols[j].iter_mut() {
                    *b = r.random();
                }
            }
            let (decoded, _) = s.outer_decode(&cols).unwrap();
            assert_eq!(decoded, data);
        }
    }

    #[test]
    fn interleaved_17_corrupted_columns_never_yields_garbage_shape() {
        let s = InterleavedScheme::standard(8, pac_code(128, 64)).unwrap();
        let mut r = rng(69);
        let data: Vec<Vec<u8>> = (0..8).map(|_| random_symbols(&mut r, 223)).collect();
        let rows = s.outer_encode(&data).unwrap();
        let mut cols = s.interleaver.interleave(&rows).unwrap();
        let mut idx: Vec<usize> = (0..255).collect();
        idx.shuffle(&mut r);
        for &j in idx.iter().take(17) {
            for b in cols[j].iter_mut() {
                *b ^= r.random_range(1..=255u8);
            }
        }
        // every row still yields a k-symbol estimate, by correction or fallback
        let (decoded, _failures) = s.outer_decode(&cols).unwrap();
        assert_eq!(decoded.len(), 8);
        assert!(decoded.iter().all(|row| row.len() == 223));
    }

    #[test]
    fn rs_cc_round_trip_and_burst_correction() {
        let s = RsCcScheme::standard().unwrap();
        assert_eq!(s.serialized_bits(), 16320);
        assert_eq!(s.channel_bits(), 32652);
        let mut r = rng(70);
        let data: Vec<Vec<u8>> = (0..8).map(|_| random_symbols(&mut r, 223)).collect();

        // zero data → zero stream
        let zero = s.encode(&vec![vec![0u8; 223]; 8]).unwrap();
        assert!(zero.iter().all(|&b| b == 0));

        // noiseless end to end
        for _ in 0..100 {
            let data: Vec<Vec<u8>> = (0..8).map(|_| random_symbols(&mut r, 223)).collect();
            let code = s.encode(&data).unwrap();
            let llrs: Vec<f64> = code
                .iter()
                .map(|&b| if b == 0 { 30.0 } else { -30.0 })
                .collect();
            let out = s.decode(&llrs).unwrap();
            assert_eq!(out.data, data);
            assert_eq!(out.rs_failures, 0);
        }

        // a ≤64-bit burst on the serialized stream covers ≤ 9 consecutive
        // columns, hence ≤ 9 symbol errors per RS row: always corrected
        for _ in 0..10 {
            let mut stream = s.outer_encode(&data).unwrap();
            let start = r.random_range(0..stream.len() - 64);
            for b in stream[start..start + 64].iter_mut() {
                *b ^= 1;
            }
            let (decoded, _) = s.outer_decode(&stream).unwrap();
            assert_eq!(decoded, data);
        }
    }
}
