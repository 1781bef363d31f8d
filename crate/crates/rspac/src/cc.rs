//! The rate-1/2, 64-state convolutional code of the classic RS+CC
//! concatenation, with soft-decision Viterbi decoding.
//!
//! Generators: `g₁(x) = 1 + x + x³ + x⁴ + x⁶` and
//! `g₂(x) = 1 + x³ + x⁴ + x⁵ + x⁶` (octal 133/171 in the LSB-first
//! register convention used here). Blocks are zero-tail terminated: six
//! flush bits return the encoder to state 0, and the decoder's traceback
//! starts there, so the decoded path always ends in the zero state.

use crate::error::{Error, Result};

/// Constraint length 7: state holds the previous 6 input bits.
pub const CONSTRAINT: usize = 7;
pub const MEMORY: usize = CONSTRAINT - 1;
pub const STATE_COUNT: usize = 1 << MEMORY;

/// Tap vectors `(g_0, …, g_6)` of the two output polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcSpec {
    g1: [u8; CONSTRAINT],
    g2: [u8; CONSTRAINT],
    g1_mask: u8,
    g2_mask: u8,
}

impl CcSpec {
    /// The standard pair used by the RS+CC baseline.
    pub fn nasa() -> CcSpec {
        CcSpec::new([1, 1, 0, 1, 1, 0, 1], [1, 0, 0, 1, 1, 1, 1])
            .expect("standard generators are valid")
    }

    /// Both generators must have the delay-free tap and the degree-6 tap
    /// set, so the code has full constraint length and no latency.
    pub fn new(g1: [u8; CONSTRAINT], g2: [u8; CONSTRAINT]) -> Result<CcSpec> {
        for g in [&g1, &g2] {
            if g[0] != 1 || g[CONSTRAINT - 1] != 1 {
                return Err(Error::InvalidParameters(
                    "CC generators need taps 0 and 6 set".into(),
                ));
            }
        }
        let mask = |g: &[u8; CONSTRAINT]| {
            g.iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b & 1) << i))
        };
        Ok(CcSpec {
            g1,
            g2,
            g1_mask: mask(&g1),
            g2_mask: mask(&g2),
        })
    }

    pub fn g1(&self) -> &[u8; CONSTRAINT] {
        &self.g1
    }

    pub fn g2(&self) -> &[u8; CONSTRAINT] {
        &self.g2
    }

    /// Output pair for register contents `reg` (bit `j` = input `j` steps
    /// ago, bit 0 = current input).
    #[inline]
    fn outputs(&self, reg: u8) -> (u8, u8) {
        (
            ((reg & self.g1_mask).count_ones() & 1) as u8,
            ((reg & self.g2_mask).count_ones() & 1) as u8,
        )
    }

    /// Encode `info` followed by six zero tail bits; emits interleaved
    /// `(g₁, g₂)` output pairs, `2·(len + 6)` bits total.
    pub fn encode(&self, info: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * (info.len() + MEMORY));
        let mut state = 0u8; // previous 6 bits, most recent at bit 0
        for &bit in info.iter().chain(std::iter::repeat_n(&0u8, MEMORY)) {
            let reg = (state << 1) | (bit & 1);
            let (o1, o2) = self.outputs(reg);
            out.push(o1);
            out.push(o2);
            state = reg & (STATE_COUNT as u8 - 1);
        }
        out
    }
}

/// Soft-decision Viterbi over the zero-terminated trellis. `llrs` holds
/// one LLR per code bit (positive favors 0), two per trellis step; the
/// decoder maximizes `Σ (1 − 2·codebit)·llr/2` and returns the
/// maximum-likelihood info bits (tail excluded). Metric ties keep the
/// path arriving from the lower-numbered predecessor state.
pub fn viterbi_decode(spec: &CcSpec, llrs: &[f64]) -> Result<Vec<u8>> {
    if !llrs.len().is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "Viterbi needs an even LLR count, got {}",
            llrs.len()
        )));
    }
    let steps = llrs.len() / 2;
    if steps < MEMORY {
        return Err(Error::InvalidParameters(format!(
            "block of {steps} steps is shorter than the {MEMORY}-bit tail"
        )));
    }

    // branch metric of emitting (o1, o2) under (l1, l2)
    let branch = |o1: u8, o2: u8, l1: f64, l2: f64| {
        let m1 = if o1 == 0 { l1 } else { -l1 };
        let m2 = if o2 == 0 { l2 } else { -l2 };
        (m1 + m2) / 2.0
    };

    const NEG: f64 = f64::NEG_INFINITY;
    let mut metrics = [NEG; STATE_COUNT];
    metrics[0] = 0.0; // encoder starts flushed
    let mut decisions: Vec<u64> = Vec::with_capacity(steps);

    for step in 0..steps {
        let (l1, l2) = (llrs[2 * step], llrs[2 * step + 1]);
        let mut next = [NEG; STATE_COUNT];
        let mut dec: u64 = 0;
        #[allow(clippy::needless_range_loop)] // state index drives the arithmetic
        for s in 0..STATE_COUNT {
            let bit = (s & 1) as u8;
            let pred0 = s >> 1; // previous state with oldest bit 0
            let pred1 = (s >> 1) | (STATE_COUNT >> 1); // oldest bit 1
            // register = current bit + the 6 bits of the predecessor
            let m = |pred: usize| {
                let reg = ((pred as u8) << 1) | bit;
                let (o1, o2) = spec.outputs(reg);
                metrics[pred] + branch(o1, o2, l1, l2)
            };
            let m0 = m(pred0);
            let m1 = m(pred1);
            // strict '>' keeps the lower-numbered predecessor on ties
            if m1 > m0 {
                next[s] = m1;
                dec |= 1 << s;
            } else {
                next[s] = m0;
            }
        }
        metrics = next;
        decisions.push(dec);
    }

    // terminated block: trace back from state 0
    let mut state = 0usize;
    let mut path = vec![0u8; steps];
    for step in (0..steps).rev() {
        let oldest = ((decisions[step] >> state) & 1) as usize;
        path[step] = (state & 1) as u8;
        state = (state >> 1) | (oldest << (MEMORY - 1));
    }
    path.truncate(steps - MEMORY);
    Ok(path)
}
