//! Fano sequential decoding over the PAC code tree, with node-visit
//! accounting.
//!
//! The path metric after `i` branches is
//! `Γ(u^i) = log₂(P(y|u^i)/P(y)) − Σ_{j≤i} E0(1, W_N^(j))`,
//! accumulated branch by branch. With uniform inputs,
//! `P(y|u^j)/P(y|u^{j−1}) = 2·P(u_j | y, u^{j−1})`, and the
//! successive-cancellation LLR `L_j` of bit `u_j` gives
//! `P(u_j | y, u^{j−1}) = 1/(1 + e^{−(1−2u_j)L_j})`, so each branch
//! contributes
//!
//! `γ_j = 1 − log₂(1 + e^{−(1−2u_j)L_j}) − E0(1, W_N^(j))`.
//!
//! On a channel better than its cutoff rate the increment drifts positive
//! along the correct path and negative elsewhere, which is what lets the
//! threshold tests prune the tree.

use crate::error::{Error, Result};
use crate::polar::Demapper;

use super::PacCode;

/// Default threshold step Δ, in bits.
pub const DEFAULT_DELTA: f64 = 2.0;

/// Default per-frame cap on node visits.
pub const DEFAULT_VISIT_BUDGET: u64 = 1_000_000;

/// Outcome of one Fano decoding session.
#[derive(Clone, Debug)]
pub struct FanoResult {
    /// Estimated carrier word `v̂` (zeros at frozen indices). When the
    /// visit budget ran out this is the best-effort path, zero-padded.
    pub carrier: Vec<u8>,
    /// Total node arrivals (forward moves).
    pub visits: u64,
    /// `visits / N`: the average number of times each bit was visited.
    pub anv: f64,
    /// True when the search stopped on the visit budget rather than by
    /// reaching the end of the tree.
    pub budget_exhausted: bool,
}

/// `log₂(1 + e^t)`, stable for any `t`.
#[inline]
fn log2_1p_exp(t: f64) -> f64 {
    if t > 0.0 {
        (t + (-t).exp().ln_1p()) * std::f64::consts::LOG2_E
    } else {
        t.exp().ln_1p() * std::f64::consts::LOG2_E
    }
}

/// Per-branch metric increment for hypothesis `bit` on a branch whose
/// demapper LLR is `llr` and whose bit-channel bias is `bias`.
#[inline]
pub fn fano_metric_increment(llr: f64, bit: u8, bias: f64) -> f64 {
    let signed = if bit == 0 { -llr } else { llr };
    1.0 - log2_1p_exp(signed) - bias
}

/// One tree node: the branch hypotheses at the current depth in
/// preference order (frozen indices have a single all-zero branch).
struct NodeState {
    v_bits: [u8; 2],
    u_bits: [u8; 2],
    increments: [f64; 2],
    count: u8,
    /// Branch currently under consideration; advanced when the search
    /// retreats into this node, reset when the threshold is lowered here.
    rank: u8,
}

fn expand(code: &PacCode, demapper: &mut Demapper, vpath: &[u8], depth: usize) -> Result<NodeState> {
    let llr = demapper.next_llr(depth)?;
    let bias = code.biases()[depth];
    let fb = code.conv().feedback(vpath, depth);
    if code.profile().is_data(depth) {
        let m0 = fano_metric_increment(llr, fb, bias);
        let m1 = fano_metric_increment(llr, fb ^ 1, bias);
        // ties explore bit 0 first
        if m1 > m0 {
            Ok(NodeState {
                v_bits: [1, 0],
                u_bits: [fb ^ 1, fb],
                increments: [m1, m0],
                count: 2,
                rank: 0,
            })
        } else {
            Ok(NodeState {
                v_bits: [0, 1],
                u_bits: [fb, fb ^ 1],
                increments: [m0, m1],
                count: 2,
                rank: 0,
            })
        }
    } else {
        Ok(NodeState {
            v_bits: [0, 0],
            u_bits: [fb, fb],
            increments: [fano_metric_increment(llr, fb, bias), 0.0],
            count: 1,
            rank: 0,
        })
    }
}

/// Classic Fano search over the PAC tree. Threshold starts at zero,
/// tightens in steps of `delta` on first visits, and loosens when neither
/// a forward nor a backward move stays above it. Every forward move is
/// one visit; `visit_budget` caps them.
pub fn fano_decode(
    code: &PacCode,
    channel_llrs: &[f64],
    delta: f64,
    visit_budget: u64,
) -> Result<FanoResult> {
    let n = code.n();
    if channel_llrs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: channel_llrs.len(),
        });
    }
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "Fano step delta = {delta} must be positive"
        )));
    }
    if visit_budget == 0 {
        return Err(Error::InvalidParameters(
            "visit budget must be positive".into(),
        ));
    }

    let mut demapper = Demapper::new(channel_llrs)?;
    let mut vpath: Vec<u8> = Vec::with_capacity(n);
    let mut gammas: Vec<f64> = Vec::with_capacity(n + 1);
    gammas.push(0.0);
    let mut stack: Vec<NodeState> = Vec::with_capacity(n + 1);
    stack.push(expand(code, &mut demapper, &vpath, 0)?);
    let mut threshold = 0.0f64;
    let mut visits: u64 = 0;
    let mut exhausted = false;

    loop {
        let depth = vpath.len();
        let node = stack.last().unwrap();
        let candidate = if node.rank < node.count {
            gammas[depth] + node.increments[node.rank as usize]
        } else {
            f64::NEG_INFINITY
        };

        if candidate >= threshold {
            // forward move
            let rank = node.rank as usize;
            let (v_bit, u_bit) = (node.v_bits[rank], node.u_bits[rank]);
            demapper.commit(depth, u_bit)?;
            vpath.push(v_bit);
            visits += 1;
            let came_from = gammas[depth];
            gammas.push(candidate);
            if came_from < threshold + delta {
                // first visit: tighten as far as the new metric allows
                while candidate >= threshold + delta {
                    threshold += delta;
                }
            }
            if vpath.len() == n {
                break;
            }
            if visits >= visit_budget {
                exhausted = true;
                break;
            }
            stack.push(expand(code, &mut demapper, &vpath, depth + 1)?);
            continue;
        }

        let behind = if depth == 0 {
            f64::NEG_INFINITY
        } else {
            gammas[depth - 1]
        };
        if behind >= threshold {
            // backward move; consider the parent's next-best branch
            vpath.pop();
            gammas.pop();
            stack.pop();
            demapper.rewind(vpath.len())?;
            stack.last_mut().unwrap().rank += 1;
        } else {
            // stuck: loosen and re-examine from the best branch
            threshold -= delta;
            stack.last_mut().unwrap().rank = 0;
        }
    }

    let mut carrier = vpath;
    carrier.resize(n, 0);
    Ok(FanoResult {
        carrier,
        visits,
        anv: visits as f64 / n as f64,
        budget_exhausted: exhausted,
    })
}
