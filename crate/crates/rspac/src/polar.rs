//! The polar transform `F^⊗n` and the successive-cancellation LLR demapper.
//!
//! The demapper produces, one index at a time, the LLR of polar input bit
//! `u_i` given the channel output and the committed prefix `u^{i−1}`,
//! using exact log-domain check-node combining (not min-sum). It supports
//! rewinding to an earlier index, which the Fano decoder uses for
//! backtracking.

use crate::error::{Error, Result};

/// Channel LLR magnitudes are clamped here; beyond ±40 the bit posterior
/// is already 0/1 at double precision, and the clamp keeps every
/// downstream metric finite.
pub const LLR_SAT: f64 = 40.0;

/// In-place polar transform `x = u·F^⊗n` over GF(2), `F = [[1,0],[1,1]]`.
/// Self-inverse, `N log N` butterfly operations.
pub fn polar_transform(bits: &mut [u8]) -> Result<()> {
    let n = bits.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidParameters(format!(
            "polar transform length {n} is not a power of two"
        )));
    }
    let mut bs = n;
    while bs > 1 {
        let half = bs / 2;
        for block in (0..n).step_by(bs) {
            for j in block..block + half {
                bits[j] ^= bits[j + half];
            }
        }
        bs = half;
    }
    Ok(())
}

/// Exact check-node (boxplus) combine:
/// `log((1 + e^{a+b}) / (e^a + e^b))`, evaluated stably.
#[inline]
pub fn f_combine(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    let same_sign = (a >= 0.0) == (b >= 0.0);
    let head = if same_sign { m } else { -m };
    head + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// Variable-node combine: `b + (1 − 2u)·a` for the committed bit `u`.
#[inline]
pub fn g_combine(a: f64, b: f64, u: u8) -> f64 {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

/// Successive-cancellation demapper state for one frame.
///
/// Per-depth LLR and partial-sum arrays are full width, so every tree node
/// owns a disjoint segment (`O(N log N)` memory). A node's values depend
/// only on the channel LLRs and on partial sums of subtrees that finish
/// *before* it starts, which is what makes [`Demapper::rewind`] a plain
/// truncation of the decision prefix: anything stale is rewritten before
/// it can be read again.
pub struct Demapper {
    levels: usize,
    size: usize,
    llr: Vec<f64>,
    ps: Vec<u8>,
    decided: Vec<u8>,
}

impl Demapper {
    /// `channel_llrs.len()` must be a power of two. Inputs are clamped to
    /// ±[`LLR_SAT`].
    pub fn new(channel_llrs: &[f64]) -> Result<Demapper> {
        let size = channel_llrs.len();
        if size == 0 || !size.is_power_of_two() {
            return Err(Error::InvalidParameters(format!(
                "demapper length {size} is not a power of two"
            )));
        }
        let levels = size.trailing_zeros() as usize;
        let mut llr = vec![0.0; (levels + 1) * size];
        for (dst, &src) in llr[..size].iter_mut().zip(channel_llrs) {
            *dst = src.clamp(-LLR_SAT, LLR_SAT);
        }
        Ok(Demapper {
            levels,
            size,
            llr,
            ps: vec![0; (levels + 1) * size],
            decided: Vec::with_capacity(size),
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Index of the next undecided bit.
    pub fn frontier(&self) -> usize {
        self.decided.len()
    }

    /// LLR of `u_i` given the channel output and the committed prefix.
    /// `i` must be the current frontier.
    pub fn next_llr(&mut self, i: usize) -> Result<f64> {
        if i != self.decided.len() || i >= self.size {
            return Err(Error::OutOfOrder(format!(
                "next_llr({i}) at frontier {}",
                self.decided.len()
            )));
        }
        let n = self.levels;
        let size = self.size;
        let tz = if i == 0 {
            n
        } else {
            (i.trailing_zeros() as usize).min(n)
        };
        let start_depth = n - tz;
        for d in start_depth.max(1)..=n {
            let len = size >> d;
            let node = i >> (n - d);
            let lo = node * len;
            if d == start_depth {
                // entering a right child: g-combine with the left
                // sibling's partial sums
                let plo = lo - len;
                for j in 0..len {
                    let a = self.llr[(d - 1) * size + plo + j];
                    let b = self.llr[(d - 1) * size + plo + len + j];
                    let u = self.ps[d * size + plo + j];
                    self.llr[d * size + lo + j] = g_combine(a, b, u);
                }
            } else {
                // entering a left child: f-combine
                for j in 0..len {
                    let a = self.llr[(d - 1) * size + lo + j];
                    let b = self.llr[(d - 1) * size + lo + len + j];
                    self.llr[d * size + lo + j] = f_combine(a, b);
                }
            }
        }
        Ok(self.llr[n * size + i])
    }

    /// Commit the decision for bit `i` (must be the frontier) and update
    /// the partial sums of every subtree this completes.
    pub fn commit(&mut self, i: usize, bit: u8) -> Result<()> {
        if i != self.decided.len() || i >= self.size {
            return Err(Error::OutOfOrder(format!(
                "commit({i}) at frontier {}",
                self.decided.len()
            )));
        }
        self.decided.push(bit & 1);
        let n = self.levels;
        let size = self.size;
        self.ps[n * size + i] = bit & 1;
        let mut d = n;
        let mut idx = i;
        while d > 0 && idx & 1 == 1 {
            let len = size >> d;
            let right_lo = idx * len;
            let left_lo = right_lo - len;
            for j in 0..len {
                let l = self.ps[d * size + left_lo + j];
                let r = self.ps[d * size + right_lo + j];
                self.ps[(d - 1) * size + left_lo + j] = l ^ r;
                self.ps[(d - 1) * size + left_lo + len + j] = r;
            }
            idx >>= 1;
            d -= 1;
        }
        Ok(())
    }

    /// Forget decisions from `to_index` on; the state becomes
    /// observationally identical to the moment just before bit `to_index`
    /// was committed.
    pub fn rewind(&mut self, to_index: usize) -> Result<()> {
        if to_index > self.decided.len() {
            return Err(Error::OutOfOrder(format!(
                "rewind({to_index}) beyond frontier {}",
                self.decided.len()
            )));
        }
        self.decided.truncate(to_index);
        Ok(())
    }

    /// Decisions committed so far.
    pub fn decided(&self) -> &[u8] {
        &self.decided
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Explicit Kronecker power F^⊗n as a row-major bit matrix.
    fn kron_power(n: usize) -> Vec<Vec<u8>> {
        let mut m = vec![vec![1u8]];
        for _ in 0..n {
            let sz = m.len();
            let mut next = vec![vec![0u8; 2 * sz]; 2 * sz];
            for r in 0..sz {
                for c in 0..sz {
                    let v = m[r][c];
                    next[r][c] = v; // top-left A
                    next[r + sz][c] = v; // bottom-left A
                    next[r + sz][c + sz] = v; // bottom-right A
                }
            }
            m = next;
        }
        m
    }

    fn matmul_gf2(u: &[u8], m: &[Vec<u8>]) -> Vec<u8> {
        let cols = m[0].len();
        (0..cols)
            .map(|c| {
                u.iter()
                    .enumerate()
                    .fold(0u8, |acc, (r, &ub)| acc ^ (ub & m[r][c]))
            })
            .collect()
    }

    #[test]
    fn transform_small_examples() {
        let mut u = vec![1, 0];
        polar_transform(&mut u).unwrap();
        assert_eq!(u, vec![1, 0]);
        let mut u = vec![1, 1];
        polar_transform(&mut u).unwrap();
        assert_eq!(u, vec![0, 1]);
        assert!(polar_transform(&mut [0, 1, 0]).is_err());
        assert!(polar_transform(&mut []).is_err());
    }

    #[test]
    fn transform_matches_kronecker_matrix() {
        for n in 0..=4usize {
            let size = 1 << n;
            let m = kron_power(n);
            for word in 0..(1u32 << size) {
                let u: Vec<u8> = (0..size).map(|i| ((word >> i) & 1) as u8).collect();
                let mut t = u.clone();
                polar_transform(&mut t).unwrap();
                assert_eq!(t, matmul_gf2(&u, &m), "N={size} word={word:#x}");
            }
        }
    }

    #[test]
    fn transform_is_involution() {
        for n in [1usize, 2, 3, 4] {
            let size = 1 << n;
            for word in 0..(1u32 << size) {
                let u: Vec<u8> = (0..size).map(|i| ((word >> i) & 1) as u8).collect();
                let mut t = u.clone();
                polar_transform(&mut t).unwrap();
                polar_transform(&mut t).unwrap();
                assert_eq!(t, u);
            }
        }
        let mut r = rng(11);
        for size in [64usize, 128, 256] {
            for _ in 0..1000 {
                let u: Vec<u8> = (0..size).map(|_| r.random_range(0..2u8)).collect();
                let mut t = u.clone();
                polar_transform(&mut t).unwrap();
                polar_transform(&mut t).unwrap();
                assert_eq!(t, u);
            }
        }
    }

    /// Brute-force bit posterior: enumerate all inputs, weight by the
    /// channel likelihood of their codewords.
    fn bruteforce_llr(channel_llrs: &[f64], prefix: &[u8], i: usize) -> f64 {
        let size = channel_llrs.len();
        let mut w = [0f64; 2];
        for word in 0..(1u32 << size) {
            let u: Vec<u8> = (0..size).map(|b| ((word >> b) & 1) as u8).collect();
            if u[..prefix.len()] != *prefix {
                continue;
            }
            let mut x = u.clone();
            polar_transform(&mut x).unwrap();
            let loglik: f64 = x
                .iter()
                .zip(channel_llrs)
                .map(|(&xb, &l)| if xb == 0 { l / 2.0 } else { -l / 2.0 })
                .sum();
            w[u[i] as usize] += loglik.exp();
        }
        (w[0] / w[1]).ln()
    }

    #[test]
    fn base_cases() {
        let mut d = Demapper::new(&[1.25]).unwrap();
        assert_eq!(d.next_llr(0).unwrap(), 1.25);

        // all-zero channel LLRs: every bit LLR is 0 by symmetry
        let mut d = Demapper::new(&[0.0; 8]).unwrap();
        for i in 0..8 {
            assert_eq!(d.next_llr(i).unwrap(), 0.0);
            d.commit(i, 0).unwrap();
        }
    }

    #[test]
    fn n2_matches_closed_forms() {
        let (l1, l2) = (0.83, -1.7);
        for u1 in [0u8, 1] {
            let mut d = Demapper::new(&[l1, l2]).unwrap();
            let first = d.next_llr(0).unwrap();
            assert!((first - f_combine(l1, l2)).abs() < 1e-12);
            let oracle = bruteforce_llr(&[l1, l2], &[], 0);
            assert!((first - oracle).abs() < 1e-9 * oracle.abs().max(1.0));

            d.commit(0, u1).unwrap();
            let second = d.next_llr(1).unwrap();
            let expect = l2 + (1.0 - 2.0 * u1 as f64) * l1;
            assert!((second - expect).abs() < 1e-12);
            let oracle = bruteforce_llr(&[l1, l2], &[u1], 1);
            assert!((second - oracle).abs() < 1e-9 * oracle.abs().max(1.0));
        }
    }

    #[test]
    fn exact_posteriors_for_small_sizes() {
        let mut r = rng(12);
        for size in [2usize, 4] {
            for _ in 0..20 {
                let llrs: Vec<f64> = (0..size).map(|_| r.random_range(-6.0..6.0)).collect();
                // walk every possible decision path
                for path in 0..(1u32 << size) {
                    let mut d = Demapper::new(&llrs).unwrap();
                    for i in 0..size {
                        let got = d.next_llr(i).unwrap();
                        let want = bruteforce_llr(&llrs, d.decided(), i);
                        let tol = 1e-9 * want.abs().max(1.0);
                        assert!(
                            (got - want).abs() < tol,
                            "N={size} path={path:#x} bit {i}: {got} vs {want}"
                        );
                        d.commit(i, ((path >> i) & 1) as u8).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn noiseless_channel_gives_consistent_signs() {
        let mut r = rng(13);
        for size in [8usize, 64] {
            let u: Vec<u8> = (0..size).map(|_| r.random_range(0..2u8)).collect();
            let mut x = u.clone();
            polar_transform(&mut x).unwrap();
            let llrs: Vec<f64> = x
                .iter()
                .map(|&b| if b == 0 { LLR_SAT } else { -LLR_SAT })
                .collect();
            let mut d = Demapper::new(&llrs).unwrap();
            for (i, &bit) in u.iter().enumerate() {
                let l = d.next_llr(i).unwrap();
                assert!(
                    if bit == 0 { l > 0.0 } else { l < 0.0 },
                    "bit {i} of {size}: llr {l} vs true {bit}"
                );
                d.commit(i, bit).unwrap();
            }
        }
    }

    #[test]
    fn commit_rewind_commit_replays_exactly() {
        let mut r = rng(14);
        for _ in 0..30 {
            let size = 32usize;
            let llrs: Vec<f64> = (0..size).map(|_| r.random_range(-8.0..8.0)).collect();
            let mut d = Demapper::new(&llrs).unwrap();
            let mut committed: Vec<u8> = Vec::new();
            for _step in 0..300 {
                let back = !committed.is_empty() && r.random_bool(0.35);
                if back {
                    let to = r.random_range(0..=committed.len() - 1);
                    d.rewind(to).unwrap();
                    committed.truncate(to);
                } else if committed.len() < size {
                    let i = committed.len();
                    let got = d.next_llr(i).unwrap();
                    // straight-line replay from scratch must agree bit-exactly
                    let mut fresh = Demapper::new(&llrs).unwrap();
                    for (j, &b) in committed.iter().enumerate() {
                        fresh.next_llr(j).unwrap();
                        fresh.commit(j, b).unwrap();
                    }
                    let want = fresh.next_llr(i).unwrap();
                    assert_eq!(got.to_bits(), want.to_bits(), "bit {i} after interleaving");
                    let bit = r.random_range(0..2u8);
                    d.commit(i, bit).unwrap();
                    committed.push(bit);
                }
            }
        }
    }

    #[test]
    fn rewind_to_frontier_is_noop_and_bounds_checked() {
        let mut d = Demapper::new(&[1.0, -1.0, 0.5, 2.0]).unwrap();
        d.next_llr(0).unwrap();
        d.commit(0, 1).unwrap();
        d.rewind(1).unwrap(); // no-op
        assert_eq!(d.frontier(), 1);
        assert!(d.rewind(5).is_err());
    }

    #[test]
    fn out_of_order_access_is_rejected() {
        let mut d = Demapper::new(&[1.0, -1.0]).unwrap();
        assert!(d.next_llr(1).is_err());
        assert!(d.commit(1, 0).is_err());
        d.next_llr(0).unwrap();
        d.commit(0, 0).unwrap();
        assert!(d.next_llr(0).is_err());
        assert!(d.next_llr(2).is_err());
    }
}
