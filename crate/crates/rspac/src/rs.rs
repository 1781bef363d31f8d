//! Systematic Reed-Solomon encoding and full algebraic decoding over GF(2^8).
//!
//! The decoder runs the classic pipeline — syndromes, Berlekamp-Massey,
//! Chien search, Forney — and reports an explicit [`RsDecodeOutcome`]:
//! either the corrected codeword or a decoding failure. It never returns a
//! word that fails the post-correction syndrome recheck, though with more
//! than `t` symbol errors it may still miscorrect to a *different valid*
//! codeword, as any bounded-distance decoder can.
//!
//! Shortened codes are handled by the zero-prefix convention: an `(n, k)`
//! code with `n < 255` is the `(n + s, k + s)` mother code (with
//! `n + s = 255`) whose first `s` message symbols are pinned to zero and
//! not transmitted.

use crate::error::{Error, Result};
use crate::gf256::{alpha_pow, Gf, GfPoly};

/// Generator polynomial `g(x) = (x − α)(x − α²)⋯(x − α^{2t})`:
/// monic, degree `2t`, roots exactly the first `2t` powers of α.
pub fn generator_poly(t: usize) -> Result<GfPoly> {
    if t == 0 || t > 127 {
        return Err(Error::InvalidParameters(format!(
            "correction capability t={t} outside 1..=127"
        )));
    }
    let mut g = GfPoly::one();
    for j in 1..=(2 * t) as i64 {
        g = g.mul(&GfPoly::from_coeffs(vec![alpha_pow(j), Gf::ONE]));
    }
    Ok(g)
}

/// Parameters of an `(n, k, d_min)` RS code, possibly shortened.
///
/// Codewords are coefficient vectors of `h(x) = m(x)·x^{n−k} + P(x)`:
/// index `i` is the coefficient of `x^i`, so the parity occupies indices
/// `0..n−k` and the message occupies `n−k..n` in order.
#[derive(Clone, Debug)]
pub struct RsCode {
    n: usize,
    k: usize,
    t: usize,
    d_min: usize,
    shorten_by: usize,
    generator: GfPoly,
}

/// Result of an RS decode attempt. Failure carries the received word
/// unchanged so callers can fall back to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RsDecodeOutcome {
    Corrected { codeword: Vec<u8>, error_count: usize },
    Failure { received: Vec<u8> },
}

impl RsDecodeOutcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, RsDecodeOutcome::Failure { .. })
    }
}

impl RsCode {
    /// Build an `(n, k)` code; `n < 255` yields the shortened form of the
    /// `(255, k + 255 − n)` mother code.
    pub fn new(n: usize, k: usize) -> Result<RsCode> {
        if n > 255 || k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "invalid RS dimensions ({n}, {k})"
            )));
        }
        if !(n - k).is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!(
                "RS parity count n−k = {} must be even",
                n - k
            )));
        }
        let t = (n - k) / 2;
        let shorten_by = 255 - n;
        Ok(RsCode {
            n,
            k,
            t,
            d_min: n - k + 1,
            shorten_by,
            generator: generator_poly(t)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Symbol-error correction capability `t = ⌊(d_min − 1)/2⌋`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Minimum distance; MDS, so `d_min = n − k + 1`.
    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn shorten_by(&self) -> usize {
        self.shorten_by
    }

    pub fn generator(&self) -> &GfPoly {
        &self.generator
    }

    fn mother_n(&self) -> usize {
        self.n + self.shorten_by
    }

    /// Insert the virtual zero symbols between parity and message,
    /// producing a mother-code-length coefficient vector.
    fn extend(&self, word: &[u8]) -> Vec<Gf> {
        let parity_len = self.n - self.k;
        let mut ext = Vec::with_capacity(self.mother_n());
        ext.extend(word[..parity_len].iter().map(|&b| Gf(b)));
        ext.extend(std::iter::repeat_n(Gf::ZERO, self.shorten_by));
        ext.extend(word[parity_len..].iter().map(|&b| Gf(b)));
        ext
    }

    fn strip(&self, ext: &[Gf]) -> Vec<u8> {
        let parity_len = self.n - self.k;
        let mut word = Vec::with_capacity(self.n);
        word.extend(ext[..parity_len].iter().map(|c| c.0));
        word.extend(ext[parity_len + self.shorten_by..].iter().map(|c| c.0));
        word
    }

    /// Systematic encode: the output's last `k` symbols are `msg`, the
    /// first `n − k` are the parity `P(x) = m(x)·x^{n−k} mod g(x)`.
    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: msg.len(),
            });
        }
        let parity_len = self.n - self.k;
        // Zero-prefix the message to mother length, then divide.
        let mut coeffs = vec![Gf::ZERO; parity_len + self.shorten_by];
        coeffs.extend(msg.iter().map(|&b| Gf(b)));
        let (_, parity) = GfPoly::from_coeffs(coeffs).divmod(&self.generator)?;
        let mut cw = Vec::with_capacity(self.n);
        for i in 0..parity_len {
            cw.push(parity.coeff(i).0);
        }
        cw.extend_from_slice(msg);
        Ok(cw)
    }

    /// The `2t` syndromes `S_j = r(α^j)`, `j = 1..2t`, of a received word.
    /// All zero exactly when the word is a codeword.
    pub fn syndromes(&self, received: &[u8]) -> Result<Vec<Gf>> {
        if received.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: received.len(),
            });
        }
        Ok(syndromes_of(&self.extend(received), self.t))
    }

    /// Message portion of a codeword (the systematic symbols).
    pub fn message_of<'a>(&self, codeword: &'a [u8]) -> &'a [u8] {
        &codeword[self.n - self.k..]
    }

    /// Full algebraic decode. With at most `t` symbol errors this always
    /// returns the transmitted codeword; otherwise it returns `Failure`
    /// or, unavoidably, some other valid codeword.
    pub fn decode(&self, received: &[u8]) -> Result<RsDecodeOutcome> {
        if received.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: received.len(),
            });
        }
        let mut ext = self.extend(received);
        let synd = syndromes_of(&ext, self.t);
        if synd.iter().all(|s| s.is_zero()) {
            return Ok(RsDecodeOutcome::Corrected {
                codeword: received.to_vec(),
                error_count: 0,
            });
        }

        let fail = || RsDecodeOutcome::Failure {
            received: received.to_vec(),
        };

        let lambda = berlekamp_massey(&synd);
        let deg = lambda.degree().unwrap_or(0);
        if deg == 0 || deg > self.t {
            return Ok(fail());
        }
        let positions = chien_search(&lambda, self.mother_n());
        if positions.len() != deg {
            return Ok(fail());
        }
        let Some(values) = forney(&synd, &lambda, &positions) else {
            return Ok(fail());
        };

        let parity_len = self.n - self.k;
        for (&pos, &val) in positions.iter().zip(values.iter()) {
            // A located error in a virtual (never transmitted) symbol
            // means the error pattern was inconsistent with shortening.
            if pos >= parity_len && pos < parity_len + self.shorten_by {
                return Ok(fail());
            }
            ext[pos] += val;
        }
        if syndromes_of(&ext, self.t).iter().any(|s| !s.is_zero()) {
            return Ok(fail());
        }
        Ok(RsDecodeOutcome::Corrected {
            codeword: self.strip(&ext),
            error_count: positions.len(),
        })
    }
}

fn syndromes_of(ext: &[Gf], t: usize) -> Vec<Gf> {
    (1..=(2 * t) as i64)
        .map(|j| {
            let x = alpha_pow(j);
            ext.iter().rev().fold(Gf::ZERO, |acc, &c| acc * x + c)
        })
        .collect()
}

/// Berlekamp-Massey: the minimal LFSR whose taps reproduce the syndrome
/// sequence, i.e. the error-locator `Λ(x)` with `Λ(0) = 1` whose roots are
/// the reciprocals of the error locations. A locator of degree above `t`
/// is returned as-is; the caller's consistency checks reject it.
pub fn berlekamp_massey(syndromes: &[Gf]) -> GfPoly {
    let mut lambda = vec![Gf::ONE];
    let mut prev = vec![Gf::ONE];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = Gf::ONE;

    for step in 0..syndromes.len() {
        let mut disc = syndromes[step];
        for i in 1..=l.min(lambda.len() - 1) {
            disc += lambda[i] * syndromes[step - i];
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let saved = lambda.clone();
        let coef = disc.div(prev_disc).expect("prev discrepancy is nonzero");
        if lambda.len() < prev.len() + shift {
            lambda.resize(prev.len() + shift, Gf::ZERO);
        }
        for (i, &pc) in prev.iter().enumerate() {
            lambda[i + shift] += coef * pc;
        }
        if 2 * l <= step {
            l = step + 1 - l;
            prev = saved;
            prev_disc = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    GfPoly::from_coeffs(lambda)
}

/// Positions `i ∈ [0, n)` whose locator `X_i = α^i` has `Λ(X_i^{−1}) = 0`.
/// If fewer distinct roots are found than `deg Λ`, the caller must declare
/// a decoding failure.
pub fn chien_search(lambda: &GfPoly, n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&i| lambda.eval(alpha_pow(-(i as i64))).is_zero())
        .collect()
}

/// Forney's algorithm: error value at position `i` is
/// `Ω(X_i^{−1}) / Λ′(X_i^{−1})` with `Ω(x) = S(x)·Λ(x) mod x^{2t}`
/// (the sign of the classical formula vanishes in characteristic 2).
/// Returns `None` — a decoding-failure signal — when the derivative
/// vanishes at a locator or an error value comes out zero.
pub fn forney(syndromes: &[Gf], lambda: &GfPoly, positions: &[usize]) -> Option<Vec<Gf>> {
    let s_poly = GfPoly::from_coeffs(syndromes.to_vec());
    let omega = s_poly.mul(lambda).truncated(syndromes.len());
    let deriv = lambda.formal_derivative();
    let mut values = Vec::with_capacity(positions.len());
    for &pos in positions {
        let x_inv = alpha_pow(-(pos as i64));
        let denom = deriv.eval(x_inv);
        if denom.is_zero() {
            return None;
        }
        let val = omega.eval(x_inv).div(denom).expect("denominator nonzero");
        if val.is_zero() {
            return None;
        }
        values.push(val);
    }
    Some(values)
}
