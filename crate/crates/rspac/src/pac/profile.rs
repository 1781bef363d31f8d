//! Rate profiles: the ordered index set 𝒜 of polar input positions that
//! carry data. Complement positions are frozen to zero ahead of the
//! convolutional precoder.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// The data index set of an `(N, K)` PAC code. Indices are stored
/// 0-based and strictly increasing; the on-disk format is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateProfile {
    n: usize,
    k: usize,
    data_set: Vec<usize>,
    is_data: Vec<bool>,
}

impl RateProfile {
    /// Build from 0-based data indices (strictly increasing, within `0..n`).
    pub fn new(n: usize, data_set: Vec<usize>) -> Result<RateProfile> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidProfile(format!(
                "profile length {n} is not a power of two"
            )));
        }
        if data_set.is_empty() || data_set.len() > n {
            return Err(Error::InvalidProfile(format!(
                "profile carries {} data indices for length {n}",
                data_set.len()
            )));
        }
        let mut is_data = vec![false; n];
        let mut prev: Option<usize> = None;
        for &i in &data_set {
            if i >= n {
                return Err(Error::InvalidProfile(format!(
                    "data index {i} out of range for length {n}"
                )));
            }
            if prev.is_some_and(|p| p >= i) {
                return Err(Error::InvalidProfile(
                    "data indices must be strictly increasing".into(),
                ));
            }
            prev = Some(i);
            is_data[i] = true;
        }
        Ok(RateProfile {
            n,
            k: data_set.len(),
            data_set,
            is_data,
        })
    }

    /// Reed-Muller style profile: pick the `k` indices whose rows of
    /// `F^⊗n` have the largest weight `2^popcount(i)`; ties at the cut
    /// weight prefer the larger index.
    pub fn reed_muller(n: usize, k: usize) -> Result<RateProfile> {
        if n == 0 || !n.is_power_of_two() || k == 0 || k > n {
            return Err(Error::InvalidProfile(format!(
                "invalid RM profile dimensions ({n}, {k})"
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        // weight descending, then index descending
        order.sort_by(|&a, &b| {
            (b.count_ones(), b).cmp(&(a.count_ones(), a))
        });
        let mut chosen: Vec<usize> = order.into_iter().take(k).collect();
        chosen.sort_unstable();
        RateProfile::new(n, chosen)
    }

    /// Parse the plain-text format: line 1 `N K`, line 2 the K data
    /// indices, 1-based, ascending, space-separated.
    pub fn parse(text: &str) -> Result<RateProfile> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidProfile("empty profile file".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidProfile("bad N in header".into()))?;
        let k: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidProfile("bad K in header".into()))?;
        if parts.next().is_some() {
            return Err(Error::InvalidProfile("trailing tokens in header".into()));
        }
        let body = lines
            .next()
            .ok_or_else(|| Error::InvalidProfile("missing index line".into()))?;
        let mut indices = Vec::with_capacity(k);
        for tok in body.split_whitespace() {
            let one_based: usize = tok
                .parse()
                .map_err(|_| Error::InvalidProfile(format!("bad index '{tok}'")))?;
            if one_based == 0 || one_based > n {
                return Err(Error::InvalidProfile(format!(
                    "index {one_based} out of range 1..={n}"
                )));
            }
            indices.push(one_based - 1);
        }
        if lines.next().is_some() {
            return Err(Error::InvalidProfile("unexpected extra lines".into()));
        }
        if indices.len() != k {
            return Err(Error::InvalidProfile(format!(
                "header promises K={k} indices, found {}",
                indices.len()
            )));
        }
        RateProfile::new(n, indices)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<RateProfile> {
        RateProfile::parse(&std::fs::read_to_string(path)?)
    }

    /// Render in the on-disk format (1-based indices).
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for (pos, &i) in self.data_set.iter().enumerate() {
            if pos > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", i + 1);
        }
        out.push('\n');
        out
    }

    pub fn to_file(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.render())?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// 0-based data indices, ascending.
    pub fn data_set(&self) -> &[usize] {
        &self.data_set
    }

    #[inline]
    pub fn is_data(&self, i: usize) -> bool {
        self.is_data[i]
    }
}
