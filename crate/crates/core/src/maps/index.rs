use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent tuple `I = (i_1, ..., i_k)` of a Landweber-Novikov class
/// `s_I = f_*(c_1^{i_1} ... c_k^{i_k})`.
///
/// Trailing zeros are trimmed, so the empty index is `s_0 = f_*(1)`.
/// Indices are ordered reverse-lexicographically from the highest Chern
/// class down, which lists `s_0, s_1, s_2, s_3, s_01, s_11, s_02, s_001, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LnIndex(Vec<u32>);

impl LnIndex {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        LnIndex(exponents)
    }

    pub fn empty() -> Self {
        LnIndex(Vec::new())
    }

    /// Exponent of `c_j`, `j >= 1`.
    pub fn exponent(&self, j: usize) -> u32 {
        j.checked_sub(1)
            .and_then(|i| self.0.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Degree of the Chern monomial `c^I`, i.e. `sum j * i_j`.
    pub fn chern_degree(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, e)| (i as u32 + 1) * e)
            .sum()
    }

    /// Degree of `s_I` for a map of codimension `kappa`.
    pub fn degree(&self, kappa: i32) -> i32 {
        kappa + self.chern_degree() as i32
    }

    /// Parses the digits after `s_`: `0`, `01`, `{10,2}`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Landweber-Novikov index `{s}`"));
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let v = inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::new(v));
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if s == "0" {
            return Ok(Self::empty());
        }
        Ok(Self::new(s.bytes().map(|b| (b - b'0') as u32).collect()))
    }
}

impl Ord for LnIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for k in (1..=n).rev() {
            match self.exponent(k).cmp(&other.exponent(k)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for LnIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LnIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        if self.0.iter().all(|e| *e < 10) {
            for e in &self.0 {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}
