use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RhoError {
    #[error("rho must lie in (0, 1], got {0}")]
    OutOfRange(String),
    #[error("cannot parse rho from {0:?}; expected \"P/Q\" or a decimal")]
    Syntax(String),
}

/// Degree-proportionality parameter as an exact fraction `p/q` in lowest
/// terms, `0 < p/q <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rho {
    p: u64,
    q: u64,
}

impl Rho {
    pub const ONE: Rho = Rho { p: 1, q: 1 };

    pub fn new(p: u64, q: u64) -> Result<Self, RhoError> {
        if p == 0 || q == 0 || p > q {
            return Err(RhoError::OutOfRange(format!("{p}/{q}")));
        }
        let g = p.gcd(&q);
        Ok(Rho { p: p / g, q: q / g })
    }

    /// `1/k` for `k >= 1`.
    pub fn reciprocal(k: u64) -> Result<Self, RhoError> {
        Rho::new(1, k)
    }

    #[inline]
    pub fn numer(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn denom(self) -> u64 {
        self.q
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `⌈ρ·d⌉` in integer arithmetic.
    #[inline]
    pub fn ceil_times(self, d: usize) -> usize {
        let d = d as u128;
        (self.p as u128 * d).div_ceil(self.q as u128) as usize
    }

    /// `⌊ρ·n⌋` in integer arithmetic.
    #[inline]
    pub fn floor_times(self, n: usize) -> usize {
        ((self.p as u128 * n as u128) / self.q as u128) as usize
    }

    /// Exact test `d >= 1/ρ`, i.e. `d·p >= q`.
    #[inline]
    pub fn degree_at_least_inverse(self, d: usize) -> bool {
        d as u128 * self.p as u128 >= self.q as u128
    }
}

impl PartialOrd for Rho {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rho {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rho {
    type Err = RhoError;

    /// Accepts `P/Q` or a plain decimal such as `0.3`, which is read exactly
    /// as `3/10`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = || RhoError::Syntax(s.to_string());
        if let Some((a, b)) = s.split_once('/') {
            let p: u64 = a.trim().parse().map_err(|_| syntax())?;
            let q: u64 = b.trim().parse().map_err(|_| syntax())?;
            return Rho::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(syntax());
        }
        let scale = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| syntax())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| syntax())? };
        let p = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(|| RhoError::OutOfRange(s.to_string()))?;
        Rho::new(p, scale)
    }
}

impl Serialize for Rho {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rho {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
