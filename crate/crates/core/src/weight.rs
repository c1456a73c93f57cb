//! Exact rational suboptimality weights.
//!
//! Weighted priorities are kept as integers in units of `1/den`, so that
//! `g + w*h` with `w = num/den` becomes `den*g + num*h`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid weight {0:?}: expected a ratio >= 1 such as 2, 3/2 or 1.25")]
pub struct WeightError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Weight {
    num: u64,
    den: u64,
}

impl Weight {
    pub const ONE: Weight = Weight { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, WeightError> {
        if den == 0 || num < den {
            return Err(WeightError(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Weight { num: num / g, den: den / g })
    }

    pub fn integer(w: u64) -> Result<Self, WeightError> {
        Self::new(w, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `g + w*h`, scaled by `den`.
    pub fn apply(&self, g: u32, h: u32) -> u64 {
        self.den * g as u64 + self.num * h as u64
    }

    /// `g` in scaled units.
    pub fn scale(&self, g: u32) -> u64 {
        self.den * g as u64
    }

    /// Largest integer `f` with `f <= w * x`.
    pub fn bound(&self, x: u64) -> u64 {
        (self.num as u128 * x as u128 / self.den as u128) as u64
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::ONE
    }
}

impl TryFrom<String> for Weight {
    type Error = WeightError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Weight> for String {
    fn from(w: Weight) -> String {
        w.to_string()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Weight::new(n, d).map_err(|_| bad());
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            return Weight::new(int * den + frac, den).map_err(|_| bad());
        }
        Weight::new(s.parse().map_err(|_| bad())?, 1).map_err(|_| bad())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
