//! Size limits for the exhaustive enumerations.

use crate::error::{Error, Result};

/// Upper bounds checked before any enumeration starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Caps {
    pub max_n: usize,
    pub max_r: usize,
    pub max_e: usize,
    /// Largest `δ` for which all `δ!` removal orders are enumerated.
    pub max_delta: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_n: 8, max_r: 3, max_e: 5, max_delta: 6 }
    }
}

impl Caps {
    /// No practical limit; for tests that pick their own ranges.
    pub const UNLIMITED: Caps = Caps { max_n: usize::MAX, max_r: usize::MAX, max_e: usize::MAX, max_delta: 12 };

    pub fn check_n(&self, n: usize) -> Result<()> {
        check("n", n, self.max_n)
    }

    pub fn check_r(&self, r: usize) -> Result<()> {
        check("r", r, self.max_r)
    }

    pub fn check_e(&self, e: usize) -> Result<()> {
        check("e", e, self.max_e)
    }

    pub fn check_delta(&self, delta: usize) -> Result<()> {
        check("delta", delta, self.max_delta)
    }
}

fn check(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
