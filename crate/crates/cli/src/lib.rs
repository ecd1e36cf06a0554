//! Command-line driver for `akblocks`: JSON wire formats, cap parsing and
//! the subcommands.

pub mod commands;
pub mod wire;

use akblocks::Caps;
use anyhow::{bail, Context, Result};

/// Environment variable read for cap overrides.
pub const CAPS_ENV: &str = "AKBLOCKS_CAPS";

/// Applies `key=value` pairs such as `n=8,r=3,e=5,delta=6` to `base`.
pub fn parse_caps(spec: &str, base: Caps) -> Result<Caps> {
    let mut caps = base;
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').with_context(|| format!("cap {item:?} is not key=value"))?;
        let value: usize = value.trim().parse().with_context(|| format!("cap {item:?}"))?;
        match key.trim() {
            "n" | "max_n" => caps.max_n = value,
            "r" | "max_r" => caps.max_r = value,
            "e" | "max_e" => caps.max_e = value,
            "delta" | "max_delta" | "orders" | "max_orders" => caps.max_delta = value,
            other => bail!("unknown cap {other:?}; expected n, r, e or delta"),
        }
    }
    Ok(caps)
}
