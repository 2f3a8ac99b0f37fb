//! Bounds on the exhaustive loops. Exceeding one is an error, never a
//! silent truncation.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Vertex or edge subsets examined by one criticality check.
    pub subsets: u64,
    /// Colourings produced by one colouring stream.
    pub colorings: u64,
    /// Embedding types enumerated by one admissibility check.
    pub types: u64,
    /// Edge placements tried by one exact minimisation.
    pub placements: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subsets: 1_000_000,
            colorings: 100_000_000,
            types: 1 << 26,
            placements: 1_000_000,
        }
    }
}

pub(crate) fn check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        return Err(Error::CapExceeded {
            what,
            needed: needed.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Binomial coefficient for cap checks, saturating instead of overflowing.
pub(crate) fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
