use crate::error::{Error, Result};

/// Number of admissible slopes λ. Edge slopes range over `0..=λ-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slopes(u32);

impl Slopes {
    pub fn new(lambda: u32) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::InvalidSlopes(lambda));
        }
        Ok(Slopes(lambda))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest admissible slope, λ − 1.
    pub fn max_slope(self) -> i64 {
        i64::from(self.0) - 1
    }

    /// Per-vertex width allowance of a compact drawing, `max(1, λ − 1)`.
    ///
    /// Two vertices on one level always need one unit of space, so at λ = 1
    /// the factor is one rather than zero.
    pub fn width_factor(self) -> i64 {
        self.max_slope().max(1)
    }

    /// Upper bound on the width of a compact drawing with `n` vertices.
    pub fn compact_width_bound(self, n: usize) -> i64 {
        self.width_factor() * (n.max(1) as i64 - 1)
    }
}

impl TryFrom<u32> for Slopes {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        Slopes::new(value)
    }
}
