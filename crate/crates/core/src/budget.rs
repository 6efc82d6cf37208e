//! Resource caps shared by the brute-force engines.

use crate::error::Error;

/// Environment variable that overrides the tuple-space cap.
pub const BUDGET_ENV: &str = "KCLOSURE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum size of a materialized tuple or coloring space.
    pub tuples: u64,
    /// Largest degree for which `Sym(n)` may be enumerated.
    pub exhaustive_degree: usize,
    /// Largest degree for the partition closure engine.
    pub partition_degree: usize,
    /// Maximum number of matrices in a general linear group enumeration.
    pub gl_elements: u64,
    /// Maximum number of group elements that may be listed explicitly.
    pub elements: u64,
    /// Maximum number of points of a tensor frame or vector space.
    pub points: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            tuples: 10_000_000,
            exhaustive_degree: 9,
            partition_degree: 10,
            gl_elements: 25_000,
            elements: 1_000_000,
            points: 2048,
        }
    }
}

impl Budget {
    /// The default budget with `tuples` taken from [`BUDGET_ENV`] when set.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(v) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.parse().ok()) {
            b.tuples = v;
        }
        b
    }

    pub fn with_tuples(mut self, tuples: u64) -> Self {
        self.tuples = tuples;
        self
    }

    /// Checks `degree^k` against the tuple cap.
    pub(crate) fn check_tuples(&self, engine: &'static str, degree: usize, k: usize) -> Result<u64, Error> {
        let needed = (degree as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if needed > self.tuples as u128 {
            return Err(Error::Budget {
                engine,
                quantity: format!("degree^k = {degree}^{k}"),
                needed,
                limit: self.tuples as u128,
            });
        }
        Ok(needed as u64)
    }
}
