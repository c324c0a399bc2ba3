/// Default zero tolerance for coefficients and membership tests.
pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
/// Matrix dimensions are capped at `2^max_level` (level 12 for `n = 2`).
pub const DEFAULT_MAX_LEVEL: usize = 12;

/// Numerical tolerance and resource caps shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    pub eps: f64,
    pub max_terms: usize,
    pub max_level: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            eps: DEFAULT_EPS,
            max_terms: DEFAULT_MAX_TERMS,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

impl Config {
    pub fn with_eps(eps: f64) -> Self {
        Config {
            eps,
            ..Config::default()
        }
    }

    /// Largest matrix dimension allowed by `max_level`.
    pub fn max_dim(&self) -> usize {
        1usize.checked_shl(self.max_level as u32).unwrap_or(usize::MAX)
    }
}
