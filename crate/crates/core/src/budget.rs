/// Caps on the exponential parts of the library.
///
/// Every exact search takes a `Budget`; exceeding a cap returns
/// [`Error::BudgetExceeded`](crate::Error::BudgetExceeded) or
/// [`Error::SizeBudgetExceeded`](crate::Error::SizeBudgetExceeded) and callers
/// fall back to bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate sets (subsets or antichains) evaluated.
    pub candidates: usize,
    /// Maximum number of search nodes in a branch-and-bound.
    pub nodes: u64,
    /// Largest poset handed to the isomorphism test.
    pub iso_size: usize,
    /// Largest poset produced by subdivision.
    pub subdivision_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            candidates: 1 << 20,
            nodes: 5_000_000,
            iso_size: 16,
            subdivision_size: 20_000,
        }
    }
}

impl Budget {
    pub fn with_candidates(mut self, candidates: usize) -> Self {
        self.candidates = candidates;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_iso_size(mut self, iso_size: usize) -> Self {
        self.iso_size = iso_size;
        self
    }
}

/// A value known exactly or only up to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Estimate {
    pub lower: usize,
    pub upper: usize,
}

impl Estimate {
    pub fn exact(v: usize) -> Self {
        Estimate { lower: v, upper: v }
    }

    pub fn between(lower: usize, upper: usize) -> Self {
        debug_assert!(lower <= upper);
        Estimate { lower, upper }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

impl std::fmt::Display for Estimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}
