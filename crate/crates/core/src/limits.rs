//! Budgets for the exhaustive searches.

/// Caps on exhaustive work. Every search that would exceed its cap fails with
/// a budget error instead of returning an approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of allocations (`n^m`) an enumeration may visit.
    pub allocation_budget: u64,
    /// Maximum number of search nodes in a partition search.
    pub partition_budget: u64,
    /// Largest item count accepted by the AnyPrice share solver.
    pub aps_item_cap: usize,
    /// Worker threads for allocation enumeration; 1 runs inline.
    pub jobs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            allocation_budget: 10_000_000,
            partition_budget: 10_000_000,
            aps_item_cap: 14,
            jobs: 1,
        }
    }
}

impl SearchLimits {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}
