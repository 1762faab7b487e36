//! Search budgets shared by the decision procedures.

/// Caps are diagnostics only: exhausting one aborts with
/// [`crate::Error::SearchBudgetExceeded`] and never changes an answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Seed for the pseudo-random algebra elements used by invariant-subspace search.
    pub seed: u64,
    /// Maximum number of coset patterns explored by the diagonal-index closure.
    /// `None` selects the order of GL over the field with three elements in
    /// dimension `d·[K:Q]`.
    pub bfs_cap: Option<u64>,
    /// Maximum max-norm of exponent vectors tried by the separating-element search.
    pub radius_cap: u32,
    /// Number of random algebra elements tried per invariant-subspace search.
    pub seed_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, bfs_cap: None, radius_cap: 8, seed_budget: 64 }
    }
}

/// Order of GL_m over the field with three elements, saturating.
pub fn gl_f3_order(m: usize) -> u64 {
    let q = 3u128;
    let qm = q.checked_pow(m as u32);
    let Some(qm) = qm else { return u64::MAX };
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = match acc.checked_mul(qm - q.pow(i as u32)) {
            Some(x) if x <= u64::MAX as u128 => x,
            _ => return u64::MAX,
        };
    }
    acc as u64
}
