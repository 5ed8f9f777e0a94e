//! Size limits for exhaustive searches.
//!
//! Every search in this crate that enumerates subsets, subgroups or
//! bijections is guarded by one of these caps. `HVN_ORDER_CAP` in the
//! environment overrides the group-order caps.

use std::sync::OnceLock;

/// Limits enforced by the exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted when building a multiplication table.
    pub table_order: usize,
    /// Largest group order for subgroup enumeration, character tables and
    /// isomorphism search.
    pub exhaustive_order: usize,
    /// Largest dual accepted by the subset-by-subset grouplike enumeration.
    pub grouplike_irreps: usize,
    /// Largest phase space for brute-force searches over non-transitive systems.
    pub brute_force_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table_order: 20_000,
            exhaustive_order: 400,
            grouplike_irreps: 20,
            brute_force_points: 16,
        }
    }
}

impl Caps {
    /// Defaults with the `HVN_ORDER_CAP` override applied.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cap) = std::env::var("HVN_ORDER_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            caps.exhaustive_order = cap;
            caps.table_order = caps.table_order.max(cap);
        }
        caps
    }

    /// Process-wide caps, read from the environment once.
    pub fn global() -> &'static Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        CAPS.get_or_init(Caps::from_env)
    }
}
