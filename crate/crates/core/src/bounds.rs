use serde::{Deserialize, Serialize};

/// Explicit work limits. Exact counters refuse to start (or stop with an error)
/// rather than truncate when a limit would be crossed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkBounds {
    /// Nodes visited by enumeration-style counters.
    pub max_enumeration: u64,
    /// Live states in the cocycle sweep.
    pub max_states: u64,
    /// Largest group order accepted by lattice and automorphism computations.
    pub max_group_order: usize,
    /// Largest permutation degree accepted by the stabilizer-chain code.
    pub max_degree: usize,
    /// Largest set of tuples an orbit search may hold in memory.
    pub max_orbit_points: u64,
}

impl Default for WorkBounds {
    fn default() -> Self {
        WorkBounds {
            max_enumeration: 2_000_000_000,
            max_states: 20_000_000,
            max_group_order: 120,
            max_degree: 1 << 16,
            max_orbit_points: 50_000_000,
        }
    }
}
