//! Finite-field censuses, group orbits and sampled agreement checks.

pub mod agree;
pub mod census;
pub mod kernel;
pub mod orbit;
pub mod random;

pub use agree::{agreement, AgreementReport};
pub use census::{enumerate, exception, replay, Bin, CensusOptions, CensusReport, Replay};
pub use kernel::{Cell, Kernel};
pub use orbit::{general_linear, gl_order, orbit, Orbit};

/// Jobs needing more classifications than this are refused unless forced.
pub const DEFAULT_BUDGET: u128 = 1 << 24;
