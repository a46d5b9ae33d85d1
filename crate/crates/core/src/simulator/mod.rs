//! Monte Carlo sampling of the random subposet `P(n, p)` of the Boolean
//! lattice with `p = e^{-cn}`, pattern containment tests and sweeps over `c`.

mod sample;
mod sweep;

pub use sample::{
    contains_pattern, contains_pattern_generic, sample_pnp, sample_pnp_with_budget, Sample, DEFAULT_ELEMENT_BUDGET,
    GENERIC_SEARCH_CAP,
};
pub use sweep::{sweep, sweep_with, trial_seed, SweepCell, SweepOptions, SweepReport};
