//! Entropy of weightings, critical exponents and the max-min value `c⋆(P)`.

mod classify;
mod closed_forms;
mod entropy;
mod optimize;
mod table;
mod table1;

pub use classify::{b_weighting, balanced_equation_root, balanced_solve, bisect, classify, BalancedSolution, Class, Classification};
pub use closed_forms::{
    blowup_bounds, bounded_upper_bound, chain_threshold, lift_bound_from, lift_lower_bound, star_threshold,
    trivial_upper_bound, universality_band, wide_diamond_threshold, LiftKind,
};
pub use entropy::{critical_exponent_wrt, entropy, entropy_of, h2};
pub use optimize::{c_star, c_star_with, default_tolerance, CStarOptions, CriticalExponentReport, Method, Orbits};
pub use table::{Constraint, ConstraintTable, DEFAULT_MAX_ELEMENTS};
pub use table1::{Table1Row, TABLE1};
