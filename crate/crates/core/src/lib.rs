//! Posets in the random Boolean lattice: antichain partitions, critical
//! exponents, Ramsey arrows and Monte Carlo threshold experiments.

pub mod cli;
pub mod correspondence;
pub mod error;
pub mod fmt;
pub mod poset;
pub mod ramsey;
pub mod simulator;
pub mod threshold;

pub use error::{Error, Result};
pub use poset::{antichains, catalog, parse_dsl, AntichainFamily, ElementSubset, Poset};
