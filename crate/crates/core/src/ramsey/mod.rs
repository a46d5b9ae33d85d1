//! Two-colour Ramsey arrows between posets, exponent bounds and the CNF encoding
//! of monochromatic-copy avoidance.

mod arrows;
mod bounds;
mod cnf;
mod copies;
mod sat;

pub use arrows::{
    arrows, arrows_with, assignment_to_colouring, ramsey_number, verify_colouring, ArrowResult, Colouring,
    MonochromaticCopy, RamseyNumberOptions, RamseyNumberReport, ARROW_MAX_HOST,
};
pub use bounds::{exponent_bounds, Bound, BoundsOptions, RamseyBoundsReport};
pub use cnf::{encode_avoidance, encode_pair, CnfFormula};
pub use copies::{boolean_dimension, copy_images, enumerate_pattern_copies, image_elements, CopyFamily, PARTITION_SCAN_CAP};
pub use sat::{solve_cnf, SatResult};
