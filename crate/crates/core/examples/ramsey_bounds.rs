//! Bounds on Ramsey exponents from arrowing hosts and tower colourings.

use poset_threshold::poset::parse_catalog_spec;
use poset_threshold::ramsey::{exponent_bounds, BoundsOptions};

fn main() -> anyhow::Result<()> {
    for (p, q) in [("chain:2", "chain:2"), ("V", "V"), ("chain:2", "V"), ("boolean:2", "boolean:2")] {
        let rep = exponent_bounds(&parse_catalog_spec(p)?, &parse_catalog_spec(q)?, &BoundsOptions::default())?;
        println!("({p}, {q})");
        println!("  lower {:.10}  {}", rep.lower.value, rep.lower.provenance);
        println!("  upper {:.10}  {}", rep.upper.value, rep.upper.provenance);
        if let Some(x) = rep.exact {
            println!("  exact {x:.10}");
        }
    }
    Ok(())
}
