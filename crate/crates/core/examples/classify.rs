//! Uniformly balanced, balanced and general posets.

use poset_threshold::poset::parse_catalog_spec;
use poset_threshold::threshold::{balanced_solve, classify};

fn main() -> anyhow::Result<()> {
    for spec in ["chain:3", "layered:2,2", "diamond", "DD", "V", "Y", "boolean:3"] {
        let p = parse_catalog_spec(spec)?;
        let c = classify(&p)?;
        print!("{spec:<12} {:<9} log a(P)/|P| = {:.8}", c.class.to_string(), c.uniform_value);
        if let Some(b) = &c.balanced {
            print!("  x* = {:.10}, value {:.10}", b.x_star, b.c_value);
        }
        println!();
    }
    let d = balanced_solve(&parse_catalog_spec("diamond")?)?;
    println!("diamond b-weighting: {:?}", d.b_weighting.coords());
    Ok(())
}
