//! Recomputes the reference table of small posets and prints each certified
//! bracket next to the reference value.

use poset_threshold::threshold::{c_star, TABLE1};
use std::time::Instant;

fn main() -> anyhow::Result<()> {
    println!("{:<14} {:>14} {:>14} {:>14} {:>20} {:>8}", "poset", "lower", "upper", "reference", "class", "secs");
    for row in TABLE1 {
        let p = row.poset()?;
        let start = Instant::now();
        let rep = c_star(&p, 1e-7)?;
        let reference = match row.upper {
            Some(u) => format!("[{:.6},{:.6}]", row.lower, u),
            None => format!("{:.10}", row.lower),
        };
        println!(
            "{:<14} {:>14.10} {:>14.10} {:>14} {:>20} {:>8.2}",
            row.name,
            rep.lower,
            rep.upper,
            reference,
            format!("{:?}", rep.class),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
