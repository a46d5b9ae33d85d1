//! Thresholds known in closed form or through one-dimensional root finding.

use poset_threshold::poset::parse_catalog_spec;
use poset_threshold::threshold::{
    blowup_bounds, chain_threshold, lift_lower_bound, star_threshold, trivial_upper_bound, universality_band,
    wide_diamond_threshold, LiftKind,
};

fn main() -> anyhow::Result<()> {
    let (x, c) = star_threshold()?;
    println!("star V: x* = {x:.10}, c* = {c:.10}");
    let (x, c) = wide_diamond_threshold()?;
    println!("wide diamond: x* = {x:.10}, value = {c:.10}");
    for t in 2..=6 {
        println!("chain C{t}: {:.10}", chain_threshold(t)?);
    }
    for (l, t) in [(2, 1), (2, 2), (3, 2)] {
        let (lo, hi) = blowup_bounds(l, t)?;
        println!("blow-up C_{l}({t}): [{lo:.8}, {hi:.8}]");
    }
    let y = parse_catalog_spec("Y")?;
    println!("lift bound from Y with both extremes: {:.8}", lift_lower_bound(&y, LiftKind::Both)?);
    println!("trivial upper bound for Y: {:.8}", trivial_upper_bound(&y)?);
    let (lo, hi) = universality_band(20, 2.0)?;
    println!("universality band at n = 20: [{lo:.6}, {hi:.6}]");
    Ok(())
}
