//! Empirical probability that P(40, e^{-40c}) contains C2 and V, across a grid of c.

use poset_threshold::simulator::{sweep_with, SweepOptions};
use poset_threshold::threshold::c_star;
use poset_threshold::{catalog, poset::parse_catalog_spec};

fn main() -> anyhow::Result<()> {
    let grid: Vec<f64> = (20..=35).map(|k| k as f64 / 50.0).collect();
    for (name, p) in [("C2", catalog("chain", &[2])?), ("V", parse_catalog_spec("V")?)] {
        let cs = c_star(&p, 1e-8)?.value;
        let opts = SweepOptions { pattern_name: Some(name.into()), ..Default::default() };
        let t = std::time::Instant::now();
        let report = sweep_with(&p, 40, &grid, 30, 2024, &opts)?;
        println!("{name}: c* = {cs:.6}, crossing of 1/2 at {:?} ({:.1?})", report.crossing(0.5), t.elapsed());
        print!("{}", report.to_csv());
    }
    Ok(())
}
