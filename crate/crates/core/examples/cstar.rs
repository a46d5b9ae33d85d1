//! Critical exponent of a poset with its certified bracket and optimal weighting.

use poset_threshold::parse_dsl;
use poset_threshold::threshold::{c_star_with, CStarOptions};

fn main() -> anyhow::Result<()> {
    let p = parse_dsl("a < b < d\na < c\nc < d\nc < e")?;
    let rep = c_star_with(&p, &CStarOptions { tol: Some(1e-8), ..Default::default() })?;
    println!("c* in [{:.10}, {:.10}], class {}", rep.lower, rep.upper, rep.class);
    let family = poset_threshold::antichains(&p)?;
    for (s, w) in family.iter().zip(&rep.certificate) {
        let names: Vec<&str> = s.iter().map(|i| p.label(i)).collect();
        println!("  alpha{{{}}} = {w:.6}", names.join(","));
    }
    println!("tight subposets:");
    for q in &rep.active {
        let names: Vec<&str> = (0..p.len()).filter(|i| q >> i & 1 == 1).map(|i| p.label(i)).collect();
        println!("  {{{}}}", names.join(","));
    }
    Ok(())
}
