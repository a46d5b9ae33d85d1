//! Encodes "colour P(d) with no monochromatic P(3)" as CNF, solves it and
//! checks the colouring it returns.

use poset_threshold::poset::parse_catalog_spec;
use poset_threshold::ramsey::{assignment_to_colouring, encode_avoidance, solve_cnf, verify_colouring, CopyFamily, SatResult};
use std::time::Duration;

fn main() -> anyhow::Result<()> {
    let p3 = parse_catalog_spec("boolean:3")?;
    for d in 3..=5 {
        let host = parse_catalog_spec(&format!("boolean:{d}"))?;
        let f = encode_avoidance(&host, &p3, CopyFamily::AllWeak)?;
        let dimacs = f.to_dimacs();
        println!("P({d}): {} variables, {} clauses, {} bytes of DIMACS", f.vars, f.clause_count(), dimacs.len());
        match solve_cnf(&f, Some(Duration::from_secs(60))) {
            SatResult::Sat(a) => {
                let colouring = assignment_to_colouring(&a);
                let bad = verify_colouring(&host, &colouring, &[p3.clone()], &[p3.clone()])?;
                println!("  satisfiable, monochromatic copy: {bad:?}");
            }
            other => println!("  {other:?}"),
        }
    }
    Ok(())
}
