//! Exhaustive arrow checks, colouring witnesses and small poset Ramsey numbers.

use poset_threshold::poset::parse_catalog_spec;
use poset_threshold::ramsey::{arrows, ramsey_number, verify_colouring, RamseyNumberOptions};

fn main() -> anyhow::Result<()> {
    let cat = |s: &str| parse_catalog_spec(s);
    let (v, l) = (cat("V")?, cat("lambda")?);
    for (host, p, q) in [("T2", "V", "V"), ("Y", "V", "V"), ("DD", "boolean:2", "chain:2"), ("layered:2,3,2", "lambda", "V")] {
        let (h, p, q) = (cat(host)?, cat(p)?, cat(q)?);
        let r = arrows(&h, std::slice::from_ref(&p), std::slice::from_ref(&q))?;
        print!("{host} arrows: {} after {} colourings", r.arrows, r.colourings_checked);
        if let Some(w) = &r.witness {
            let clean = verify_colouring(&h, w, &[p], &[q])?.is_none();
            print!("; witness {w:?} verified {clean}");
        }
        println!();
    }
    let r = arrows(&cat("layered:2,1,2")?, &[v.clone(), l.clone()], &[v, l])?;
    println!("C(2,1,2) -> ({{V,Λ}},{{V,Λ}}): {}", r.arrows);

    let opts = RamseyNumberOptions::default();
    for (p, q) in [("chain:2", "chain:3"), ("chain:3", "chain:3"), ("V", "V"), ("boolean:2", "chain:2")] {
        let rep = ramsey_number(&cat(p)?, &cat(q)?, &opts)?;
        println!("R({p}, {q}) = {:?}", rep.number);
    }
    Ok(())
}
