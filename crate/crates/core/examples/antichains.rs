//! Parses a poset from the text format, lists its antichains and compares a few
//! catalogue posets up to isomorphism.

use poset_threshold::poset::{automorphisms, is_isomorphic, parse_catalog_spec, reverse};
use poset_threshold::{antichains, parse_dsl};

const BUTTERFLY: &str = "
# two minima below two maxima
a < c
a < d
b < c
b < d
";

fn main() -> anyhow::Result<()> {
    let p = parse_dsl(BUTTERFLY)?;
    let family = antichains(&p)?;
    println!("butterfly: {} elements, {} antichains", p.len(), family.len());
    for s in family.iter() {
        let names: Vec<&str> = s.iter().map(|i| p.label(i)).collect();
        println!("  {{{}}}", names.join(", "));
    }
    println!("automorphisms: {}", automorphisms(&p).len());
    println!("isomorphic to layered:2,2: {}", is_isomorphic(&p, &parse_catalog_spec("layered:2,2")?));

    for d in 1..=4 {
        let b = parse_catalog_spec(&format!("boolean:{d}"))?;
        println!("antichains of P({d}): {}", antichains(&b)?.len());
    }
    let v = parse_catalog_spec("V")?;
    let l = parse_catalog_spec("lambda")?;
    println!("reverse of V is Λ: {}", is_isomorphic(&reverse(&v), &l));
    println!("\nY'' in the text format:\n{}", parse_catalog_spec("Y''")?.to_dsl());
    Ok(())
}
