//! Partitions of [n] indexed by antichains versus copies of a poset in P(n).

use poset_threshold::correspondence::{count_all_modes, Correspondence, Partition};
use poset_threshold::poset::parse_catalog_spec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let v = parse_catalog_spec("V")?;
    let corr = Correspondence::new(&v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = Partition::random(corr.m(), 8, &mut rng);
    let phi = corr.f2(&a)?;
    println!("partition parts:  {:?}", a.parts().iter().map(|x| format!("{x:08b}")).collect::<Vec<_>>());
    println!("copy of V:        {:?}", phi.sets().iter().map(|x| format!("{x:08b}")).collect::<Vec<_>>());
    println!("f1 recovers it:   {}", corr.f1(&phi)? == a);
    println!("weighting:        {:?}", a.weighting().coords());

    for n in 1..=6 {
        let c = count_all_modes(&v, n)?;
        println!("n = {n}: weak {}, injective {}, induced {}, all parts nonempty {}", c.weak, c.injective, c.induced, c.starred);
    }
    Ok(())
}
