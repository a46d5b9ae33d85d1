mod common;

use common::*;
use poset_threshold::correspondence::{
    count_all_modes, count_copies_direct, shadow_partition, shadow_weighting, CopyMap, CopyMode, Correspondence, Partition,
    Weighting,
};
use poset_threshold::poset::{
    antichains, automorphisms, catalog, contains_copy, parse_catalog_spec, reverse, AntichainFamily, ElementSubset, Poset,
};
use poset_threshold::ramsey::{arrows, encode_avoidance, solve_cnf, assignment_to_colouring, verify_colouring, CopyFamily, SatResult};
use poset_threshold::simulator::{contains_pattern, contains_pattern_generic, sample_pnp, sweep, Sample};
use poset_threshold::threshold::{
    b_weighting, balanced_solve, bounded_upper_bound, c_star, trivial_upper_bound, ConstraintTable, Orbits,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn relations_form_a_strict_order(p in poset_strategy(1, 9, 0.3)) {
        let n = p.len();
        for i in 0..n {
            prop_assert!(!p.lt(i, i));
            for j in 0..n {
                prop_assert!(!(p.lt(i, j) && p.lt(j, i)));
                for k in 0..n {
                    prop_assert!(!(p.lt(i, j) && p.lt(j, k)) || p.lt(i, k));
                }
            }
        }
    }

    #[test]
    fn antichain_count_matches_subset_scan(p in poset_strategy(1, 12, 0.25)) {
        prop_assert_eq!(antichains(&p).unwrap().len(), brute_antichain_count(&p));
    }

    #[test]
    fn reversal_is_an_involution(p in poset_strategy(1, 10, 0.3)) {
        prop_assert_eq!(reverse(&reverse(&p)), p);
    }

    #[test]
    fn copy_search_matches_injection_scan(
        host in poset_strategy(1, 8, 0.35),
        pat in poset_strategy(1, 4, 0.4),
        induced in any::<bool>(),
    ) {
        let found = contains_copy(&host, &pat, induced);
        prop_assert_eq!(found.is_some(), brute_contains(&host, &pat, induced));
        if let Some(map) = found {
            for i in 0..pat.len() {
                for j in 0..pat.len() {
                    if pat.lt(i, j) {
                        prop_assert!(host.lt(map[i], map[j]));
                    } else if induced && i != j {
                        prop_assert!(!host.lt(map[i], map[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn automorphisms_form_a_group(p in poset_strategy(1, 7, 0.3)) {
        let auts = automorphisms(&p);
        let set: std::collections::HashSet<Vec<usize>> = auts.iter().cloned().collect();
        prop_assert!(set.contains(&(0..p.len()).collect::<Vec<_>>()));
        for a in &auts {
            for b in &auts {
                let ab: Vec<usize> = (0..p.len()).map(|i| a[b[i]]).collect();
                prop_assert!(set.contains(&ab));
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn copy_counts_are_sandwiched(p in poset_strategy(1, 4, 0.4), n in 1usize..=4) {
        let m = antichains(&p).unwrap().len() as u128;
        let c = count_all_modes(&p, n).unwrap();
        prop_assert_eq!(c.weak, m.pow(n as u32));
        prop_assert!(c.starred <= c.injective && c.injective <= c.weak);
        prop_assert!(c.induced <= c.injective);
        prop_assert_eq!(c.injective, count_copies_direct(&p, n, CopyMode::Injective).unwrap());
        prop_assert_eq!(c.induced, count_copies_direct(&p, n, CopyMode::Induced).unwrap());
    }

    #[test]
    fn f1_inverts_f2(p in poset_strategy(1, 6, 0.35), n in 1usize..=20, seed in any::<u64>()) {
        let corr = Correspondence::new(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Partition::random(corr.m(), n, &mut rng);
        let phi = corr.f2(&a).unwrap();
        prop_assert!(phi.is_order_preserving(&p));
        prop_assert_eq!(corr.f1(&phi).unwrap(), a);
    }

    #[test]
    fn starred_partitions_give_induced_copies(p in poset_strategy(1, 5, 0.35), extra in 0usize..4, seed in any::<u64>()) {
        let corr = Correspondence::new(&p).unwrap();
        let m = corr.m();
        let n = m + extra;
        if n > 64 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut labels: Vec<usize> = (0..m).chain((0..extra).map(|_| rng.random_range(0..m))).collect();
        for i in (1..labels.len()).rev() {
            labels.swap(i, rng.random_range(0..=i));
        }
        let a = Partition::from_labels(m, &labels).unwrap();
        prop_assert!(a.is_starred());
        prop_assert!(corr.f2(&a).unwrap().is_induced_copy(&p));
    }

    #[test]
    fn shadows_commute_with_restriction(p in poset_strategy(1, 6, 0.35), n in 1usize..=12, q in any::<u128>(), seed in any::<u64>()) {
        let q = ElementSubset(q & p.all().0);
        if q.is_empty() {
            return Ok(());
        }
        let corr = Correspondence::new(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = corr.f2(&Partition::random(corr.m(), n, &mut rng)).unwrap();
        let shadow = shadow_partition(&p, q, &corr.f1(&phi).unwrap()).unwrap();

        let sub = p.induced(q).unwrap();
        let restricted = CopyMap::new(n, sub.parent.iter().map(|&i| phi.set(i)).collect()).unwrap();
        let direct = Correspondence::new(&sub.poset).unwrap().f1(&restricted).unwrap();
        let target = AntichainFamily::within(&p, q, usize::MAX).unwrap();
        let sub_family = antichains(&sub.poset).unwrap();
        for (k, s) in sub_family.iter().enumerate() {
            let lifted: ElementSubset = s.iter().map(|i| sub.parent[i]).collect();
            let j = target.position(lifted).unwrap();
            prop_assert_eq!(shadow.part(j), direct.part(k));
        }
    }

    #[test]
    fn shadow_weighting_is_linear_on_the_simplex(
        p in poset_strategy(1, 6, 0.35),
        q in any::<u128>(),
        seed in any::<u64>(),
        theta in 0.0f64..=1.0,
    ) {
        let q = ElementSubset(q & p.all().0);
        if q.is_empty() {
            return Ok(());
        }
        let m = antichains(&p).unwrap().len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut point = || Weighting::normalized((0..m).map(|_| rng.random_range(0.0..1.0) + 1e-9).collect()).unwrap();
        let (a, b) = (point(), point());
        let mix = Weighting::normalized(a.coords().iter().zip(b.coords()).map(|(x, y)| theta * x + (1.0 - theta) * y).collect()).unwrap();
        let (sa, sb, sm) = (shadow_weighting(&p, q, &a).unwrap(), shadow_weighting(&p, q, &b).unwrap(), shadow_weighting(&p, q, &mix).unwrap());
        prop_assert_eq!(sa.len(), AntichainFamily::within(&p, q, usize::MAX).unwrap().len());
        prop_assert!((sa.coords().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(sa.coords().iter().all(|&x| x >= 0.0));
        for k in 0..sm.len() {
            prop_assert!((sm.coords()[k] - (theta * sa.coords()[k] + (1.0 - theta) * sb.coords()[k])).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn objective_is_concave(p in poset_strategy(1, 6, 0.35), seed in any::<u64>(), theta in 0.0f64..=1.0) {
        let family = antichains(&p).unwrap();
        let table = ConstraintTable::build(&p, &family, 16).unwrap();
        let m = family.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut point = || {
            let v: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0f64).powi(3)).collect();
            let s: f64 = v.iter().sum();
            v.into_iter().map(|x| x / s).collect::<Vec<_>>()
        };
        let (a, b) = (point(), point());
        let mix: Vec<f64> = a.iter().zip(&b).map(|(x, y)| theta * x + (1.0 - theta) * y).collect();
        let lhs = table.objective(&mix);
        prop_assert!(lhs >= theta * table.objective(&a) + (1.0 - theta) * table.objective(&b) - 1e-9);
    }

    #[test]
    fn objective_is_invariant_under_automorphisms(p in poset_strategy(1, 6, 0.35), seed in any::<u64>()) {
        let family = antichains(&p).unwrap();
        let table = ConstraintTable::build(&p, &family, 16).unwrap();
        let m = family.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.01..1.0)).collect();
        let s: f64 = raw.iter().sum();
        let alpha: Vec<f64> = raw.iter().map(|x| x / s).collect();
        let g = table.objective(&alpha);
        for phi in automorphisms(&p) {
            let mut moved = vec![0.0; m];
            for (j, set) in family.iter().enumerate() {
                let image: ElementSubset = set.iter().map(|i| phi[i]).collect();
                moved[family.position(image).unwrap()] = alpha[j];
            }
            prop_assert!((table.objective(&moved) - g).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn certificates_and_bounds_are_consistent(p in poset_strategy(1, 6, 0.35)) {
        let rep = c_star(&p, 1e-6).unwrap();
        let family = antichains(&p).unwrap();
        let g = ConstraintTable::build(&p, &family, 16).unwrap().objective(&rep.certificate);
        prop_assert!(g >= rep.lower - 1e-12, "g = {g}, lower = {}", rep.lower);
        prop_assert!(rep.lower <= rep.value && rep.value <= rep.upper + 1e-12);
        prop_assert!(rep.value <= trivial_upper_bound(&p).unwrap() + 1e-6);
        if p.len() >= 2 && p.unique_min().is_some() && p.unique_max().is_some() {
            prop_assert!(rep.value <= bounded_upper_bound(&p).unwrap() + 1e-6);
        }
    }
}

/// Posets with at most three elements and at most five antichains.
fn small_posets() -> Vec<(&'static str, Poset)> {
    ["chain:1", "chain:2", "antichain:2", "chain:3", "V", "lambda"]
        .into_iter()
        .map(|s| (s, parse_catalog_spec(s).unwrap()))
        .collect()
}

#[test]
fn grid_oracle_agrees_for_tiny_posets() {
    for (name, p) in small_posets() {
        let family = antichains(&p).unwrap();
        let orbits = if family.len() <= 4 { Orbits::trivial(family.len()) } else { Orbits::new(&p, &family, 1000) };
        let grid = grid_max(&p, 400, &orbits);
        let rep = c_star(&p, 1e-7).unwrap();
        assert!(grid <= rep.upper + 1e-12, "{name}: grid {grid} above certified upper {}", rep.upper);
        assert!((rep.value - grid).abs() < 1e-3, "{name}: c* {} vs grid {grid}", rep.value);
    }
}

#[test]
fn balanced_certificates_converge_to_b() {
    for spec in ["diamond", "DD"] {
        let p = parse_catalog_spec(spec).unwrap();
        let family = antichains(&p).unwrap();
        let sol = balanced_solve(&p).unwrap();
        let b = b_weighting(&p, &family, sol.x_star).unwrap();
        let rep = c_star(&p, 1e-9).unwrap();
        let dist = rep.certificate.iter().zip(b.coords()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(dist < 1e-4, "{spec}: certificate is {dist} from b(P)");
    }
}

fn ramsey_triples() -> impl Strategy<Value = (Poset, Poset, Poset)> {
    (poset_strategy(1, 7, 0.4), poset_strategy(1, 3, 0.5), poset_strategy(1, 3, 0.5))
}

proptest! {
    #![proptest_config(cfg(40))]

    #[test]
    fn arrows_agree_with_brute_force_and_reversal((host, p, q) in ramsey_triples()) {
        let a = arrows(&host, std::slice::from_ref(&p), std::slice::from_ref(&q)).unwrap();
        prop_assert_eq!(a.arrows, brute_arrows(&host, &p, &q));
        let r = arrows(&reverse(&host), &[reverse(&p)], &[reverse(&q)]).unwrap();
        prop_assert_eq!(a.arrows, r.arrows);
        if let Some(w) = a.witness {
            prop_assert_eq!(verify_colouring(&host, &w, &[p], &[q]).unwrap(), None);
        }
    }

    #[test]
    fn cnf_and_exhaustive_search_agree((host, p, _q) in ramsey_triples()) {
        let f = encode_avoidance(&host, &p, CopyFamily::AllWeak).unwrap();
        let exhaustive = arrows(&host, std::slice::from_ref(&p), std::slice::from_ref(&p)).unwrap().arrows;
        match solve_cnf(&f, None) {
            SatResult::Sat(a) => {
                prop_assert!(!exhaustive);
                let col = assignment_to_colouring(&a);
                prop_assert_eq!(verify_colouring(&host, &col, &[p.clone()], &[p]).unwrap(), None);
            }
            SatResult::Unsat => prop_assert!(exhaustive),
            SatResult::Unknown => prop_assert!(false, "no budget was set"),
        }
    }

    #[test]
    fn arrows_are_monotone_in_the_host((host, p, q) in ramsey_triples(), keep in any::<u128>()) {
        let sub = ElementSubset(keep & host.all().0);
        if sub.is_empty() {
            return Ok(());
        }
        let small = host.induced(sub).unwrap().poset;
        if arrows(&small, std::slice::from_ref(&p), std::slice::from_ref(&q)).unwrap().arrows {
            prop_assert!(arrows(&host, &[p], &[q]).unwrap().arrows);
        }
    }
}

#[test]
fn sampler_inclusion_frequency() {
    let (n, p) = (8usize, 0.2f64);
    let c = -p.ln() / n as f64;
    let runs = 100_000u64;
    let mut hits = vec![0u64; 1 << n];
    for seed in 0..runs {
        for w in sample_pnp(n, c, seed).unwrap().elements {
            hits[w as usize] += 1;
        }
    }
    let sigma = (runs as f64 * p * (1.0 - p)).sqrt();
    for (w, &h) in hits.iter().enumerate() {
        let z = (h as f64 - runs as f64 * p) / sigma;
        assert!(z.abs() < 4.0, "word {w:b}: z = {z}");
    }
}

#[test]
fn sampler_mean_size() {
    let (n, c) = (10usize, 0.4f64);
    let p = (-c * n as f64).exp();
    let runs = 10_000u64;
    let total: usize = (0..runs).map(|s| sample_pnp(n, c, s).unwrap().len()).sum();
    let mean = total as f64 / runs as f64;
    let expected = 1024.0 * p;
    let se = (1024.0 * p * (1.0 - p) / runs as f64).sqrt();
    assert!((expected - 18.75).abs() < 0.01);
    assert!((mean - expected).abs() < 3.0 * se, "mean {mean}, expected {expected} ± {se}");
}

#[test]
fn sweeps_are_reproducible() {
    let v = parse_catalog_spec("V").unwrap();
    let grid = [0.3, 0.35, 0.4];
    let a = sweep(&v, 16, &grid, 12, 99).unwrap();
    let b = sweep(&v, 16, &grid, 12, 99).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_value(&a.cells.iter().map(|c| (c.c, c.successes)).collect::<Vec<_>>()).unwrap(),
               serde_json::to_value(&b.cells.iter().map(|c| (c.c, c.successes)).collect::<Vec<_>>()).unwrap());
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn containment_matches_backtracking(
        words in proptest::collection::btree_set(0u64..1 << 9, 0..120),
        which in 0usize..7,
        induced in any::<bool>(),
    ) {
        let specs = ["chain:2", "chain:3", "chain:4", "V", "lambda", "layered:1,3", "diamond"];
        let pattern = parse_catalog_spec(specs[which]).unwrap();
        let s = Sample::from_words(9, words.into_iter().collect()).unwrap();
        let fast = contains_pattern(&s, &pattern, induced).unwrap();
        let slow = contains_pattern_generic(&s, &pattern, induced).unwrap().is_some();
        prop_assert_eq!(fast, slow);
    }
}

#[test]
fn containment_on_random_samples_up_to_200_elements() {
    let patterns: Vec<Poset> = ["chain:2", "chain:3", "V", "lambda", "layered:1,3", "layered:3,1"]
        .iter()
        .map(|s| parse_catalog_spec(s).unwrap())
        .collect();
    for seed in 0..60u64 {
        let n = 10 + (seed % 5) as usize;
        let c = 0.25 + 0.01 * (seed % 20) as f64;
        let s = sample_pnp(n, c, seed).unwrap();
        if s.len() > 200 {
            continue;
        }
        for p in &patterns {
            for induced in [false, true] {
                let slow = contains_pattern_generic(&s, p, induced).unwrap().is_some();
                assert_eq!(contains_pattern(&s, p, induced).unwrap(), slow, "seed {seed}");
            }
        }
    }
    let c2 = catalog("chain", &[2]).unwrap();
    assert!(contains_pattern(&Sample::from_words(3, vec![0b000, 0b101]).unwrap(), &c2, true).unwrap());
}
