//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use poset_threshold::poset::{antichains, Poset};
use poset_threshold::threshold::{ConstraintTable, Orbits};
use proptest::prelude::*;

/// A random strict order on up to `max_n` elements: each pair `i < j` of
/// indices is related with probability `density`, then closed transitively.
pub fn poset_strategy(min_n: usize, max_n: usize, density: f64) -> impl Strategy<Value = Poset> {
    (min_n..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(density), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut rels = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        rels.push((i, j));
                    }
                    k += 1;
                }
            }
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            Poset::from_relations(labels, &rels).expect("index order is acyclic")
        })
    })
}

/// A point of the open simplex from positive raw weights.
pub fn simplex_strategy(m: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.001f64..1.0, m).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect()
    })
}

pub fn brute_antichain_count(p: &Poset) -> usize {
    let n = p.len();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| s >> j & 1 == 0 || !p.lt(i, j))))
        .count()
}

/// Whether some injection `pattern -> host` preserves (and, if `induced`, reflects) the order.
pub fn brute_contains(host: &Poset, pattern: &Poset, induced: bool) -> bool {
    fn go(host: &Poset, pat: &Poset, induced: bool, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == pat.len() {
            return (0..k).all(|i| {
                (0..k).all(|j| {
                    i == j || {
                        let (pl, hl) = (pat.lt(i, j), host.lt(map[i], map[j]));
                        if induced {
                            pl == hl
                        } else {
                            !pl || hl
                        }
                    }
                })
            });
        }
        for h in 0..host.len() {
            if !used[h] {
                used[h] = true;
                map.push(h);
                let found = go(host, pat, induced, map, used);
                map.pop();
                used[h] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    go(host, pattern, induced, &mut Vec::new(), &mut vec![false; host.len()])
}

/// Every 2-colouring of `host` (bit set = colour 2) checked with `brute_contains`.
pub fn brute_arrows(host: &Poset, p: &Poset, q: &Poset) -> bool {
    let n = host.len();
    (0u32..1 << n).all(|col| {
        let side = |bit: u32| -> Poset {
            let keep: Vec<usize> = (0..n).filter(|&e| col >> e & 1 == bit).collect();
            host.induced(keep.iter().copied().collect()).map(|s| s.poset).unwrap_or_else(|_| Poset::discrete(0).unwrap())
        };
        let (one, two) = (side(0), side(1));
        (!one.is_empty() && brute_contains(&one, p, false)) || (!two.is_empty() && brute_contains(&two, q, false))
    })
}

/// `max g` over weightings whose coordinates are multiples of `1/steps`,
/// restricted to points constant on the given orbits.
pub fn grid_max(p: &Poset, steps: usize, orbits: &Orbits) -> f64 {
    let family = antichains(p).unwrap();
    let table = ConstraintTable::build(p, &family, 16).unwrap();
    let k = orbits.count;
    let mut counts = vec![0usize; k];
    let mut alpha = vec![0.0; family.len()];
    let mut best = f64::NEG_INFINITY;
    fn rec(
        i: usize,
        left: usize,
        counts: &mut Vec<usize>,
        orbits: &Orbits,
        steps: usize,
        alpha: &mut Vec<f64>,
        table: &ConstraintTable,
        best: &mut f64,
    ) {
        let k = counts.len();
        if i == k - 1 {
            if left % orbits.sizes[i] != 0 {
                return;
            }
            counts[i] = left / orbits.sizes[i];
            for (j, a) in alpha.iter_mut().enumerate() {
                *a = counts[orbits.of[j]] as f64 / steps as f64;
            }
            let g = table.objective(alpha);
            if g > *best {
                *best = g;
            }
            return;
        }
        for c in 0..=left / orbits.sizes[i] {
            counts[i] = c;
            rec(i + 1, left - c * orbits.sizes[i], counts, orbits, steps, alpha, table, best);
        }
    }
    rec(0, steps, &mut counts, orbits, steps, &mut alpha, &table, &mut best);
    best
}

/// `g(α) = min_Q H(∂_Q α)/|Q|` over every nonempty subposet.
pub fn objective(p: &Poset, alpha: &[f64]) -> f64 {
    let family = antichains(p).unwrap();
    ConstraintTable::build(p, &family, 16).unwrap().objective(alpha)
}
