use crate::error::{Error, Result};
use crate::poset::{contains_copy, Poset, WordOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

pub const DEFAULT_ELEMENT_BUDGET: f64 = 1e7;
/// Largest sample handed to the generic backtracking search.
pub const GENERIC_SEARCH_CAP: usize = 10_000;

/// A draw of `P(n, p)` with `p = e^{-cn}`, stored as sorted `n`-bit words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub n: usize,
    pub c: f64,
    pub seed: u64,
    pub elements: Vec<u64>,
}

impl Sample {
    pub fn from_words(n: usize, mut elements: Vec<u64>) -> Result<Self> {
        if n > 63 {
            return Err(Error::InvalidParameter("dimension above 63".into()));
        }
        if elements.iter().any(|&w| w >> n != 0) {
            return Err(Error::InvalidParameter(format!("word wider than {n} bits")));
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("repeated word".into()));
        }
        Ok(Sample { n, c: f64::NAN, seed: 0, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn retention(&self) -> f64 {
        (-self.c * self.n as f64).exp()
    }
}

/// Binomially many distinct uniform words, which has the law of independent retention.
pub fn sample_pnp(n: usize, c: f64, seed: u64) -> Result<Sample> {
    sample_pnp_with_budget(n, c, seed, DEFAULT_ELEMENT_BUDGET)
}

pub fn sample_pnp_with_budget(n: usize, c: f64, seed: u64, budget: f64) -> Result<Sample> {
    if n > 63 {
        return Err(Error::InvalidParameter("dimension above 63".into()));
    }
    if !c.is_finite() || c < 0.0 {
        return Err(Error::InvalidParameter(format!("exponent {c} must be finite and nonnegative")));
    }
    let total = 1u64 << n;
    let p = (-c * n as f64).exp().min(1.0);
    let expected = total as f64 * p;
    if expected > budget {
        return Err(Error::Capacity { what: format!("expected {expected:.3e} sampled elements"), limit: budget as u128 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = Binomial::new(total, p).map_err(|e| Error::InvalidParameter(e.to_string()))?.sample(&mut rng);
    let complement = k > total / 2;
    let draws = if complement { total - k } else { k };
    let mut chosen: HashSet<u64> = HashSet::with_capacity(draws as usize);
    while (chosen.len() as u64) < draws {
        chosen.insert(rng.random_range(0..total));
    }
    let mut elements: Vec<u64> = if complement {
        (0..total).filter(|w| !chosen.contains(w)).collect()
    } else {
        chosen.into_iter().collect()
    };
    elements.sort_unstable();
    Ok(Sample { n, c, seed, elements })
}

fn subset(a: u64, b: u64) -> bool {
    a != b && a & !b == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Chain,
    /// One minimum under `k` pairwise incomparable maxima.
    Star(usize),
    /// One maximum over `k` pairwise incomparable minima.
    CoStar(usize),
    Other,
}

fn shape(p: &Poset) -> Shape {
    let n = p.len();
    if p.is_chain() {
        return Shape::Chain;
    }
    if n >= 3 {
        let k = n - 1;
        if let Some(lo) = p.unique_min() {
            if p.maximal_elements().len() == k && p.up(lo).len() == k {
                return Shape::Star(k);
            }
        }
        if let Some(hi) = p.unique_max() {
            if p.minimal_elements().len() == k && p.down(hi).len() == k {
                return Shape::CoStar(k);
            }
        }
    }
    Shape::Other
}

fn longest_chain_at_least(words: &[u64], t: usize) -> bool {
    if t <= 1 {
        return !words.is_empty() || t == 0;
    }
    let mut order: Vec<u64> = words.to_vec();
    order.sort_by_key(|w| (w.count_ones(), *w));
    let mut best = vec![1usize; order.len()];
    for i in 0..order.len() {
        for j in 0..i {
            if best[j] + 1 > best[i] && subset(order[j], order[i]) {
                best[i] = best[j] + 1;
                if best[i] >= t {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether some word has `k` words strictly above it (pairwise incomparable when `induced`).
fn star(words: &[u64], k: usize, induced: bool, up: bool) -> bool {
    let mut above: Vec<u64> = Vec::new();
    for &w in words {
        above.clear();
        above.extend(words.iter().copied().filter(|&x| if up { subset(w, x) } else { subset(x, w) }));
        if above.len() < k {
            continue;
        }
        if !induced || k <= 1 {
            return true;
        }
        if has_antichain(&above, k) {
            return true;
        }
    }
    false
}

fn has_antichain(words: &[u64], k: usize) -> bool {
    fn go(words: &[u64], start: usize, chosen: &mut Vec<u64>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for i in start..words.len() {
            let w = words[i];
            if chosen.iter().all(|&c| !subset(c, w) && !subset(w, c)) {
                chosen.push(w);
                if go(words, i + 1, chosen, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(words, 0, &mut Vec::new(), k)
}

/// Whether the sampled words, ordered by inclusion, contain a copy of `p`.
pub fn contains_pattern(s: &Sample, p: &Poset, induced: bool) -> Result<bool> {
    if p.is_empty() {
        return Ok(true);
    }
    if s.len() < p.len() {
        return Ok(false);
    }
    match shape(p) {
        Shape::Chain => Ok(longest_chain_at_least(&s.elements, p.len())),
        Shape::Star(k) => Ok(star(&s.elements, k, induced, true)),
        Shape::CoStar(k) => Ok(star(&s.elements, k, induced, false)),
        Shape::Other => contains_pattern_generic(s, p, induced).map(|m| m.is_some()),
    }
}

/// Backtracking search; returns the words of one copy.
pub fn contains_pattern_generic(s: &Sample, p: &Poset, induced: bool) -> Result<Option<Vec<u64>>> {
    if s.len() > GENERIC_SEARCH_CAP {
        return Err(Error::Capacity { what: format!("{}-element sample for generic search", s.len()), limit: GENERIC_SEARCH_CAP as u128 });
    }
    let host = WordOrder(&s.elements);
    Ok(contains_copy(&host, p, induced).map(|m| m.iter().map(|&i| s.elements[i]).collect()))
}
