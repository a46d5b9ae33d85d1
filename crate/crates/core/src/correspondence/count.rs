use super::{Correspondence, Weighting};
use crate::error::{Error, Result};
use crate::poset::Poset;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const COUNT_CAP: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyMode {
    /// Every order-preserving map, collisions allowed.
    Weak,
    /// Injective order-preserving maps.
    Injective,
    /// Injective maps that also reflect the order.
    Induced,
}

impl std::str::FromStr for CopyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(CopyMode::Weak),
            "injective" => Ok(CopyMode::Injective),
            "induced" => Ok(CopyMode::Induced),
            other => Err(Error::InvalidParameter(format!("unknown copy mode `{other}`"))),
        }
    }
}

/// Tallies from one sweep over all of `[m]^[n]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyCounts {
    pub weak: u128,
    pub injective: u128,
    pub induced: u128,
    /// Partitions with every part nonempty.
    pub starred: u128,
}

impl CopyCounts {
    pub fn get(&self, mode: CopyMode) -> u128 {
        match mode {
            CopyMode::Weak => self.weak,
            CopyMode::Injective => self.injective,
            CopyMode::Induced => self.induced,
        }
    }

    fn merge(self, o: CopyCounts) -> CopyCounts {
        CopyCounts {
            weak: self.weak + o.weak,
            injective: self.injective + o.injective,
            induced: self.induced + o.induced,
            starred: self.starred + o.starred,
        }
    }
}

fn guard(m: usize, n: usize) -> Result<u128> {
    let total = (m as u128).checked_pow(n as u32).filter(|&t| t <= COUNT_CAP);
    total.ok_or_else(|| Error::Capacity { what: format!("{m}^{n} partitions"), limit: COUNT_CAP })
}

/// Counts maps `P -> P(n)` by pushing every partition of `[n]` through `f2`.
///
/// The leading digit of the partition labels is split across worker threads.
pub fn count_all_modes(p: &Poset, n: usize) -> Result<CopyCounts> {
    let corr = Correspondence::new(p)?;
    let m = corr.m();
    guard(m, n)?;
    if n == 0 {
        let x = vec![0u64; p.len()];
        return Ok(tally(p, &x, true));
    }
    let contrib: Vec<u128> = (0..m).map(|j| corr.meets(j).bits()).collect();
    let relation = (0..p.len()).map(|i| p.up(i).bits()).collect::<Vec<_>>();
    let counts = (0..m)
        .into_par_iter()
        .map(|lead| {
            let mut labels = vec![0usize; n];
            labels[0] = lead;
            let mut acc = CopyCounts::default();
            let mut sets = vec![0u64; p.len()];
            loop {
                sets.iter_mut().for_each(|s| *s = 0);
                let mut seen = 0u128;
                for (x, &j) in labels.iter().enumerate() {
                    seen |= 1u128 << j;
                    for i in crate::poset::ElementSubset(contrib[j]) {
                        sets[i] |= 1u64 << x;
                    }
                }
                let starred = seen.count_ones() as usize == m;
                acc = acc.merge(tally_fast(&relation, &sets, starred));
                // odometer over labels[1..]
                let mut k = n - 1;
                loop {
                    if k == 0 {
                        return acc;
                    }
                    labels[k] += 1;
                    if labels[k] < m {
                        break;
                    }
                    labels[k] = 0;
                    k -= 1;
                }
            }
        })
        .reduce(CopyCounts::default, CopyCounts::merge);
    Ok(counts)
}

fn tally(p: &Poset, sets: &[u64], starred: bool) -> CopyCounts {
    let relation: Vec<u128> = (0..p.len()).map(|i| p.up(i).bits()).collect();
    tally_fast(&relation, sets, starred)
}

fn tally_fast(up: &[u128], sets: &[u64], starred: bool) -> CopyCounts {
    let k = sets.len();
    let mut injective = true;
    let mut reflecting = true;
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            if sets[i] == sets[j] {
                injective = false;
            }
            let sub = sets[i] & !sets[j] == 0;
            if sub != ((up[i] >> j) & 1 == 1) {
                reflecting = false;
            }
        }
    }
    CopyCounts {
        weak: 1,
        injective: injective as u128,
        induced: (injective && reflecting) as u128,
        starred: starred as u128,
    }
}

/// Number of maps of the given kind from `p` into `P(n)`, via the partition correspondence.
pub fn count_copies(p: &Poset, n: usize, mode: CopyMode) -> Result<u128> {
    Ok(count_all_modes(p, n)?.get(mode))
}

/// The same count by backtracking directly over the subsets of `[n]`.
pub fn count_copies_direct(p: &Poset, n: usize, mode: CopyMode) -> Result<u128> {
    if n > 16 {
        return Err(Error::Capacity { what: format!("direct count in P({n})"), limit: 16 });
    }
    let order = p.linear_extension();
    let mut sets = vec![0u64; p.len()];
    let mut placed = vec![false; p.len()];
    fn go(p: &Poset, order: &[usize], k: usize, n: usize, mode: CopyMode, sets: &mut [u64], placed: &mut [bool]) -> u128 {
        if k == order.len() {
            return 1;
        }
        let e = order[k];
        let mut total = 0;
        for w in 0..(1u64 << n) {
            let ok = (0..p.len()).filter(|&q| placed[q]).all(|q| {
                let x = sets[q];
                let below = x & !w == 0;
                let above = w & !x == 0;
                match mode {
                    CopyMode::Weak => !p.lt(q, e) || below,
                    CopyMode::Injective => x != w && (!p.lt(q, e) || below),
                    CopyMode::Induced => {
                        x != w && below == p.lt(q, e) && above == p.lt(e, q)
                    }
                }
            });
            if ok {
                sets[e] = w;
                placed[e] = true;
                total += go(p, order, k + 1, n, mode, sets, placed);
                placed[e] = false;
            }
        }
        total
    }
    Ok(go(p, &order, 0, n, mode, &mut sets, &mut placed))
}

/// Exact and approximate counts of partitions whose weighting is within `eps` of `alpha`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightedPartitionCount {
    pub n: usize,
    pub exact: BigUint,
    pub log_exact: f64,
    /// `H(alpha) * n`, the leading term of `log exact`.
    pub entropy_rate: f64,
    /// Number of integer compositions `k` with `|k_j / n - alpha_j| <= eps`.
    pub compositions: usize,
}

pub fn count_weighted_partitions(alpha: &Weighting, n: usize, eps: f64) -> Result<WeightedPartitionCount> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidParameter("eps must be nonnegative".into()));
    }
    let nf = n as f64;
    let slack = 1e-9;
    let bounds: Vec<(usize, usize)> = alpha
        .coords()
        .iter()
        .map(|&a| {
            let lo = (nf * (a - eps) - slack).ceil().max(0.0) as usize;
            let hi = (nf * (a + eps) + slack).floor().min(nf) as usize;
            (lo, hi)
        })
        .collect();
    let mut fact = vec![BigUint::one()];
    for i in 1..=n {
        let next = &fact[i - 1] * BigUint::from(i);
        fact.push(next);
    }
    let mut total = BigUint::zero();
    let mut compositions = 0usize;
    let mut parts = Vec::with_capacity(bounds.len());
    fn go(
        bounds: &[(usize, usize)],
        left: usize,
        parts: &mut Vec<usize>,
        fact: &[BigUint],
        total: &mut BigUint,
        count: &mut usize,
    ) {
        let k = parts.len();
        if k == bounds.len() {
            if left == 0 {
                let denom = parts.iter().fold(BigUint::one(), |acc, &p| acc * &fact[p]);
                *total += &fact[fact.len() - 1] / denom;
                *count += 1;
            }
            return;
        }
        let rest_min: usize = bounds[k + 1..].iter().map(|b| b.0).sum();
        let rest_max: usize = bounds[k + 1..].iter().map(|b| b.1).sum();
        let (lo, hi) = bounds[k];
        for v in lo..=hi.min(left) {
            let remain = left - v;
            if remain < rest_min || remain > rest_max {
                continue;
            }
            parts.push(v);
            go(bounds, remain, parts, fact, total, count);
            parts.pop();
        }
    }
    go(&bounds, n, &mut parts, &fact, &mut total, &mut compositions);
    if compositions == 0 {
        return Err(Error::Infeasible(format!("no composition of {n} lies within {eps} of the weighting")));
    }
    let log_exact = biguint_ln(&total);
    let entropy_rate = crate::threshold::entropy(alpha) * nf;
    Ok(WeightedPartitionCount { n, exact: total, log_exact, entropy_rate, compositions })
}

fn biguint_ln(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(64);
            let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}
