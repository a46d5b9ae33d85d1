use super::entropy::h2;
use super::table::{ConstraintTable, DEFAULT_MAX_ELEMENTS};
use crate::correspondence::Weighting;
use crate::error::{Error, Result};
use crate::poset::{antichains, AntichainFamily, ElementSubset, Poset};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Class {
    UniformlyBalanced,
    Balanced,
    General,
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Class::UniformlyBalanced => "Uniform",
            Class::Balanced => "Balanced",
            Class::General => "General",
        })
    }
}

/// The squashed weighting of a bounded poset and the exponent it certifies.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BalancedSolution {
    pub x_star: f64,
    pub c_value: f64,
    pub b_weighting: Weighting,
}

/// `F_{q,a}(x)`: the exponent of a subposet of size `q` with `a` antichains
/// that contains both extremes, when the extremes carry weight `x` each.
fn squashed(q: usize, a: usize, x: f64) -> f64 {
    let rest = 1.0 - 2.0 * x;
    let mut v = 0.0;
    if x > 0.0 {
        v -= 2.0 * x * x.ln();
    }
    if rest > 0.0 {
        v -= rest * (rest / (a as f64 - 2.0)).ln();
    }
    v / q as f64
}

fn check_bounded(p: &Poset, family: &AntichainFamily) -> Result<(usize, usize)> {
    let (lo, hi) = match (p.unique_min(), p.unique_max()) {
        (Some(lo), Some(hi)) if p.len() >= 2 => (lo, hi),
        _ => {
            return Err(Error::InvalidParameter(
                "needs a poset with at least two elements, a unique minimum and a unique maximum".into(),
            ))
        }
    };
    if family.len() < 3 {
        return Err(Error::InvalidParameter("needs at least three antichains".into()));
    }
    Ok((lo, hi))
}

/// The weighting with `x` on the empty antichain and on `{min}`, the rest spread evenly.
pub fn b_weighting(p: &Poset, family: &AntichainFamily, x: f64) -> Result<Weighting> {
    let (lo, _) = check_bounded(p, family)?;
    let a = family.len();
    let other = (1.0 - 2.0 * x) / (a as f64 - 2.0);
    let bottom = ElementSubset::singleton(lo);
    let coords = family
        .iter()
        .map(|s| if s.is_empty() || s == bottom { x } else { other })
        .collect();
    Weighting::new(coords)
}

/// Distinct `(|Q|, a(Q))` over subposets `Q` holding both the minimum and the maximum.
fn extreme_shapes(p: &Poset, lo: usize, hi: usize) -> Result<BTreeSet<(usize, usize)>> {
    let n = p.len();
    if n > 24 {
        return Err(Error::Capacity { what: format!("{n}-element poset for the balanced solve"), limit: 24 });
    }
    let ends = ElementSubset::from_indices([lo, hi]);
    let free: Vec<usize> = p.all().difference(ends).iter().collect();
    let mut shapes = BTreeSet::new();
    for bits in 0..(1u64 << free.len()) {
        let q = free
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .fold(ends, |acc, (_, &e)| acc.union(ElementSubset::singleton(e)));
        let a = AntichainFamily::within(p, q, crate::poset::DEFAULT_ANTICHAIN_CAP)?.len();
        shapes.insert((q.len(), a));
    }
    Ok(shapes)
}

/// Maximizes `min{H_2(x), F_Q(x)}` over `x ∈ [1/a(P), 1/2]`, `Q` ranging over
/// the subposets that keep both extremes.
///
/// When the whole poset is the binding subposet this is the root of
/// `H_2(x) = F_P(x)` in the bracket; the value is the best exponent any
/// squashed weighting can reach.
pub fn balanced_solve(p: &Poset) -> Result<BalancedSolution> {
    let family = antichains(p)?;
    let (lo, hi) = check_bounded(p, &family)?;
    let shapes: Vec<(usize, usize)> = extreme_shapes(p, lo, hi)?.into_iter().collect();
    let phi = |x: f64| shapes.iter().fold(h2(x), |m, &(q, a)| m.min(squashed(q, a, x)));
    let which = |x: f64| -> usize {
        let mut best = (h2(x), 0usize);
        for (k, &(q, a)) in shapes.iter().enumerate() {
            let v = squashed(q, a, x);
            if v < best.0 {
                best = (v, k + 1);
            }
        }
        best.1
    };
    let eval = |k: usize, x: f64| if k == 0 { h2(x) } else { squashed(shapes[k - 1].0, shapes[k - 1].1, x) };

    let (mut a, mut b) = (1.0 / family.len() as f64, 0.5);
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if phi(m1) < phi(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let mut x = 0.5 * (a + b);
    let delta = 1e-9;
    let left = which((x - delta).max(1.0 / family.len() as f64));
    let right = which((x + delta).min(0.5));
    if left != right {
        let d = |y: f64| eval(left, y) - eval(right, y);
        let (mut l, mut r) = ((x - delta).max(0.0), (x + delta).min(0.5));
        if d(l).signum() != d(r).signum() {
            for _ in 0..200 {
                let mid = 0.5 * (l + r);
                if d(mid).signum() == d(l).signum() {
                    l = mid;
                } else {
                    r = mid;
                }
            }
            x = 0.5 * (l + r);
        }
    } else if left > 0 {
        let peak = 1.0 / shapes[left - 1].1 as f64;
        if (peak - x).abs() < 1e-6 && peak >= 1.0 / family.len() as f64 {
            x = peak;
        }
    }
    let c_value = phi(x);
    let b = b_weighting(p, &family, x)?;
    Ok(BalancedSolution { x_star: x, c_value, b_weighting: b })
}

/// The root of `H_2(x) = F_P(x)` in `[1/a(P), 1/2]` by bisection.
pub fn balanced_equation_root(p: &Poset) -> Result<f64> {
    let family = antichains(p)?;
    check_bounded(p, &family)?;
    let (n, m) = (p.len(), family.len());
    bisect(|x| h2(x) - squashed(n, m, x), 1.0 / m as f64, 0.5)
}

/// Bisection to full double precision; the endpoints must bracket a sign change.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::RootBracket { lo, hi, f_lo, f_hi });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == f_lo.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Outcome of the class tests with the subposets that failed them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub class: Class,
    /// `log a(P) / |P|`.
    pub uniform_value: f64,
    /// Subposets `Q` with `c_{u,P}(Q)` below the uniform value, with their exponents.
    pub uniform_violations: Vec<(u128, f64)>,
    pub balanced: Option<BalancedSolution>,
    pub balanced_violations: Vec<(u128, f64)>,
}

pub fn classify(p: &Poset) -> Result<Classification> {
    let family = antichains(p)?;
    let table = ConstraintTable::build(p, &family, DEFAULT_MAX_ELEMENTS.max(p.len().min(20)))?;
    classify_with(p, &family, &table)
}

pub(crate) fn classify_with(p: &Poset, family: &AntichainFamily, table: &ConstraintTable) -> Result<Classification> {
    let m = family.len();
    let uniform_value = (m as f64).ln() / p.len() as f64;
    let u = vec![1.0 / m as f64; m];
    let violations = |alpha: &[f64], bound: f64| -> Vec<(u128, f64)> {
        let mut out: Vec<(u128, f64)> = table
            .values(alpha)
            .into_iter()
            .zip(&table.constraints)
            .filter(|(v, _)| *v < bound)
            .flat_map(|(v, c)| c.masks.iter().map(move |&q| (q, v)))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    };
    let uniform_violations = violations(&u, uniform_value - 1e-12);
    let balanced = if p.is_bounded() && p.len() >= 2 && m >= 3 { Some(balanced_solve(p)?) } else { None };
    let balanced_violations = match &balanced {
        Some(b) => violations(b.b_weighting.coords(), b.c_value - 1e-9),
        None => Vec::new(),
    };
    let class = if uniform_violations.is_empty() {
        Class::UniformlyBalanced
    } else if balanced.is_some() && balanced_violations.is_empty() {
        Class::Balanced
    } else {
        Class::General
    };
    Ok(Classification { class, uniform_value, uniform_violations, balanced, balanced_violations })
}
