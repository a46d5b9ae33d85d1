use super::classify::{balanced_solve, bisect};
use super::entropy::h2;
use super::optimize::c_star;
use crate::error::{Error, Result};
use crate::poset::{antichains, Poset};
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// Root `x⋆` of `(1 − x) log 2 = H_2(x)` in `(0, 1/2)` and `c = H_2(x⋆)`.
pub fn star_threshold() -> Result<(f64, f64)> {
    let x = bisect(|x| (1.0 - x) * LN_2 - h2(x), 0.0, 0.5)?;
    Ok((x, h2(x)))
}

/// Root `x⋆` of `2(1 − 3x) log 2 = H_2(2x)` in `[1/6, 1/4]` and `c = (1 − 2x⋆) log 2`.
pub fn wide_diamond_threshold() -> Result<(f64, f64)> {
    let x = bisect(|x| 2.0 * (1.0 - 3.0 * x) * LN_2 - h2(2.0 * x), 1.0 / 6.0, 0.25)?;
    Ok((x, (1.0 - 2.0 * x) * LN_2))
}

pub fn chain_threshold(t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidParameter("chain length must be positive".into()));
    }
    Ok(((t + 1) as f64).ln() / t as f64)
}

/// Lower and upper bounds for `ℓ` stacked antichains of width `t`.
pub fn blowup_bounds(l: usize, t: usize) -> Result<(f64, f64)> {
    if l == 0 || t == 0 {
        return Err(Error::InvalidParameter("blow-up needs positive ℓ and t".into()));
    }
    let (lf, tf) = (l as f64, t as f64);
    let lo = LN_2 / lf;
    let hi = lo + (lf - (lf - 1.0) * 2f64.powi(-(t as i32))).ln() / (lf * tf);
    Ok((lo, hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftKind {
    /// `C(1, Q)`: a new minimum below `Q`.
    Bottom,
    /// `C(1, Q, 1)`: a new minimum and a new maximum around `Q`.
    Both,
}

/// Lower bound for a lift of `Q` computed from a known `c⋆(Q) ≤ log 2`.
///
/// `Bottom` balances `(1 − x) c = H_2(x)` and returns `H_2(x⋆)`;
/// `Both` balances `2(1 − 2x) c − 2x log 2 = H_2(2x)` and returns `(1 − 2x⋆) c`.
pub fn lift_bound_from(c_q: f64, kind: LiftKind) -> Result<f64> {
    if !(c_q > 0.0 && c_q <= LN_2 + 1e-12) {
        return Err(Error::InvalidParameter(format!("lift needs 0 < c⋆(Q) ≤ log 2, got {c_q}")));
    }
    match kind {
        LiftKind::Bottom => {
            let x = bisect(|x| (1.0 - x) * c_q - h2(x), 0.0, 0.5)?;
            Ok(h2(x))
        }
        LiftKind::Both => {
            let x = bisect(|x| 2.0 * (1.0 - 2.0 * x) * c_q - 2.0 * x * LN_2 - h2(2.0 * x), 0.0, 0.25)?;
            Ok((1.0 - 2.0 * x) * c_q)
        }
    }
}

pub fn lift_lower_bound(q: &Poset, kind: LiftKind) -> Result<f64> {
    let rep = c_star(q, 1e-9)?;
    lift_bound_from(rep.lower, kind)
}

/// `max_x min{H_2(x), F_Q(x)}` over subposets through both extremes.
pub fn bounded_upper_bound(p: &Poset) -> Result<f64> {
    Ok(balanced_solve(p)?.c_value)
}

/// `log a(P) / |P|`.
pub fn trivial_upper_bound(p: &Poset) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::InvalidParameter("empty poset".into()));
    }
    Ok((antichains(p)?.len() as f64).ln() / p.len() as f64)
}

/// Band `(log 2/3, log 2/3 + log(3 − 2·2^{−t})/(3t))` with `t = ⌈b log N⌉`.
///
/// The constant `b` is a free parameter; `b = 1` is a reasonable default.
pub fn universality_band(n: usize, b: f64) -> Result<(f64, f64)> {
    if n < 2 || !(b > 0.0) {
        return Err(Error::InvalidParameter("universality band needs N ≥ 2 and b > 0".into()));
    }
    let t = (b * (n as f64).ln()).ceil().max(1.0);
    let lo = LN_2 / 3.0;
    Ok((lo, lo + (3.0 - 2.0 * 2f64.powf(-t)).ln() / (3.0 * t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn star_root() {
        let (x, c) = star_threshold().unwrap();
        assert!(((1.0 - x) * LN_2 - h2(x)).abs() < 1e-12);
        assert!((c - 0.5357390).abs() < 1e-6);
    }

    #[test]
    fn wide_diamond_root_solves_its_equation() {
        let (x, c) = wide_diamond_threshold().unwrap();
        assert!((2.0 * (1.0 - 3.0 * x) * LN_2 - h2(2.0 * x)).abs() < 1e-12);
        assert!((c - 0.4476995513).abs() < 1e-9);
    }

    #[test]
    fn blowups_and_trivial_bounds() {
        let (lo, hi) = blowup_bounds(3, 1).unwrap();
        assert!((lo - 0.231049).abs() < 1e-6);
        let (_, hi8) = blowup_bounds(3, 8).unwrap();
        assert!(hi8 - lo < hi - lo);
        let b2 = catalog("boolean", &[2]).unwrap();
        assert!((trivial_upper_bound(&b2).unwrap() - 6f64.ln() / 4.0).abs() < 1e-15);
        let blow = catalog("blowup", &[3, 2]).unwrap();
        assert!((trivial_upper_bound(&blow).unwrap() - blowup_bounds(3, 2).unwrap().1).abs() < 1e-12);
    }

    #[test]
    fn lifts_reduce_to_the_named_theorems() {
        let star = lift_bound_from(LN_2, LiftKind::Bottom).unwrap();
        assert!((star - star_threshold().unwrap().1).abs() < 1e-12);
        let wide = lift_bound_from(LN_2, LiftKind::Both).unwrap();
        assert!((wide - wide_diamond_threshold().unwrap().1).abs() < 1e-12);
        assert!(lift_bound_from(1.0, LiftKind::Bottom).is_err());
    }

    #[test]
    fn universality() {
        let (lo, hi) = universality_band(1000, 1.0).unwrap();
        assert!((lo - LN_2 / 3.0).abs() < 1e-15);
        assert!(hi > lo);
        let (_, far) = universality_band(1_000_000, 1.0).unwrap();
        assert!(far < hi);
    }
}
