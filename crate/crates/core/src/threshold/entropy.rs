use crate::correspondence::{ShadowMap, Weighting};
use crate::error::{Error, Result};
use crate::poset::{antichains, ElementSubset, Poset};

/// `-Σ a ln a` in nats, with `0 ln 0 = 0`.
pub fn entropy(alpha: &Weighting) -> f64 {
    entropy_raw(alpha.coords())
}

/// Entropy of raw coordinates, rejecting negative entries.
pub fn entropy_of(coords: &[f64]) -> Result<f64> {
    if let Some(bad) = coords.iter().find(|c| **c < 0.0 || !c.is_finite()) {
        return Err(Error::InvalidParameter(format!("coordinate {bad} is not a probability")));
    }
    Ok(entropy_raw(coords))
}

pub(crate) fn entropy_raw(coords: &[f64]) -> f64 {
    coords.iter().filter(|&&a| a > 0.0).map(|&a| -a * a.ln()).sum()
}

/// Binary entropy `H_2(x)`.
pub fn h2(x: f64) -> f64 {
    entropy_raw(&[x, 1.0 - x])
}

/// `c_{α,P}(Q) = H(∂_Q α) / |Q|`.
pub fn critical_exponent_wrt(p: &Poset, alpha: &Weighting, q: ElementSubset) -> Result<f64> {
    if q.is_empty() {
        return Err(Error::EmptySubset);
    }
    let fam = antichains(p)?;
    if fam.len() != alpha.len() {
        return Err(Error::IndexMismatch { expected: fam.len(), found: alpha.len() });
    }
    let map = ShadowMap::new(p, &fam, q)?;
    Ok(entropy(&map.weighting(alpha)) / q.len() as f64)
}
