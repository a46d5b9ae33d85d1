use crate::error::{Error, Result};
use crate::poset::Poset;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Largest ground set `[n]` a partition or copy can live on.
pub const MAX_GROUND: usize = 64;

/// An ordered partition `(A_1, .., A_m)` of the ground set `{0, .., n-1}`.
///
/// Parts may be empty; part `j` belongs to the `j`-th antichain of the
/// parent family, so the last part is the empty-antichain part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    parts: Vec<u64>,
}

fn ground(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Partition {
    pub fn new(n: usize, parts: Vec<u64>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Capacity { what: format!("ground set of size {n}"), limit: MAX_GROUND as u128 });
        }
        let mut seen = 0u64;
        for &p in &parts {
            if p & seen != 0 || p & !ground(n) != 0 {
                return Err(Error::InvalidParameter("parts overlap or leave the ground set".into()));
            }
            seen |= p;
        }
        if seen != ground(n) {
            return Err(Error::InvalidParameter("parts do not cover the ground set".into()));
        }
        Ok(Partition { n, parts })
    }

    /// Partition putting ground element `x` into part `labels[x]`.
    pub fn from_labels(m: usize, labels: &[usize]) -> Result<Self> {
        let mut parts = vec![0u64; m];
        for (x, &j) in labels.iter().enumerate() {
            if j >= m {
                return Err(Error::IndexMismatch { expected: m, found: j + 1 });
            }
            parts[j] |= 1u64 << x;
        }
        Partition::new(labels.len(), parts)
    }

    /// Each ground element placed in a uniformly random part.
    pub fn random<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Self {
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
        Partition::from_labels(m, &labels).expect("labels are in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> u64 {
        self.parts[j]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.count_ones() as usize).collect()
    }

    /// True when every part is nonempty.
    pub fn is_starred(&self) -> bool {
        self.parts.iter().all(|&p| p != 0)
    }

    /// The part holding each ground element.
    pub fn labels(&self) -> Vec<usize> {
        (0..self.n)
            .map(|x| self.parts.iter().position(|&p| (p >> x) & 1 == 1).unwrap())
            .collect()
    }

    /// Normalised part sizes.
    pub fn weighting(&self) -> Weighting {
        let n = self.n.max(1) as f64;
        Weighting(self.parts.iter().map(|p| p.count_ones() as f64 / n).collect())
    }
}

/// A map `i -> X_i` from poset elements into subsets of `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CopyMap {
    n: usize,
    sets: Vec<u64>,
}

impl CopyMap {
    pub fn new(n: usize, sets: Vec<u64>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Capacity { what: format!("ground set of size {n}"), limit: MAX_GROUND as u128 });
        }
        if sets.iter().any(|&s| s & !ground(n) != 0) {
            return Err(Error::InvalidParameter("set exceeds the ground set".into()));
        }
        Ok(CopyMap { n, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> u64 {
        self.sets[i]
    }

    pub fn is_injective(&self) -> bool {
        let mut s = self.sets.clone();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    }

    /// `i < j` implies `X_i ⊆ X_j`; returns the first violating pair.
    pub fn order_violation(&self, p: &Poset) -> Option<(usize, usize)> {
        p.relations().into_iter().find(|&(i, j)| self.sets[i] & !self.sets[j] != 0)
    }

    pub fn is_order_preserving(&self, p: &Poset) -> bool {
        self.order_violation(p).is_none()
    }

    /// Injective, order-preserving and order-reflecting.
    pub fn is_induced_copy(&self, p: &Poset) -> bool {
        let k = self.sets.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let sub = i != j && self.sets[i] & !self.sets[j] == 0;
                sub == p.lt(i, j)
            })
        }) && self.is_injective()
    }

    /// The map restricted to the listed elements, in that order.
    pub fn restrict(&self, elements: &[usize]) -> CopyMap {
        CopyMap { n: self.n, sets: elements.iter().map(|&i| self.sets[i]).collect() }
    }
}

/// A point of the probability simplex, indexed like an antichain family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weighting(Vec<f64>);

impl Weighting {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("weighting needs at least one coordinate".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(Error::InvalidParameter(format!("negative or non-finite coordinate {bad}")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(Weighting(coords))
    }

    /// Rescales nonnegative coordinates onto the simplex.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::InvalidParameter("coordinates must be finite and nonnegative".into()));
        }
        let sum: f64 = coords.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidParameter("coordinates sum to zero".into()));
        }
        Ok(Weighting(coords.into_iter().map(|c| c / sum).collect()))
    }

    pub fn uniform(m: usize) -> Self {
        Weighting(vec![1.0 / m as f64; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs_diff(&self, other: &Weighting) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Integer part sizes summing to `n`, closest to `n * alpha` by largest remainder.
    pub fn round_to(&self, n: usize) -> Vec<usize> {
        let scaled: Vec<f64> = self.0.iter().map(|a| a * n as f64).collect();
        let mut sizes: Vec<usize> = scaled.iter().map(|s| s.floor() as usize).collect();
        let assigned: usize = sizes.iter().sum();
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = scaled[a] - scaled[a].floor();
            let rb = scaled[b] - scaled[b].floor();
            rb.total_cmp(&ra).then(a.cmp(&b))
        });
        for &j in order.iter().take(n.saturating_sub(assigned)) {
            sizes[j] += 1;
        }
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![0b001, 0b110]).is_ok());
        assert!(Partition::new(3, vec![0b011, 0b110]).is_err());
        assert!(Partition::new(3, vec![0b001, 0b010]).is_err());
        let p = Partition::from_labels(3, &[2, 0, 2]).unwrap();
        assert_eq!(p.parts(), &[0b010, 0, 0b101]);
        assert!(!p.is_starred());
        assert_eq!(p.labels(), vec![2, 0, 2]);
    }

    #[test]
    fn weighting_checks() {
        assert!(Weighting::new(vec![0.5, 0.5]).is_ok());
        assert!(Weighting::new(vec![0.5, 0.6]).is_err());
        assert!(Weighting::new(vec![1.5, -0.5]).is_err());
        assert_eq!(Weighting::normalized(vec![1.0, 3.0]).unwrap().coords(), &[0.25, 0.75]);
    }

    #[test]
    fn largest_remainder() {
        let w = Weighting::new(vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert_eq!(w.round_to(10), vec![4, 3, 3]);
        let w = Weighting::new(vec![0.26, 0.74]).unwrap();
        assert_eq!(w.round_to(10), vec![3, 7]);
    }
}
