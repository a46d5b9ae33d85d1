use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::poset::{for_each_copy, is_isomorphic, catalog, ElementSubset, Poset};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::ops::ControlFlow;

/// Guard on `a(F)^n` for the partition-driven enumeration modes.
pub const PARTITION_SCAN_CAP: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CopyFamily {
    /// Subcubes of a Boolean host: some coordinates fixed, `k` free.
    Subcube,
    /// Injective maps that preserve and reflect the order.
    AllInduced,
    /// Injective order-preserving maps.
    AllWeak,
}

impl std::str::FromStr for CopyFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subcube" => Ok(CopyFamily::Subcube),
            "all-induced" | "induced" => Ok(CopyFamily::AllInduced),
            "all-weak" | "weak" => Ok(CopyFamily::AllWeak),
            other => Err(Error::InvalidParameter(format!("unknown copy family `{other}`"))),
        }
    }
}

/// Dimension `n` when `host` is the Boolean lattice numbered by bitmask.
pub fn boolean_dimension(host: &Poset) -> Option<usize> {
    let len = host.len();
    if !len.is_power_of_two() || len > 128 {
        return None;
    }
    let n = len.trailing_zeros() as usize;
    let ok = (0..len).all(|a| {
        let want: u128 = (0..len).filter(|&b| b != a && a & !b == 0).fold(0, |acc, b| acc | 1u128 << b);
        host.up(a).0 == want
    });
    ok.then_some(n)
}

/// Distinct image sets of copies of `pattern` in a Boolean host, sorted.
///
/// The partition-driven modes push every labelling in `[a(F)]^[n]` through
/// the correspondence and keep the injective images.
pub fn enumerate_pattern_copies(host: &Poset, pattern: &Poset, mode: CopyFamily) -> Result<Vec<u128>> {
    let n = boolean_dimension(host)
        .ok_or_else(|| Error::ModeMismatch("host must be a Boolean lattice numbered by bitmask".into()))?;
    match mode {
        CopyFamily::Subcube => subcubes(n, pattern),
        CopyFamily::AllInduced | CopyFamily::AllWeak => scan(n, pattern, mode == CopyFamily::AllInduced),
    }
}

fn subcubes(n: usize, pattern: &Poset) -> Result<Vec<u128>> {
    let k = pattern.len().trailing_zeros() as usize;
    let boolean = pattern.len().is_power_of_two() && (k == 0 || is_isomorphic(pattern, &catalog("boolean", &[k])?));
    if !boolean || k > n {
        return Err(Error::ModeMismatch("subcube copies need a Boolean pattern".into()));
    }
    let full = (1usize << n) - 1;
    let mut out = BTreeSet::new();
    for free in 0..=full {
        if free.count_ones() as usize != k {
            continue;
        }
        let fixed = full & !free;
        // Every base point on the fixed coordinates.
        let mut base = fixed;
        loop {
            let mut image = 0u128;
            let mut sub = free;
            loop {
                image |= 1u128 << (base | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            out.insert(image);
            if base == 0 {
                break;
            }
            base = (base - 1) & fixed;
        }
    }
    Ok(out.into_iter().collect())
}

fn scan(n: usize, pattern: &Poset, induced: bool) -> Result<Vec<u128>> {
    let corr = Correspondence::new(pattern)?;
    let m = corr.m();
    let total = (m as u128).checked_pow(n as u32).filter(|&t| t <= PARTITION_SCAN_CAP);
    if total.is_none() {
        return Err(Error::Capacity { what: format!("{m}^{n} labellings"), limit: PARTITION_SCAN_CAP });
    }
    let k = pattern.len();
    let contrib: Vec<Vec<usize>> = (0..m).map(|j| corr.meets(j).iter().collect()).collect();
    let ups: Vec<u128> = (0..k).map(|i| pattern.up(i).0).collect();
    let mut labels = vec![0usize; n];
    let mut sets = vec![0u64; k];
    let mut out = BTreeSet::new();
    loop {
        sets.iter_mut().for_each(|s| *s = 0);
        for (x, &j) in labels.iter().enumerate() {
            for &i in &contrib[j] {
                sets[i] |= 1 << x;
            }
        }
        if let Some(img) = image_if_copy(&sets, &ups, induced) {
            out.insert(img);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out.into_iter().collect());
            }
            labels[pos] += 1;
            if labels[pos] < m {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}

fn image_if_copy(sets: &[u64], ups: &[u128], induced: bool) -> Option<u128> {
    let mut image = 0u128;
    for (i, &s) in sets.iter().enumerate() {
        let bit = 1u128 << s;
        if image & bit != 0 {
            return None;
        }
        image |= bit;
        if induced {
            for (j, &t) in sets.iter().enumerate() {
                if i != j && (s & !t == 0) != (ups[i] >> j & 1 == 1) {
                    return None;
                }
            }
        }
    }
    Some(image)
}

/// Distinct image sets of copies of `pattern` in any host, by backtracking.
pub fn copy_images(host: &Poset, pattern: &Poset, induced: bool) -> Vec<u128> {
    let mut out = BTreeSet::new();
    for_each_copy(host, pattern, induced, |m| {
        out.insert(m.iter().fold(0u128, |acc, &h| acc | 1u128 << h));
        ControlFlow::Continue(())
    });
    out.into_iter().collect()
}

pub fn image_elements(image: u128) -> Vec<usize> {
    ElementSubset(image).iter().collect()
}
