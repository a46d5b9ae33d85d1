use super::entropy::entropy_raw;
use crate::correspondence::ShadowMap;
use crate::error::{Error, Result};
use crate::poset::{AntichainFamily, ElementSubset, Poset};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// One distinct inner function `α ↦ H(∂_Q α)/|Q|`.
///
/// Several subposets `Q` can induce the same merging of antichains and have
/// the same size; they share one entry and all of them are listed in `masks`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Constraint {
    pub masks: Vec<u128>,
    pub size: usize,
    pub bins: usize,
    /// Bin of each antichain of `P`, numbered by first occurrence.
    pub map: Vec<u32>,
}

impl Constraint {
    pub fn shadow(&self, alpha: &[f64], beta: &mut Vec<f64>) {
        beta.clear();
        beta.resize(self.bins, 0.0);
        for (j, &a) in alpha.iter().enumerate() {
            beta[self.map[j] as usize] += a;
        }
    }

    pub fn value(&self, alpha: &[f64]) -> f64 {
        let mut beta = Vec::with_capacity(self.bins);
        self.shadow(alpha, &mut beta);
        entropy_raw(&beta) / self.size as f64
    }

    /// Gradient of the value in `α`, given the shadow `β`.
    pub fn gradient(&self, beta: &[f64], out: &mut [f64]) {
        let s = self.size as f64;
        for (j, o) in out.iter_mut().enumerate() {
            let b = beta[self.map[j] as usize].max(1e-300);
            *o = -(b.ln() + 1.0) / s;
        }
    }
}

/// Every inner function of the max-min problem for one poset, precomputed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstraintTable {
    pub elements: usize,
    pub m: usize,
    pub constraints: Vec<Constraint>,
}

pub const DEFAULT_MAX_ELEMENTS: usize = 14;

impl ConstraintTable {
    pub fn build(p: &Poset, family: &AntichainFamily, max_elements: usize) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty poset".into()));
        }
        if n > max_elements {
            return Err(Error::Capacity { what: format!("{n}-element poset for the subposet table"), limit: max_elements as u128 });
        }
        let masks: Vec<u128> = (1..(1u128 << n)).collect();
        let built: Vec<(u128, usize, Vec<u32>, usize)> = masks
            .par_iter()
            .map(|&q| {
                let sm = ShadowMap::new(p, family, ElementSubset(q))?;
                let (map, bins) = relabel(&sm.index);
                Ok((q, ElementSubset(q).len(), map, bins))
            })
            .collect::<Result<_>>()?;
        let mut seen: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
        let mut constraints: Vec<Constraint> = Vec::new();
        for (q, size, map, bins) in built {
            match seen.get(&(size, map.clone())) {
                Some(&k) => constraints[k].masks.push(q),
                None => {
                    seen.insert((size, map.clone()), constraints.len());
                    constraints.push(Constraint { masks: vec![q], size, bins, map });
                }
            }
        }
        Ok(ConstraintTable { elements: n, m: family.len(), constraints })
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn values(&self, alpha: &[f64]) -> Vec<f64> {
        if self.constraints.len() >= 512 {
            self.constraints.par_iter().map(|c| c.value(alpha)).collect()
        } else {
            self.constraints.iter().map(|c| c.value(alpha)).collect()
        }
    }

    /// `g(α) = min_Q c_{α,P}(Q)`.
    pub fn objective(&self, alpha: &[f64]) -> f64 {
        self.values(alpha).into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Subposets whose value is within `slack` of the minimum, sorted by bitmask.
    pub fn active(&self, alpha: &[f64], slack: f64) -> Vec<u128> {
        let vals = self.values(alpha);
        let g = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let mut out: Vec<u128> = vals
            .iter()
            .zip(&self.constraints)
            .filter(|(v, _)| **v <= g + slack)
            .flat_map(|(_, c)| c.masks.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Value of a single subposet, looked up by bitmask.
    pub fn value_of(&self, alpha: &[f64], q: u128) -> Option<f64> {
        self.constraints.iter().find(|c| c.masks.contains(&q)).map(|c| c.value(alpha))
    }
}

fn relabel(index: &[usize]) -> (Vec<u32>, usize) {
    let mut names: HashMap<usize, u32> = HashMap::new();
    let map = index
        .iter()
        .map(|&i| {
            let next = names.len() as u32;
            *names.entry(i).or_insert(next)
        })
        .collect();
    (map, names.len())
}
