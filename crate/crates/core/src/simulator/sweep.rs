use super::sample::{contains_pattern, contains_pattern_generic, sample_pnp_with_budget, DEFAULT_ELEMENT_BUDGET, GENERIC_SEARCH_CAP};
use crate::correspondence::{CopyMap, Correspondence};
use crate::error::{Error, Result};
use crate::fmt::sig10;
use crate::poset::Poset;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub induced: bool,
    pub budget: f64,
    /// Keep the `f₁` weighting of one found copy per success.
    pub record_weightings: bool,
    pub pattern_name: Option<String>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { induced: true, budget: DEFAULT_ELEMENT_BUDGET, record_weightings: false, pattern_name: None }
    }
}

/// One grid point. Equality ignores `seconds`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepCell {
    pub c: f64,
    pub trials: usize,
    pub successes: usize,
    pub p_hat: f64,
    pub mean_elements: f64,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weightings: Vec<Vec<f64>>,
}

impl PartialEq for SweepCell {
    fn eq(&self, o: &Self) -> bool {
        self.c.to_bits() == o.c.to_bits()
            && self.trials == o.trials
            && self.successes == o.successes
            && self.p_hat.to_bits() == o.p_hat.to_bits()
            && self.mean_elements.to_bits() == o.mean_elements.to_bits()
            && self.weightings == o.weightings
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub pattern: String,
    pub n: usize,
    pub induced: bool,
    pub seed: u64,
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("c,trials,successes,p_hat\n");
        for cell in &self.cells {
            writeln!(out, "{},{},{},{}", sig10(cell.c), cell.trials, cell.successes, sig10(cell.p_hat)).unwrap();
        }
        out
    }

    /// Linear interpolation of the first downward crossing of `level`.
    pub fn crossing(&self, level: f64) -> Option<f64> {
        let first = self.cells.first()?;
        if first.p_hat < level {
            return Some(first.c);
        }
        self.cells.windows(2).find_map(|w| {
            let (a, b) = (&w[0], &w[1]);
            (a.p_hat >= level && b.p_hat < level).then(|| a.c + (a.p_hat - level) / (a.p_hat - b.p_hat) * (b.c - a.c))
        })
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` at grid point `cell`.
pub fn trial_seed(base: u64, cell: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ cell as u64) ^ (trial as u64).rotate_left(32))
}

pub fn sweep(p: &Poset, n: usize, c_grid: &[f64], trials: usize, seed: u64) -> Result<SweepReport> {
    sweep_with(p, n, c_grid, trials, seed, &SweepOptions::default())
}

pub fn sweep_with(p: &Poset, n: usize, c_grid: &[f64], trials: usize, seed: u64, opts: &SweepOptions) -> Result<SweepReport> {
    if c_grid.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("grid values must be finite".into()));
    }
    let mut grid = c_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    for &c in &grid {
        let expected = (n as f64 * std::f64::consts::LN_2 - c * n as f64).exp();
        if expected > opts.budget {
            return Err(Error::Capacity { what: format!("expected {expected:.3e} elements at c = {c}"), limit: opts.budget as u128 });
        }
    }
    let corr = if opts.record_weightings { Some(Correspondence::new(p)?) } else { None };
    let mut cells = Vec::with_capacity(grid.len());
    for (k, &c) in grid.iter().enumerate() {
        let start = Instant::now();
        let outcomes: Vec<(bool, usize, Option<Vec<f64>>)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let s = sample_pnp_with_budget(n, c, trial_seed(seed, k, t), opts.budget)?;
                let hit = contains_pattern(&s, p, opts.induced)?;
                let w = match (&corr, hit) {
                    (Some(corr), true) if s.len() <= GENERIC_SEARCH_CAP => contains_pattern_generic(&s, p, opts.induced)?
                        .map(|words| corr.f1(&CopyMap::new(n, words)?).map(|a| a.weighting().into_coords()))
                        .transpose()?,
                    _ => None,
                };
                Ok((hit, s.len(), w))
            })
            .collect::<Result<_>>()?;
        let successes = outcomes.iter().filter(|o| o.0).count();
        let mean_elements = outcomes.iter().map(|o| o.1 as f64).sum::<f64>() / trials.max(1) as f64;
        let weightings = outcomes.into_iter().filter_map(|o| o.2).collect();
        cells.push(SweepCell {
            c,
            trials,
            successes,
            p_hat: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
            mean_elements,
            seconds: start.elapsed().as_secs_f64(),
            weightings,
        });
    }
    Ok(SweepReport {
        pattern: opts.pattern_name.clone().unwrap_or_else(|| p.to_dsl().trim().replace('\n', "; ")),
        n,
        induced: opts.induced,
        seed,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn reproducible_and_sorted() {
        let c2 = catalog("chain", &[2]).unwrap();
        let a = sweep(&c2, 12, &[0.6, 0.4, 0.5], 8, 11).unwrap();
        let b = sweep(&c2, 12, &[0.4, 0.5, 0.6], 8, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.cells.windows(2).all(|w| w[0].c < w[1].c));
        assert!(a.to_csv().starts_with("c,trials,successes,p_hat\n"));
    }

    #[test]
    fn weightings_sum_to_one() {
        let v = catalog("V", &[]).unwrap();
        let opts = SweepOptions { record_weightings: true, ..Default::default() };
        let r = sweep_with(&v, 10, &[0.2], 4, 3, &opts).unwrap();
        assert_eq!(r.cells[0].weightings.len(), r.cells[0].successes);
        for w in &r.cells[0].weightings {
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
