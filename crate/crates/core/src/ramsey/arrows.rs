use super::cnf::encode_pair;
use super::copies::{copy_images, CopyFamily};
use super::sat::{solve_cnf, SatResult};
use crate::error::{Error, Result};
use crate::poset::{catalog, contains_copy, ElementSubset, Poset};
use serde::{Deserialize, Serialize};
use std::time::Duration;

/// Largest host the exhaustive colouring search accepts.
pub const ARROW_MAX_HOST: usize = 24;

/// Colour of each host element, `1` or `2`.
pub type Colouring = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowResult {
    pub arrows: bool,
    /// A colouring with no colour-1 copy of `P` and no colour-2 copy of `Q`, when one exists.
    pub witness: Option<Colouring>,
    pub colourings_checked: u64,
}

/// `R → (P, Q)` over weak copies, each side a family of patterns.
pub fn arrows(r: &Poset, p: &[Poset], q: &[Poset]) -> Result<ArrowResult> {
    arrows_with(r, p, q, false)
}

/// Exhaustive colouring search in Gray-code order.
///
/// Each copy keeps a count of its elements in colour 2; a colouring is bad
/// for the arrow when no `P` copy has count zero and no `Q` copy is full.
pub fn arrows_with(r: &Poset, p: &[Poset], q: &[Poset], induced: bool) -> Result<ArrowResult> {
    let n = r.len();
    if n > ARROW_MAX_HOST {
        return Err(Error::Capacity { what: format!("{n}-element host for exhaustive colouring"), limit: ARROW_MAX_HOST as u128 });
    }
    let mut sizes: Vec<u32> = Vec::new();
    let mut is_p: Vec<bool> = Vec::new();
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (family, flag) in [(p, true), (q, false)] {
        for pat in family {
            for img in copy_images(r, pat, induced) {
                let id = sizes.len();
                sizes.push(img.count_ones());
                is_p.push(flag);
                for e in ElementSubset(img) {
                    incidence[e].push(id);
                }
            }
        }
    }
    // Empty patterns embed everywhere.
    if p.iter().chain(q).any(|x| x.is_empty()) {
        return Ok(ArrowResult { arrows: true, witness: None, colourings_checked: 0 });
    }
    let mut count2 = vec![0u32; sizes.len()];
    let mut mono = is_p.iter().filter(|&&b| b).count();
    let mut colour: u32 = 0;
    let total: u64 = 1 << n;
    for i in 0..total {
        if i > 0 {
            let e = i.trailing_zeros() as usize;
            let to_two = colour >> e & 1 == 0;
            colour ^= 1 << e;
            for &id in &incidence[e] {
                let before = is_mono(is_p[id], count2[id], sizes[id]);
                if to_two {
                    count2[id] += 1;
                } else {
                    count2[id] -= 1;
                }
                let after = is_mono(is_p[id], count2[id], sizes[id]);
                mono = mono + after as usize - before as usize;
            }
        }
        if mono == 0 {
            let witness = (0..n).map(|e| if colour >> e & 1 == 1 { 2 } else { 1 }).collect();
            return Ok(ArrowResult { arrows: false, witness: Some(witness), colourings_checked: i + 1 });
        }
    }
    Ok(ArrowResult { arrows: true, witness: None, colourings_checked: total })
}

fn is_mono(p_side: bool, count2: u32, size: u32) -> bool {
    if p_side {
        count2 == 0
    } else {
        count2 == size
    }
}

/// A monochromatic copy found in a colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonochromaticCopy {
    pub colour: u8,
    /// Index of the pattern within its family.
    pub pattern: usize,
    /// Host elements, as `map[pattern element]`.
    pub elements: Vec<usize>,
}

/// Looks for a colour-1 copy of some `P` or a colour-2 copy of some `Q`.
pub fn verify_colouring(host: &Poset, colouring: &[u8], p: &[Poset], q: &[Poset]) -> Result<Option<MonochromaticCopy>> {
    if colouring.len() != host.len() {
        return Err(Error::IncompleteColouring(format!("{} colours for {} elements", colouring.len(), host.len())));
    }
    if let Some(k) = colouring.iter().position(|&c| c != 1 && c != 2) {
        return Err(Error::IncompleteColouring(format!("element {k} has colour {}", colouring[k])));
    }
    for (colour, family) in [(1u8, p), (2u8, q)] {
        let class: ElementSubset = (0..host.len()).filter(|&e| colouring[e] == colour).collect();
        if class.is_empty() {
            if let Some(k) = family.iter().position(|x| x.is_empty()) {
                return Ok(Some(MonochromaticCopy { colour, pattern: k, elements: Vec::new() }));
            }
            continue;
        }
        let sub = host.induced(class)?;
        for (k, pat) in family.iter().enumerate() {
            if let Some(map) = contains_copy(&sub.poset, pat, false) {
                let elements = map.iter().map(|&i| sub.parent[i]).collect();
                return Ok(Some(MonochromaticCopy { colour, pattern: k, elements }));
            }
        }
    }
    Ok(None)
}

/// Converts a SAT assignment (`true` = colour 1) to a colouring.
pub fn assignment_to_colouring(assignment: &[bool]) -> Colouring {
    assignment.iter().map(|&b| if b { 1 } else { 2 }).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyNumberOptions {
    pub n_max: usize,
    pub mode: CopyFamily,
    pub sat_budget: Option<Duration>,
}

impl Default for RamseyNumberOptions {
    fn default() -> Self {
        RamseyNumberOptions { n_max: 6, mode: CopyFamily::AllWeak, sat_budget: Some(Duration::from_secs(600)) }
    }
}

/// How each dimension was decided.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyNumberReport {
    pub number: Option<usize>,
    /// `(N, arrows, method)` for every dimension tried.
    pub steps: Vec<(usize, bool, String)>,
}

/// Least `N ≤ n_max` with `P(N) → (P, Q)`.
pub fn ramsey_number(p: &Poset, q: &Poset, opts: &RamseyNumberOptions) -> Result<RamseyNumberReport> {
    let mut steps = Vec::new();
    for n in 0..=opts.n_max {
        let host = if n == 0 { Poset::discrete(1)? } else { catalog("boolean", &[n])? };
        let (arrow, method) = if host.len() <= ARROW_MAX_HOST {
            let induced = opts.mode == CopyFamily::AllInduced;
            (arrows_with(&host, std::slice::from_ref(p), std::slice::from_ref(q), induced)?.arrows, "exhaustive".to_string())
        } else {
            let f = encode_pair(&host, std::slice::from_ref(p), std::slice::from_ref(q), opts.mode)?;
            match solve_cnf(&f, opts.sat_budget) {
                SatResult::Sat(_) => (false, format!("sat ({} clauses)", f.clause_count())),
                SatResult::Unsat => (true, format!("unsat ({} clauses)", f.clause_count())),
                SatResult::Unknown => {
                    return Err(Error::Infeasible(format!("solver budget exhausted at N = {n}")));
                }
            }
        };
        steps.push((n, arrow, method));
        if arrow {
            return Ok(RamseyNumberReport { number: Some(n), steps });
        }
    }
    Ok(RamseyNumberReport { number: None, steps })
}
