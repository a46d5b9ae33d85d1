use super::arrows::{arrows, ARROW_MAX_HOST};
use crate::error::Result;
use crate::poset::{is_isomorphic, lex_product, parse_catalog_spec, reverse, tower, Poset};
use crate::threshold::{c_star, DEFAULT_MAX_ELEMENTS};
use serde::{Deserialize, Serialize};

/// One bound with the construction behind it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bound {
    pub value: f64,
    pub provenance: String,
    /// DSL text of the poset whose `c⋆` gives the bound, when there is one.
    pub poset: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyBoundsReport {
    pub pair: (String, String),
    pub lower: Bound,
    pub upper: Bound,
    pub exact: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BoundsOptions {
    /// Extra candidate hosts `H`; each gives the lower bound `c⋆(H)` once `H → (P, Q)` is confirmed.
    pub hosts: Vec<Poset>,
    pub tol: f64,
    pub max_elements: usize,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions { hosts: Vec::new(), tol: 1e-8, max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

struct Known {
    pair: (&'static str, &'static str),
    lower_host: Option<&'static str>,
    upper_poset: Option<&'static str>,
    citation: &'static str,
}

const KNOWN: &[Known] = &[
    Known { pair: ("V", "V"), lower_host: Some("T2"), upper_poset: Some("T2"), citation: "critical Ramsey exponent of (V,V)" },
    Known { pair: ("chain:2", "V"), lower_host: Some("Y'"), upper_poset: None, citation: "mixed pair (C2,V)" },
    Known { pair: ("lambda", "V"), lower_host: Some("layered:2,3,2"), upper_poset: None, citation: "mixed pair (Λ,V)" },
    Known { pair: ("chain:3", "V"), lower_host: Some("Y''"), upper_poset: None, citation: "mixed pair (C3,V)" },
    Known { pair: ("boolean:2", "chain:2"), lower_host: Some("DD"), upper_poset: None, citation: "mixed pair (P(2),C2)" },
];

struct Candidate {
    poset: Poset,
    provenance: String,
    verified: bool,
}

fn same_pair(p: &Poset, q: &Poset, a: &Poset, b: &Poset) -> bool {
    (is_isomorphic(p, a) && is_isomorphic(q, b)) || (is_isomorphic(p, b) && is_isomorphic(q, a))
}

/// Lower and upper bounds on the Ramsey exponents of `(P, Q)`.
///
/// Lower bounds come from hosts `H` with `H → (P, Q)`: lexicographic
/// products, towers, catalogued hosts and user hosts, each confirmed by
/// exhaustive colouring when small enough. Upper bounds come from towers
/// `T(P, Q)`, `T(Q, P)`, `max{c⋆(P), c⋆(Q)}` and catalogued results.
pub fn exponent_bounds(p: &Poset, q: &Poset, opts: &BoundsOptions) -> Result<RamseyBoundsReport> {
    let mut notes = Vec::new();
    let mut lowers: Vec<Candidate> = Vec::new();
    let mut uppers: Vec<Candidate> = Vec::new();

    for (a, b, name) in [(p, q, "T(P,Q)"), (q, p, "T(Q,P)")] {
        match tower(a, b) {
            Ok(t) => {
                uppers.push(Candidate { poset: t.clone(), provenance: format!("tower colouring of {name}"), verified: true });
                lowers.push(Candidate { poset: t, provenance: format!("host {name}"), verified: false });
            }
            Err(e) => notes.push(format!("{name} skipped ({e})")),
        }
    }
    for (a, b, name) in [(p, q, "P×lex Q"), (q, p, "Q×lex P")] {
        let l = lex_product(a, b)?;
        lowers.push(Candidate { poset: l, provenance: format!("lexicographic product {name}"), verified: true });
    }
    for known in KNOWN {
        let a = parse_catalog_spec(known.pair.0)?;
        let b = parse_catalog_spec(known.pair.1)?;
        for flip in [false, true] {
            let (a, b) = if flip { (reverse(&a), reverse(&b)) } else { (a.clone(), b.clone()) };
            if !same_pair(p, q, &a, &b) {
                continue;
            }
            let orient = |x: Poset| if flip { reverse(&x) } else { x };
            if let Some(h) = known.lower_host {
                lowers.push(Candidate {
                    poset: orient(parse_catalog_spec(h)?),
                    provenance: format!("host {h}{} ({})", if flip { " reversed" } else { "" }, known.citation),
                    verified: false,
                });
            }
            if let Some(u) = known.upper_poset {
                uppers.push(Candidate {
                    poset: orient(parse_catalog_spec(u)?),
                    provenance: format!("c⋆({u}) bound from the {}", known.citation),
                    verified: true,
                });
            }
            break;
        }
    }
    if p.is_chain() && q.is_chain() && !p.is_empty() && !q.is_empty() {
        let c = crate::poset::catalog("chain", &[p.len() + q.len() - 1])?;
        lowers.push(Candidate { poset: c, provenance: "pigeonhole host C_{s+t-1}".into(), verified: true });
    }
    for (k, h) in opts.hosts.iter().enumerate() {
        lowers.push(Candidate { poset: h.clone(), provenance: format!("user host #{k}"), verified: false });
    }

    let mut best_lower = Bound { value: 0.0, provenance: "trivial".into(), poset: None };
    let mut lower_poset: Option<Poset> = None;
    for cand in lowers {
        if cand.poset.len() > opts.max_elements {
            notes.push(format!("skipped {}: {} elements", cand.provenance, cand.poset.len()));
            continue;
        }
        if cand.poset.len() <= ARROW_MAX_HOST {
            let ok = arrows(&cand.poset, std::slice::from_ref(p), std::slice::from_ref(q))?.arrows;
            if !ok {
                if !cand.verified {
                    notes.push(format!("{} does not arrow the pair", cand.provenance));
                    continue;
                }
                notes.push(format!("{} failed the colouring check", cand.provenance));
                continue;
            }
        } else if !cand.verified {
            notes.push(format!("{} too large to confirm", cand.provenance));
            continue;
        }
        let rep = c_star(&cand.poset, opts.tol)?;
        if rep.lower > best_lower.value {
            best_lower = Bound { value: rep.lower, provenance: cand.provenance, poset: Some(cand.poset.to_dsl()) };
            lower_poset = Some(cand.poset);
        }
    }

    let mut best_upper: Option<(Bound, Poset)> = None;
    let cp = c_star(p, opts.tol).ok();
    let cq = c_star(q, opts.tol).ok();
    if let (Some(a), Some(b)) = (&cp, &cq) {
        let (v, which) = if a.upper >= b.upper { (a.upper, p) } else { (b.upper, q) };
        best_upper = Some((Bound { value: v, provenance: "max{c⋆(P), c⋆(Q)}".into(), poset: Some(which.to_dsl()) }, which.clone()));
    }
    for cand in uppers {
        if cand.poset.len() > opts.max_elements {
            notes.push(format!("skipped {}: {} elements", cand.provenance, cand.poset.len()));
            continue;
        }
        let rep = c_star(&cand.poset, opts.tol)?;
        if best_upper.as_ref().is_none_or(|(b, _)| rep.upper < b.value) {
            best_upper = Some((Bound { value: rep.upper, provenance: cand.provenance, poset: Some(cand.poset.to_dsl()) }, cand.poset));
        }
    }
    let (upper, upper_poset) = best_upper.unwrap_or((
        Bound { value: std::f64::consts::LN_2, provenance: "no bound available".into(), poset: None },
        Poset::discrete(1)?,
    ));
    let exact = match &lower_poset {
        Some(lp) if is_isomorphic(lp, &upper_poset) => Some(c_star(lp, opts.tol)?.value),
        _ if (upper.value - best_lower.value).abs() <= 1e-9 => Some(0.5 * (upper.value + best_lower.value)),
        _ => None,
    };
    Ok(RamseyBoundsReport {
        pair: (p.to_dsl(), q.to_dsl()),
        lower: best_lower,
        upper,
        exact,
        notes,
    })
}
