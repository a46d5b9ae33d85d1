use super::copies::{copy_images, enumerate_pattern_copies, image_elements, CopyFamily};
use crate::error::{Error, Result};
use crate::poset::Poset;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// A CNF formula over one variable per host element.
///
/// Literals are DIMACS style: `v + 1` for "element `v` has colour 1" and
/// `-(v + 1)` for colour 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Image set of the copy each clause forbids.
    pub origins: Vec<u128>,
}

impl CnfFormula {
    pub fn new(vars: usize) -> Self {
        CnfFormula { vars, ..Default::default() }
    }

    pub fn add_clause(&mut self, clause: Vec<i32>, origin: u128) -> Result<()> {
        if let Some(bad) = clause.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > self.vars) {
            return Err(Error::InvalidParameter(format!("literal {bad} outside 1..={}", self.vars)));
        }
        self.clauses.push(clause);
        self.origins.push(origin);
        Ok(())
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Whether `assignment[v]` (true = colour 1) satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.vars
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// DIMACS text, with a `c copy` comment in front of each group of clauses from one copy.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p cnf {} {}", self.vars, self.clauses.len()).unwrap();
        let mut last = None;
        for (clause, &origin) in self.clauses.iter().zip(&self.origins) {
            if last != Some(origin) {
                let elems: Vec<String> = image_elements(origin).iter().map(|e| e.to_string()).collect();
                writeln!(s, "c copy {}", elems.join(" ")).unwrap();
                last = Some(origin);
            }
            for l in clause {
                write!(s, "{l} ").unwrap();
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut formula: Option<CnfFormula> = None;
        let mut declared = 0usize;
        let mut origin = 0u128;
        let mut pending: Vec<i32> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::Parse { line: k + 1, message };
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('c') {
                if let Some(ids) = rest.trim().strip_prefix("copy") {
                    origin = 0;
                    for tok in ids.split_whitespace() {
                        let e: u32 = tok.parse().map_err(|_| err(format!("bad copy element `{tok}`")))?;
                        if e >= 128 {
                            return Err(err(format!("copy element {e} beyond 127")));
                        }
                        origin |= 1u128 << e;
                    }
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" || formula.is_some() {
                    return Err(err("expected a single `p cnf <vars> <clauses>` header".into()));
                }
                let vars = parts[1].parse().map_err(|_| err("bad variable count".into()))?;
                declared = parts[2].parse().map_err(|_| err("bad clause count".into()))?;
                formula = Some(CnfFormula::new(vars));
                continue;
            }
            let f = formula.as_mut().ok_or_else(|| err("clause before header".into()))?;
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
                if l == 0 {
                    f.add_clause(std::mem::take(&mut pending), origin).map_err(|e| err(e.to_string()))?;
                } else {
                    pending.push(l);
                }
            }
        }
        let f = formula.ok_or_else(|| Error::Parse { line: 0, message: "missing header".into() })?;
        if !pending.is_empty() {
            return Err(Error::Parse { line: text.lines().count(), message: "unterminated clause".into() });
        }
        if f.clauses.len() != declared {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares {declared} clauses, found {}", f.clauses.len()),
            });
        }
        Ok(f)
    }
}

fn images(host: &Poset, pattern: &Poset, mode: CopyFamily) -> Result<Vec<u128>> {
    match enumerate_pattern_copies(host, pattern, mode) {
        Err(Error::ModeMismatch(_)) if mode != CopyFamily::Subcube => {
            Ok(copy_images(host, pattern, mode == CopyFamily::AllInduced))
        }
        other => other,
    }
}

/// Clauses forbidding a monochromatic copy of `pattern` in either colour:
/// one all-positive and one all-negative clause per copy.
pub fn encode_avoidance(host: &Poset, pattern: &Poset, mode: CopyFamily) -> Result<CnfFormula> {
    let mut f = CnfFormula::new(host.len());
    for img in images(host, pattern, mode)? {
        let vars: Vec<i32> = image_elements(img).iter().map(|&e| e as i32 + 1).collect();
        f.add_clause(vars.clone(), img)?;
        f.add_clause(vars.iter().map(|v| -v).collect(), img)?;
    }
    Ok(f)
}

/// Clauses forbidding colour-1 copies of any of `p` and colour-2 copies of any of `q`.
pub fn encode_pair(host: &Poset, p: &[Poset], q: &[Poset], mode: CopyFamily) -> Result<CnfFormula> {
    let mut f = CnfFormula::new(host.len());
    for pat in p {
        for img in images(host, pat, mode)? {
            f.add_clause(image_elements(img).iter().map(|&e| -(e as i32 + 1)).collect(), img)?;
        }
    }
    for pat in q {
        for img in images(host, pat, mode)? {
            f.add_clause(image_elements(img).iter().map(|&e| e as i32 + 1).collect(), img)?;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn small_encodings() {
        let b3 = catalog("boolean", &[3]).unwrap();
        let f = encode_avoidance(&b3, &b3, CopyFamily::AllInduced).unwrap();
        assert_eq!((f.vars, f.clause_count()), (8, 2));
        let c3 = catalog("chain", &[3]).unwrap();
        assert_eq!(encode_avoidance(&b3, &c3, CopyFamily::AllWeak).unwrap().clause_count(), 36);
        let b1 = catalog("boolean", &[1]).unwrap();
        let c2 = catalog("chain", &[2]).unwrap();
        let f = encode_avoidance(&b1, &c2, CopyFamily::AllWeak).unwrap();
        assert_eq!((f.vars, f.clause_count()), (2, 2));
        assert!(f.is_satisfied_by(&[true, false]));
        assert!(!f.is_satisfied_by(&[true, true]));
    }

    #[test]
    fn dimacs_round_trip() {
        let b2 = catalog("boolean", &[2]).unwrap();
        let c2 = catalog("chain", &[2]).unwrap();
        let f = encode_avoidance(&b2, &c2, CopyFamily::AllWeak).unwrap();
        let text = f.to_dimacs();
        assert!(text.starts_with("p cnf 4 10\n"));
        assert_eq!(text.matches("c copy").count(), 5);
        assert_eq!(CnfFormula::parse_dimacs(&text).unwrap(), f);
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 2\n1 0\n").is_err());
    }
}
