use super::cnf::CnfFormula;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SatResult {
    /// A verified assignment, `true` meaning colour 1.
    Sat(Vec<bool>),
    Unsat,
    /// The time budget ran out first.
    Unknown,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

const UNSET: u8 = 2;

struct Solver {
    clauses: Vec<Vec<usize>>,
    watches: Vec<Vec<usize>>,
    value: Vec<u8>,
    trail: Vec<usize>,
    /// Trail position of each decision and whether its second branch is in use.
    decisions: Vec<(usize, bool)>,
    head: usize,
}

fn lit_of(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + (l < 0) as usize
}

impl Solver {
    fn lit_value(&self, lit: usize) -> u8 {
        match self.value[lit / 2] {
            UNSET => UNSET,
            v => v ^ (lit & 1) as u8,
        }
    }

    fn assign(&mut self, lit: usize) {
        self.value[lit / 2] = 1 ^ (lit & 1) as u8;
        self.trail.push(lit);
    }

    /// Unit propagation; `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head] ^ 1;
            self.head += 1;
            let mut list = std::mem::take(&mut self.watches[falsified]);
            let mut i = 0;
            let mut ok = true;
            while i < list.len() {
                let c = list[i];
                let clause = &mut self.clauses[c];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                if self.value[other / 2] != UNSET && self.value[other / 2] ^ (other & 1) as u8 == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let v = self.value[l / 2];
                    if v == UNSET || v ^ (l & 1) as u8 == 1 {
                        clause.swap(1, k);
                        self.watches[clause[1]].push(c);
                        list.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                match self.lit_value(other) {
                    0 => {
                        ok = false;
                        break;
                    }
                    UNSET => self.assign(other),
                    _ => {}
                }
                i += 1;
            }
            self.watches[falsified] = list;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let lit = self.trail.pop().unwrap();
            self.value[lit / 2] = UNSET;
        }
        self.head = len;
    }
}

/// DPLL with two watched literals per clause and chronological backtracking.
///
/// Branches on the lowest unassigned variable, trying `true` first.
pub fn solve_cnf(f: &CnfFormula, budget: Option<Duration>) -> SatResult {
    let deadline = budget.map(|b| Instant::now() + b);
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * f.vars],
        value: vec![UNSET; f.vars],
        trail: Vec::new(),
        decisions: Vec::new(),
        head: 0,
    };
    let mut units = Vec::new();
    for clause in &f.clauses {
        let mut lits: Vec<usize> = clause.iter().map(|&l| lit_of(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            continue;
        }
        match lits.len() {
            0 => return SatResult::Unsat,
            1 => units.push(lits[0]),
            _ => {
                let c = s.clauses.len();
                s.watches[lits[0]].push(c);
                s.watches[lits[1]].push(c);
                s.clauses.push(lits);
            }
        }
    }
    for u in units {
        match s.lit_value(u) {
            0 => return SatResult::Unsat,
            UNSET => s.assign(u),
            _ => {}
        }
    }
    let mut steps = 0u64;
    let mut next_var = 0usize;
    loop {
        steps += 1;
        if steps % 1024 == 0 && deadline.is_some_and(|d| Instant::now() > d) {
            return SatResult::Unknown;
        }
        if s.propagate() {
            while next_var < f.vars && s.value[next_var] != UNSET {
                next_var += 1;
            }
            if next_var == f.vars {
                let assignment: Vec<bool> = s.value.iter().map(|&v| v == 1).collect();
                return if f.is_satisfied_by(&assignment) { SatResult::Sat(assignment) } else { SatResult::Unknown };
            }
            s.decisions.push((s.trail.len(), false));
            s.assign(2 * next_var);
        } else {
            loop {
                let Some((pos, flipped)) = s.decisions.pop() else { return SatResult::Unsat };
                if flipped {
                    continue;
                }
                let lit = s.trail[pos];
                s.undo_to(pos);
                s.decisions.push((pos, true));
                s.assign(lit ^ 1);
                next_var = next_var.min(lit / 2);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(vars: usize, clauses: &[&[i32]]) -> CnfFormula {
        let mut f = CnfFormula::new(vars);
        for c in clauses {
            f.add_clause(c.to_vec(), 0).unwrap();
        }
        f
    }

    #[test]
    fn trivial_formulas() {
        assert!(solve_cnf(&formula(1, &[&[1, -1]]), None).is_sat());
        assert_eq!(solve_cnf(&formula(1, &[&[1], &[-1]]), None), SatResult::Unsat);
        assert!(solve_cnf(&formula(0, &[]), None).is_sat());
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p(i, h) = pigeon i in hole h, variable 2 i + h + 1.
        let v = |i: i32, h: i32| 2 * i + h + 1;
        let mut cl: Vec<Vec<i32>> = (0..3).map(|i| vec![v(i, 0), v(i, 1)]).collect();
        for h in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    cl.push(vec![-v(a, h), -v(b, h)]);
                }
            }
        }
        let refs: Vec<&[i32]> = cl.iter().map(|c| c.as_slice()).collect();
        assert_eq!(solve_cnf(&formula(6, &refs), None), SatResult::Unsat);
    }

    #[test]
    fn first_solution_prefers_true() {
        let f = formula(3, &[&[-1, -2], &[2, 3]]);
        assert_eq!(solve_cnf(&f, None), SatResult::Sat(vec![true, false, true]));
    }
}
