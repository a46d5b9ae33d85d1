use super::classify::{classify_with, Class};
use super::entropy::entropy_raw;
use super::table::{ConstraintTable, DEFAULT_MAX_ELEMENTS};
use crate::correspondence::Weighting;
use crate::error::{Error, Result};
use crate::poset::{antichains_with_cap, for_each_copy, reverse, AntichainFamily, ElementSubset, Poset, DEFAULT_ANTICHAIN_CAP};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Multiplicative-weights supergradient ascent only.
    MirrorAscent,
    /// Mirror ascent warm start followed by interior-point Newton refinement.
    Barrier,
}

#[derive(Clone, Debug)]
pub struct CStarOptions {
    /// Target width of the certified bracket; `None` picks 1e-6 up to 8 elements and 1e-4 above.
    pub tol: Option<f64>,
    pub max_elements: usize,
    pub method: Method,
    pub mirror_iterations: usize,
    pub newton_iterations: usize,
    pub symmetry: bool,
    pub automorphism_cap: usize,
    pub antichain_cap: usize,
    pub classify: bool,
}

impl Default for CStarOptions {
    fn default() -> Self {
        CStarOptions {
            tol: None,
            max_elements: DEFAULT_MAX_ELEMENTS,
            method: Method::Barrier,
            mirror_iterations: 300,
            newton_iterations: 2000,
            symmetry: true,
            automorphism_cap: 50_000,
            antichain_cap: DEFAULT_ANTICHAIN_CAP,
            classify: true,
        }
    }
}

pub fn default_tolerance(elements: usize) -> f64 {
    if elements <= 8 {
        1e-6
    } else {
        1e-4
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriticalExponentReport {
    pub poset: String,
    pub m: usize,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub certificate: Vec<f64>,
    pub active: Vec<u128>,
    pub class: Class,
    pub iterations: usize,
    pub tolerance: f64,
    pub converged: bool,
    pub notes: Vec<String>,
}

impl CriticalExponentReport {
    pub fn certificate_weighting(&self) -> Weighting {
        Weighting::normalized(self.certificate.clone()).expect("certificate is a weighting")
    }

    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `c⋆(P)` with default options and the given bracket width.
pub fn c_star(p: &Poset, tol: f64) -> Result<CriticalExponentReport> {
    c_star_with(p, &CStarOptions { tol: Some(tol), ..CStarOptions::default() })
}

pub fn c_star_with(p: &Poset, opts: &CStarOptions) -> Result<CriticalExponentReport> {
    if p.is_empty() {
        return Err(Error::InvalidParameter("empty poset".into()));
    }
    let tol = opts.tol.unwrap_or_else(|| default_tolerance(p.len()));
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if !p.is_connected() {
        return disconnected(p, opts, tol);
    }
    let family = antichains_with_cap(p, opts.antichain_cap)?;
    let table = ConstraintTable::build(p, &family, opts.max_elements)?;
    let orbits = if opts.symmetry {
        Orbits::new(p, &family, opts.automorphism_cap)
    } else {
        Orbits::trivial(family.len())
    };
    let reduced = Reduced::new(&table, &orbits);
    let mut notes = vec![format!(
        "{} subposets, {} distinct constraints, {} after symmetry reduction",
        (1u128 << p.len()) - 1,
        table.len(),
        reduced.constraints.len()
    )];
    if orbits.count < family.len() {
        notes.push(format!("{} antichain orbits under the symmetry group", orbits.count));
    }

    let (mut w, mut iterations) = mirror_ascent(&reduced, opts.mirror_iterations);
    let mut lambda = near_active_duals(&reduced, &w, 1e-6);
    if opts.method == Method::Barrier && orbits.count > 1 {
        let (w2, l2, its) = barrier(&reduced, &table, &orbits, w.clone(), tol, opts.newton_iterations);
        w = w2;
        lambda = l2;
        iterations += its;
    }
    let alpha = orbits.expand(&w);
    let lower = table.objective(&alpha);
    let upper = if orbits.count == 1 { lower } else { frank_wolfe_bound(&table, &reduced, &lambda, &alpha) };
    let upper = upper.max(lower);
    let converged = upper - lower <= tol;
    if !converged {
        notes.push(format!("bracket width {:.3e} exceeds the tolerance", upper - lower));
    }
    let class = if opts.classify { classify_with(p, &family, &table)?.class } else { Class::General };
    if !opts.classify {
        notes.push("classification skipped".into());
    }
    Ok(CriticalExponentReport {
        poset: p.to_dsl(),
        m: family.len(),
        value: lower,
        lower,
        upper,
        active: table.active(&alpha, tol),
        certificate: alpha,
        class,
        iterations,
        tolerance: tol,
        converged,
        notes,
    })
}

fn disconnected(p: &Poset, opts: &CStarOptions, tol: f64) -> Result<CriticalExponentReport> {
    let family = antichains_with_cap(p, opts.antichain_cap)?;
    let comps = p.connected_components();
    let mut reports = Vec::new();
    let mut locals = Vec::new();
    for &c in &comps {
        let sub = p.induced(c)?;
        let rep = c_star_with(&sub.poset, &CStarOptions { tol: Some(tol), classify: false, ..opts.clone() })?;
        let fam = antichains_with_cap(&sub.poset, opts.antichain_cap)?;
        locals.push((sub, fam));
        reports.push(rep);
    }
    let certificate: Vec<f64> = family
        .iter()
        .map(|s| {
            locals.iter().zip(&reports).fold(1.0, |acc, ((sub, fam), rep)| {
                let local: ElementSubset =
                    sub.parent.iter().enumerate().filter(|(_, &g)| s.contains(g)).map(|(k, _)| k).collect();
                acc * rep.certificate[fam.position(local).expect("restriction is an antichain")]
            })
        })
        .collect();
    let k = (0..reports.len()).min_by(|&a, &b| reports[a].lower.total_cmp(&reports[b].lower)).unwrap();
    let lower = reports.iter().map(|r| r.lower).fold(f64::INFINITY, f64::min);
    let upper = reports.iter().map(|r| r.upper).fold(f64::INFINITY, f64::min);
    let mut active: Vec<u128> = reports
        .iter()
        .zip(&locals)
        .filter(|(r, _)| r.lower <= lower + tol)
        .flat_map(|(r, (sub, _))| {
            r.active.iter().map(|&q| {
                ElementSubset(q).iter().fold(0u128, |acc, i| acc | 1u128 << sub.parent[i])
            })
        })
        .collect();
    active.sort_unstable();
    let class = if opts.classify && p.len() <= opts.max_elements {
        let table = ConstraintTable::build(p, &family, opts.max_elements)?;
        classify_with(p, &family, &table)?.class
    } else {
        Class::General
    };
    let mut notes = vec![format!(
        "{} components; product of component certificates, component {} attains the minimum",
        comps.len(),
        k
    )];
    notes.extend(reports.iter().enumerate().map(|(i, r)| format!("component {i}: [{:.10}, {:.10}]", r.lower, r.upper)));
    Ok(CriticalExponentReport {
        poset: p.to_dsl(),
        m: family.len(),
        value: lower,
        lower,
        upper,
        certificate,
        active,
        class,
        iterations: reports.iter().map(|r| r.iterations).sum(),
        tolerance: tol,
        converged: upper - lower <= tol,
        notes,
    })
}

/// Orbits of antichains under automorphisms and order-reversing self-maps.
#[derive(Clone, Debug)]
pub struct Orbits {
    pub of: Vec<usize>,
    pub sizes: Vec<usize>,
    pub count: usize,
}

impl Orbits {
    pub fn trivial(m: usize) -> Self {
        Orbits { of: (0..m).collect(), sizes: vec![1; m], count: m }
    }

    /// Orbits generated by up to `cap` automorphisms and `cap` reversing maps.
    ///
    /// An automorphism `φ` sends the antichain `S` to `φ(S)`. A reversing map
    /// `ψ` sends `S` to `ψ(max(P ∖ ↑S))`, the minimal elements of the image of
    /// the down-set complementary to `↑S`.
    pub fn new(p: &Poset, family: &AntichainFamily, cap: usize) -> Self {
        let m = family.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let image = |perm: &[usize], s: ElementSubset| -> ElementSubset { s.iter().map(|i| perm[i]).collect() };
        let apply = |parent: &mut Vec<usize>, f: &dyn Fn(ElementSubset) -> ElementSubset| {
            for (j, s) in family.iter().enumerate() {
                let k = family.position(f(s)).expect("symmetry maps antichains to antichains");
                let (a, b) = (find(parent, j), find(parent, k));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        };
        let mut seen = 0usize;
        for_each_copy(p, p, true, |perm| {
            apply(&mut parent, &|s| image(perm, s));
            seen += 1;
            if seen >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        let r = reverse(p);
        if r.relation_count() == p.relation_count() {
            let all = p.all();
            let mut seen = 0usize;
            for_each_copy(&r, p, true, |psi| {
                apply(&mut parent, &|s| {
                    let down = all.difference(p.up_closure(s));
                    image(psi, p.maximal_in(down))
                });
                seen += 1;
                if seen >= cap {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut of = vec![0; m];
        for j in 0..m {
            let root = find(&mut parent, j);
            let next = ids.len();
            of[j] = *ids.entry(root).or_insert(next);
        }
        let count = ids.len();
        let mut sizes = vec![0; count];
        for &o in &of {
            sizes[o] += 1;
        }
        Orbits { of, sizes, count }
    }

    /// Spreads each orbit's mass evenly over its antichains.
    pub fn expand(&self, w: &[f64]) -> Vec<f64> {
        self.of.iter().map(|&o| w[o] / self.sizes[o] as f64).collect()
    }

    /// Replaces each coordinate by the mean over its orbit.
    pub fn average(&self, alpha: &[f64]) -> Vec<f64> {
        self.expand(&self.collapse(alpha))
    }

    pub fn collapse(&self, alpha: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; self.count];
        for (j, &a) in alpha.iter().enumerate() {
            w[self.of[j]] += a;
        }
        w
    }
}

/// A constraint written in orbit coordinates: `β = C w`, value `H(β)/size`.
struct ReducedConstraint {
    size: f64,
    rows: Vec<Vec<(usize, f64)>>,
    members: Vec<usize>,
}

impl ReducedConstraint {
    fn shadow(&self, w: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|row| row.iter().map(|&(o, c)| c * w[o]).sum()).collect()
    }

    fn value(&self, w: &[f64]) -> f64 {
        entropy_raw(&self.shadow(w)) / self.size
    }

    fn gradient(&self, beta: &[f64], r: usize) -> Vec<f64> {
        let mut g = vec![0.0; r];
        for (row, &b) in self.rows.iter().zip(beta) {
            let d = -(b.max(1e-300).ln() + 1.0) / self.size;
            for &(o, c) in row {
                g[o] += c * d;
            }
        }
        g
    }
}

struct Reduced {
    r: usize,
    constraints: Vec<ReducedConstraint>,
}

impl Reduced {
    fn new(table: &ConstraintTable, orbits: &Orbits) -> Self {
        let mut seen: HashMap<(usize, Vec<Vec<(usize, usize)>>), usize> = HashMap::new();
        let mut constraints: Vec<ReducedConstraint> = Vec::new();
        for (idx, c) in table.constraints.iter().enumerate() {
            let mut counts: Vec<HashMap<usize, usize>> = vec![HashMap::new(); c.bins];
            for (j, &b) in c.map.iter().enumerate() {
                *counts[b as usize].entry(orbits.of[j]).or_insert(0) += 1;
            }
            let mut rows: Vec<Vec<(usize, usize)>> = counts
                .into_iter()
                .map(|h| {
                    let mut v: Vec<(usize, usize)> = h.into_iter().collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            rows.sort();
            let key = (c.size, rows);
            match seen.get(&key) {
                Some(&k) => constraints[k].members.push(idx),
                None => {
                    let rc = ReducedConstraint {
                        size: c.size as f64,
                        rows: key
                            .1
                            .iter()
                            .map(|row| row.iter().map(|&(o, n)| (o, n as f64 / orbits.sizes[o] as f64)).collect())
                            .collect(),
                        members: vec![idx],
                    };
                    seen.insert(key, constraints.len());
                    constraints.push(rc);
                }
            }
        }
        Reduced { r: orbits.count, constraints }
    }

    fn values(&self, w: &[f64]) -> Vec<f64> {
        self.constraints.iter().map(|c| c.value(w)).collect()
    }

    fn objective(&self, w: &[f64]) -> f64 {
        self.values(w).into_iter().fold(f64::INFINITY, f64::min)
    }
}

fn mirror_ascent(red: &Reduced, iterations: usize) -> (Vec<f64>, usize) {
    let r = red.r;
    let mut w = vec![1.0 / r as f64; r];
    let mut best = (red.objective(&w), w.clone());
    for k in 1..=iterations {
        let vals = red.values(&w);
        let g = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if g > best.0 {
            best = (g, w.clone());
        }
        let mut grad = vec![0.0; r];
        let mut count = 0.0;
        for (c, &v) in red.constraints.iter().zip(&vals) {
            if v <= g + 1e-9 {
                let gc = c.gradient(&c.shadow(&w), r);
                grad.iter_mut().zip(gc).for_each(|(a, b)| *a += b);
                count += 1.0;
            }
        }
        let eta = 0.5 / (k as f64).sqrt();
        let shift = grad.iter().copied().fold(f64::NEG_INFINITY, f64::max) / count;
        for (wi, gi) in w.iter_mut().zip(&grad) {
            *wi = (*wi * (eta * (gi / count - shift)).exp()).max(1e-300);
        }
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
    }
    let g = red.objective(&w);
    if g > best.0 {
        best = (g, w);
    }
    (best.1, iterations)
}

fn near_active_duals(red: &Reduced, w: &[f64], slack: f64) -> Vec<f64> {
    let vals = red.values(w);
    let g = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let mut lambda: Vec<f64> = vals.iter().map(|&v| if v <= g + slack { 1.0 } else { 0.0 }).collect();
    let total: f64 = lambda.iter().sum();
    lambda.iter_mut().for_each(|l| *l /= total);
    lambda
}

/// Interior-point refinement of `max t` subject to `f_c(w) ≥ t` on the orbit simplex.
///
/// Returns the final point, dual estimates for the constraints and the Newton step count.
fn barrier(red: &Reduced, table: &ConstraintTable, orbits: &Orbits, w0: Vec<f64>, tol: f64, cap: usize) -> (Vec<f64>, Vec<f64>, usize) {
    let r = red.r;
    let k = red.constraints.len();
    // Start strictly inside the simplex.
    let mut w: Vec<f64> = w0.iter().map(|&x| 0.9 * x + 0.1 / r as f64).collect();
    let mut t = red.objective(&w) - 0.1;
    let dim = r + 1;
    let terms = (k + r) as f64;
    let mut s_param = 10.0 * terms;
    let mut steps = 0usize;
    let mut best: Option<(f64, Vec<f64>, Vec<f64>)> = None;

    let barrier_value = |w: &[f64], t: f64, s_param: f64| -> Option<f64> {
        if w.iter().any(|&x| x <= 0.0) {
            return None;
        }
        let mut f = -s_param * t;
        for c in &red.constraints {
            let s = c.value(w) - t;
            if s <= 0.0 {
                return None;
            }
            f -= s.ln();
        }
        Some(f - w.iter().map(|x| x.ln()).sum::<f64>())
    };

    loop {
        // Centering.
        for _ in 0..60 {
            if steps >= cap {
                break;
            }
            steps += 1;
            let mut grad = DVector::<f64>::zeros(dim);
            let mut hess = DMatrix::<f64>::zeros(dim, dim);
            for c in &red.constraints {
                let beta = c.shadow(&w);
                let s = entropy_raw(&beta) / c.size - t;
                let gc = c.gradient(&beta, r);
                let inv = 1.0 / s;
                let inv2 = inv * inv;
                for a in 0..r {
                    if gc[a] == 0.0 {
                        continue;
                    }
                    grad[a] -= gc[a] * inv;
                    hess[(a, r)] -= gc[a] * inv2;
                    hess[(r, a)] -= gc[a] * inv2;
                    for b in 0..r {
                        hess[(a, b)] += gc[a] * gc[b] * inv2;
                    }
                }
                grad[r] += inv;
                hess[(r, r)] += inv2;
                for (row, &b) in c.rows.iter().zip(&beta) {
                    let scale = inv / (c.size * b.max(1e-300));
                    for &(o1, c1) in row {
                        for &(o2, c2) in row {
                            hess[(o1, o2)] += scale * c1 * c2;
                        }
                    }
                }
            }
            grad[r] -= s_param;
            for a in 0..r {
                grad[a] -= 1.0 / w[a];
                hess[(a, a)] += 1.0 / (w[a] * w[a]);
            }
            let mut kkt = DMatrix::<f64>::zeros(dim + 1, dim + 1);
            kkt.view_mut((0, 0), (dim, dim)).copy_from(&hess);
            let mut rhs = DVector::<f64>::zeros(dim + 1);
            for a in 0..dim {
                rhs[a] = -grad[a];
            }
            for a in 0..r {
                kkt[(a, dim)] = 1.0;
                kkt[(dim, a)] = 1.0;
            }
            let Some(sol) = kkt.lu().solve(&rhs) else { break };
            let step: Vec<f64> = (0..dim).map(|a| sol[a]).collect();
            let decrement: f64 = -(0..dim).map(|a| grad[a] * step[a]).sum::<f64>();
            if !(decrement > 1e-12) {
                break;
            }
            let Some(f0) = barrier_value(&w, t, s_param) else { break };
            let mut tau = 1.0;
            let mut moved = false;
            for _ in 0..80 {
                let nw: Vec<f64> = (0..r).map(|a| w[a] + tau * step[a]).collect();
                let nt = t + tau * step[r];
                if let Some(f1) = barrier_value(&nw, nt, s_param) {
                    if f1 <= f0 - 0.25 * tau * decrement {
                        let total: f64 = nw.iter().sum();
                        w = nw.into_iter().map(|x| x / total).collect();
                        t = nt;
                        moved = true;
                        break;
                    }
                }
                tau *= 0.5;
            }
            if !moved || decrement < 1e-10 {
                break;
            }
        }

        let slacks: Vec<f64> = red.constraints.iter().map(|c| c.value(&w) - t).collect();
        let mut lambda: Vec<f64> = slacks.iter().map(|s| 1.0 / s.max(1e-300)).collect();
        let total: f64 = lambda.iter().sum();
        lambda.iter_mut().for_each(|l| *l /= total);
        let alpha = orbits.expand(&w);
        let lower = table.objective(&alpha);
        let upper = frank_wolfe_bound(table, red, &lambda, &alpha);
        let gap = upper - lower;
        if best.as_ref().is_none_or(|b| gap < b.0) {
            best = Some((gap, w.clone(), lambda));
        }
        if gap <= 0.25 * tol || s_param >= 1e13 || steps >= cap {
            break;
        }
        s_param *= 8.0;
        let g = red.objective(&w);
        if t >= g {
            t = g - terms / s_param;
        }
    }
    let (_, w, lambda) = best.expect("at least one centering pass");
    (w, lambda, steps)
}

/// Upper bound on `max g` from one concave combination `h = Σ λ_c f_c ≥ g`,
/// linearised at `alpha`; each reduced weight is split over its members.
fn frank_wolfe_bound(table: &ConstraintTable, red: &Reduced, lambda: &[f64], alpha: &[f64]) -> f64 {
    let m = alpha.len();
    let mut grad = vec![0.0; m];
    let mut h = 0.0;
    let mut tmp = vec![0.0; m];
    let mut beta = Vec::new();
    for (rc, &l) in red.constraints.iter().zip(lambda) {
        if l == 0.0 {
            continue;
        }
        let share = l / rc.members.len() as f64;
        for &idx in &rc.members {
            let c = &table.constraints[idx];
            c.shadow(alpha, &mut beta);
            h += share * entropy_raw(&beta) / c.size as f64;
            c.gradient(&beta, &mut tmp);
            grad.iter_mut().zip(&tmp).for_each(|(g, d)| *g += share * d);
        }
    }
    let inner: f64 = grad.iter().zip(alpha).map(|(g, a)| g * a).sum();
    let top = grad.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    h + top - inner
}
