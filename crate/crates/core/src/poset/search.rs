use super::{ops::reverse, ElementSubset, Poset};
use std::cmp::Ordering;
use std::ops::ControlFlow;

/// A strict order that patterns can be embedded into.
pub trait Order {
    fn size(&self) -> usize;
    fn lt(&self, a: usize, b: usize) -> bool;

    /// Bitset of elements above `a`, for hosts small enough to have one.
    fn up_bits(&self, _a: usize) -> Option<u128> {
        None
    }

    fn down_bits(&self, _a: usize) -> Option<u128> {
        None
    }
}

impl Order for Poset {
    fn size(&self) -> usize {
        self.len()
    }
    fn lt(&self, a: usize, b: usize) -> bool {
        Poset::lt(self, a, b)
    }
    fn up_bits(&self, a: usize) -> Option<u128> {
        Some(self.up(a).0)
    }
    fn down_bits(&self, a: usize) -> Option<u128> {
        Some(self.down(a).0)
    }
}

/// Subsets of `[n]` stored as bit words, ordered by proper inclusion.
#[derive(Clone, Copy, Debug)]
pub struct WordOrder<'a>(pub &'a [u64]);

impl Order for WordOrder<'_> {
    fn size(&self) -> usize {
        self.0.len()
    }
    fn lt(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.0[a], self.0[b]);
        x != y && x & !y == 0
    }
}

#[derive(Clone, Copy)]
enum Rel {
    Below,
    Above,
    Apart,
}

struct Plan {
    order: Vec<usize>,
    constraints: Vec<Vec<(usize, Rel)>>,
    up_need: Vec<usize>,
    down_need: Vec<usize>,
}

fn plan(pattern: &Poset, induced: bool) -> Plan {
    let n = pattern.len();
    let ext = pattern.linear_extension();
    let mut placed = ElementSubset::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = ext
            .iter()
            .copied()
            .filter(|&e| !placed.contains(e))
            .max_by_key(|&e| {
                let links = pattern.comparable_set(e).intersection(placed).len();
                (links, std::cmp::Reverse(ext.iter().position(|&x| x == e)))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    let constraints = (0..n)
        .map(|k| {
            let p = order[k];
            (0..k)
                .filter_map(|s| {
                    let q = order[s];
                    if pattern.lt(q, p) {
                        Some((s, Rel::Below))
                    } else if pattern.lt(p, q) {
                        Some((s, Rel::Above))
                    } else if induced {
                        Some((s, Rel::Apart))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let up_need = order.iter().map(|&p| pattern.up(p).len()).collect();
    let down_need = order.iter().map(|&p| pattern.down(p).len()).collect();
    Plan { order, constraints, up_need, down_need }
}

/// Calls `f` with every injective order-preserving map from `pattern` into
/// `host` (order-reflecting as well when `induced`), as `map[element] = image`.
/// Maps are produced in lexicographic order of images along a fixed element order.
pub fn for_each_copy<H, F>(host: &H, pattern: &Poset, induced: bool, mut f: F)
where
    H: Order + ?Sized,
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if pattern.is_empty() {
        let _ = f(&[]);
        return;
    }
    if pattern.len() > host.size() {
        return;
    }
    let plan = plan(pattern, induced);
    let bitsets = host.size() <= 128 && host.up_bits(0).is_some();
    let degrees: Option<(Vec<usize>, Vec<usize>)> = bitsets.then(|| {
        (
            (0..host.size()).map(|h| host.up_bits(h).unwrap().count_ones() as usize).collect(),
            (0..host.size()).map(|h| host.down_bits(h).unwrap().count_ones() as usize).collect(),
        )
    });
    let mut images = vec![usize::MAX; plan.order.len()];
    let mut map = vec![usize::MAX; pattern.len()];
    let mut used = vec![false; host.size()];
    let mut state = Search { host, plan: &plan, bitsets, degrees, images: &mut images, map: &mut map, used: &mut used };
    let _ = state.extend(0, &mut f);
}

struct Search<'a, H: ?Sized> {
    host: &'a H,
    plan: &'a Plan,
    bitsets: bool,
    degrees: Option<(Vec<usize>, Vec<usize>)>,
    images: &'a mut Vec<usize>,
    map: &'a mut Vec<usize>,
    used: &'a mut Vec<bool>,
}

impl<H: Order + ?Sized> Search<'_, H> {
    fn extend<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, k: usize, f: &mut F) -> ControlFlow<()> {
        if k == self.plan.order.len() {
            return f(self.map);
        }
        let p = self.plan.order[k];
        if self.bitsets {
            let mut cand = ElementSubset::full(self.host.size()).0;
            for &(s, rel) in &self.plan.constraints[k] {
                let img = self.images[s];
                match rel {
                    Rel::Below => cand &= self.host.up_bits(img).unwrap(),
                    Rel::Above => cand &= self.host.down_bits(img).unwrap(),
                    Rel::Apart => {
                        cand &= !(self.host.up_bits(img).unwrap() | self.host.down_bits(img).unwrap())
                    }
                }
            }
            for h in ElementSubset(cand) {
                if self.used[h] {
                    continue;
                }
                if let Some((up, down)) = &self.degrees {
                    if up[h] < self.plan.up_need[k] || down[h] < self.plan.down_need[k] {
                        continue;
                    }
                }
                self.place(k, p, h, f)?;
            }
        } else {
            for h in 0..self.host.size() {
                if self.used[h] || !self.fits(k, h) {
                    continue;
                }
                self.place(k, p, h, f)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn fits(&self, k: usize, h: usize) -> bool {
        self.plan.constraints[k].iter().all(|&(s, rel)| {
            let img = self.images[s];
            match rel {
                Rel::Below => self.host.lt(img, h),
                Rel::Above => self.host.lt(h, img),
                Rel::Apart => !self.host.lt(img, h) && !self.host.lt(h, img),
            }
        })
    }

    fn place<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, k: usize, p: usize, h: usize, f: &mut F) -> ControlFlow<()> {
        self.used[h] = true;
        self.images[k] = h;
        self.map[p] = h;
        let r = self.extend(k + 1, f);
        self.used[h] = false;
        self.map[p] = usize::MAX;
        r
    }
}

/// First embedding of `pattern` into `host` in search order, if any.
pub fn contains_copy<H: Order + ?Sized>(host: &H, pattern: &Poset, induced: bool) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_copy(host, pattern, induced, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// All order automorphisms, as permutations `perm[i] = image of i`.
pub fn automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_copy(p, p, true, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// All order-reversing bijections of `p` onto itself.
pub fn reverse_automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    let r = reverse(p);
    if r.relation_count() != p.relation_count() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for_each_copy(&r, p, true, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// A complete isomorphism invariant: equal forms exactly for isomorphic posets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    invariants: Vec<(usize, usize, usize, usize)>,
    rows: Vec<(u128, u128)>,
}

/// Canonical labelling by backtracking over orderings that respect the
/// (depth, co-depth, down-degree, up-degree) refinement, taking the
/// lexicographically least relation code. Elements with identical up- and
/// down-sets are interchangeable and are tried only once.
pub fn canonical_form(p: &Poset) -> CanonicalForm {
    let n = p.len();
    let depth = p.depths();
    let codepth = reverse(p).depths();
    let inv: Vec<(usize, usize, usize, usize)> =
        (0..n).map(|i| (depth[i], codepth[i], p.down(i).len(), p.up(i).len())).collect();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&i| (inv[i], i));
    let slot_inv: Vec<_> = sorted.iter().map(|&i| inv[i]).collect();

    struct Ctx<'a> {
        p: &'a Poset,
        inv: &'a [(usize, usize, usize, usize)],
        slot_inv: &'a [(usize, usize, usize, usize)],
        chosen: Vec<usize>,
        used: Vec<bool>,
        rows: Vec<(u128, u128)>,
        best: Option<Vec<(u128, u128)>>,
    }

    fn row(p: &Poset, chosen: &[usize], e: usize) -> (u128, u128) {
        let mut below = 0u128;
        let mut above = 0u128;
        for (j, &c) in chosen.iter().enumerate() {
            if p.lt(c, e) {
                below |= 1 << j;
            }
            if p.lt(e, c) {
                above |= 1 << j;
            }
        }
        (below, above)
    }

    fn go(ctx: &mut Ctx, k: usize) {
        let n = ctx.p.len();
        if k == n {
            if ctx.best.as_ref().is_none_or(|b| ctx.rows < *b) {
                ctx.best = Some(ctx.rows.clone());
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for e in 0..n {
            if ctx.used[e] || ctx.inv[e] != ctx.slot_inv[k] {
                continue;
            }
            if tried.iter().any(|&t| ctx.p.up(t) == ctx.p.up(e) && ctx.p.down(t) == ctx.p.down(e)) {
                continue;
            }
            tried.push(e);
            let r = row(ctx.p, &ctx.chosen, e);
            if let Some(best) = &ctx.best {
                if ctx.rows[..] == best[..k] && r.cmp(&best[k]) == Ordering::Greater {
                    continue;
                }
            }
            ctx.used[e] = true;
            ctx.chosen.push(e);
            ctx.rows.push(r);
            go(ctx, k + 1);
            ctx.rows.pop();
            ctx.chosen.pop();
            ctx.used[e] = false;
        }
    }

    let mut ctx = Ctx {
        p,
        inv: &inv,
        slot_inv: &slot_inv,
        chosen: Vec::new(),
        used: vec![false; n],
        rows: Vec::new(),
        best: None,
    };
    go(&mut ctx, 0);
    CanonicalForm { invariants: slot_inv.clone(), rows: ctx.best.unwrap_or_default() }
}

pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len() && a.relation_count() == b.relation_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn chain_in_square() {
        let b2 = catalog("boolean", &[2]).unwrap();
        let m = contains_copy(&b2, &catalog("chain", &[3]).unwrap(), false).unwrap();
        assert_eq!(m, vec![0, 1, 3]);
    }

    #[test]
    fn no_v_in_a_chain() {
        let c3 = catalog("chain", &[3]).unwrap();
        let v = catalog("V", &[]).unwrap();
        assert!(contains_copy(&c3, &v, true).is_none());
        // A weak copy may send the two maxima to comparable elements.
        assert_eq!(contains_copy(&c3, &v, false), Some(vec![0, 1, 2]));
    }

    #[test]
    fn square_sits_induced_in_cube() {
        let b3 = catalog("boolean", &[3]).unwrap();
        let b2 = catalog("boolean", &[2]).unwrap();
        let m = contains_copy(&b3, &b2, true).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b2.lt(i, j), b3.lt(m[i], m[j]));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&catalog("antichain", &[3]).unwrap()).len(), 6);
        let c4 = catalog("chain", &[4]).unwrap();
        assert_eq!(automorphisms(&c4).len(), 1);
        assert_eq!(reverse_automorphisms(&c4).len(), 1);
        let v = catalog("V", &[]).unwrap();
        assert_eq!(automorphisms(&v).len(), 2);
        assert!(reverse_automorphisms(&v).is_empty());
        assert_eq!(automorphisms(&catalog("boolean", &[3]).unwrap()).len(), 6);
        assert_eq!(reverse_automorphisms(&catalog("boolean", &[3]).unwrap()).len(), 6);
    }

    #[test]
    fn word_hosts() {
        let words = [0b000u64, 0b101];
        assert!(contains_copy(&WordOrder(&words), &catalog("chain", &[2]).unwrap(), false).is_some());
        let none: [u64; 0] = [];
        assert!(contains_copy(&WordOrder(&none), &catalog("chain", &[1]).unwrap(), false).is_none());
    }

    #[test]
    fn canonical_forms_separate_shapes() {
        let v = catalog("V", &[]).unwrap();
        let lam = catalog("lambda", &[]).unwrap();
        assert!(!is_isomorphic(&v, &lam));
        let twisted = Poset::from_relations(vec!["x".into(), "y".into(), "z".into()], &[(2, 0), (2, 1)]).unwrap();
        assert!(is_isomorphic(&v, &twisted));
        let big = catalog("blowup", &[3, 5]).unwrap();
        assert!(is_isomorphic(&big, &crate::poset::parse_catalog_spec("layered:5,5,5").unwrap()));
    }
}
