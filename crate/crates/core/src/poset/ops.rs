use super::Poset;
use crate::error::{Error, Result};

/// An induced subposet together with the parent index of each element.
#[derive(Clone, Debug)]
pub struct Subposet {
    pub poset: Poset,
    pub parent: Vec<usize>,
}

/// The same elements with every relation flipped.
pub fn reverse(p: &Poset) -> Poset {
    let rel: Vec<(usize, usize)> = p.relations().into_iter().map(|(a, b)| (b, a)).collect();
    Poset::from_relations(p.labels().to_vec(), &rel).expect("reversal of a poset is a poset")
}

/// `p` followed by `q`, with no relations between them.
pub fn disjoint_union(p: &Poset, q: &Poset) -> Result<Poset> {
    let off = p.len();
    let mut labels: Vec<String> = p.labels().to_vec();
    labels.extend(q.labels().iter().map(|l| format!("{l}'")));
    let mut rel = p.relations();
    rel.extend(q.relations().into_iter().map(|(a, b)| (a + off, b + off)));
    Poset::from_relations(labels, &rel)
}

/// Lexicographic product: each element of `p` replaced by a copy of `q`.
///
/// Element `(a, b)` has index `a * q.len() + b`.
pub fn lex_product(p: &Poset, q: &Poset) -> Result<Poset> {
    let (np, nq) = (p.len(), q.len());
    let mut labels = Vec::with_capacity(np * nq);
    for a in 0..np {
        for b in 0..nq {
            labels.push(format!("({},{})", p.label(a), q.label(b)));
        }
    }
    Poset::from_fn(np * nq, labels, |x, y| {
        let (a, b) = (x / nq, x % nq);
        let (c, d) = (y / nq, y % nq);
        p.lt(a, c) || (a == c && q.lt(b, d))
    })
}

/// `q` stacked on top of `p`, gluing the top of `p` to the bottom of `q`.
///
/// Elements of `p` keep their indices; the non-minimum elements of `q`
/// follow in their original order.
pub fn tower(p: &Poset, q: &Poset) -> Result<Poset> {
    let top = p
        .unique_max()
        .ok_or_else(|| Error::TowerUndefined("lower poset has no greatest element".into()))?;
    let bottom = q
        .unique_min()
        .ok_or_else(|| Error::TowerUndefined("upper poset has no least element".into()))?;
    let np = p.len();
    let mut new_index = vec![0usize; q.len()];
    let mut labels: Vec<String> = p.labels().to_vec();
    let mut next = np;
    for (i, slot) in new_index.iter_mut().enumerate() {
        if i == bottom {
            *slot = top;
        } else {
            *slot = next;
            next += 1;
            labels.push(format!("{}'", q.label(i)));
        }
    }
    let mut rel = p.relations();
    rel.extend(q.relations().into_iter().map(|(a, b)| (new_index[a], new_index[b])));
    for a in 0..np {
        for b in np..next {
            rel.push((a, b));
        }
    }
    Poset::from_relations(labels, &rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{catalog, is_isomorphic, parse_catalog_spec, ElementSubset};

    fn c(t: usize) -> Poset {
        catalog("chain", &[t]).unwrap()
    }

    #[test]
    fn tower_of_chains_is_a_chain() {
        for s in 1..4 {
            for t in 1..4 {
                assert!(is_isomorphic(&tower(&c(s), &c(t)).unwrap(), &c(s + t - 1)));
            }
        }
    }

    #[test]
    fn tower_shapes() {
        let v = catalog("V", &[]).unwrap();
        let want = parse_catalog_spec("layered:1,1,1,2").unwrap();
        assert!(is_isomorphic(&tower(&c(3), &v).unwrap(), &want));
        let b2 = catalog("boolean", &[2]).unwrap();
        let got = tower(&b2, &b2).unwrap();
        assert!(is_isomorphic(&got, &parse_catalog_spec("layered:1,2,1,2,1").unwrap()));
        assert!(matches!(tower(&v, &c(2)), Err(Error::TowerUndefined(_))));
        let lam = catalog("lambda", &[]).unwrap();
        assert!(matches!(tower(&c(2), &lam), Err(Error::TowerUndefined(_))));
    }

    #[test]
    fn lex_product_of_two_chains() {
        assert!(is_isomorphic(&lex_product(&c(2), &c(2)).unwrap(), &c(4)));
        let anti = catalog("antichain", &[2]).unwrap();
        let p = lex_product(&c(2), &anti).unwrap();
        assert!(is_isomorphic(&p, &parse_catalog_spec("layered:2,2").unwrap()));
    }

    #[test]
    fn reverse_is_an_involution() {
        for p in [catalog("V", &[]).unwrap(), catalog("T2", &[]).unwrap(), catalog("DD", &[]).unwrap()] {
            assert_eq!(reverse(&reverse(&p)), p);
        }
        assert!(is_isomorphic(&reverse(&catalog("V", &[]).unwrap()), &catalog("lambda", &[]).unwrap()));
    }

    #[test]
    fn induced_subposets() {
        let b2 = catalog("boolean", &[2]).unwrap();
        let sub = b2.induced(ElementSubset::from_indices([1, 2, 3])).unwrap();
        assert!(is_isomorphic(&sub.poset, &catalog("lambda", &[]).unwrap()));
        assert_eq!(sub.parent, vec![1, 2, 3]);
        let whole = b2.induced(b2.all()).unwrap();
        assert!(is_isomorphic(&whole.poset, &b2));
        let ends = c(3).induced(ElementSubset::from_indices([0, 2])).unwrap();
        assert!(is_isomorphic(&ends.poset, &c(2)));
        assert!(matches!(b2.induced(ElementSubset::EMPTY), Err(Error::EmptySubset)));
    }

    #[test]
    fn components() {
        let u = disjoint_union(&c(2), &c(3)).unwrap();
        let sizes: Vec<usize> = u.connected_components().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(c(5).connected_components().len(), 1);
        assert_eq!(catalog("antichain", &[4]).unwrap().connected_components().len(), 4);
    }
}
