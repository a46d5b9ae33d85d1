use super::{CopyMap, Partition, Weighting};
use crate::error::{Error, Result};
use crate::poset::{antichains, AntichainFamily, ElementSubset, Poset};

/// A poset with its antichain family and the lookup tables used by the
/// partition-to-copy maps.
#[derive(Clone, Debug)]
pub struct Correspondence {
    poset: Poset,
    family: AntichainFamily,
    /// `meets[j]`: elements `i` whose down-set `D(i)` meets antichain `S_j`.
    meets: Vec<ElementSubset>,
    extensions: Vec<Vec<usize>>,
}

impl Correspondence {
    pub fn new(poset: &Poset) -> Result<Self> {
        let family = antichains(poset)?;
        let meets = family
            .iter()
            .map(|s| (0..poset.len()).filter(|&i| !poset.down_closure(ElementSubset::singleton(i)).intersection(s).is_empty()).collect())
            .collect();
        let extensions = family.extensions();
        Ok(Correspondence { poset: poset.clone(), family, meets, extensions })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn family(&self) -> &AntichainFamily {
        &self.family
    }

    pub fn m(&self) -> usize {
        self.family.len()
    }

    /// Elements whose down-set meets antichain `j`; part `A_j` lands in exactly these `X_i`.
    pub fn meets(&self, j: usize) -> ElementSubset {
        self.meets[j]
    }

    /// `X_i` is the union of the parts `A_j` whose antichain meets `D(i)`.
    pub fn f2(&self, a: &Partition) -> Result<CopyMap> {
        if a.m() != self.m() {
            return Err(Error::IndexMismatch { expected: self.m(), found: a.m() });
        }
        let mut sets = vec![0u64; self.poset.len()];
        for (j, &part) in a.parts().iter().enumerate() {
            if part == 0 {
                continue;
            }
            for i in self.meets[j] {
                sets[i] |= part;
            }
        }
        CopyMap::new(a.n(), sets)
    }

    /// Recovers the partition of an order-preserving map.
    pub fn f1(&self, phi: &CopyMap) -> Result<Partition> {
        let p = &self.poset;
        if phi.sets().len() != p.len() {
            return Err(Error::IndexMismatch { expected: p.len(), found: phi.sets().len() });
        }
        if let Some((lower, upper)) = phi.order_violation(p) {
            return Err(Error::NotOrderPreserving { lower, upper });
        }
        let n = phi.n();
        let x = phi.sets();
        // Y_i: points of X_i in no X_j with j below i.
        let y: Vec<u64> = (0..p.len())
            .map(|i| p.down(i).iter().fold(x[i], |acc, j| acc & !x[j]))
            .collect();
        let m = self.m();
        let empty = self.family.empty_index();
        // Z_j: points lying in Y_i for every i in S_j.
        let z: Vec<u64> = (0..m)
            .map(|j| {
                if j == empty {
                    0
                } else {
                    self.family.get(j).iter().fold(u64::MAX, |acc, i| acc & y[i])
                }
            })
            .collect();
        let mut parts = vec![0u64; m];
        let mut used = 0u64;
        for j in 0..m {
            if j == empty {
                continue;
            }
            let beyond = self.extensions[j].iter().fold(0u64, |acc, &k| acc | z[k]);
            parts[j] = z[j] & !beyond;
            used |= parts[j];
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        parts[empty] = all & !used;
        Partition::new(n, parts)
    }

    /// The shadow map of every antichain of `P` onto `q`.
    pub fn shadow_map(&self, q: ElementSubset) -> Result<ShadowMap> {
        ShadowMap::new(&self.poset, &self.family, q)
    }
}

/// Minimal elements of `q` lying above some element of `s`.
pub fn shadow_antichain(p: &Poset, q: ElementSubset, s: ElementSubset) -> Result<ElementSubset> {
    if !p.is_antichain(s) {
        return Err(Error::NotAntichain(s.0));
    }
    Ok(p.minimal_in(p.up_closure(s).intersection(q)))
}

/// For a fixed `Q`, the index in `A(Q)` of the shadow of each antichain of `P`.
#[derive(Clone, Debug)]
pub struct ShadowMap {
    pub q: ElementSubset,
    /// Antichains of the subposet on `q`, in parent indices.
    pub target: AntichainFamily,
    pub index: Vec<usize>,
}

impl ShadowMap {
    pub fn new(p: &Poset, family: &AntichainFamily, q: ElementSubset) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptySubset);
        }
        let target = AntichainFamily::within(p, q, crate::poset::DEFAULT_ANTICHAIN_CAP)?;
        let index = family
            .iter()
            .map(|s| {
                let sh = p.minimal_in(p.up_closure(s).intersection(q));
                target.position(sh).expect("shadow is an antichain of Q")
            })
            .collect();
        Ok(ShadowMap { q, target, index })
    }

    pub fn weighting(&self, alpha: &Weighting) -> Weighting {
        let mut beta = vec![0.0; self.target.len()];
        for (j, &a) in alpha.coords().iter().enumerate() {
            beta[self.index[j]] += a;
        }
        Weighting::normalized(beta).expect("shadow of a weighting has positive mass")
    }

    pub fn partition(&self, a: &Partition) -> Partition {
        let mut parts = vec![0u64; self.target.len()];
        for (j, &part) in a.parts().iter().enumerate() {
            parts[self.index[j]] |= part;
        }
        Partition::new(a.n(), parts).expect("merging parts keeps a partition")
    }
}

pub fn f2_build(p: &Poset, a: &Partition) -> Result<CopyMap> {
    Correspondence::new(p)?.f2(a)
}

pub fn f1_partition(p: &Poset, phi: &CopyMap) -> Result<Partition> {
    Correspondence::new(p)?.f1(phi)
}

pub fn shadow_weighting(p: &Poset, q: ElementSubset, alpha: &Weighting) -> Result<Weighting> {
    let fam = antichains(p)?;
    if alpha.len() != fam.len() {
        return Err(Error::IndexMismatch { expected: fam.len(), found: alpha.len() });
    }
    Ok(ShadowMap::new(p, &fam, q)?.weighting(alpha))
}

pub fn shadow_partition(p: &Poset, q: ElementSubset, a: &Partition) -> Result<Partition> {
    let fam = antichains(p)?;
    if a.m() != fam.len() {
        return Err(Error::IndexMismatch { expected: fam.len(), found: a.m() });
    }
    Ok(ShadowMap::new(p, &fam, q)?.partition(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn square_with_singleton_parts() {
        // Six ground points, one per antichain of the square.
        let b2 = catalog("boolean", &[2]).unwrap();
        let c = Correspondence::new(&b2).unwrap();
        let a = Partition::from_labels(6, &[0, 1, 2, 3, 4, 5]).unwrap();
        let phi = c.f2(&a).unwrap();
        let sizes: Vec<u32> = phi.sets().iter().map(|s| s.count_ones()).collect();
        assert_eq!(sizes, vec![1, 3, 3, 5]);
        assert_eq!((phi.set(1) & phi.set(2)).count_ones(), 2);
        assert!(phi.is_induced_copy(&b2));
    }

    #[test]
    fn degenerate_maps() {
        let c1 = catalog("chain", &[1]).unwrap();
        let c = Correspondence::new(&c1).unwrap();
        let a = Partition::new(3, vec![0b001, 0b110]).unwrap();
        assert_eq!(c.f2(&a).unwrap().sets(), &[0b001]);

        let v = catalog("V", &[]).unwrap();
        let c = Correspondence::new(&v).unwrap();
        let a = Partition::new(4, vec![0, 0, 0, 0, 0b1111]).unwrap();
        assert_eq!(c.f2(&a).unwrap().sets(), &[0, 0, 0]);
    }

    #[test]
    fn hand_applied_f1() {
        let c2 = catalog("chain", &[2]).unwrap();
        let phi = CopyMap::new(2, vec![0, 0b11]).unwrap();
        let a = f1_partition(&c2, &phi).unwrap();
        assert_eq!(a.parts(), &[0, 0b11, 0]);

        let b2 = catalog("boolean", &[2]).unwrap();
        let identity = CopyMap::new(2, vec![0b00, 0b01, 0b10, 0b11]).unwrap();
        let a = f1_partition(&b2, &identity).unwrap();
        assert_eq!(a.parts().iter().filter(|&&p| p != 0).count(), 2);
        assert_eq!(f2_build(&b2, &a).unwrap(), identity);
    }

    #[test]
    fn f1_rejects_non_monotone_maps() {
        let c2 = catalog("chain", &[2]).unwrap();
        let phi = CopyMap::new(2, vec![0b01, 0b10]).unwrap();
        assert!(matches!(f1_partition(&c2, &phi), Err(Error::NotOrderPreserving { lower: 0, upper: 1 })));
    }

    #[test]
    fn shadows_of_antichains() {
        let b2 = catalog("boolean", &[2]).unwrap();
        let top3 = ElementSubset::from_indices([1, 2, 3]);
        let got = shadow_antichain(&b2, top3, ElementSubset::from_indices([0])).unwrap();
        assert_eq!(got, ElementSubset::from_indices([1, 2]));
        let got = shadow_antichain(&b2, ElementSubset::from_indices([2, 3]), ElementSubset::from_indices([1, 2])).unwrap();
        assert_eq!(got, ElementSubset::from_indices([2]));
        for s in antichains(&b2).unwrap().iter() {
            assert_eq!(shadow_antichain(&b2, b2.all(), s).unwrap(), s);
        }
        assert!(shadow_antichain(&b2, top3, ElementSubset::from_indices([0, 3])).is_err());
    }

    #[test]
    fn shadow_weightings() {
        let b2 = catalog("boolean", &[2]).unwrap();
        let v = ElementSubset::from_indices([0, 1, 2]);
        let beta = shadow_weighting(&b2, v, &Weighting::uniform(6)).unwrap();
        let want = [1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0];
        for (b, w) in beta.coords().iter().zip(want) {
            assert!((b - w).abs() < 1e-15);
        }

        let c2 = catalog("chain", &[2]).unwrap();
        let alpha = Weighting::uniform(3);
        let beta = shadow_weighting(&c2, ElementSubset::from_indices([0]), &alpha).unwrap();
        assert!((beta.coords()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((beta.coords()[1] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(shadow_weighting(&c2, c2.all(), &alpha).unwrap(), alpha);
    }

    #[test]
    fn shadow_partition_agrees_with_weighting() {
        let b2 = catalog("boolean", &[2]).unwrap();
        let a = Partition::from_labels(6, &[0, 0, 1, 2, 5, 5]).unwrap();
        let q = ElementSubset::from_indices([1, 3]);
        let b = shadow_partition(&b2, q, &a).unwrap();
        let w = shadow_weighting(&b2, q, &a.weighting()).unwrap();
        assert_eq!(b.weighting(), w);
        assert_eq!(shadow_partition(&b2, b2.all(), &a).unwrap(), a);
        assert!(a.part(5) & !b.part(b.m() - 1) == 0);
    }
}
