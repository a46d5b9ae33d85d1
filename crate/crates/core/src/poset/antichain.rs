use super::{ElementSubset, Poset};
use crate::error::{Error, Result};
use std::collections::HashMap;

pub const DEFAULT_ANTICHAIN_CAP: usize = 10_000_000;

/// All antichains of a poset (or of a subset of it), the empty antichain last.
///
/// Antichains are listed in depth-first order of ascending element index, so
/// `{0}` comes before `{0, 2}` which comes before `{1}`.
#[derive(Clone, Debug)]
pub struct AntichainFamily {
    sets: Vec<ElementSubset>,
    index: HashMap<u128, usize>,
}

impl AntichainFamily {
    /// Antichains of `p` contained in `within`, using parent indices.
    pub fn within(p: &Poset, within: ElementSubset, cap: usize) -> Result<Self> {
        let mut sets = Vec::new();
        // DFS emitting in pre-order: a node's children extend it by larger indices.
        fn visit(
            p: &Poset,
            current: ElementSubset,
            candidates: ElementSubset,
            sets: &mut Vec<ElementSubset>,
            cap: usize,
        ) -> Result<()> {
            for i in candidates {
                let next = current.union(ElementSubset::singleton(i));
                if sets.len() + 2 > cap {
                    return Err(Error::Capacity { what: "antichain count".into(), limit: cap as u128 });
                }
                sets.push(next);
                let higher = ElementSubset(candidates.0 & u128::MAX.checked_shl(i as u32 + 1).unwrap_or(0));
                let rest = higher.difference(p.comparable_set(i));
                visit(p, next, rest, sets, cap)?;
            }
            Ok(())
        }
        visit(p, ElementSubset::EMPTY, within.intersection(p.all()), &mut sets, cap)?;
        sets.push(ElementSubset::EMPTY);
        let index = sets.iter().enumerate().map(|(j, s)| (s.0, j)).collect();
        Ok(AntichainFamily { sets, index })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn get(&self, j: usize) -> ElementSubset {
        self.sets[j]
    }

    pub fn sets(&self) -> &[ElementSubset] {
        &self.sets
    }

    pub fn position(&self, s: ElementSubset) -> Option<usize> {
        self.index.get(&s.0).copied()
    }

    /// Index of the empty antichain, always the last one.
    pub fn empty_index(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementSubset> + '_ {
        self.sets.iter().copied()
    }

    /// For each antichain, the indices of antichains strictly containing it.
    pub fn extensions(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|&s| {
                self.sets
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| t != s && s.is_subset(t))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect()
    }
}

pub fn antichains(p: &Poset) -> Result<AntichainFamily> {
    AntichainFamily::within(p, p.all(), DEFAULT_ANTICHAIN_CAP)
}

pub fn antichains_with_cap(p: &Poset, cap: usize) -> Result<AntichainFamily> {
    AntichainFamily::within(p, p.all(), cap)
}
