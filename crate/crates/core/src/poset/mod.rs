//! Finite strict partial orders stored as transitively closed bit matrices.

mod antichain;
mod catalog;
mod dsl;
mod ops;
mod search;

pub use antichain::{antichains, antichains_with_cap, AntichainFamily, DEFAULT_ANTICHAIN_CAP};
pub use catalog::{catalog, parse_catalog_spec, CATALOG_NAMES};
pub use dsl::parse_dsl;
pub use ops::{disjoint_union, lex_product, reverse, tower, Subposet};
pub use search::{
    automorphisms, canonical_form, contains_copy, for_each_copy, is_isomorphic,
    reverse_automorphisms, Order, WordOrder,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest poset the bitset representation can hold.
pub const MAX_ELEMENTS: usize = 128;

/// A set of poset elements, one bit per element index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementSubset(pub u128);

impl ElementSubset {
    pub const EMPTY: ElementSubset = ElementSubset(0);

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ElementSubset(u128::MAX)
        } else {
            ElementSubset((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElementSubset(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> Self {
        ElementSubset(items.into_iter().fold(0u128, |acc, i| acc | (1u128 << i)))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSubset) -> Self {
        ElementSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSubset) -> Self {
        ElementSubset(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSubset) -> Self {
        ElementSubset(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for ElementSubset {
    type Item = usize;
    type IntoIter = SubsetIter;
    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSubset::from_indices(iter)
    }
}

pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A finite poset on elements `0..len()`.
///
/// `up[i]` holds every `j` with `i < j` and `down[i]` every `j` with `j < i`;
/// both are kept transitively closed.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<u128>,
    down: Vec<u128>,
    labels: Vec<String>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{} < {}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("size", &self.len())
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// The antichain on `n` elements labelled `0..n`.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::from_relations((0..n).map(|i| i.to_string()).collect(), &[])
    }

    /// Builds the transitive closure of `relations`, each pair meaning `a < b`.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::Capacity {
                what: format!("poset with {n} elements"),
                limit: MAX_ELEMENTS as u128,
            });
        }
        let mut up = vec![0u128; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "relation ({a}, {b}) out of range for {n} elements"
                )));
            }
            up[a] |= 1u128 << b;
        }
        let direct = up.clone();
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if (*row >> k) & 1 == 1 {
                    *row |= row_k;
                }
            }
        }
        if let Some(start) = (0..n).find(|&i| (up[i] >> i) & 1 == 1) {
            let cycle = find_cycle(&direct, start)
                .into_iter()
                .map(|i| labels[i].clone())
                .collect();
            return Err(Error::InvalidOrder { cycle });
        }
        let mut down = vec![0u128; n];
        for (i, &row) in up.iter().enumerate() {
            for j in ElementSubset(row) {
                down[j] |= 1u128 << i;
            }
        }
        Ok(Poset { up, down, labels })
    }

    /// Builds a poset from a relation predicate that is already a strict order.
    pub fn from_fn(n: usize, labels: Vec<String>, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut rel = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && lt(i, j) {
                    rel.push((i, j));
                }
            }
        }
        let p = Self::from_relations(labels, &rel)?;
        for (i, j) in p.relations() {
            if !lt(i, j) {
                return Err(Error::InvalidParameter(format!(
                    "predicate is not transitive at ({i}, {j})"
                )));
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        (self.up[i] >> j) & 1 == 1
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt(j, i)
    }

    /// Elements strictly above `i`.
    pub fn up(&self, i: usize) -> ElementSubset {
        ElementSubset(self.up[i])
    }

    /// Elements strictly below `i`.
    pub fn down(&self, i: usize) -> ElementSubset {
        ElementSubset(self.down[i])
    }

    /// Elements comparable to `i`, including `i` itself.
    pub fn comparable_set(&self, i: usize) -> ElementSubset {
        ElementSubset(self.up[i] | self.down[i] | (1u128 << i))
    }

    pub fn all(&self) -> ElementSubset {
        ElementSubset::full(self.len())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::IndexMismatch { expected: self.len(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// All pairs `(i, j)` with `i < j`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up(i).iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Cover pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up(i) {
                if self.up[i] & self.down[j] == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Checks irreflexivity, antisymmetry, transitivity and up/down agreement.
    pub fn is_valid(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if self.lt(i, i) {
                return false;
            }
            for j in 0..n {
                if self.lt(i, j) && self.lt(j, i) {
                    return false;
                }
                if self.lt(i, j) != ((self.down[j] >> i) & 1 == 1) {
                    return false;
                }
                if self.lt(i, j) && self.up[j] & !self.up[i] != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn minimal_elements(&self) -> ElementSubset {
        (0..self.len()).filter(|&i| self.down[i] == 0).collect()
    }

    pub fn maximal_elements(&self) -> ElementSubset {
        (0..self.len()).filter(|&i| self.up[i] == 0).collect()
    }

    /// The least element, when one exists.
    pub fn unique_min(&self) -> Option<usize> {
        let m = self.minimal_elements();
        (m.len() == 1).then(|| m.first().unwrap())
    }

    /// The greatest element, when one exists.
    pub fn unique_max(&self) -> Option<usize> {
        let m = self.maximal_elements();
        (m.len() == 1).then(|| m.first().unwrap())
    }

    pub fn is_bounded(&self) -> bool {
        self.unique_min().is_some() && self.unique_max().is_some()
    }

    pub fn is_antichain(&self, s: ElementSubset) -> bool {
        s.iter().all(|i| self.comparable_set(i).intersection(s) == ElementSubset::singleton(i))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| self.comparable_set(i) == self.all())
    }

    /// Elements `y` with `x <= y` for some `x` in `s`.
    pub fn up_closure(&self, s: ElementSubset) -> ElementSubset {
        ElementSubset(s.iter().fold(s.0, |acc, i| acc | self.up[i]))
    }

    /// Elements `y` with `y <= x` for some `x` in `s`.
    pub fn down_closure(&self, s: ElementSubset) -> ElementSubset {
        ElementSubset(s.iter().fold(s.0, |acc, i| acc | self.down[i]))
    }

    /// Minimal elements of `s` in the induced order.
    pub fn minimal_in(&self, s: ElementSubset) -> ElementSubset {
        s.iter().filter(|&i| self.down[i] & s.0 == 0).collect()
    }

    /// Maximal elements of `s` in the induced order.
    pub fn maximal_in(&self, s: ElementSubset) -> ElementSubset {
        s.iter().filter(|&i| self.up[i] & s.0 == 0).collect()
    }

    /// Length of the longest chain below and including each element.
    pub fn depths(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut depth = vec![1usize; self.len()];
        for &i in &order {
            for j in self.down(i) {
                depth[i] = depth[i].max(depth[j] + 1);
            }
        }
        depth
    }

    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Elements sorted so that every element follows everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(), i));
        order
    }

    /// The induced subposet on `q`, remembering parent indices.
    pub fn induced(&self, q: ElementSubset) -> Result<Subposet> {
        if q.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !q.is_subset(self.all()) {
            return Err(Error::InvalidParameter(format!("subset {:#x} exceeds the poset", q.0)));
        }
        let parent: Vec<usize> = q.iter().collect();
        let labels = parent.iter().map(|&i| self.labels[i].clone()).collect();
        let mut rel = Vec::new();
        for (a, &i) in parent.iter().enumerate() {
            for (b, &j) in parent.iter().enumerate() {
                if self.lt(i, j) {
                    rel.push((a, b));
                }
            }
        }
        let poset = Poset::from_relations(labels, &rel)?;
        Ok(Subposet { poset, parent })
    }

    /// Connected components of the comparability graph, ordered by least element.
    pub fn connected_components(&self) -> Vec<ElementSubset> {
        let mut seen = ElementSubset::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = ElementSubset::singleton(start);
            loop {
                let grown = comp
                    .iter()
                    .fold(comp, |acc, i| acc.union(self.comparable_set(i)));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Renders the poset in the text format accepted by [`parse_dsl`].
    pub fn to_dsl(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            if self.up[i] == 0 && self.down[i] == 0 {
                s.push_str(&self.labels[i]);
                s.push('\n');
            }
        }
        for (a, b) in self.covers() {
            s.push_str(&format!("{} < {}\n", self.labels[a], self.labels[b]));
        }
        s
    }
}

fn find_cycle(direct: &[u128], start: usize) -> Vec<usize> {
    let n = direct.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for j in ElementSubset(direct[start]) {
        if prev[j] == usize::MAX {
            prev[j] = start;
            queue.push_back(j);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == start {
            break;
        }
        for j in ElementSubset(direct[v]) {
            if prev[j] == usize::MAX {
                prev[j] = v;
                queue.push_back(j);
            }
        }
    }
    let mut path = vec![start];
    let mut cur = prev[start];
    while cur != start && cur != usize::MAX {
        path.push(cur);
        cur = prev[cur];
    }
    path.push(start);
    path.reverse();
    path
}
