//! Finite posets, read as finite T0-spaces.
//!
//! Open sets are down-sets: the minimal open set of `x` is `U_x = {y : y <= x}`
//! and `x <= y` exactly when `U_x` is contained in `U_y`.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// A finite poset with its strict order closure and its Hasse diagram.
///
/// Immutable once built; elements are addressed by index in label order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `above[x] = {y : x < y}`
    above: Vec<BitSet>,
    /// `below[x] = {y : y < x}`
    below: Vec<BitSet>,
    upper_covers: Vec<BitSet>,
    lower_covers: Vec<BitSet>,
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// Warshall closure of a relation given as successor rows.
///
/// Returns `CycleDetected` with the offending index when some `x < x` follows.
pub fn transitive_closure(rows: &[BitSet]) -> std::result::Result<Vec<BitSet>, usize> {
    let mut rows = rows.to_vec();
    let n = rows.len();
    for k in 0..n {
        let rk = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&rk);
            }
        }
    }
    match (0..n).find(|&i| rows[i].contains(i)) {
        Some(i) => Err(i),
        None => Ok(rows),
    }
}

/// Hasse diagram of a strict partial order given by its `above` rows.
///
/// `y` covers `x` when `x < y` and nothing lies strictly between them, so the
/// upper covers of `x` are `above[x]` minus everything above some element of
/// `above[x]`. Cubic in `n` word operations at worst.
pub fn transitive_reduction(above: &[BitSet]) -> Vec<BitSet> {
    let n = above.len();
    above
        .iter()
        .map(|up| {
            let mut shadow = BitSet::new(n);
            for z in up.iter() {
                shadow.union_with(&above[z]);
            }
            up.difference(&shadow)
        })
        .collect()
}

fn transpose(rows: &[BitSet]) -> Vec<BitSet> {
    let n = rows.len();
    let mut out = vec![BitSet::new(n); n];
    for (x, row) in rows.iter().enumerate() {
        for y in row.iter() {
            out[y].insert(x);
        }
    }
    out
}

impl FinitePoset {
    /// Builds a poset from names and `(lower, upper)` pairs.
    ///
    /// Pairs may be cover relations or any generating relation; the result
    /// always stores the full closure and recomputes the Hasse diagram.
    pub fn from_relations<L, A, B>(labels: &[L], pairs: &[(A, B)]) -> Result<Self>
    where
        L: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let n = labels.len();
        let mut rows = vec![BitSet::new(n); n];
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownLabel(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownLabel(b.as_ref().to_string()))?;
            rows[ia].insert(ib);
        }
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let above =
            transitive_closure(&rows).map_err(|i| Error::CycleDetected(labels[i].clone()))?;
        Ok(Self::from_closed(labels, above))
    }

    /// Builds a poset from index pairs `(lower, upper)`.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rows = vec![BitSet::new(n); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    len: n,
                });
            }
            rows[a].insert(b);
        }
        let above =
            transitive_closure(&rows).map_err(|i| Error::CycleDetected(labels[i].clone()))?;
        Ok(Self::from_closed(labels, above))
    }

    /// Trusted constructor: `above` must already be a strict order closure.
    pub(crate) fn from_closed(labels: Vec<String>, above: Vec<BitSet>) -> Self {
        debug_assert_eq!(labels.len(), above.len());
        let below = transpose(&above);
        let upper_covers = transitive_reduction(&above);
        let lower_covers = transpose(&upper_covers);
        FinitePoset {
            labels,
            above,
            below,
            upper_covers,
            lower_covers,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<BitSet> {
        let mut s = BitSet::new(self.len());
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                len: self.len(),
            })
        }
    }

    /// `x < y`
    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less(x, y) || self.less(y, x)
    }

    /// `y` covers `x`.
    #[inline]
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.upper_covers[x].contains(y)
    }

    #[inline]
    pub fn above(&self, x: usize) -> &BitSet {
        &self.above[x]
    }

    #[inline]
    pub fn below(&self, x: usize) -> &BitSet {
        &self.below[x]
    }

    #[inline]
    pub fn upper_covers(&self, x: usize) -> &BitSet {
        &self.upper_covers[x]
    }

    #[inline]
    pub fn lower_covers(&self, x: usize) -> &BitSet {
        &self.lower_covers[x]
    }

    pub fn strict_order_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.above[x].iter().map(move |y| (x, y)))
            .collect()
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |y| (x, y)))
            .collect()
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.len())
    }

    /// Elements with nothing above them.
    pub fn maximal(&self) -> BitSet {
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&x| self.above[x].is_empty()),
        )
    }

    pub fn minimal(&self) -> BitSet {
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&x| self.below[x].is_empty()),
        )
    }

    /// Maximal elements of a subset.
    pub fn maximal_in(&self, mask: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for x in mask.iter() {
            if !self.above[x].intersects(mask) {
                out.insert(x);
            }
        }
        out
    }

    pub fn minimal_in(&self, mask: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for x in mask.iter() {
            if !self.below[x].intersects(mask) {
                out.insert(x);
            }
        }
        out
    }

    /// Indices sorted so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.below[x].count(), x));
        order
    }

    /// Length of the longest Hasse path from a minimal element to each element.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.len()];
        for x in self.linear_extension() {
            level[x] = self.lower_covers[x]
                .iter()
                .map(|y| level[y] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Maximum level; 0 for the empty poset.
    pub fn height(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    pub fn structure(&self) -> Structure {
        let levels = self.levels();
        Structure {
            maximal: self.maximal().to_vec(),
            minimal: self.minimal().to_vec(),
            height: levels.iter().copied().max().unwrap_or(0),
            levels,
        }
    }

    /// `U_x`
    pub fn min_open_set(&self, x: usize) -> Result<OpenSubset> {
        self.check_index(x)?;
        let mut members = self.below[x].clone();
        members.insert(x);
        let generators = BitSet::from_indices(self.len(), [x]);
        Ok(OpenSubset {
            members,
            generators,
        })
    }

    /// `U_J`, the union of `U_x` over `x` in `J`.
    pub fn open_hull(&self, generators: &BitSet) -> Result<OpenSubset> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        if let Some(x) = generators.iter().find(|&x| x >= self.len()) {
            return Err(Error::IndexOutOfRange {
                index: x,
                len: self.len(),
            });
        }
        let members = self.down_closure(generators);
        let generators = self.maximal_in(&members);
        Ok(OpenSubset {
            members,
            generators,
        })
    }

    /// Down-closure of a set, without validation.
    #[inline]
    pub fn down_closure(&self, set: &BitSet) -> BitSet {
        let mut members = set.clone();
        for x in set.iter() {
            members.union_with(&self.below[x]);
        }
        members
    }

    pub fn is_down_closed(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.below[x].is_subset(set))
    }

    /// Checks that `set` is an open set and wraps it.
    pub fn open_subset(&self, set: &BitSet) -> Result<OpenSubset> {
        if !self.is_down_closed(set) {
            return Err(Error::PreconditionViolated(
                "subset is not down-closed".into(),
            ));
        }
        Ok(OpenSubset {
            members: set.clone(),
            generators: self.maximal_in(set),
        })
    }

    /// The subposet on `mask`, with its Hasse diagram recomputed.
    pub fn induced_subposet(&self, mask: &BitSet) -> Result<FinitePoset> {
        Ok(self.restrict(mask)?.0)
    }

    /// Like [`induced_subposet`](Self::induced_subposet) and also returns, for
    /// every new index, the original index.
    pub fn restrict(&self, mask: &BitSet) -> Result<(FinitePoset, Vec<usize>)> {
        if mask.is_empty() {
            return Err(Error::EmptySubset);
        }
        let keep: Vec<usize> = mask.iter().filter(|&x| x < self.len()).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            new_index[x] = i;
        }
        let m = keep.len();
        let above = keep
            .iter()
            .map(|&x| {
                BitSet::from_indices(
                    m,
                    self.above[x]
                        .iter()
                        .filter(|&y| mask.contains(y))
                        .map(|y| new_index[y]),
                )
            })
            .collect();
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        Ok((FinitePoset::from_closed(labels, above), keep))
    }

    /// Components of the comparability graph restricted to `mask`, each
    /// listed in index order and the list sorted by smallest element.
    pub fn connected_components(&self, mask: &BitSet) -> Result<Vec<BitSet>> {
        if mask.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(self.components_of(mask))
    }

    pub(crate) fn components_of(&self, mask: &BitSet) -> Vec<BitSet> {
        let mut left = mask.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = BitSet::new(self.len());
            let mut frontier = vec![start];
            comp.insert(start);
            left.remove(start);
            while let Some(x) = frontier.pop() {
                let mut nb = self.above[x].union(&self.below[x]);
                nb.intersect_with(&left);
                for y in nb.iter() {
                    left.remove(y);
                    comp.insert(y);
                    frontier.push(y);
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.components_of(&self.all()).len() == 1
    }

    /// Same order on a new set of labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<FinitePoset> {
        if labels.len() != self.len() {
            return Err(Error::BadParameter("label count mismatch".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(FinitePoset::from_closed(labels, self.above.clone()))
    }

    /// Image of the poset under the index permutation `perm` (old -> new).
    pub fn permuted(&self, perm: &[usize]) -> FinitePoset {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        let mut above = vec![BitSet::new(n); n];
        for x in 0..n {
            labels[perm[x]] = self.labels[x].clone();
            above[perm[x]] = BitSet::from_indices(n, self.above[x].iter().map(|y| perm[y]));
        }
        FinitePoset::from_closed(labels, above)
    }

    /// Adds one element placed strictly above `below` and strictly below
    /// `above`; both are closed here, and the result must remain acyclic.
    pub fn with_element(&self, label: &str, below: &BitSet, above: &BitSet) -> Result<FinitePoset> {
        if self.index_of(label).is_some() {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut pairs: Vec<(usize, usize)> = self.cover_pairs();
        pairs.extend(below.iter().map(|y| (y, n)));
        pairs.extend(above.iter().map(|y| (n, y)));
        FinitePoset::from_index_pairs(labels, &pairs)
    }
}

/// Order-theoretic summary of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub maximal: Vec<usize>,
    pub minimal: Vec<usize>,
    pub height: usize,
    pub levels: Vec<usize>,
}

/// A down-closed subset, kept with the antichain of its maximal points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenSubset {
    pub members: BitSet,
    pub generators: BitSet,
}

impl OpenSubset {
    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// Labels of the generators, in index order.
    pub fn generator_labels(&self, poset: &FinitePoset) -> Vec<String> {
        self.generators
            .iter()
            .map(|x| poset.label(x).to_string())
            .collect()
    }
}
