//! Minimum set cover by depth-first branch-and-bound over bitsets.
//!
//! Branching picks the uncovered element contained in the fewest candidate
//! sets (lowest index on ties) and tries those sets in order of how much of
//! the uncovered part they cover. The search is single threaded and fully
//! deterministic.

use crate::bitset::BitSet;

/// Result of a cover search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverOutcome {
    /// Indices into the candidate list, sorted.
    pub chosen: Vec<usize>,
    /// Proven lower bound on the optimum; equals `chosen.len()` when exact.
    pub lower: usize,
}

impl CoverOutcome {
    pub fn is_exact(&self) -> bool {
        self.lower == self.chosen.len()
    }

    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

/// Greedy cover: repeatedly take the set covering most uncovered elements.
///
/// `None` when some element of `universe` lies in no set.
pub fn greedy_cover(universe: &BitSet, sets: &[BitSet]) -> Option<Vec<usize>> {
    let mut uncovered = universe.clone();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection_count(&uncovered)))
            .fold((usize::MAX, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if gain == 0 {
            return None;
        }
        chosen.push(best);
        uncovered.difference_with(&sets[best]);
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Elements no two of which share a set; each needs its own set in any cover.
fn packing_bound(universe: &BitSet, occ: &[Vec<usize>]) -> usize {
    let mut elems: Vec<usize> = universe.iter().collect();
    elems.sort_by_key(|&e| (occ[e].len(), e));
    let mut used_sets = std::collections::HashSet::new();
    let mut count = 0;
    for e in elems {
        if occ[e].iter().all(|s| !used_sets.contains(s)) {
            used_sets.extend(occ[e].iter().copied());
            count += 1;
        }
    }
    count
}

/// Minimum cover of `universe` by `sets`, exploring at most `node_budget`
/// search nodes.
///
/// Returns `None` when no cover exists. When the budget runs out the best
/// cover found so far is returned together with a valid lower bound.
pub fn min_set_cover(universe: &BitSet, sets: &[BitSet], node_budget: u64) -> Option<CoverOutcome> {
    let cap = universe.capacity();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); cap];
    for (i, s) in sets.iter().enumerate() {
        for e in s.intersection(universe).iter() {
            occ[e].push(i);
        }
    }
    if universe.iter().any(|e| occ[e].is_empty()) {
        return None;
    }
    if universe.is_empty() {
        return Some(CoverOutcome {
            chosen: vec![],
            lower: 0,
        });
    }
    let greedy = greedy_cover(universe, sets)?;
    let max_size = sets
        .iter()
        .map(|s| s.intersection_count(universe))
        .max()
        .unwrap_or(1)
        .max(1);
    let root_lower = universe
        .count()
        .div_ceil(max_size)
        .max(packing_bound(universe, &occ))
        .max(1);
    let mut bb = BranchAndBound {
        sets,
        occ: &occ,
        best: greedy,
        nodes: 0,
        budget: node_budget,
        aborted: false,
        chosen: Vec::new(),
        root_lower,
    };
    if bb.best.len() > root_lower {
        bb.search(universe.clone());
    }
    let mut chosen = bb.best;
    chosen.sort_unstable();
    let lower = if bb.aborted { root_lower } else { chosen.len() };
    Some(CoverOutcome { chosen, lower })
}

struct BranchAndBound<'a> {
    sets: &'a [BitSet],
    occ: &'a [Vec<usize>],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    chosen: Vec<usize>,
    root_lower: usize,
}

impl BranchAndBound<'_> {
    fn search(&mut self, uncovered: BitSet) {
        if self.aborted || self.best.len() == self.root_lower {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let mut pivot = usize::MAX;
        let mut fewest = usize::MAX;
        for e in uncovered.iter() {
            if self.occ[e].len() < fewest {
                fewest = self.occ[e].len();
                pivot = e;
            }
        }
        let mut cands: Vec<(usize, usize)> = self.occ[pivot]
            .iter()
            .map(|&s| (self.sets[s].intersection_count(&uncovered), s))
            .collect();
        let max_gain = self
            .sets
            .iter()
            .map(|s| s.intersection_count(&uncovered))
            .max()
            .unwrap_or(1);
        // every further set covers at most `max_gain` of the uncovered part
        let bound = self.chosen.len() + uncovered.count().div_ceil(max_gain.max(1));
        if bound >= self.best.len() {
            return;
        }
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, s) in cands {
            if self.chosen.len() + 1 >= self.best.len() {
                return;
            }
            self.chosen.push(s);
            self.search(uncovered.difference(&self.sets[s]));
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

/// Exhaustive minimum cover by trying all subfamilies of growing size.
///
/// Only for small instances; kept as an independent oracle.
pub fn brute_force_cover(universe: &BitSet, sets: &[BitSet]) -> Option<usize> {
    for k in 0..=sets.len() {
        for combo in crate::bitset::ColexSubsets::new(sets.len(), k) {
            let mut u = BitSet::new(universe.capacity());
            for &i in &combo {
                u.union_with(&sets[i]);
            }
            if universe.is_subset(&u) {
                return Some(k);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(n: usize, v: &[usize]) -> BitSet {
        BitSet::from_indices(n, v.iter().copied())
    }

    #[test]
    fn simple_instances() {
        let u = BitSet::full(5);
        let sets = vec![bs(5, &[0, 1, 2]), bs(5, &[2, 3]), bs(5, &[3, 4]), bs(5, &[0, 4])];
        let out = min_set_cover(&u, &sets, 1000).unwrap();
        assert_eq!(out.chosen, vec![0, 2]);
        assert!(out.is_exact());
        assert!(min_set_cover(&u, &sets[..2], 1000).is_none());
    }

    #[test]
    fn greedy_is_not_optimal_but_search_is() {
        // greedy takes the big middle set first and then needs two more
        let u = BitSet::full(6);
        let sets = vec![bs(6, &[0, 1, 2]), bs(6, &[3, 4, 5]), bs(6, &[1, 2, 3, 4])];
        assert_eq!(greedy_cover(&u, &sets).unwrap().len(), 3);
        assert_eq!(min_set_cover(&u, &sets, 1000).unwrap().size(), 2);
    }

    #[test]
    fn budget_exhaustion_keeps_a_valid_bound() {
        let u = BitSet::full(6);
        let sets = vec![bs(6, &[0, 1, 2]), bs(6, &[3, 4, 5]), bs(6, &[1, 2, 3, 4])];
        let out = min_set_cover(&u, &sets, 0).unwrap();
        assert!(out.lower <= 2 && out.size() >= 2);
    }

    proptest! {
        #[test]
        fn matches_brute_force(raw in proptest::collection::vec(proptest::collection::vec(0usize..8, 1..5), 1..10)) {
            let n = 8;
            let sets: Vec<BitSet> = raw.iter().map(|v| bs(n, v)).collect();
            let mut universe = BitSet::new(n);
            for s in &sets { universe.union_with(s); }
            let exact = min_set_cover(&universe, &sets, u64::MAX).unwrap();
            prop_assert!(exact.is_exact());
            prop_assert_eq!(Some(exact.size()), brute_force_cover(&universe, &sets));
            let mut cov = BitSet::new(n);
            for &i in &exact.chosen { cov.union_with(&sets[i]); }
            prop_assert!(universe.is_subset(&cov));
        }
    }
}
