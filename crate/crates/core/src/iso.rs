//! Poset isomorphism by backtracking over refined element colours.

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

/// Default size limit for [`is_isomorphic`].
pub const DEFAULT_ISO_LIMIT: usize = 16;

const REFINE_ROUNDS: usize = 4;

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant colour per element.
///
/// Starts from degree data (strict up/down set sizes, cover counts, level)
/// and mixes in the sorted colours of the up and down sets for a fixed
/// number of rounds, so colours of different posets are comparable.
pub fn element_colours(p: &FinitePoset) -> Vec<u64> {
    let levels = p.levels();
    let mut colour: Vec<u64> = (0..p.len())
        .map(|x| {
            hash_of(&(
                p.below(x).count(),
                p.above(x).count(),
                p.lower_covers(x).count(),
                p.upper_covers(x).count(),
                levels[x],
            ))
        })
        .collect();
    for _ in 0..REFINE_ROUNDS {
        colour = (0..p.len())
            .map(|x| {
                let mut down: Vec<u64> = p.below(x).iter().map(|y| colour[y]).collect();
                let mut up: Vec<u64> = p.above(x).iter().map(|y| colour[y]).collect();
                let mut lc: Vec<u64> = p.lower_covers(x).iter().map(|y| colour[y]).collect();
                down.sort_unstable();
                up.sort_unstable();
                lc.sort_unstable();
                hash_of(&(colour[x], down, up, lc))
            })
            .collect();
    }
    colour
}

/// Hash of the colour multiset; equal for isomorphic posets.
pub fn invariant_hash(p: &FinitePoset) -> u64 {
    let mut c = element_colours(p);
    c.sort_unstable();
    hash_of(&(p.len(), p.strict_order_pairs().len(), c))
}

/// Isomorphism test with the default size limit.
///
/// Returns the witness `map[x] = image of x` when the posets are isomorphic.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<Option<Vec<usize>>> {
    is_isomorphic_within(p, q, DEFAULT_ISO_LIMIT)
}

pub fn is_isomorphic_within(
    p: &FinitePoset,
    q: &FinitePoset,
    limit: usize,
) -> Result<Option<Vec<usize>>> {
    let size = p.len().max(q.len());
    if size > limit {
        return Err(Error::SizeBudgetExceeded { size, limit });
    }
    Ok(find_isomorphism(p, q))
}

/// Exact search with no size limit.
pub fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() || p.strict_order_pairs().len() != q.strict_order_pairs().len() {
        return None;
    }
    let (cp, cq) = (element_colours(p), element_colours(q));
    let mut sp = cp.clone();
    let mut sq = cq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    // rarest colours first, then grow along comparabilities
    let class_size = |c: u64| sp.iter().filter(|&&d| d == c).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (class_size(cp[x]), x));
    let mut search = Search {
        p,
        q,
        cp: &cp,
        cq: &cq,
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.extend(0).then_some(search.map)
}

struct Search<'a> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    cp: &'a [u64],
    cq: &'a [u64],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, x: usize, y: usize, depth: usize) -> bool {
        self.order[..depth].iter().all(|&a| {
            let b = self.map[a];
            self.p.less(a, x) == self.q.less(b, y) && self.p.less(x, a) == self.q.less(y, b)
        })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.q.len() {
            if self.used[y] || self.cq[y] != self.cp[x] || !self.consistent(x, y, depth) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        false
    }
}

/// Checks that `map` is an order isomorphism from `p` onto `q`.
pub fn is_order_isomorphism(p: &FinitePoset, q: &FinitePoset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &y in map {
        if y >= q.len() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..p.len()).all(|x| (0..p.len()).all(|z| p.less(x, z) == q.less(map[x], map[z])))
}
