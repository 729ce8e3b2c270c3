//! Poset generators for property tests and benchmarks: random posets,
//! beat-point grafting and exhaustive enumeration up to isomorphism.

use crate::bitset::BitSet;
use crate::iso;
use crate::poset::FinitePoset;
use rand::Rng;
use std::collections::HashMap;

/// Random poset on `n` points: each pair `i < j` of indices is related with
/// probability `density`, then closed. Index order is a linear extension.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_index_pairs(labels, &pairs).expect("index order is acyclic")
}

/// Random connected poset of height one with `mins` minimal and `maxs`
/// maximal points.
pub fn random_height_one<R: Rng>(
    rng: &mut R,
    mins: usize,
    maxs: usize,
    density: f64,
) -> FinitePoset {
    loop {
        let mut labels: Vec<String> = (0..mins).map(|i| format!("m{i}")).collect();
        labels.extend((0..maxs).map(|i| format!("M{i}")));
        let mut pairs = Vec::new();
        for a in 0..mins {
            for b in 0..maxs {
                if rng.gen_bool(density) {
                    pairs.push((a, mins + b));
                }
            }
        }
        let p = FinitePoset::from_index_pairs(labels, &pairs).unwrap();
        if p.height() == 1 && p.is_connected() && p.minimal().count() == mins {
            return p;
        }
    }
}

/// Adds `k` new points one by one, each a beat point at the moment it is
/// added, so the result is homotopy equivalent to `p`.
///
/// With `up_only` every new point gets exactly one upper cover (placed below
/// a chosen element `y` and above a down-set inside `U_y - {y}`); otherwise up
/// and down grafts are mixed.
pub fn graft_beat_points<R: Rng>(
    rng: &mut R,
    p: &FinitePoset,
    k: usize,
    up_only: bool,
) -> FinitePoset {
    let mut cur = p.clone();
    for g in 0..k {
        let n = cur.len();
        let pivot = rng.gen_range(0..n);
        let up = up_only || rng.gen_bool(0.5);
        // a random down-set (or up-set) strictly on the far side of the pivot
        let side = if up { cur.below(pivot) } else { cur.above(pivot) };
        let picked: Vec<usize> = side.iter().filter(|_| rng.gen_bool(0.4)).collect();
        let mut closed = BitSet::new(n);
        for x in picked {
            closed.insert(x);
            if up {
                closed.union_with(cur.below(x));
            } else {
                closed.union_with(cur.above(x));
            }
        }
        let pivot_set = BitSet::from_indices(n, [pivot]);
        let mut label = format!("g{g}");
        while cur.index_of(&label).is_some() {
            label.push('\'');
        }
        cur = if up {
            cur.with_element(&label, &closed, &pivot_set)
        } else {
            cur.with_element(&label, &pivot_set, &closed)
        }
        .expect("graft keeps the order acyclic");
    }
    cur
}

/// All posets on `n` points up to isomorphism, built by adding a maximal
/// element over every down-set of every poset on `n - 1` points.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    let mut layers = vec![vec![FinitePoset::from_index_pairs(vec![], &[]).unwrap()]];
    for m in 1..=n {
        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut out: Vec<FinitePoset> = Vec::new();
        for base in &layers[m - 1] {
            for down in down_sets(base) {
                let label = format!("p{}", m - 1);
                let cand = base
                    .with_element(&label, &down, &base.empty_set())
                    .unwrap();
                let h = iso::invariant_hash(&cand);
                let bucket = buckets.entry(h).or_default();
                if bucket
                    .iter()
                    .any(|&i| iso::find_isomorphism(&out[i], &cand).is_some())
                {
                    continue;
                }
                bucket.push(out.len());
                out.push(cand);
            }
        }
        layers.push(out);
    }
    layers.swap_remove(n)
}

/// Every down-closed subset, the empty set included.
pub fn down_sets(p: &FinitePoset) -> Vec<BitSet> {
    // down-sets correspond to antichains of their maximal elements
    let mut out = vec![p.empty_set()];
    let mut chosen = p.empty_set();
    antichains_rec(p, 0, &mut chosen, &mut |a| out.push(p.down_closure(a)));
    out
}

fn antichains_rec(p: &FinitePoset, from: usize, chosen: &mut BitSet, emit: &mut dyn FnMut(&BitSet)) {
    for x in from..p.len() {
        if chosen.iter().any(|y| p.comparable(x, y)) {
            continue;
        }
        chosen.insert(x);
        emit(chosen);
        antichains_rec(p, x + 1, chosen, emit);
        chosen.remove(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_of_unlabelled_posets() {
        // 1, 1, 2, 5, 16, 63 unlabelled posets on 0..=5 points
        let counts: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn down_set_count_of_antichain() {
        let a = crate::families::antichain(4).unwrap();
        assert_eq!(down_sets(&a).len(), 16);
        let c = crate::families::chain(4).unwrap();
        assert_eq!(down_sets(&c).len(), 5);
    }

    #[test]
    fn grafted_points_are_removable_in_reverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_poset(&mut rng, 6, 0.4);
            let g = graft_beat_points(&mut rng, &p, 4, false);
            assert_eq!(g.len(), 10);
            assert!(crate::homotopy::homotopy_equivalent(&p, &g, 16).unwrap());
        }
    }

    #[test]
    fn random_height_one_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_height_one(&mut rng, 4, 5, 0.5);
            assert_eq!(p.height(), 1);
            assert!(p.is_connected());
        }
    }
}
