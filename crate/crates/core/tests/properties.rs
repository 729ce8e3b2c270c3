use fincat_core::bitset::BitSet;
use fincat_core::compat::{CompatibilityOracle, Mode};
use fincat_core::homotopy::{self, Selection};
use fincat_core::hypergraph::{self, Hypergraph};
use fincat_core::{corpus, height_one, invariants, io, iso, setcover, simplicial};
use fincat_core::{Budget, FinitePoset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poset_strategy(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max, 0.0f64..0.8, any::<u64>()).prop_map(|(n, d, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        corpus::random_poset(&mut rng, n, d)
    })
}

fn height_one_strategy() -> impl Strategy<Value = FinitePoset> {
    (2usize..=4, 2usize..=5, 0.3f64..0.9, any::<u64>()).prop_map(|(a, b, d, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        corpus::random_height_one(&mut rng, a, b, d)
    })
}

/// Covers by definition: `x < y` with nothing strictly between.
fn brute_covers(p: &FinitePoset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.less(x, y) && !(0..n).any(|z| p.less(x, z) && p.less(z, y)) {
                out.push((x, y));
            }
        }
    }
    out.sort();
    out
}

/// Contractibility by repeatedly deleting any beat point, found from the
/// strict order on the surviving points.
fn brute_contractible(p: &FinitePoset, mask: &BitSet) -> bool {
    let mut alive: Vec<usize> = mask.iter().collect();
    if alive.is_empty() {
        return false;
    }
    loop {
        let covers = |a: usize, b: usize, alive: &[usize]| {
            p.less(a, b) && !alive.iter().any(|&z| p.less(a, z) && p.less(z, b))
        };
        let beat = alive.iter().position(|&x| {
            let up = alive.iter().filter(|&&y| covers(x, y, &alive)).count();
            let down = alive.iter().filter(|&&y| covers(y, x, &alive)).count();
            up == 1 || down == 1
        });
        match beat {
            Some(i) => {
                alive.remove(i);
            }
            None => return alive.len() == 1,
        }
    }
}

/// `gcat` by trying all families of down-sets of growing size.
fn brute_gcat(p: &FinitePoset) -> usize {
    let opens: Vec<BitSet> = corpus::down_sets(p)
        .into_iter()
        .filter(|u| brute_contractible(p, u))
        .collect();
    setcover::brute_force_cover(&p.all(), &opens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hasse_diagram_matches_definition(p in poset_strategy(9)) {
        let mut got = p.cover_pairs();
        got.sort();
        prop_assert_eq!(got, brute_covers(&p));
    }

    #[test]
    fn contractibility_matches_naive_reduction(p in poset_strategy(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = BitSet::from_indices(p.len(), (0..p.len()).filter(|_| rand::Rng::gen_bool(&mut rng, 0.6)));
        prop_assert_eq!(homotopy::is_contractible_mask(&p, &mask), brute_contractible(&p, &mask));
        prop_assert_eq!(homotopy::is_contractible(&p), brute_contractible(&p, &p.all()));
    }

    #[test]
    fn core_is_unique_up_to_isomorphism(p in poset_strategy(10), seed in any::<u64>()) {
        let a = homotopy::core(&p).core;
        let b = homotopy::core_with(&p, Selection::Seeded(seed)).core;
        prop_assert!(iso::find_isomorphism(&a, &b).is_some());
        prop_assert!(homotopy::find_beat_points(&a).is_empty());
    }

    #[test]
    fn isomorphism_survives_relabelling(p in poset_strategy(9), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..p.len()).collect();
        rand::seq::SliceRandom::shuffle(&mut perm[..], &mut ChaCha8Rng::seed_from_u64(seed));
        let q = p.permuted(&perm);
        let map = iso::find_isomorphism(&p, &q);
        prop_assert!(map.is_some());
        prop_assert!(iso::is_order_isomorphism(&p, &q, &map.unwrap()));
        prop_assert_eq!(iso::invariant_hash(&p), iso::invariant_hash(&q));
    }

    #[test]
    fn open_hull_is_least_open_superset(p in poset_strategy(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = BitSet::from_indices(p.len(), (0..p.len()).filter(|_| rand::Rng::gen_bool(&mut rng, 0.4)));
        let hull = p.down_closure(&gens);
        prop_assert!(p.is_down_closed(&hull) && gens.is_subset(&hull));
        for d in corpus::down_sets(&p) {
            if gens.is_subset(&d) {
                prop_assert!(hull.is_subset(&d));
            }
        }
    }

    #[test]
    fn text_and_json_round_trip(p in poset_strategy(10)) {
        prop_assert_eq!(io::parse_text(&io::to_text(&p)).unwrap(), p.clone());
        prop_assert_eq!(io::parse_json(&io::to_json(&p)).unwrap(), p);
    }

    #[test]
    fn induced_subposet_keeps_order(p in poset_strategy(9), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = BitSet::from_indices(p.len(), (0..p.len()).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)));
        if mask.is_empty() {
            prop_assert!(p.restrict(&mask).is_err());
            return Ok(());
        }
        let (q, emb) = p.restrict(&mask).unwrap();
        for i in 0..q.len() {
            for j in 0..q.len() {
                prop_assert_eq!(q.less(i, j), p.less(emb[i], emb[j]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcat_matches_brute_force(p in poset_strategy(6)) {
        let g = invariants::gcat_exact(&p, &Budget::default()).unwrap();
        prop_assert_eq!(g.value.value(), Some(brute_gcat(&p)));
        for u in &g.cover {
            prop_assert!(p.is_down_closed(u) && brute_contractible(&p, u));
        }
    }

    #[test]
    fn height_one_category_is_compatible_cover(p in height_one_strategy()) {
        let c = height_one::cat_height1(&p, &Budget::default()).unwrap();
        let mut union = p.empty_set();
        for j in &c.cover {
            prop_assert!(height_one::is_cat_compatible(&p, j));
            union.union_with(&p.down_closure(j));
        }
        prop_assert_eq!(union, p.all());
        // at height one, compatibility is the absence of a crown
        let maxs: Vec<usize> = p.maximal().to_vec();
        for mask in 1u32..1 << maxs.len() {
            let j = BitSet::from_indices(p.len(), (0..maxs.len()).filter(|b| mask >> b & 1 == 1).map(|b| maxs[b]));
            let open = p.down_closure(&j);
            let pieces_contract = p.connected_components(&open).unwrap().iter().all(|c| brute_contractible(&p, c));
            prop_assert_eq!(height_one::is_cat_compatible(&p, &j), pieces_contract);
        }
    }

    #[test]
    fn covering_number_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rand::Rng::gen_range(&mut rng, 1..=7);
        let m = rand::Rng::gen_range(&mut rng, 1..=9);
        let mut edges: Vec<BitSet> = (0..m)
            .map(|_| BitSet::from_indices(n, (0..n).filter(|_| rand::Rng::gen_bool(&mut rng, 0.4))))
            .filter(|e: &BitSet| !e.is_empty())
            .collect();
        edges.push(BitSet::from_indices(n, 0..n));
        let h = Hypergraph::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap();
        let b = Budget::default();
        let rho = hypergraph::covering_number(&h, &b).unwrap().value;
        let brute = setcover::brute_force_cover(&h.all_vertices(), &h.edges).unwrap();
        prop_assert_eq!(rho.value(), Some(brute));
    }

    #[test]
    fn subdivision_size_is_chain_count(p in poset_strategy(7)) {
        let sd = simplicial::subdivide(&p, 1, &Budget::default()).unwrap();
        prop_assert_eq!(sd.len() as u128, simplicial::chain_count(&p));
        prop_assert!(homotopy::homotopy_equivalent(&p, &sd, 64).is_ok());
    }

    #[test]
    fn heuristic_covers_are_covers(p in poset_strategy(7), seed in any::<u64>()) {
        let oracle = CompatibilityOracle::new(&p, Mode::Gcat).unwrap();
        let mut order: Vec<usize> = (0..oracle.universe_len()).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut ChaCha8Rng::seed_from_u64(seed));
        for skip in [false, true] {
            let r = fincat_core::compat::heuristic1(&oracle, &order, skip).unwrap();
            prop_assert!(oracle.is_cover(&r.blocks));
        }
    }
}
