//! Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.
//! Exits nonzero when any criterion fails.

use fincat_core::bitset::BitSet;
use fincat_core::compat::{self, CompatibilityOracle, Mode};
use fincat_core::height_one::{self, gamma_multigraph, vertex_arboricity};
use fincat_core::homotopy::{self, Selection};
use fincat_core::hypergraph::{self, BooleanCompatibility, Hypergraph};
use fincat_core::invariants;
use fincat_core::{corpus, families, iso, setcover, simplicial};
use fincat_core::{Budget, Estimate, FinitePoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn budget() -> Budget {
    Budget::default()
}

fn exact(e: Estimate, what: &str) -> std::result::Result<usize, String> {
    e.value().ok_or_else(|| format!("{what}: not exact ({e})"))
}

fn describe(p: &FinitePoset) -> String {
    let rel: Vec<String> = p
        .cover_pairs()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    format!("[{}] {}", p.labels().join(" "), rel.join(" "))
}

/// Upper and lower covers read off the strict order, not the Hasse diagram.
fn cover_counts(p: &FinitePoset, x: usize) -> (usize, usize) {
    let n = p.len();
    let covers = |a: usize, b: usize| p.less(a, b) && !(0..n).any(|z| p.less(a, z) && p.less(z, b));
    let up = (0..n).filter(|&y| covers(x, y)).count();
    let down = (0..n).filter(|&y| covers(y, x)).count();
    (up, down)
}

fn beat_free(p: &FinitePoset) -> bool {
    (0..p.len()).all(|x| {
        let (up, down) = cover_counts(p, x);
        up != 1 && down != 1
    })
}

fn without(p: &FinitePoset, x: usize) -> FinitePoset {
    let mut mask = p.all();
    mask.remove(x);
    p.induced_subposet(&mask).unwrap()
}

fn isomorphic(a: &FinitePoset, b: &FinitePoset) -> bool {
    iso::find_isomorphism(a, b).is_some()
}

fn exhaustive(max: usize) -> Vec<FinitePoset> {
    (1..=max).flat_map(corpus::posets_up_to_iso).collect()
}

fn named_fixtures() -> Vec<(String, FinitePoset)> {
    let mut out = Vec::new();
    let mut add = |name: String, p: fincat_core::Result<FinitePoset>| out.push((name, p.unwrap()));
    for n in 1..=6 {
        add(format!("chain({n})"), families::chain(n));
    }
    for n in 1..=4 {
        add(format!("antichain({n})"), families::antichain(n));
    }
    for n in 2..=8 {
        add(format!("fence({n})"), families::fence(n));
    }
    for m in 2..=4 {
        add(format!("cycle({})", 2 * m), families::cycle(2 * m));
    }
    for n in 2..=6 {
        add(format!("bipartite(2,{n})"), families::bipartite(2, n));
    }
    for n in 1..=3 {
        add(format!("hub_fan({n})"), families::hub_fan(n));
    }
    add("cone(cycle(4))".into(), families::cycle(4).and_then(|c| families::cone(&c)));
    add("cone(fence(5))".into(), families::fence(5).and_then(|c| families::cone(&c)));
    add("c5crowns".into(), families::c5crowns());
    out
}

/// Exhaustive posets up to eight points, named fixtures up to nine, and
/// random posets on eight and nine points.
fn corpus_up_to_nine() -> Vec<FinitePoset> {
    let mut out = exhaustive(8);
    out.extend(named_fixtures().into_iter().map(|f| f.1).filter(|p| p.len() <= 9));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..150 {
        let n = 8 + i % 2;
        let d = rng.gen_range(0.15..0.6);
        out.push(corpus::random_poset(&mut rng, n, d));
    }
    out
}

fn core_correctness() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = exhaustive(6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let d = rng.gen_range(0.05..0.7);
        cases.push(corpus::random_poset(&mut rng, n, d));
    }
    for p in &cases {
        let c = homotopy::core(p);
        ensure!(beat_free(&c.core), "core has a beat point: {}", describe(p));
        ensure!(
            homotopy::replay_trace(p, &c.removal_trace).map(|r| r == c.core).unwrap_or(false),
            "trace does not replay: {}",
            describe(p)
        );
        for seed in 0..3 {
            let other = homotopy::core_with(p, Selection::Seeded(seed)).core;
            ensure!(isomorphic(&c.core, &other), "core depends on removal order: {}", describe(p));
        }
        let k = rng.gen_range(1..=4);
        let grafted = corpus::graft_beat_points(&mut rng, p, k, false);
        ensure!(
            isomorphic(&c.core, &homotopy::core(&grafted).core),
            "grafting changed the core: {}",
            describe(&grafted)
        );
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("{} posets in {:.2?}", cases.len(), took))
}

fn reference_values() -> Check {
    let b = budget();
    for n in 2..=6 {
        let x = families::bipartite(2, n).unwrap();
        let gp = exact(invariants::gcat_p_exact(&x, &b).unwrap().value, "gcat_p")?;
        let c = exact(height_one::cat_height1(&x, &b).unwrap().value, "cat")?;
        ensure!(gp == n && c == n, "bipartite(2,{n}): gcat_p {gp}, cat {c}");
    }
    for m in 2..=5 {
        let x = families::cycle(2 * m).unwrap();
        let gp = exact(invariants::gcat_p_exact(&x, &b).unwrap().value, "gcat_p")?;
        ensure!(gp == 2, "cycle({}): gcat_p {gp}", 2 * m);
    }
    let x = families::c5crowns().unwrap();
    let c = exact(height_one::cat_height1(&x, &b).unwrap().value, "cat")?;
    ensure!(c == 3, "c5crowns: cat {c}");
    let sigma = BooleanCompatibility::for_poset(&x, Mode::CatH1).unwrap();
    let family = hypergraph::sperner_reduction(&hypergraph::from_compatibility(&sigma, 5).unwrap());
    let mut got: Vec<Vec<usize>> = family.edges.iter().map(|e| e.to_vec()).collect();
    got.sort();
    let want = vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]];
    ensure!(got == want, "c5crowns compatible family {got:?}");
    for k in 2..=4 {
        let x = families::hub_fan(2 * k).unwrap();
        let va = vertex_arboricity(&gamma_multigraph(&x).unwrap(), &b).value;
        let c = exact(height_one::cat_height1(&x, &b).unwrap().value, "cat")?;
        ensure!(exact(va, "va")? == k + 1 && c == 2, "hub_fan({}): va {va}, cat {c}", 2 * k);
    }
    Ok("bipartite, cycles, c5crowns and hub fans match".into())
}

fn strongify_end_to_end() -> Check {
    let b = budget();
    let mut cases: Vec<FinitePoset> = (2..=5).map(|m| families::cycle(2 * m).unwrap()).collect();
    cases.push(families::c5crowns().unwrap());
    cases.extend((2..=6).map(|n| families::bipartite(2, n).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let mins = rng.gen_range(2..=5);
        let maxs = rng.gen_range(2..=10 - mins);
        let d = rng.gen_range(0.3..0.9);
        cases.push(corpus::random_height_one(&mut rng, mins, maxs, d));
    }
    let mut added = 0;
    for x in &cases {
        let cat = height_one::cat_height1(x, &b).map_err(|e| format!("{}: {e}", describe(x)))?;
        let want = exact(cat.value, "cat")?;
        let s = height_one::strongify(x, &cat.cover).map_err(|e| format!("{}: {e}", describe(x)))?;
        ensure!(s.y.height() <= 2, "height {} after strongify: {}", s.y.height(), describe(x));
        ensure!(
            isomorphic(&homotopy::core(&s.y).core, &homotopy::core(x).core),
            "homotopy type changed: {}",
            describe(x)
        );
        for u in &s.cover {
            ensure!(homotopy::is_contractible_mask(&s.y, u), "member not contractible: {}", describe(x));
        }
        let g = exact(invariants::gcat_exact(&s.y, &b).map_err(|e| e.to_string())?.value, "gcat")?;
        ensure!(g == want, "gcat(Y) = {g}, cat(X) = {want}: {}", describe(x));
        added += s.added.len();
    }
    Ok(format!("{} spaces, {added} points added", cases.len()))
}

fn beat_point_and_chain_laws() -> Check {
    let b = budget();
    let gcat = |p: &FinitePoset| exact(invariants::gcat_exact(p, &b).unwrap().value, "gcat");
    let mut removals = 0;
    for p in exhaustive(8) {
        let mut base = None;
        for x in 0..p.len() {
            let (up, down) = cover_counts(&p, x);
            if up != 1 && down != 1 {
                continue;
            }
            let g = match base {
                Some(g) => g,
                None => *base.insert(gcat(&p)?),
            };
            let h = gcat(&without(&p, x))?;
            if down == 1 {
                ensure!(h == g, "down beat {} changes gcat {g} -> {h}: {}", p.label(x), describe(&p));
            }
            ensure!(h >= g, "up beat {} lowers gcat {g} -> {h}: {}", p.label(x), describe(&p));
            removals += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let d = rng.gen_range(0.1..0.6);
        let p = corpus::random_poset(&mut rng, n, d);
        let k = rng.gen_range(1..=4);
        let q = corpus::graft_beat_points(&mut rng, &p, k, false);
        let a = exact(invariants::gcat_p_exact(&p, &b).unwrap().value, "gcat_p")?;
        let c = exact(invariants::gcat_p_exact(&q, &b).unwrap().value, "gcat_p")?;
        ensure!(a == c, "grafting changed gcat_p {a} -> {c}: {}", describe(&q));
    }
    let mut fixtures: Vec<FinitePoset> = exhaustive(6);
    fixtures.extend(named_fixtures().into_iter().map(|f| f.1));
    for p in &fixtures {
        let r = invariants::invariant_chain_report(p, &b).unwrap();
        let cu = exact(r.cat_u, "Cat_u")?;
        let gp = exact(r.gcat_p, "gcat_p")?;
        let g = exact(r.gcat, "gcat")?;
        ensure!(
            g <= cu && cu <= gp && gp <= r.max_core && r.max_core <= r.max_all,
            "chain fails ({g}, {cu}, {gp}, {}, {}): {}",
            r.max_core,
            r.max_all,
            describe(p)
        );
        let w = invariants::gcat_exact(p, &b).unwrap();
        let refined = invariants::prime_refinement(p, &w.cover);
        ensure!(invariants::is_prime_refinement(p, &w.cover, &refined), "no prime refinement: {}", describe(p));
    }
    Ok(format!("{removals} beat removals, 200 grafts, {} chains", fixtures.len()))
}

fn random_hypergraph<R: Rng>(rng: &mut R) -> Hypergraph {
    let n = rng.gen_range(1..=10);
    let m = rng.gen_range(1..=50);
    let d = rng.gen_range(0.1..0.6);
    let mut edges: Vec<BitSet> = (0..m)
        .map(|_| {
            let mut e = BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(d)));
            if e.is_empty() {
                e.insert(rng.gen_range(0..n));
            }
            e
        })
        .collect();
    for v in 0..n {
        if !edges.iter().any(|e| e.contains(v)) {
            let i = rng.gen_range(0..m);
            edges[i].insert(v);
        }
    }
    Hypergraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
}

fn hypergraph_identities() -> Check {
    let b = budget();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let h = random_hypergraph(&mut rng);
        let rho = exact(hypergraph::covering_number(&h, &b).unwrap().value, "rho")?;
        let reduced = exact(hypergraph::covering_number(&hypergraph::sperner_reduction(&h), &b).unwrap().value, "rho")?;
        let tau = exact(hypergraph::transversal_number(&hypergraph::dual_hypergraph(&h), &b).unwrap().value, "tau")?;
        ensure!(rho == reduced && rho == tau, "rho {rho}, reduced {reduced}, dual tau {tau}: {}", h.to_text());
        if h.edge_count() <= 14 {
            let brute = setcover::brute_force_cover(&h.all_vertices(), &h.edges).unwrap();
            ensure!(brute == rho, "brute force {brute} vs {rho}");
        }
    }
    let posets = corpus_up_to_nine();
    for p in &posets {
        for (mode, direct) in [
            (Mode::Gcat, invariants::gcat_exact(p, &b)),
            (Mode::GcatP, invariants::gcat_p_exact(p, &b)),
        ] {
            let want = exact(direct.unwrap().value, "direct")?;
            let sigma = BooleanCompatibility::for_poset(p, mode).unwrap();
            let got = exact(hypergraph::sigma_category(&sigma, &b).unwrap().value, "sigma")?;
            ensure!(got == want, "{mode}: sigma-cat {got} vs {want}: {}", describe(p));
        }
    }
    let e1 = Hypergraph::from_labelled(&[
        vec!["1", "2", "3"],
        vec!["1", "2", "4", "5"],
        vec!["1", "3", "4", "5"],
        vec!["2", "3", "4", "5"],
    ])
    .unwrap();
    let e2 = Hypergraph::from_labelled(&[
        vec!["0", "2"],
        vec!["0", "3"],
        vec!["1", "3"],
        vec!["1", "4"],
        vec!["2", "4"],
    ])
    .unwrap();
    for (name, h, want) in [("E1", &e1, 2), ("E2", &e2, 3)] {
        let brute = setcover::brute_force_cover(&h.all_vertices(), &h.edges).unwrap();
        let rho = exact(hypergraph::covering_number(h, &b).unwrap().value, "rho")?;
        ensure!(brute == want && rho == want, "{name}: brute {brute}, solver {rho}");
    }
    Ok(format!("300 hypergraphs, {} posets", posets.len()))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn algorithm_contracts() -> Check {
    let b = budget();
    let mut cases = exhaustive(7);
    cases.extend(named_fixtures().into_iter().map(|f| f.1).filter(|p| p.len() <= 10));
    for p in &cases {
        let g = exact(invariants::gcat_exact(p, &b).unwrap().value, "gcat")?;
        let oracle = CompatibilityOracle::new(p, Mode::Gcat).unwrap();
        let n = oracle.universe_len();
        for stop in 2..=n {
            let u = compat::u_algorithm(&oracle, stop).unwrap();
            ensure!(u.report.size >= g, "U({stop}) bound {} below {g}: {}", u.report.size, describe(p));
            ensure!(!u.report.is_exact || u.report.size == g, "U({stop}) claims exact {}: {}", u.report.size, describe(p));
            let want: u64 = (2..=stop).map(|j| binomial(n, j)).sum();
            ensure!(u.report.evaluations == want, "U({stop}) made {} evaluations, want {want}", u.report.evaluations);
            ensure!(oracle.is_cover(&u.report.blocks), "U({stop}) output is not a cover");
        }
        for stop in 1..=n.max(1) {
            let d = compat::d_algorithm(&oracle, stop).unwrap();
            ensure!(d.report.size >= g, "D({stop}) bound {} below {g}: {}", d.report.size, describe(p));
            ensure!(!d.report.is_exact || d.report.size == g, "D({stop}) claims exact {}: {}", d.report.size, describe(p));
            ensure!(oracle.is_cover(&d.report.blocks), "D({stop}) output is not a cover");
        }
        let before = oracle.calls();
        let order: Vec<usize> = (0..n).collect();
        let h = compat::heuristic1(&oracle, &order, false).unwrap();
        let used = oracle.calls() - before;
        ensure!(used == (n - 1) as u64 && h.evaluations == used, "heuristic 1 made {used} calls on {n} points");
        ensure!(h.size >= g, "heuristic 1 bound {} below {g}", h.size);
    }
    Ok(format!("{} instances", cases.len()))
}

fn all_chains(p: &FinitePoset) -> usize {
    let n = p.len();
    (1u32..1 << n)
        .filter(|&mask| {
            let pts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            pts.iter().all(|&a| pts.iter().all(|&c| a == c || p.comparable(a, c)))
        })
        .count()
}

fn subdivision_identity() -> Check {
    let b = budget();
    let mut cases: Vec<(String, FinitePoset)> = named_fixtures().into_iter().filter(|f| f.1.len() <= 8).collect();
    cases.extend(exhaustive(5).into_iter().map(|p| (describe(&p), p)));
    for (name, p) in &cases {
        let sd = simplicial::subdivide(p, 1, &b).map_err(|e| format!("{name}: {e}"))?;
        let brute = all_chains(p);
        ensure!(sd.len() == brute, "{name}: |sd X| = {}, chains {brute}", sd.len());
        ensure!(simplicial::chain_count(p) == brute as u128, "{name}: chain count");
        let lhs = simplicial::order_complex(&sd);
        let rhs = simplicial::barycentric_subdivision(&simplicial::order_complex(p));
        ensure!(simplicial::complex_isomorphism(&lhs, &rhs).is_some(), "{name}: O(sd X) and sd O(X) differ");
    }
    Ok(format!("{} spaces", cases.len()))
}

fn large_core_smoke() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut slowest = Duration::ZERO;
    for d in [0.01, 0.03, 0.1, 0.3, 0.6] {
        let p = corpus::random_poset(&mut rng, 200, d);
        let start = Instant::now();
        let c = homotopy::core(&p);
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(took < Duration::from_secs(5), "density {d}: {took:?}");
        ensure!(beat_free(&c.core), "density {d}: core has a beat point");
    }
    Ok(format!("slowest {slowest:.2?}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 8] = [
        ("core and contractibility", core_correctness),
        ("reference values", reference_values),
        ("strongify end to end", strongify_end_to_end),
        ("beat point and chain laws", beat_point_and_chain_laws),
        ("hypergraph identities", hypergraph_identities),
        ("algorithm contracts", algorithm_contracts),
        ("subdivision identity", subdivision_identity),
        ("large core smoke", large_core_smoke),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
