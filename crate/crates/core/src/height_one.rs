//! Spaces of height one: cycle criterion, exact category, the multigraph
//! `Γ(X)`, vertex and D-arboricity, and strongification of category covers.
//!
//! At height one the comparability graph of an open set is bipartite
//! between minimal and maximal points, and a component is contractible
//! exactly when that graph is a tree.

use crate::bitset::BitSet;
use crate::budget::{Budget, Estimate};
use crate::error::{Error, Result};
use crate::homotopy;
use crate::poset::{FinitePoset, OpenSubset};
use crate::setcover;
use std::collections::VecDeque;

/// Does the comparability graph on `mask` contain a cycle?
///
/// Meant for posets of height at most one, where every comparability is an
/// edge of the Hasse diagram.
pub fn has_cycle_in(p: &FinitePoset, mask: &BitSet) -> bool {
    let edges: usize = mask.iter().map(|x| p.above(x).intersection_count(mask)).sum();
    let comps = p.components_of(mask).len();
    edges + comps > mask.count()
}

fn require_height_one(p: &FinitePoset) -> Result<()> {
    if p.height() > 1 {
        Err(Error::HeightMismatch {
            expected: 1,
            found: p.height(),
        })
    } else {
        Ok(())
    }
}

/// Cycle test for an open subset of a height-one space.
pub fn contains_crown_cycle(p: &FinitePoset, open: &OpenSubset) -> Result<bool> {
    require_height_one(p)?;
    Ok(has_cycle_in(p, &open.members))
}

/// `U_J` has only contractible components (the category-compatibility of
/// a prime open set at height one).
pub fn is_cat_compatible(p: &FinitePoset, generators: &BitSet) -> bool {
    let open = p.down_closure(generators);
    !has_cycle_in(p, &open)
}

/// Exact height-one category with an optimal prime cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatHeightOne {
    pub value: Estimate,
    /// Generator sets (subsets of the maximal points) of the cover.
    pub cover: Vec<BitSet>,
    /// The poset the cover lives on: the input, or its core when the input
    /// itself is higher but its core has height one.
    pub poset: FinitePoset,
}

impl CatHeightOne {
    pub fn cover_labels(&self) -> Vec<Vec<String>> {
        self.cover
            .iter()
            .map(|j| j.iter().map(|x| self.poset.label(x).to_string()).collect())
            .collect()
    }
}

/// Minimum number of prime open sets with acyclic components covering `p`.
///
/// Inputs of larger height are accepted when their core has height one.
pub fn cat_height1(p: &FinitePoset, budget: &Budget) -> Result<CatHeightOne> {
    let poset = if p.height() > 1 {
        let c = homotopy::core(p).core;
        require_height_one(&c)?;
        c
    } else {
        p.clone()
    };
    if poset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !poset.is_connected() {
        return Err(Error::Disconnected);
    }
    let maxs: Vec<usize> = poset.maximal().to_vec();
    let mut candidates = Vec::new();
    // compatibility is inherited by subsets, so the maximal compatible sets
    // are enough for the cover search
    maximal_compatible(&poset, &maxs, 0, &mut poset.empty_set(), &mut candidates, budget.candidates)?;
    let universe = poset.maximal();
    let outcome = setcover::min_set_cover(&universe, &candidates, budget.nodes)
        .expect("singletons are compatible");
    let cover = outcome.chosen.iter().map(|&i| candidates[i].clone()).collect();
    Ok(CatHeightOne {
        value: Estimate::between(outcome.lower, outcome.size()),
        cover,
        poset,
    })
}

fn maximal_compatible(
    p: &FinitePoset,
    maxs: &[usize],
    from: usize,
    current: &mut BitSet,
    out: &mut Vec<BitSet>,
    cap: usize,
) -> Result<()> {
    let mut extended = false;
    for i in from..maxs.len() {
        current.insert(maxs[i]);
        if is_cat_compatible(p, current) {
            extended = true;
            maximal_compatible(p, maxs, i + 1, current, out, cap)?;
        }
        current.remove(maxs[i]);
    }
    // only keep sets no later point could be added to
    if !extended && !current.is_empty() {
        let blocked = maxs.iter().all(|&m| {
            current.contains(m) || {
                let mut t = current.clone();
                t.insert(m);
                !is_cat_compatible(p, &t)
            }
        });
        if blocked {
            if out.len() >= cap {
                return Err(Error::BudgetExceeded(format!(
                    "more than {cap} maximal compatible sets"
                )));
            }
            out.push(current.clone());
        }
    }
    Ok(())
}

/// Undirected graph with edge multiplicities 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub labels: Vec<String>,
    /// `(u, v, multiplicity)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize, u8)>,
}

impl Multigraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u8 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .iter()
            .find(|e| e.0 == a && e.1 == b)
            .map_or(0, |e| e.2)
    }

    /// Does the sub-multigraph induced on `block` contain a cycle? A double
    /// edge counts as a cycle of length two.
    pub fn induces_cycle(&self, block: &BitSet) -> bool {
        let mut uf = UnionFind::new(self.len());
        for &(u, v, m) in &self.edges {
            if block.contains(u) && block.contains(v) && (m > 1 || !uf.union(u, v)) {
                return true;
            }
        }
        false
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for l in &self.labels {
            out.push_str(&format!("  \"{l}\";\n"));
        }
        for &(u, v, m) in &self.edges {
            for _ in 0..m {
                out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.labels[u], self.labels[v]));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub labels: Vec<String>,
    /// `(u, v)` with `u < v`, sorted, no repeats.
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { labels, edges }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn neighbours(&self, v: usize) -> BitSet {
        let mut out = BitSet::new(self.len());
        for &(a, b) in &self.edges {
            if a == v {
                out.insert(b);
            } else if b == v {
                out.insert(a);
            }
        }
        out
    }

    pub fn as_multigraph(&self) -> Multigraph {
        Multigraph {
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|&(u, v)| (u, v, 1)).collect(),
        }
    }

    /// Are the edges with an endpoint in `block` a forest?
    pub fn incident_edges_acyclic(&self, block: &BitSet) -> bool {
        let mut uf = UnionFind::new(self.len());
        self.edges
            .iter()
            .filter(|(u, v)| block.contains(*u) || block.contains(*v))
            .all(|&(u, v)| uf.union(u, v))
    }
}

/// Comparability graph of a poset; for height one this is the order complex.
pub fn comparability_graph(p: &FinitePoset) -> SimpleGraph {
    SimpleGraph::new(p.labels().to_vec(), p.strict_order_pairs())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// `Γ(X)`: vertices are the maximal points; two of them are joined by a
/// simple edge when their minimal open sets share exactly one point below,
/// by a double edge when they share more.
pub fn gamma_multigraph(p: &FinitePoset) -> Result<Multigraph> {
    require_height_one(p)?;
    let maxs = p.maximal().to_vec();
    let labels = maxs.iter().map(|&x| p.label(x).to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..maxs.len() {
        for j in i + 1..maxs.len() {
            match p.below(maxs[i]).intersection_count(p.below(maxs[j])) {
                0 => {}
                1 => edges.push((i, j, 1)),
                _ => edges.push((i, j, 2)),
            }
        }
    }
    Ok(Multigraph { labels, edges })
}

/// A partition of items into blocks with its quality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    pub value: Estimate,
    pub blocks: Vec<BitSet>,
}

/// Smallest partition of `items` into blocks accepted by `feasible`, which
/// must be inherited by subsets. Tries 1, 2, ... blocks in turn.
fn min_partition(
    n: usize,
    items: &[usize],
    feasible: &dyn Fn(&BitSet) -> bool,
    node_budget: u64,
) -> PartitionResult {
    if items.is_empty() {
        return PartitionResult {
            value: Estimate::exact(0),
            blocks: vec![],
        };
    }
    // first fit gives the starting upper bound
    let mut greedy: Vec<BitSet> = Vec::new();
    for &v in items {
        match greedy.iter_mut().find(|b| {
            let mut t = (*b).clone();
            t.insert(v);
            feasible(&t)
        }) {
            Some(b) => {
                b.insert(v);
            }
            None => greedy.push(BitSet::from_indices(n, [v])),
        }
    }
    let mut nodes = 0u64;
    for k in 1..greedy.len() {
        let mut blocks: Vec<BitSet> = Vec::new();
        match fill_blocks(n, items, 0, k, &mut blocks, feasible, &mut nodes, node_budget) {
            Some(true) => {
                return PartitionResult {
                    value: Estimate::exact(k),
                    blocks,
                }
            }
            Some(false) => {}
            None => {
                return PartitionResult {
                    value: Estimate::between(k, greedy.len()),
                    blocks: greedy,
                }
            }
        }
    }
    PartitionResult {
        value: Estimate::exact(greedy.len()),
        blocks: greedy,
    }
}

/// `None` when the node budget runs out.
#[allow(clippy::too_many_arguments)]
fn fill_blocks(
    n: usize,
    items: &[usize],
    next: usize,
    k: usize,
    blocks: &mut Vec<BitSet>,
    feasible: &dyn Fn(&BitSet) -> bool,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    if next == items.len() {
        return Some(true);
    }
    let v = items[next];
    for b in 0..blocks.len() {
        blocks[b].insert(v);
        if feasible(&blocks[b]) && fill_blocks(n, items, next + 1, k, blocks, feasible, nodes, budget)? {
            return Some(true);
        }
        blocks[b].remove(v);
    }
    // opening a new block only as the next index avoids symmetric branches
    if blocks.len() < k {
        blocks.push(BitSet::from_indices(n, [v]));
        if fill_blocks(n, items, next + 1, k, blocks, feasible, nodes, budget)? {
            return Some(true);
        }
        blocks.pop();
    }
    Some(false)
}

/// Vertex arboricity: fewest blocks each inducing a forest (double edges
/// count as cycles).
pub fn vertex_arboricity(g: &Multigraph, budget: &Budget) -> PartitionResult {
    let n = g.len();
    let mut items: Vec<usize> = (0..n).collect();
    // high degree first tightens the search early
    let degree = |v: usize| g.edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    items.sort_by_key(|&v| (std::cmp::Reverse(degree(v)), v));
    min_partition(n, &items, &|b| !g.induces_cycle(b), budget.nodes)
}

/// D-arboricity: fewest blocks of `d` whose incident edges form a forest.
pub fn d_arboricity(g: &SimpleGraph, d: &BitSet, budget: &Budget) -> Result<PartitionResult> {
    for v in 0..g.len() {
        if !d.contains(v) && !g.neighbours(v).intersects(d) {
            return Err(Error::NotDominating(g.labels[v].clone()));
        }
    }
    let items: Vec<usize> = d.iter().collect();
    Ok(min_partition(g.len(), &items, &|b| g.incident_edges_acyclic(b), budget.nodes))
}

/// The three quantities bracketing the height-one category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SanityBounds {
    pub va_order_complex: Estimate,
    pub cat: Estimate,
    pub cat_d_arboricity: Estimate,
    pub va_gamma: Estimate,
}

impl SanityBounds {
    /// `va(O(X)) <= cat = a_Max(O(X)) <= va(Γ(X))`, checked on the values
    /// that are exact.
    pub fn holds(&self) -> bool {
        let le = |a: &Estimate, b: &Estimate| a.lower <= b.upper;
        le(&self.va_order_complex, &self.cat)
            && le(&self.cat, &self.va_gamma)
            && (!self.cat.is_exact() || !self.cat_d_arboricity.is_exact() || self.cat == self.cat_d_arboricity)
    }
}

pub fn sanity_bounds_height1(p: &FinitePoset, budget: &Budget) -> Result<SanityBounds> {
    require_height_one(p)?;
    let graph = comparability_graph(p);
    let cat = cat_height1(p, budget)?.value;
    let va_o = vertex_arboricity(&graph.as_multigraph(), budget).value;
    let a_d = d_arboricity(&graph, &p.maximal(), budget)?.value;
    let va_g = vertex_arboricity(&gamma_multigraph(p)?, budget).value;
    Ok(SanityBounds {
        va_order_complex: va_o,
        cat,
        cat_d_arboricity: a_d,
        va_gamma: va_g,
    })
}

/// Shortest path `p = x0 < x1 > x2 < ... > x2m = q` alternating minimal and
/// maximal points.
pub fn zigzag_path(poset: &FinitePoset, p: usize, q: usize) -> Result<Vec<usize>> {
    poset.check_index(p)?;
    poset.check_index(q)?;
    let mins = poset.minimal();
    for x in [p, q] {
        if !mins.contains(x) {
            return Err(Error::PreconditionViolated(format!(
                "{} is not minimal",
                poset.label(x)
            )));
        }
    }
    let n = poset.len();
    zigzag_between(
        poset,
        &BitSet::from_indices(n, [p]),
        &BitSet::from_indices(n, [q]),
        &poset.empty_set(),
    )
    .ok_or(Error::Disconnected)
}

/// Breadth-first zigzag from any minimal point of `sources` to any minimal
/// point of `targets`, never stepping on a maximal point of `avoid`.
fn zigzag_between(
    poset: &FinitePoset,
    sources: &BitSet,
    targets: &BitSet,
    avoid: &BitSet,
) -> Option<Vec<usize>> {
    let n = poset.len();
    let mins = poset.minimal();
    let maxs = poset.maximal();
    let mut prev = vec![usize::MAX; n];
    let mut seen = BitSet::new(n);
    let mut queue = VecDeque::new();
    for s in sources.intersection(&mins).iter() {
        seen.insert(s);
        queue.push_back(s);
    }
    while let Some(y) = queue.pop_front() {
        if targets.contains(y) {
            let mut path = vec![y];
            let mut cur = y;
            while prev[cur] != usize::MAX {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for x in poset.above(y).intersection(&maxs).iter() {
            if seen.contains(x) || avoid.contains(x) {
                continue;
            }
            seen.insert(x);
            prev[x] = y;
            for z in poset.below(x).intersection(&mins).iter() {
                if !seen.contains(z) {
                    seen.insert(z);
                    prev[z] = x;
                    queue.push_back(z);
                }
            }
        }
    }
    None
}

/// Output of [`strongify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strongified {
    /// The enlarged space; the original points keep their indices.
    pub y: FinitePoset,
    /// Open sets of `y`, one per input member, each connected and
    /// contractible.
    pub cover: Vec<BitSet>,
    /// Indices of the added points.
    pub added: Vec<usize>,
}

impl Strongified {
    pub fn cover_labels(&self) -> Vec<Vec<String>> {
        self.cover
            .iter()
            .map(|u| u.iter().map(|x| self.y.label(x).to_string()).collect())
            .collect()
    }
}

fn regrow(set: &BitSet, n: usize) -> BitSet {
    BitSet::from_indices(n, set.iter())
}

/// Turns a cover of a connected height-one space by prime open sets with
/// contractible components into a cover of a homotopy equivalent space of
/// height at most two by the same number of contractible open sets.
///
/// `cover` holds generator sets. Each step takes the lowest-indexed member
/// with several components, joins its first component to the nearest other
/// component by a zigzag arc through points outside the member, and adds a
/// point `q_k` with `x_2k, x_2k+2 < q_k < x_2k+1` for every interior maximal
/// point of the arc. `q_k` joins the member being repaired and every other
/// member containing `x_2k+1`, so all members stay open; it is an up beat
/// point everywhere, so no homotopy type changes.
pub fn strongify(p: &FinitePoset, cover: &[BitSet]) -> Result<Strongified> {
    require_height_one(p)?;
    if !p.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut members: Vec<BitSet> = cover.iter().map(|j| p.down_closure(&regrow(j, p.len()))).collect();
    let mut union = p.empty_set();
    for (i, u) in members.iter().enumerate() {
        if has_cycle_in(p, u) {
            return Err(Error::IncompatibleCover(i));
        }
        union.union_with(u);
    }
    if union.count() != p.len() {
        return Err(Error::PreconditionViolated("sets do not cover the space".into()));
    }
    let mut y = p.clone();
    let mut added = Vec::new();
    let mut fresh = 0usize;
    loop {
        let target = members
            .iter()
            .enumerate()
            .find_map(|(i, u)| {
                let comps = y.components_of(u);
                (comps.len() > 1).then_some((i, comps))
            });
        let Some((i, comps)) = target else { break };
        let c1 = &comps[0];
        let rest = members[i].difference(c1);
        let path = zigzag_between(&y, c1, &rest, &members[i])
            .ok_or(Error::Disconnected)?;
        let path = trim_arc(&path, c1, &members[i]);
        for k in 0..path.len() / 2 {
            let (lo, top, hi) = (path[2 * k], path[2 * k + 1], path[2 * k + 2]);
            let mut label = format!("q{fresh}");
            while y.index_of(&label).is_some() {
                fresh += 1;
                label = format!("q{fresh}");
            }
            fresh += 1;
            let n = y.len();
            y = y.with_element(
                &label,
                &BitSet::from_indices(n, [lo, hi]),
                &BitSet::from_indices(n, [top]),
            )?;
            let qk = n;
            added.push(qk);
            for (j, u) in members.iter_mut().enumerate() {
                *u = regrow(u, n + 1);
                if j == i || u.contains(top) {
                    u.insert(qk);
                }
            }
        }
    }
    Ok(Strongified {
        y,
        cover: members,
        added,
    })
}

/// Keeps the stretch from the last point of `c1` to the first later point
/// of `member - c1`.
fn trim_arc(path: &[usize], c1: &BitSet, member: &BitSet) -> Vec<usize> {
    let start = path.iter().rposition(|&x| c1.contains(x)).unwrap_or(0);
    let end = path[start..]
        .iter()
        .position(|&x| member.contains(x) && !c1.contains(x))
        .map_or(path.len() - 1, |e| start + e);
    path[start..=end].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn crown_cycles() {
        let c = cycle(4).unwrap();
        assert!(contains_crown_cycle(&c, &c.open_subset(&c.all()).unwrap()).unwrap());
        let f = fence(5).unwrap();
        assert!(!contains_crown_cycle(&f, &f.open_subset(&f.all()).unwrap()).unwrap());
        let ch = chain(3).unwrap();
        assert!(contains_crown_cycle(&ch, &ch.open_subset(&ch.all()).unwrap()).is_err());
    }

    #[test]
    fn category_values() {
        let b = Budget::default();
        for n in 2..=5 {
            let v = cat_height1(&bipartite(2, n).unwrap(), &b).unwrap();
            assert_eq!(v.value, Estimate::exact(n));
        }
        for m in 2..=5 {
            assert_eq!(cat_height1(&cycle(2 * m).unwrap(), &b).unwrap().value, Estimate::exact(2));
        }
        assert_eq!(cat_height1(&c5crowns().unwrap(), &b).unwrap().value, Estimate::exact(3));
        assert_eq!(cat_height1(&hub_fan(4).unwrap(), &b).unwrap().value, Estimate::exact(2));
        // the core of a cone is a point
        let cone4 = cone(&cycle(4).unwrap()).unwrap();
        assert_eq!(cat_height1(&cone4, &b).unwrap().value, Estimate::exact(1));
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_multigraph(&bipartite(2, 4).unwrap()).unwrap();
        assert_eq!(g.edges.len(), 6);
        assert!(g.edges.iter().all(|e| e.2 == 2));
        let g = gamma_multigraph(&cycle(6).unwrap()).unwrap();
        assert_eq!(g.edges, vec![(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
        let two = FinitePoset::from_relations(&["a", "b", "x", "y"], &[("a", "x"), ("b", "y")]).unwrap();
        assert!(gamma_multigraph(&two).unwrap().edges.is_empty());
    }

    #[test]
    fn arboricity_examples() {
        let b = Budget::default();
        let k4 = SimpleGraph::new(
            (0..4).map(|i| i.to_string()).collect(),
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        );
        assert_eq!(vertex_arboricity(&k4.as_multigraph(), &b).value, Estimate::exact(2));
        let path = SimpleGraph::new((0..4).map(|i| i.to_string()).collect(), [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(vertex_arboricity(&path.as_multigraph(), &b).value, Estimate::exact(1));
        for k in 2..=4 {
            let g = gamma_multigraph(&hub_fan(2 * k).unwrap()).unwrap();
            assert_eq!(vertex_arboricity(&g, &b).value, Estimate::exact(k + 1));
        }
    }

    #[test]
    fn d_arboricity_examples() {
        let b = Budget::default();
        let star = SimpleGraph::new((0..4).map(|i| i.to_string()).collect(), [(0, 1), (0, 2), (0, 3)]);
        let r = d_arboricity(&star, &BitSet::from_indices(4, [0]), &b).unwrap();
        assert_eq!(r.value, Estimate::exact(1));
        assert!(d_arboricity(&star, &BitSet::from_indices(4, [1]), &b).is_err());
        for n in 2..=4 {
            let p = bipartite(2, n).unwrap();
            let r = d_arboricity(&comparability_graph(&p), &p.maximal(), &b).unwrap();
            assert_eq!(r.value, Estimate::exact(n));
        }
        let c = cycle(6).unwrap();
        let r = d_arboricity(&comparability_graph(&c), &c.maximal(), &b).unwrap();
        assert_eq!(r.value, Estimate::exact(2));
    }

    #[test]
    fn sanity_bounds() {
        let b = Budget::default();
        for n in 2..=4 {
            let s = sanity_bounds_height1(&bipartite(2, n).unwrap(), &b).unwrap();
            assert_eq!(
                (s.va_order_complex, s.cat, s.va_gamma),
                (Estimate::exact(2), Estimate::exact(n), Estimate::exact(n))
            );
            assert!(s.holds());
        }
        let s = sanity_bounds_height1(&cycle(6).unwrap(), &b).unwrap();
        assert_eq!((s.va_order_complex, s.cat, s.va_gamma), (Estimate::exact(2), Estimate::exact(2), Estimate::exact(2)));
    }

    #[test]
    fn zigzag_paths() {
        let c = cycle(6).unwrap();
        assert_eq!(zigzag_path(&c, 0, 0).unwrap(), vec![0]);
        let path = zigzag_path(&c, 0, 1).unwrap();
        assert_eq!(path.len(), 3);
        let two = FinitePoset::from_relations(&["a", "b", "x", "y"], &[("a", "x"), ("b", "y")]).unwrap();
        assert_eq!(zigzag_path(&two, 0, 1), Err(Error::Disconnected));
    }

    #[test]
    fn strongify_cycle6() {
        let c = cycle(6).unwrap();
        let b = Budget::default();
        let cat = cat_height1(&c, &b).unwrap();
        let s = strongify(&c, &cat.cover).unwrap();
        assert!(s.y.height() <= 2);
        assert_eq!(s.cover.len(), 2);
        for u in &s.cover {
            assert!(s.y.is_down_closed(u));
            assert!(homotopy::is_contractible_mask(&s.y, u));
        }
        assert!(homotopy::homotopy_equivalent(&s.y, &c, 16).unwrap());
    }

    #[test]
    fn strongify_keeps_good_covers() {
        let f = fence(5).unwrap();
        let s = strongify(&f, &[f.maximal()]).unwrap();
        assert_eq!(s.y, f);
        assert!(s.added.is_empty());
        let c = cycle(4).unwrap();
        assert_eq!(strongify(&c, &[c.maximal()]), Err(Error::IncompatibleCover(0)));
    }
}
