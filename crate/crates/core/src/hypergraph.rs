//! Hypergraphs, covering and transversal numbers, duals, and the
//! hypergraph `H(σ)` of compatible sets of a Boolean function.

use crate::bitset::{binomial, BitSet, ColexSubsets};
use crate::budget::{Budget, Estimate};
use crate::compat::{CompatibilityOracle, Mode};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::setcover;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: Vec<String>,
    /// Nonempty vertex sets.
    pub edges: Vec<BitSet>,
}

impl Hypergraph {
    pub fn new(vertices: Vec<String>, edges: Vec<BitSet>) -> Result<Self> {
        if edges.iter().any(|e| e.is_empty()) {
            return Err(Error::EmptySubset);
        }
        if let Some(bad) = edges.iter().flat_map(|e| e.iter()).find(|&v| v >= vertices.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: vertices.len(),
            });
        }
        Ok(Self { vertices, edges })
    }

    /// Builds from edges given as label lists; vertices in order of first
    /// appearance.
    pub fn from_labelled<S: AsRef<str>>(edges: &[Vec<S>]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut raw = Vec::new();
        for e in edges {
            let mut ids = Vec::new();
            for v in e {
                let v = v.as_ref().to_string();
                let id = *index.entry(v.clone()).or_insert_with(|| {
                    vertices.push(v);
                    vertices.len() - 1
                });
                ids.push(id);
            }
            raw.push(ids);
        }
        let n = vertices.len();
        let edges = raw.into_iter().map(|ids| BitSet::from_indices(n, ids)).collect();
        Self::new(vertices, edges)
    }

    /// One hyperedge per line, comma-separated labels; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges: Vec<Vec<String>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let labels: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if labels.iter().any(|l| l.is_empty()) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "empty vertex label".into(),
                });
            }
            edges.push(labels);
        }
        Self::from_labelled(&edges)
    }

    pub fn to_text(&self) -> String {
        self.edges
            .iter()
            .map(|e| self.edge_labels(e).join(",") + "\n")
            .collect()
    }

    pub fn edge_labels(&self, e: &BitSet) -> Vec<String> {
        e.iter().map(|v| self.vertices[v].clone()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn all_vertices(&self) -> BitSet {
        BitSet::full(self.vertices.len())
    }

    /// Number of edges through each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            for v in e.iter() {
                d[v] += 1;
            }
        }
        d
    }

    fn check_covered(&self) -> Result<()> {
        match self.degrees().iter().position(|&d| d == 0) {
            Some(v) => Err(Error::UncoverableVertex(self.vertices[v].clone())),
            None => Ok(()),
        }
    }
}

/// Keeps the inclusion-maximal edges, each once, in order of first
/// appearance.
pub fn sperner_reduction(h: &Hypergraph) -> Hypergraph {
    Hypergraph {
        vertices: h.vertices.clone(),
        edges: crate::invariants::inclusion_maximal(h.edges.clone()),
    }
}

/// A number with a witness: edge indices for covers, vertices for
/// transversals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnessed {
    pub value: Estimate,
    pub witness: Vec<usize>,
}

/// `ρ(H)`: fewest edges covering every vertex.
pub fn covering_number(h: &Hypergraph, budget: &Budget) -> Result<Witnessed> {
    h.check_covered()?;
    let out = setcover::min_set_cover(&h.all_vertices(), &h.edges, budget.nodes)
        .expect("every vertex lies in an edge");
    Ok(Witnessed {
        value: Estimate::between(out.lower, out.size()),
        witness: out.chosen,
    })
}

/// `τ(H)`: fewest vertices meeting every edge.
///
/// Branches on the unhit edge with the fewest vertices; the bound counts
/// pairwise disjoint unhit edges.
pub fn transversal_number(h: &Hypergraph, budget: &Budget) -> Result<Witnessed> {
    if h.edges.iter().any(|e| e.is_empty()) {
        return Err(Error::EmptySubset);
    }
    let mut greedy = Vec::new();
    let mut unhit: Vec<usize> = (0..h.edges.len()).collect();
    while !unhit.is_empty() {
        let deg = |v: usize| unhit.iter().filter(|&&e| h.edges[e].contains(v)).count();
        let v = (0..h.vertex_count()).max_by_key(|&v| (deg(v), std::cmp::Reverse(v))).unwrap();
        greedy.push(v);
        unhit.retain(|&e| !h.edges[e].contains(v));
    }
    let mut search = Hitting {
        h,
        best: greedy,
        chosen: Vec::new(),
        nodes: 0,
        budget: budget.nodes,
        aborted: false,
    };
    let all: Vec<usize> = (0..h.edges.len()).collect();
    let root_lower = disjoint_count(h, &all);
    if search.best.len() > root_lower {
        search.run(&all);
    }
    let mut witness = search.best;
    witness.sort_unstable();
    let lower = if search.aborted { root_lower } else { witness.len() };
    Ok(Witnessed {
        value: Estimate::between(lower, witness.len()),
        witness,
    })
}

fn disjoint_count(h: &Hypergraph, edges: &[usize]) -> usize {
    let mut order = edges.to_vec();
    order.sort_by_key(|&e| (h.edges[e].count(), e));
    let mut used = BitSet::new(h.vertex_count());
    let mut count = 0;
    for e in order {
        if h.edges[e].is_disjoint(&used) {
            used.union_with(&h.edges[e]);
            count += 1;
        }
    }
    count
}

struct Hitting<'a> {
    h: &'a Hypergraph,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Hitting<'_> {
    fn run(&mut self, unhit: &[usize]) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if unhit.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + disjoint_count(self.h, unhit) >= self.best.len() {
            return;
        }
        let pivot = *unhit
            .iter()
            .min_by_key(|&&e| (self.h.edges[e].count(), e))
            .unwrap();
        for v in self.h.edges[pivot].iter() {
            let rest: Vec<usize> = unhit
                .iter()
                .copied()
                .filter(|&e| !self.h.edges[e].contains(v))
                .collect();
            self.chosen.push(v);
            self.run(&rest);
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

/// Dual hypergraph: one vertex `E1, E2, ...` per edge, and for each
/// original vertex `v` the edge of all edges through `v`. Repeated edges
/// are collapsed; vertices in no edge are skipped.
pub fn dual_hypergraph(h: &Hypergraph) -> Hypergraph {
    let m = h.edges.len();
    let vertices = (1..=m).map(|i| format!("E{i}")).collect();
    let mut edges: Vec<BitSet> = Vec::new();
    for v in 0..h.vertex_count() {
        let e = BitSet::from_indices(m, (0..m).filter(|&i| h.edges[i].contains(v)));
        if !e.is_empty() && !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph { vertices, edges }
}

type Predicate<'a> = Box<dyn Fn(&[usize]) -> bool + 'a>;

/// A Boolean function on subsets of a universe: `true` means compatible
/// (the function takes the value 0 there).
pub struct BooleanCompatibility<'a> {
    pub universe: Vec<String>,
    predicate: Predicate<'a>,
}

impl<'a> BooleanCompatibility<'a> {
    pub fn from_fn(universe: Vec<String>, f: impl Fn(&[usize]) -> bool + 'a) -> Self {
        Self {
            universe,
            predicate: Box::new(f),
        }
    }

    /// Explicit table: exactly the listed sets (and the empty set) are
    /// compatible.
    pub fn from_table(universe: Vec<String>, compatible: Vec<Vec<usize>>) -> Self {
        let set: std::collections::HashSet<Vec<usize>> = compatible
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        Self::from_fn(universe, move |s: &[usize]| s.is_empty() || set.contains(s))
    }

    /// The compatibility of a poset in the given mode.
    pub fn for_poset(p: &FinitePoset, mode: Mode) -> Result<BooleanCompatibility<'static>> {
        let oracle = CompatibilityOracle::new(p, mode)?;
        Ok(BooleanCompatibility {
            universe: oracle.universe_labels(),
            predicate: Box::new(move |s: &[usize]| oracle.check(s)),
        })
    }

    pub fn is_compatible(&self, subset: &[usize]) -> bool {
        subset.is_empty() || (self.predicate)(subset)
    }
}

/// `H(σ)`: the nonempty compatible sets of size at most `max_size`.
pub fn from_compatibility(compat: &BooleanCompatibility, max_size: usize) -> Result<Hypergraph> {
    let n = compat.universe.len();
    for v in 0..n {
        if !compat.is_compatible(&[v]) {
            return Err(Error::UncoverableVertex(compat.universe[v].clone()));
        }
    }
    let mut edges = Vec::new();
    for k in 1..=max_size.min(n) {
        for s in ColexSubsets::new(n, k) {
            if compat.is_compatible(&s) {
                edges.push(BitSet::from_indices(n, s));
            }
        }
    }
    Hypergraph::new(compat.universe.clone(), edges)
}

/// `σ-cat`: the covering number of `H(σ)`.
///
/// When all subsets do not fit in `budget.candidates`, only the sizes that
/// fit are materialized and the result is an interval.
pub fn sigma_category(compat: &BooleanCompatibility, budget: &Budget) -> Result<Witnessed> {
    let n = compat.universe.len();
    let mut k = 0;
    let mut total: u128 = 0;
    while k < n && total + binomial(n, k + 1) <= budget.candidates as u128 {
        k += 1;
        total += binomial(n, k);
    }
    let h = sperner_reduction(&from_compatibility(compat, k.max(1))?);
    let mut out = covering_number(&h, budget)?;
    if k < n {
        out.value = Estimate::between(1.min(out.value.upper), out.value.upper);
    }
    Ok(out)
}

/// The bounds `n/a <= ρ(H) <= ln(ml/(bn))/ln(1-b/n) + (m/b)(1 + 1/2 + ... + 1/l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveringBounds {
    pub lower: f64,
    pub upper: f64,
    /// False when the upper formula is negative or not finite.
    pub upper_meaningful: bool,
}

/// Requires every vertex in at least `b >= 1` edges, every edge of size at
/// most `a`, and `l >= 1`.
pub fn covering_bounds(h: &Hypergraph, a: usize, b: usize, l: usize) -> Result<CoveringBounds> {
    if b == 0 || l == 0 || a == 0 {
        return Err(Error::PreconditionViolated("a, b and l must be positive".into()));
    }
    if let Some(e) = h.edges.iter().find(|e| e.count() > a) {
        return Err(Error::PreconditionViolated(format!(
            "edge {{{}}} has more than {a} vertices",
            h.edge_labels(e).join(",")
        )));
    }
    if let Some(v) = h.degrees().iter().position(|&d| d < b) {
        return Err(Error::PreconditionViolated(format!(
            "vertex {} lies in fewer than {b} edges",
            h.vertices[v]
        )));
    }
    let n = h.vertex_count() as f64;
    let m = h.edge_count() as f64;
    let (a, b, lf) = (a as f64, b as f64, l as f64);
    let harmonic: f64 = (1..=l).map(|j| 1.0 / j as f64).sum();
    let upper = (m * lf / (b * n)).ln() / (1.0 - b / n).ln() + (m / b) * harmonic;
    Ok(CoveringBounds {
        lower: n / a,
        upper,
        upper_meaningful: b < n && upper.is_finite() && upper >= 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[&str]]) -> Hypergraph {
        let e: Vec<Vec<&str>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::from_labelled(&e).unwrap()
    }

    #[test]
    fn sperner_examples() {
        let h = hg(&[&["1"], &["1", "2"], &["2", "3"]]);
        let s = sperner_reduction(&h);
        assert_eq!(s.to_text(), "1,2\n2,3\n");
        assert_eq!(sperner_reduction(&s), s);
    }

    #[test]
    fn covering_and_transversal() {
        let b = Budget::default();
        let h = hg(&[&["1", "2"], &["2", "3"]]);
        assert_eq!(covering_number(&h, &b).unwrap().value, Estimate::exact(2));
        let t = transversal_number(&h, &b).unwrap();
        assert_eq!((t.value, t.witness.clone()), (Estimate::exact(1), vec![1]));
        let disjoint = hg(&[&["a"], &["b", "c"], &["d"]]);
        assert_eq!(transversal_number(&disjoint, &b).unwrap().value, Estimate::exact(3));
        let whole = hg(&[&["a", "b", "c"]]);
        assert_eq!(covering_number(&whole, &b).unwrap().value, Estimate::exact(1));
    }

    #[test]
    fn dual_examples() {
        let one = hg(&[&["1", "2"]]);
        let d = dual_hypergraph(&one);
        assert_eq!((d.vertex_count(), d.edge_count()), (1, 1));
        let two = hg(&[&["1", "2"], &["2", "3"]]);
        let d = dual_hypergraph(&two);
        assert_eq!(d.to_text(), "E1\nE1,E2\nE2\n");
    }

    #[test]
    fn parse_round_trip() {
        let h = Hypergraph::parse("# pentagon pairs\n0,2\n0,3\n\n1,3\n").unwrap();
        assert_eq!(h.vertices, vec!["0", "2", "3", "1"]);
        assert_eq!(h.to_text(), "0,2\n0,3\n3,1\n");
        assert!(Hypergraph::parse("a,,b").is_err());
    }

    #[test]
    fn sigma_examples() {
        let b = Budget::default();
        let all = BooleanCompatibility::from_fn(vec!["a".into(), "b".into(), "c".into()], |_| true);
        assert_eq!(from_compatibility(&all, 3).unwrap().edge_count(), 7);
        assert_eq!(sigma_category(&all, &b).unwrap().value, Estimate::exact(1));
        let none = BooleanCompatibility::from_fn(vec!["a".into()], |_| false);
        assert!(matches!(from_compatibility(&none, 1), Err(Error::UncoverableVertex(_))));
        let p = crate::families::bipartite(2, 4).unwrap();
        let s = BooleanCompatibility::for_poset(&p, Mode::GcatP).unwrap();
        assert_eq!(sigma_category(&s, &b).unwrap().value, Estimate::exact(4));
        let a = crate::families::antichain(3).unwrap();
        let s = BooleanCompatibility::for_poset(&a, Mode::Gcat).unwrap();
        assert_eq!(from_compatibility(&s, 3).unwrap().edge_count(), 3);
    }

    #[test]
    fn truncated_sigma_is_an_interval() {
        let b = Budget::default().with_candidates(3);
        let all = BooleanCompatibility::from_fn((0..4).map(|i| i.to_string()).collect(), |_| true);
        let out = sigma_category(&all, &b).unwrap();
        assert!(!out.value.is_exact() && out.value.lower <= 1);
    }

    #[test]
    fn bounds() {
        let h = hg(&[&["a", "b", "c"]]);
        let r = covering_bounds(&h, 3, 1, 1).unwrap();
        assert_eq!(r.lower, 1.0);
        assert!(r.upper_meaningful && r.upper >= 1.0);
        let single = hg(&[&["a"]]);
        assert!(!covering_bounds(&single, 1, 1, 1).unwrap().upper_meaningful);
        assert!(covering_bounds(&h, 2, 1, 1).is_err());
        assert!(covering_bounds(&h, 3, 2, 1).is_err());
    }
}
