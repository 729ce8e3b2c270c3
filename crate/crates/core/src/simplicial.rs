//! Simplicial complexes, order complexes, face posets and subdivision.
//!
//! A simplex created from a set of vertices is labelled `(a|b|c)`, the
//! vertex labels in vertex index order. Both routes to a subdivision (face
//! poset of the order complex, barycentric subdivision of a complex) use
//! this rule, so their results can be compared label by label.

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::height_one::SimpleGraph;
use crate::poset::FinitePoset;
use std::collections::{HashMap, HashSet};

/// A complex stored as its full family of simplices, each a sorted list of
/// vertex indices; simplices are sorted by size, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Closes `facets` under nonempty subsets. Every vertex is included as
    /// a 0-simplex.
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let n = vertices.len();
        let mut all: HashSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: bad, len: n });
            }
            if f.len() >= 25 {
                return Err(Error::SizeBudgetExceeded { size: f.len(), limit: 24 });
            }
            for mask in 1u32..1 << f.len() {
                let s: Vec<usize> = (0..f.len()).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                all.insert(s);
            }
        }
        Ok(Self::from_closed(vertices, all.into_iter().collect()))
    }

    fn from_closed(vertices: Vec<String>, mut simplices: Vec<Vec<usize>>) -> Self {
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Self { vertices, simplices }
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex size minus one; `-1` when empty.
    pub fn dimension(&self) -> isize {
        self.simplices.last().map_or(-1, |s| s.len() as isize - 1)
    }

    /// Number of simplices of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dimension() + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    /// Every nonempty face of every simplex is present.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Vec<usize>> = self.simplices.iter().collect();
        self.simplices.iter().all(|s| {
            (0..s.len()).all(|skip| {
                let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                face.is_empty() || set.contains(&face)
            })
        })
    }

    pub fn simplex_label(&self, s: &[usize]) -> String {
        let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("({})", names.join("|"))
    }

    /// One simplex per line, comma-separated vertex labels.
    pub fn export(&self) -> String {
        self.simplices
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
                names.join(",") + "\n"
            })
            .collect()
    }

    /// Vertices with the edges of the complex.
    pub fn one_skeleton(&self) -> SimpleGraph {
        SimpleGraph::new(
            self.vertices.clone(),
            self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1])),
        )
    }
}

/// Number of nonempty chains, counted without listing them.
pub fn chain_count(p: &FinitePoset) -> u128 {
    // chains ending at x, in a linear extension
    let mut ending = vec![0u128; p.len()];
    for &x in &p.linear_extension() {
        ending[x] = 1 + p.below(x).iter().map(|y| ending[y]).sum::<u128>();
    }
    ending.iter().sum()
}

/// Simplices are the nonempty chains.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let mut chains = Vec::new();
    let mut cur = Vec::new();
    for x in 0..p.len() {
        cur.push(x);
        extend_chains(p, &mut cur, &mut chains);
        cur.pop();
    }
    for c in &mut chains {
        c.sort_unstable();
    }
    SimplicialComplex::from_closed(p.labels().to_vec(), chains)
}

fn extend_chains(p: &FinitePoset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(cur.clone());
    let top = *cur.last().unwrap();
    for y in p.above(top).iter() {
        cur.push(y);
        extend_chains(p, cur, out);
        cur.pop();
    }
}

/// Simplices ordered by proper inclusion.
pub fn face_poset(k: &SimplicialComplex) -> FinitePoset {
    let m = k.len();
    let sets: Vec<HashSet<usize>> = k.simplices.iter().map(|s| s.iter().copied().collect()).collect();
    let above = (0..m)
        .map(|i| {
            BitSet::from_indices(
                m,
                (0..m).filter(|&j| sets[j].len() > sets[i].len() && sets[i].is_subset(&sets[j])),
            )
        })
        .collect();
    let labels = k.simplices.iter().map(|s| k.simplex_label(s)).collect();
    FinitePoset::from_closed(labels, above)
}

/// `k`-fold `face_poset ∘ order_complex`; refuses to build anything with
/// more than `budget.subdivision_size` points.
pub fn subdivide(p: &FinitePoset, k: usize, budget: &Budget) -> Result<FinitePoset> {
    let mut cur = p.clone();
    for _ in 0..k {
        let size = chain_count(&cur);
        if size > budget.subdivision_size as u128 {
            return Err(Error::SizeBudgetExceeded {
                size: size.min(usize::MAX as u128) as usize,
                limit: budget.subdivision_size,
            });
        }
        cur = face_poset(&order_complex(&cur));
    }
    Ok(cur)
}

/// Vertices are the simplices of `k`, simplices the chains of faces.
///
/// Built by walking the face relation directly rather than through a poset.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    let m = k.len();
    let labels: Vec<String> = k.simplices.iter().map(|s| k.simplex_label(s)).collect();
    // proper cofaces of each simplex; simplices are sorted by size so all
    // cofaces come later
    let cofaces: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (i + 1..m)
                .filter(|&j| {
                    let (a, b) = (&k.simplices[i], &k.simplices[j]);
                    a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
                })
                .collect()
        })
        .collect();
    let mut flags = Vec::new();
    let mut cur = Vec::new();
    for i in 0..m {
        cur.push(i);
        flags_from(&cofaces, &mut cur, &mut flags);
        cur.pop();
    }
    SimplicialComplex::from_closed(labels, flags)
}

fn flags_from(cofaces: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(cur.clone());
    let last = *cur.last().unwrap();
    for &j in &cofaces[last] {
        cur.push(j);
        flags_from(cofaces, cur, out);
        cur.pop();
    }
}

/// Vertex bijection carrying the simplices of `k` onto those of `l`.
///
/// Tries the bijection given by equal labels first, then a backtracking
/// search guided by the number of simplices of each size at a vertex.
pub fn complex_isomorphism(k: &SimplicialComplex, l: &SimplicialComplex) -> Option<Vec<usize>> {
    if k.vertices.len() != l.vertices.len() || k.f_vector() != l.f_vector() {
        return None;
    }
    let by_label: HashMap<&str, usize> = l.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let named: Option<Vec<usize>> = k.vertices.iter().map(|v| by_label.get(v.as_str()).copied()).collect();
    if let Some(map) = named {
        if maps_onto(k, l, &map) {
            return Some(map);
        }
    }
    let profile = |c: &SimplicialComplex| -> Vec<Vec<usize>> {
        let dims = c.f_vector().len();
        let mut prof = vec![vec![0; dims]; c.vertices.len()];
        for s in &c.simplices {
            for &v in s {
                prof[v][s.len() - 1] += 1;
            }
        }
        prof
    };
    let (pk, pl) = (profile(k), profile(l));
    let l_set: HashSet<&Vec<usize>> = l.simplices.iter().collect();
    let edges_k: Vec<&Vec<usize>> = k.simplices.iter().filter(|s| s.len() == 2).collect();
    let mut map = vec![usize::MAX; k.vertices.len()];
    let mut used = vec![false; l.vertices.len()];
    fn assign(
        v: usize,
        pk: &[Vec<usize>],
        pl: &[Vec<usize>],
        edges_k: &[&Vec<usize>],
        l_set: &HashSet<&Vec<usize>>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == map.len() {
            return true;
        }
        for w in 0..pl.len() {
            if used[w] || pk[v] != pl[w] {
                continue;
            }
            // edges to already mapped vertices must be preserved both ways
            let ok = (0..v).all(|u| {
                let in_k = edges_k.iter().any(|e| e[0] == u && e[1] == v);
                let mut img = vec![map[u], w];
                img.sort_unstable();
                in_k == l_set.contains(&img)
            });
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if assign(v + 1, pk, pl, edges_k, l_set, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    if assign(0, &pk, &pl, &edges_k, &l_set, &mut map, &mut used) && maps_onto(k, l, &map) {
        Some(map)
    } else {
        None
    }
}

fn maps_onto(k: &SimplicialComplex, l: &SimplicialComplex, map: &[usize]) -> bool {
    if k.len() != l.len() {
        return false;
    }
    let l_set: HashSet<&Vec<usize>> = l.simplices.iter().collect();
    k.simplices.iter().all(|s| {
        let mut img: Vec<usize> = s.iter().map(|&v| map[v]).collect();
        img.sort_unstable();
        l_set.contains(&img)
    })
}
