//! Exact covering invariants by minimum set cover over contractible open
//! sets, and the report comparing them.
//!
//! - `gcat`: fewest contractible open sets covering the space. Every open
//!   set is `U_J` for the antichain `J` of its maximal points, so the
//!   candidates are the antichains.
//! - `gcat_p`: the same with `J` restricted to maximal points.
//! - `Cat_u`: `gcat` of the core.
//!
//! Only inclusion-maximal candidates enter the cover search; a cover by
//! smaller sets can always be swapped for one by the sets containing them.

use crate::bitset::BitSet;
use crate::budget::{Budget, Estimate};
use crate::compat::{heuristic1, CompatibilityOracle, Mode};
use crate::error::{Error, Result};
use crate::height_one;
use crate::homotopy;
use crate::poset::FinitePoset;
use crate::setcover;
use serde_json::{json, Value};

/// Value of an invariant with an optimal (or best found) cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariant {
    pub value: Estimate,
    /// Cover members as open sets of `poset`.
    pub cover: Vec<BitSet>,
    /// The space the cover lives on (the core for `Cat_u`).
    pub poset: FinitePoset,
}

impl Invariant {
    /// Each member named by its maximal points.
    pub fn cover_labels(&self) -> Vec<Vec<String>> {
        self.cover
            .iter()
            .map(|u| {
                self.poset
                    .maximal_in(u)
                    .iter()
                    .map(|x| self.poset.label(x).to_string())
                    .collect()
            })
            .collect()
    }
}

/// Keeps sets not strictly contained in another; equal sets keep the first.
pub fn inclusion_maximal(sets: Vec<BitSet>) -> Vec<BitSet> {
    let mut sorted: Vec<(usize, BitSet)> = sets.into_iter().enumerate().collect();
    // larger sets first so every survivor is checked against its supersets
    sorted.sort_by(|a, b| b.1.count().cmp(&a.1.count()).then(a.0.cmp(&b.0)));
    let mut kept: Vec<(usize, BitSet)> = Vec::new();
    for (i, s) in sorted {
        if !kept.iter().any(|(_, k)| s.is_subset(k)) {
            kept.push((i, s));
        }
    }
    kept.sort_by_key(|k| k.0);
    kept.into_iter().map(|k| k.1).collect()
}

fn for_each_antichain(
    p: &FinitePoset,
    cap: usize,
    f: &mut dyn FnMut(&BitSet),
) -> Result<()> {
    let mut count = 0usize;
    let mut chosen = p.empty_set();
    antichains(p, 0, &mut chosen, &mut count, cap, f)
}

fn antichains(
    p: &FinitePoset,
    from: usize,
    chosen: &mut BitSet,
    count: &mut usize,
    cap: usize,
    f: &mut dyn FnMut(&BitSet),
) -> Result<()> {
    for x in from..p.len() {
        if chosen.iter().any(|y| p.comparable(x, y)) {
            continue;
        }
        *count += 1;
        if *count > cap {
            return Err(Error::BudgetExceeded(format!("more than {cap} antichains")));
        }
        chosen.insert(x);
        f(chosen);
        antichains(p, x + 1, chosen, count, cap, f)?;
        chosen.remove(x);
    }
    Ok(())
}

fn cover_from(p: &FinitePoset, candidates: Vec<BitSet>, budget: &Budget) -> Invariant {
    let candidates = inclusion_maximal(candidates);
    let outcome = setcover::min_set_cover(&p.all(), &candidates, budget.nodes)
        .expect("minimal open sets are contractible");
    Invariant {
        value: Estimate::between(outcome.lower, outcome.size()),
        cover: outcome.chosen.iter().map(|&i| candidates[i].clone()).collect(),
        poset: p.clone(),
    }
}

/// Exact `gcat`. Fails with `BudgetExceeded` when the space has more
/// antichains than `budget.candidates`; an exhausted node budget gives an
/// interval instead.
pub fn gcat_exact(p: &FinitePoset, budget: &Budget) -> Result<Invariant> {
    if p.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut candidates = Vec::new();
    for_each_antichain(p, budget.candidates, &mut |j| {
        let open = p.down_closure(j);
        if homotopy::is_contractible_mask(p, &open) {
            candidates.push(open);
        }
    })?;
    Ok(cover_from(p, candidates, budget))
}

/// Exact `gcat_p`.
pub fn gcat_p_exact(p: &FinitePoset, budget: &Budget) -> Result<Invariant> {
    if p.is_empty() {
        return Err(Error::EmptySubset);
    }
    let maxs: Vec<usize> = p.maximal().to_vec();
    if maxs.len() >= usize::BITS as usize || (1usize << maxs.len()) > budget.candidates {
        return Err(Error::BudgetExceeded(format!(
            "2^{} prime open sets exceed the cap of {}",
            maxs.len(),
            budget.candidates
        )));
    }
    let mut candidates = Vec::new();
    for mask in 1usize..1 << maxs.len() {
        let j = BitSet::from_indices(p.len(), (0..maxs.len()).filter(|b| mask >> b & 1 == 1).map(|b| maxs[b]));
        let open = p.down_closure(&j);
        if homotopy::is_contractible_mask(p, &open) {
            candidates.push(open);
        }
    }
    Ok(cover_from(p, candidates, budget))
}

/// `Cat_u`: `gcat` of the core.
pub fn cat_u(p: &FinitePoset, budget: &Budget) -> Result<Invariant> {
    gcat_exact(&homotopy::core(p).core, budget)
}

/// The refinement `V_U = U_{Max ∩ U}` of an open cover by prime open sets;
/// empty members are dropped.
pub fn prime_refinement(p: &FinitePoset, cover: &[BitSet]) -> Vec<BitSet> {
    let maxs = p.maximal();
    cover
        .iter()
        .map(|u| p.down_closure(&u.intersection(&maxs)))
        .filter(|v| !v.is_empty())
        .collect()
}

/// Checks that `refinement` consists of prime open sets, covers the space,
/// has no more members than `cover` and refines it.
pub fn is_prime_refinement(p: &FinitePoset, cover: &[BitSet], refinement: &[BitSet]) -> bool {
    let maxs = p.maximal();
    let mut union = p.empty_set();
    for v in refinement {
        let prime = p.down_closure(&v.intersection(&maxs)) == *v;
        if !prime || !cover.iter().any(|u| v.is_subset(u)) {
            return false;
        }
        union.union_with(v);
    }
    refinement.len() <= cover.len() && union.count() == p.len()
}

/// Bounds used when an exact search is out of budget: at least one set per
/// component and two for a component that is not contractible; at most the
/// smaller of `|Max|` and a Heuristic 1 cover.
pub fn fallback_interval(p: &FinitePoset, mode: Mode) -> Estimate {
    let lower: usize = p
        .components_of(&p.all())
        .iter()
        .map(|c| if homotopy::is_contractible_mask(p, c) { 1 } else { 2 })
        .sum();
    let mut upper = p.maximal().count();
    if let Ok(oracle) = CompatibilityOracle::new(p, mode) {
        let order: Vec<usize> = (0..oracle.universe_len()).collect();
        if let Ok(r) = heuristic1(&oracle, &order, false) {
            upper = upper.min(r.size);
        }
    }
    Estimate::between(lower.min(upper), upper)
}

/// All invariants of one space with the computable part of the chain
/// `Cat_u <= gcat_p <= |Max(X_0)| <= |Max(X)|` and `gcat <= Cat_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub gcat: Estimate,
    pub gcat_p: Estimate,
    pub cat_u: Estimate,
    pub max_core: usize,
    pub max_all: usize,
    /// Height-one category, when the space or its core has height one.
    pub cat_h1: Option<Estimate>,
    pub gcat_cover: Vec<Vec<String>>,
    pub gcat_p_cover: Vec<Vec<String>>,
    pub cat_u_cover: Vec<Vec<String>>,
    pub cat_h1_cover: Vec<Vec<String>>,
}

fn or_fallback(r: Result<Invariant>, p: &FinitePoset, mode: Mode) -> Result<(Estimate, Vec<Vec<String>>)> {
    match r {
        Ok(inv) => Ok((inv.value, inv.cover_labels())),
        Err(Error::BudgetExceeded(_)) => Ok((fallback_interval(p, mode), vec![])),
        Err(e) => Err(e),
    }
}

pub fn invariant_chain_report(p: &FinitePoset, budget: &Budget) -> Result<InvariantReport> {
    if p.is_empty() {
        return Err(Error::EmptySubset);
    }
    let core = homotopy::core(p).core;
    let (gcat, gcat_cover) = or_fallback(gcat_exact(p, budget), p, Mode::Gcat)?;
    let (gcat_p, gcat_p_cover) = or_fallback(gcat_p_exact(p, budget), p, Mode::GcatP)?;
    let (cat_u, cat_u_cover) = or_fallback(gcat_exact(&core, budget), &core, Mode::Gcat)?;
    let (cat_h1, cat_h1_cover) = if core.height() <= 1 && core.is_connected() {
        match height_one::cat_height1(p, budget) {
            Ok(c) => (Some(c.value), c.cover_labels()),
            Err(Error::BudgetExceeded(_)) => (None, vec![]),
            Err(e) => return Err(e),
        }
    } else {
        (None, vec![])
    };
    Ok(InvariantReport {
        gcat,
        gcat_p,
        cat_u,
        max_core: core.maximal().count(),
        max_all: p.maximal().count(),
        cat_h1,
        gcat_cover,
        gcat_p_cover,
        cat_u_cover,
        cat_h1_cover,
    })
}

impl InvariantReport {
    /// The inequalities that can be checked from the computed values.
    pub fn chain_holds(&self) -> bool {
        let le = |a: &Estimate, b: &Estimate| a.lower <= b.upper;
        let h1 = self.cat_h1.is_none_or(|c| le(&c, &self.cat_u));
        le(&self.gcat, &self.cat_u)
            && le(&self.cat_u, &self.gcat_p)
            && self.gcat_p.lower <= self.max_core
            && self.max_core <= self.max_all
            && h1
    }

    pub fn to_json(&self) -> Value {
        fn tagged(e: &Estimate) -> Value {
            match e.value() {
                Some(v) => json!({"value": v, "kind": "exact"}),
                None => json!({"lower": e.lower, "upper": e.upper, "kind": "bound"}),
            }
        }
        json!({
            "gcat": tagged(&self.gcat),
            "gcat_p": tagged(&self.gcat_p),
            "cat_u": tagged(&self.cat_u),
            "max_core": {"value": self.max_core, "kind": "exact"},
            "max_all": {"value": self.max_all, "kind": "exact"},
            "cat_h1": self.cat_h1.as_ref().map(tagged),
            "chain_holds": self.chain_holds(),
            "witnesses": {
                "gcat": self.gcat_cover,
                "gcat_p": self.gcat_p_cover,
                "cat_u": self.cat_u_cover,
                "cat_h1": self.cat_h1_cover,
            },
        })
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("gcat      {}\n", self.gcat));
        out.push_str(&format!("gcat_p    {}\n", self.gcat_p));
        out.push_str(&format!("cat_u     {}\n", self.cat_u));
        if let Some(c) = self.cat_h1 {
            out.push_str(&format!("cat_h1    {c}\n"));
        }
        out.push_str(&format!("max_core  {}\n", self.max_core));
        out.push_str(&format!("max_all   {}\n", self.max_all));
        out.push_str(&format!("chain     {}\n", if self.chain_holds() { "ok" } else { "VIOLATED" }));
        out
    }
}
