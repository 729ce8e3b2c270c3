//! Compatibility search: a subset `J` of the universe is compatible when the
//! open set `U_J` it generates is contractible (or, for [`Mode::CatH1`], when
//! every component of `U_J` is).
//!
//! The universe depends on the mode: all points for `gcat`, the maximal
//! points for `gcat_p` and height-one `cat`, all points of the core for
//! `Cat_u`. Subsets are handled as sorted lists of universe positions.

use crate::bitset::{binomial, BitSet, ColexSubsets};
use crate::error::{Error, Result};
use crate::height_one;
use crate::homotopy;
use crate::poset::FinitePoset;
use serde::Serialize;
use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Gcat,
    GcatP,
    CatU,
    CatH1,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Gcat => "gcat",
            Mode::GcatP => "gcatp",
            Mode::CatU => "catu",
            Mode::CatH1 => "cath1",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcat" => Ok(Mode::Gcat),
            "gcatp" | "gcat_p" => Ok(Mode::GcatP),
            "catu" | "cat_u" => Ok(Mode::CatU),
            "cath1" | "cat_h1" => Ok(Mode::CatH1),
            _ => Err(Error::BadParameter(format!("unknown mode `{s}`"))),
        }
    }
}

/// Compatibility test for one poset and mode, counting every evaluation.
#[derive(Debug, Clone)]
pub struct CompatibilityOracle {
    poset: FinitePoset,
    mode: Mode,
    universe: Vec<usize>,
    calls: Cell<u64>,
}

impl CompatibilityOracle {
    /// For [`Mode::CatU`] the oracle works on the core of `p`; for
    /// [`Mode::CatH1`] the poset must have height at most one.
    pub fn new(p: &FinitePoset, mode: Mode) -> Result<Self> {
        let poset = match mode {
            Mode::CatU => homotopy::core(p).core,
            Mode::CatH1 if p.height() > 1 => {
                return Err(Error::HeightMismatch {
                    expected: 1,
                    found: p.height(),
                })
            }
            _ => p.clone(),
        };
        let universe = match mode {
            Mode::Gcat | Mode::CatU => (0..poset.len()).collect(),
            Mode::GcatP | Mode::CatH1 => poset.maximal().to_vec(),
        };
        Ok(Self {
            poset,
            mode,
            universe,
            calls: Cell::new(0),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The poset the oracle works on (the core for `Cat_u`).
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Universe as poset indices.
    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    pub fn universe_len(&self) -> usize {
        self.universe.len()
    }

    pub fn universe_labels(&self) -> Vec<String> {
        self.universe.iter().map(|&x| self.poset.label(x).to_string()).collect()
    }

    pub fn labels_of(&self, positions: &[usize]) -> Vec<String> {
        positions
            .iter()
            .map(|&i| self.poset.label(self.universe[i]).to_string())
            .collect()
    }

    /// Number of compatibility evaluations so far.
    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn reset_calls(&self) {
        self.calls.set(0);
    }

    /// Generators of a subset as poset indices.
    pub fn generators(&self, positions: &[usize]) -> BitSet {
        BitSet::from_indices(self.poset.len(), positions.iter().map(|&i| self.universe[i]))
    }

    /// The open set `U_J` generated by the subset.
    pub fn generated(&self, positions: &[usize]) -> BitSet {
        self.poset.down_closure(&self.generators(positions))
    }

    /// Compatibility of a nonempty subset; every call is counted.
    pub fn is_compatible(&self, positions: &[usize]) -> bool {
        self.calls.set(self.calls.get() + 1);
        self.check(positions)
    }

    /// Same test without touching the counter.
    pub fn check(&self, positions: &[usize]) -> bool {
        let open = self.generated(positions);
        if open.is_empty() {
            return true;
        }
        match self.mode {
            Mode::CatH1 => !height_one::has_cycle_in(&self.poset, &open),
            _ => homotopy::is_contractible_mask(&self.poset, &open),
        }
    }

    /// True when the blocks jointly contain every universe position and
    /// their open sets cover the whole poset.
    pub fn is_cover(&self, blocks: &[Vec<usize>]) -> bool {
        let mut seen = BitSet::new(self.universe.len());
        let mut covered = self.poset.empty_set();
        for b in blocks {
            for &i in b {
                if i >= self.universe.len() {
                    return false;
                }
                seen.insert(i);
            }
            covered.union_with(&self.generated(b));
        }
        seen.count() == self.universe.len() && covered.count() == self.poset.len()
    }
}

/// Recorded compatibility values over the universe of an oracle.
///
/// Entries appear in evaluation order: by length, colex within a length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityTable {
    pub mode: Mode,
    pub universe: Vec<String>,
    entries: Vec<(Vec<usize>, bool)>,
    index: HashMap<Vec<usize>, usize>,
    complete_up_to: usize,
}

impl CompatibilityTable {
    pub fn new(oracle: &CompatibilityOracle) -> Self {
        Self {
            mode: oracle.mode(),
            universe: oracle.universe_labels(),
            entries: Vec::new(),
            index: HashMap::new(),
            complete_up_to: 0,
        }
    }

    /// Every subset of at most this size has been evaluated.
    pub fn complete_up_to(&self) -> usize {
        self.complete_up_to
    }

    pub fn entries(&self) -> &[(Vec<usize>, bool)] {
        &self.entries
    }

    pub fn get(&self, subset: &[usize]) -> Option<bool> {
        self.index.get(subset).map(|&i| self.entries[i].1)
    }

    pub fn compatible_sets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.entries.iter().filter(|e| e.1).map(|e| &e.0)
    }

    fn record(&mut self, subset: Vec<usize>, value: bool) {
        if !self.index.contains_key(&subset) {
            self.index.insert(subset.clone(), self.entries.len());
            self.entries.push((subset, value));
        }
    }

    /// Evaluates every subset of the given length not yet recorded.
    pub fn evaluate_length(&mut self, oracle: &CompatibilityOracle, k: usize) {
        for s in ColexSubsets::new(oracle.universe_len(), k) {
            if self.index.contains_key(&s) {
                continue;
            }
            let v = oracle.is_compatible(&s);
            self.record(s, v);
        }
        if k == self.complete_up_to + 1 {
            self.complete_up_to = k;
        }
    }

    /// Extends the table to all subsets of size at most `max_length`;
    /// existing entries are never changed.
    pub fn extend(&mut self, oracle: &CompatibilityOracle, max_length: usize) {
        for k in self.complete_up_to + 1..=max_length.min(oracle.universe_len()) {
            self.evaluate_length(oracle, k);
        }
    }

    /// One line per entry: `{a,b}:0` for compatible, `{a,b}:1` otherwise.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (s, v) in &self.entries {
            let names: Vec<&str> = s.iter().map(|&i| self.universe[i].as_str()).collect();
            out.push_str(&format!("{{{}}}:{}\n", names.join(","), if *v { 0 } else { 1 }));
        }
        out
    }
}

/// Number of subsets of size `1..=k` of an `n`-set.
pub fn subsets_up_to(n: usize, k: usize) -> u128 {
    (1..=k.min(n)).map(|j| binomial(n, j)).sum()
}

/// All subsets of the universe of size at most `max_length`.
pub fn enumerate_compatibility(
    oracle: &CompatibilityOracle,
    max_length: usize,
    cap: usize,
) -> Result<CompatibilityTable> {
    let n = oracle.universe_len();
    if max_length > n {
        return Err(Error::BadParameter(format!(
            "length {max_length} exceeds universe size {n}"
        )));
    }
    let total = subsets_up_to(n, max_length);
    if total > cap as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{total} subsets exceed the cap of {cap}"
        )));
    }
    let mut table = CompatibilityTable::new(oracle);
    table.extend(oracle, max_length);
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
    Exact,
}

/// A cover of the universe by compatible subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub mode: Mode,
    pub universe: Vec<String>,
    /// Blocks as sorted universe positions.
    pub blocks: Vec<Vec<usize>>,
    /// Blocks as generator labels.
    pub cover: Vec<Vec<String>>,
    pub size: usize,
    pub is_exact: bool,
    pub bound_kind: BoundKind,
    /// Compatibility evaluations spent.
    pub evaluations: u64,
}

impl CoverReport {
    fn new(oracle: &CompatibilityOracle, mut blocks: Vec<Vec<usize>>, exact: bool, evaluations: u64) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        let cover = blocks.iter().map(|b| oracle.labels_of(b)).collect();
        Self {
            mode: oracle.mode(),
            universe: oracle.universe_labels(),
            size: blocks.len(),
            blocks,
            cover,
            is_exact: exact,
            bound_kind: if exact { BoundKind::Exact } else { BoundKind::Upper },
            evaluations,
        }
    }

    pub fn text(&self) -> String {
        let kind = match self.bound_kind {
            BoundKind::Exact => "exact",
            BoundKind::Upper => "upper bound",
            BoundKind::Lower => "lower bound",
        };
        let mut out = format!("{} {}: {}\n", self.mode, kind, self.size);
        for c in &self.cover {
            out.push_str(&format!("  {{{}}}\n", c.join(",")));
        }
        out
    }
}

/// The set `J` plus every remaining universe point as a singleton.
fn set_plus_singletons(n: usize, j: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks = vec![j.to_vec()];
    blocks.extend((0..n).filter(|i| !j.contains(i)).map(|i| vec![i]));
    blocks
}

/// Result of the U and D algorithms: the cover and every value evaluated.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub report: CoverReport,
    pub table: CompatibilityTable,
}

/// Lengths `2..=stop_length` ascending, every subset of each length.
///
/// The bound is `n - k + 1` for the largest length `k` with a compatible
/// subset, witnessed by its colex-least compatible subset plus singletons.
pub fn u_algorithm(oracle: &CompatibilityOracle, stop_length: usize) -> Result<SearchOutcome> {
    let n = oracle.universe_len();
    if n < 2 {
        return trivial_outcome(oracle);
    }
    if stop_length < 2 || stop_length > n {
        return Err(Error::BadParameter(format!(
            "stop length must lie in 2..={n}, got {stop_length}"
        )));
    }
    let start = oracle.calls();
    let mut table = CompatibilityTable::new(oracle);
    let mut best: Option<Vec<usize>> = None;
    for k in 2..=stop_length {
        table.evaluate_length(oracle, k);
        if let Some(w) = first_compatible_of_length(&table, k) {
            best = Some(w);
        }
    }
    let evaluations = oracle.calls() - start;
    let report = match best {
        Some(w) => {
            let k = w.len();
            // gcat = 1 needs the whole set; gcat = 2 needs length n to fail
            let exact = k == n || (k == n - 1 && stop_length == n);
            CoverReport::new(oracle, set_plus_singletons(n, &w), exact, evaluations)
        }
        None => {
            let exact = stop_length == n;
            CoverReport::new(oracle, (0..n).map(|i| vec![i]).collect(), exact, evaluations)
        }
    };
    Ok(SearchOutcome { report, table })
}

fn first_compatible_of_length(table: &CompatibilityTable, k: usize) -> Option<Vec<usize>> {
    table
        .entries()
        .iter()
        .find(|(s, v)| *v && s.len() == k)
        .map(|(s, _)| s.clone())
}

fn trivial_outcome(oracle: &CompatibilityOracle) -> Result<SearchOutcome> {
    let n = oracle.universe_len();
    let table = CompatibilityTable::new(oracle);
    let report = CoverReport::new(oracle, (0..n).map(|i| vec![i]).collect(), true, 0);
    Ok(SearchOutcome { report, table })
}

/// Lengths descending from `n`, stopping after the first length class that
/// contains a compatible subset (or after `stop_length`).
pub fn d_algorithm(oracle: &CompatibilityOracle, stop_length: usize) -> Result<SearchOutcome> {
    let n = oracle.universe_len();
    if n < 2 {
        return trivial_outcome(oracle);
    }
    if stop_length < 1 {
        return Err(Error::BadParameter("stop length must be at least 1".into()));
    }
    let start = oracle.calls();
    let mut table = CompatibilityTable::new(oracle);
    let mut found = None;
    for k in (stop_length.max(2)..=n).rev() {
        table.evaluate_length(oracle, k);
        if let Some(w) = first_compatible_of_length(&table, k) {
            found = Some(w);
            break;
        }
    }
    let evaluations = oracle.calls() - start;
    let report = match found {
        Some(w) => {
            let k = w.len();
            CoverReport::new(oracle, set_plus_singletons(n, &w), k + 1 >= n, evaluations)
        }
        // every length >= 2 failed only when the descent went all the way down
        None => CoverReport::new(oracle, (0..n).map(|i| vec![i]).collect(), stop_length <= 2, evaluations),
    };
    Ok(SearchOutcome { report, table })
}

/// Prefix sweep along `ordering` (universe positions).
///
/// Each block grows while adding the next point keeps it compatible; the
/// first failing point starts the next block. The plain sweep makes exactly
/// `n - 1` compatibility calls. With `skip_one`, a block that fails on the
/// next point also tries the point after it once before closing.
pub fn heuristic1(
    oracle: &CompatibilityOracle,
    ordering: &[usize],
    skip_one: bool,
) -> Result<CoverReport> {
    let n = oracle.universe_len();
    check_permutation(ordering, n)?;
    let start = oracle.calls();
    let mut remaining: Vec<usize> = ordering.to_vec();
    let mut blocks = Vec::new();
    while !remaining.is_empty() {
        let mut block = vec![remaining.remove(0)];
        let mut pos = 0;
        let mut skipped = false;
        while pos < remaining.len() {
            let mut cand = block.clone();
            cand.push(remaining[pos]);
            cand.sort_unstable();
            if oracle.is_compatible(&cand) {
                block.push(remaining.remove(pos));
            } else if skip_one && !skipped {
                skipped = true;
                pos += 1;
            } else {
                break;
            }
        }
        blocks.push(block);
    }
    let evaluations = oracle.calls() - start;
    Ok(CoverReport::new(oracle, blocks, n <= 1, evaluations))
}

fn check_permutation(ordering: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if ordering.len() != n {
        return Err(Error::BadParameter(format!(
            "ordering has {} entries, universe has {n}",
            ordering.len()
        )));
    }
    for &i in ordering {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::BadParameter("ordering is not a permutation".into()));
        }
    }
    Ok(())
}

/// How Heuristic 2 picks the next subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection2 {
    /// Next subset must be disjoint from everything chosen so far.
    Disjoint,
    /// Next subset must contain a point not chosen so far.
    Covering,
}

/// Caller-supplied order on subsets for Heuristic 2.
pub type SubsetOrder = dyn Fn(&[usize], &[usize]) -> Ordering;

/// Default order on subsets: larger first, then colex.
pub fn size_desc_colex(a: &[usize], b: &[usize]) -> Ordering {
    b.len()
        .cmp(&a.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Evaluates all subsets of size at most `k` (`k < n/2`), orders the
/// compatible ones with `order` and greedily picks a cover.
pub fn heuristic2(
    oracle: &CompatibilityOracle,
    k: usize,
    selection: Selection2,
    order: Option<&SubsetOrder>,
) -> Result<CoverReport> {
    let n = oracle.universe_len();
    if k == 0 || 2 * k >= n {
        return Err(Error::BadParameter(format!(
            "need 1 <= k < n/2 for n = {n}, got k = {k}"
        )));
    }
    let start = oracle.calls();
    let mut table = CompatibilityTable::new(oracle);
    table.extend(oracle, k);
    let mut family: Vec<Vec<usize>> = table.compatible_sets().cloned().collect();
    // singletons are compatible by definition; keep them even if a custom
    // oracle says otherwise so the greedy pass always finishes
    for i in 0..n {
        if !family.iter().any(|s| s.len() == 1 && s[0] == i) {
            family.push(vec![i]);
        }
    }
    match order {
        Some(f) => family.sort_by(|a, b| f(a, b)),
        None => family.sort_by(|a, b| size_desc_colex(a, b)),
    }
    let mut used = BitSet::new(n);
    let mut blocks = Vec::new();
    while used.count() < n {
        let next = family.iter().find(|s| match selection {
            Selection2::Disjoint => s.iter().all(|&i| !used.contains(i)),
            Selection2::Covering => s.iter().any(|&i| !used.contains(i)),
        });
        let s = next.expect("singletons keep the family covering").clone();
        for &i in &s {
            used.insert(i);
        }
        blocks.push(s);
    }
    let evaluations = oracle.calls() - start;
    Ok(CoverReport::new(oracle, blocks, false, evaluations))
}
