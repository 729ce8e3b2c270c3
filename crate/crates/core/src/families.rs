//! Standard test families.
//!
//! Labelling, always minimal elements before the others:
//!
//! | family            | labels                                                        |
//! |-------------------|---------------------------------------------------------------|
//! | `chain(n)`        | `c0 < c1 < ... < c{n-1}`                                      |
//! | `antichain(n)`    | `p1 .. pn`                                                    |
//! | `fence(n)`        | `f0 < f1 > f2 < f3 ...`                                       |
//! | `cycle(2m)`       | minimals `y1..ym`, maximals `x1..xm`; `yi < xi`, `y(i+1 mod m) < xi` |
//! | `bipartite(m, n)` | minimals `a0, b0` when `m = 2`, else `y1..ym`; maximals `x1..xn`; all relations |
//! | `cone(P)`         | `P` plus a maximum `top`                                      |
//! | `c5crowns`        | minimals `d0..d4`, maximals `0..4`; `dj < i` iff `j` is `i-1, i, i+1` mod 5 |
//! | `hub_fan(n)`      | minimals `a0..an`, maximals `b0..bn`; `U_b0 = {b0} + A`, `U_bi = {bi, a0, ai}` |
//!
//! `cycle(4)` is the same poset as `bipartite(2, 2)` up to relabelling.

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use std::fmt;
use std::str::FromStr;

fn build(labels: Vec<String>, pairs: Vec<(usize, usize)>) -> Result<FinitePoset> {
    FinitePoset::from_index_pairs(labels, &pairs)
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::BadParameter(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

pub fn chain(n: usize) -> Result<FinitePoset> {
    positive(n, "chain length")?;
    let labels = (0..n).map(|i| format!("c{i}")).collect();
    build(labels, (1..n).map(|i| (i - 1, i)).collect())
}

pub fn antichain(n: usize) -> Result<FinitePoset> {
    positive(n, "antichain size")?;
    build((1..=n).map(|i| format!("p{i}")).collect(), vec![])
}

/// Zigzag path on `n` points starting with a minimal element.
pub fn fence(n: usize) -> Result<FinitePoset> {
    positive(n, "fence length")?;
    let labels = (0..n).map(|i| format!("f{i}")).collect();
    let pairs = (1..n)
        .map(|i| if i % 2 == 1 { (i - 1, i) } else { (i, i - 1) })
        .collect();
    build(labels, pairs)
}

/// Crown on `points` elements (`points = 2m`, `m >= 2`).
pub fn cycle(points: usize) -> Result<FinitePoset> {
    if points < 4 || !points.is_multiple_of(2) {
        return Err(Error::BadParameter(format!(
            "cycle needs an even number of points >= 4, got {points}"
        )));
    }
    let m = points / 2;
    let mut labels: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
    labels.extend((1..=m).map(|i| format!("x{i}")));
    let mut pairs = Vec::new();
    for i in 0..m {
        pairs.push((i, m + i));
        pairs.push(((i + 1) % m, m + i));
    }
    build(labels, pairs)
}

/// Complete bipartite poset with `mins` minimal and `maxs` maximal points.
pub fn bipartite(mins: usize, maxs: usize) -> Result<FinitePoset> {
    positive(mins, "minimal count")?;
    positive(maxs, "maximal count")?;
    let mut labels: Vec<String> = if mins == 2 {
        vec!["a0".into(), "b0".into()]
    } else {
        (1..=mins).map(|i| format!("y{i}")).collect()
    };
    labels.extend((1..=maxs).map(|i| format!("x{i}")));
    let pairs = (0..mins)
        .flat_map(|a| (0..maxs).map(move |b| (a, mins + b)))
        .collect();
    build(labels, pairs)
}

/// `P` with a new maximum adjoined.
pub fn cone(base: &FinitePoset) -> Result<FinitePoset> {
    let mut top = String::from("top");
    while base.index_of(&top).is_some() {
        top.push('\'');
    }
    base.with_element(&top, &base.all(), &base.empty_set())
}

/// Union of the five crowns on consecutive maximal pairs of a pentagon.
pub fn c5crowns() -> Result<FinitePoset> {
    let mut labels: Vec<String> = (0..5).map(|j| format!("d{j}")).collect();
    labels.extend((0..5).map(|i| i.to_string()));
    let mut pairs = Vec::new();
    for i in 0..5 {
        for j in [(i + 4) % 5, i, (i + 1) % 5] {
            pairs.push((j, 5 + i));
        }
    }
    build(labels, pairs)
}

/// Height-1 space with a hub maximal point over every minimal point and
/// spokes `b_i` over `a0` and `a_i`.
pub fn hub_fan(n: usize) -> Result<FinitePoset> {
    positive(n, "spoke count")?;
    let mut labels: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
    labels.extend((0..=n).map(|i| format!("b{i}")));
    let hub = n + 1;
    let mut pairs: Vec<(usize, usize)> = (0..=n).map(|a| (a, hub)).collect();
    for i in 1..=n {
        pairs.push((0, hub + i));
        pairs.push((i, hub + i));
    }
    build(labels, pairs)
}

/// Family selector used by [`make_family`] and the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Chain(usize),
    Antichain(usize),
    Fence(usize),
    Cycle(usize),
    Bipartite(usize, usize),
    Cone(Box<FamilyKind>),
    C5Crowns,
    HubFan(usize),
}

pub fn make_family(kind: &FamilyKind) -> Result<FinitePoset> {
    match kind {
        FamilyKind::Chain(n) => chain(*n),
        FamilyKind::Antichain(n) => antichain(*n),
        FamilyKind::Fence(n) => fence(*n),
        FamilyKind::Cycle(n) => cycle(*n),
        FamilyKind::Bipartite(m, n) => bipartite(*m, *n),
        FamilyKind::Cone(inner) => cone(&make_family(inner)?),
        FamilyKind::C5Crowns => c5crowns(),
        FamilyKind::HubFan(n) => hub_fan(*n),
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Chain(n) => write!(f, "chain({n})"),
            FamilyKind::Antichain(n) => write!(f, "antichain({n})"),
            FamilyKind::Fence(n) => write!(f, "fence({n})"),
            FamilyKind::Cycle(n) => write!(f, "cycle({n})"),
            FamilyKind::Bipartite(m, n) => write!(f, "bipartite({m},{n})"),
            FamilyKind::Cone(inner) => write!(f, "cone({inner})"),
            FamilyKind::C5Crowns => write!(f, "c5crowns"),
            FamilyKind::HubFan(n) => write!(f, "hub_fan({n})"),
        }
    }
}

/// Parses the `Display` form, e.g. `cone(cycle(4))` or `bipartite(2,3)`.
impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadParameter(format!("unknown family `{s}`"));
        if s == "c5crowns" {
            return Ok(FamilyKind::C5Crowns);
        }
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let (name, args) = (&s[..open], &s[open + 1..s.len() - 1]);
        if name == "cone" {
            return Ok(FamilyKind::Cone(Box::new(args.parse()?)));
        }
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (name, nums.as_slice()) {
            ("chain", [n]) => Ok(FamilyKind::Chain(*n)),
            ("antichain", [n]) => Ok(FamilyKind::Antichain(*n)),
            ("fence", [n]) => Ok(FamilyKind::Fence(*n)),
            ("cycle", [n]) => Ok(FamilyKind::Cycle(*n)),
            ("bipartite", [m, n]) => Ok(FamilyKind::Bipartite(*m, *n)),
            ("hub_fan", [n]) => Ok(FamilyKind::HubFan(*n)),
            _ => Err(bad()),
        }
    }
}
