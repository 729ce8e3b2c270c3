//! Beat points, cores and contractibility.
//!
//! A point is an up beat point when it has exactly one upper cover and a down
//! beat point when it has exactly one lower cover. Removing beat points one at
//! a time until none are left yields the core, which is unique up to
//! isomorphism; a space is contractible exactly when its core is a point.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::iso;
use crate::poset::FinitePoset;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeatKind {
    Up,
    Down,
    Both,
}

impl BeatKind {
    /// Name used in trace logs. A point that is both kinds is treated as up.
    pub fn trace_name(self) -> &'static str {
        match self {
            BeatKind::Up | BeatKind::Both => "up",
            BeatKind::Down => "down",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BeatPointReport {
    pub point: usize,
    pub kind: BeatKind,
    /// Unique upper cover for up (and both), unique lower cover for down.
    pub witness: usize,
}

/// Classifies `x` from its Hasse degrees.
pub fn beat_point_at(p: &FinitePoset, x: usize) -> Option<BeatPointReport> {
    let up = p.upper_covers(x);
    let down = p.lower_covers(x);
    let (u, d) = (up.count() == 1, down.count() == 1);
    let kind = match (u, d) {
        (true, true) => BeatKind::Both,
        (true, false) => BeatKind::Up,
        (false, true) => BeatKind::Down,
        (false, false) => return None,
    };
    let witness = if u { up.first() } else { down.first() }.unwrap();
    Some(BeatPointReport {
        point: x,
        kind,
        witness,
    })
}

/// All beat points in index order.
pub fn find_beat_points(p: &FinitePoset) -> Vec<BeatPointReport> {
    (0..p.len()).filter_map(|x| beat_point_at(p, x)).collect()
}

/// Removes a beat point after checking it is still one.
pub fn remove_beat_point(p: &FinitePoset, report: &BeatPointReport) -> Result<FinitePoset> {
    Ok(remove_with_map(p, report)?.0)
}

fn remove_with_map(
    p: &FinitePoset,
    report: &BeatPointReport,
) -> Result<(FinitePoset, Vec<usize>)> {
    p.check_index(report.point)?;
    let current = beat_point_at(p, report.point);
    let still_valid = match current {
        Some(c) => match report.kind {
            BeatKind::Up => matches!(c.kind, BeatKind::Up | BeatKind::Both),
            BeatKind::Down => matches!(c.kind, BeatKind::Down | BeatKind::Both),
            BeatKind::Both => c.kind == BeatKind::Both,
        },
        None => false,
    };
    if !still_valid {
        return Err(Error::StaleBeatPoint(p.label(report.point).to_string()));
    }
    let mut mask = p.all();
    mask.remove(report.point);
    p.restrict(&mask)
}

/// How the next beat point is chosen while reducing to the core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    LowestIndex,
    /// Uniformly random among the current beat points.
    Seeded(u64),
}

/// Core of a poset together with the removals that produced it.
#[derive(Debug, Clone)]
pub struct CoreResult {
    pub core: FinitePoset,
    /// Removals in order, with `point` and `witness` as original indices.
    pub removal_trace: Vec<BeatPointReport>,
    /// `embedding[i]` is the original index of core element `i`.
    pub embedding: Vec<usize>,
}

impl CoreResult {
    /// One line per removal: `<label> up|down witness=<label>`.
    pub fn trace_log(&self, original: &FinitePoset) -> String {
        let mut out = String::new();
        for r in &self.removal_trace {
            let _ = writeln!(
                out,
                "{} {} witness={}",
                original.label(r.point),
                r.kind.trace_name(),
                original.label(r.witness)
            );
        }
        out
    }

    pub fn is_point(&self) -> bool {
        self.core.len() == 1
    }
}

/// The contractibility test: remove beat points one at a time, lowest index
/// first, until none remain.
pub fn core(p: &FinitePoset) -> CoreResult {
    core_with(p, Selection::LowestIndex)
}

pub fn core_with(p: &FinitePoset, selection: Selection) -> CoreResult {
    let mut rng = match selection {
        Selection::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Selection::LowestIndex => None,
    };
    let mut current = p.clone();
    let mut embedding: Vec<usize> = (0..p.len()).collect();
    let mut trace = Vec::new();
    loop {
        let beats = find_beat_points(&current);
        let Some(pick) = (match rng.as_mut() {
            Some(r) => beats.choose(r).copied(),
            None => beats.first().copied(),
        }) else {
            break;
        };
        let (next, map) =
            remove_with_map(&current, &pick).expect("freshly found beat point is valid");
        trace.push(BeatPointReport {
            point: embedding[pick.point],
            kind: pick.kind,
            witness: embedding[pick.witness],
        });
        embedding = map.into_iter().map(|i| embedding[i]).collect();
        current = next;
    }
    CoreResult {
        core: current,
        removal_trace: trace,
        embedding,
    }
}

/// Unique minimum of `set` when it exists.
#[inline]
fn unique_minimal(p: &FinitePoset, set: &BitSet) -> Option<usize> {
    let mut shadow = BitSet::new(p.len());
    for z in set.iter() {
        shadow.union_with(p.above(z));
    }
    let mins = set.difference(&shadow);
    (mins.count() == 1).then(|| mins.first().unwrap())
}

#[inline]
fn unique_maximal(p: &FinitePoset, set: &BitSet) -> Option<usize> {
    let mut shadow = BitSet::new(p.len());
    for z in set.iter() {
        shadow.union_with(p.below(z));
    }
    let maxs = set.difference(&shadow);
    (maxs.count() == 1).then(|| maxs.first().unwrap())
}

/// Is `x` a beat point of the subspace `alive`?
///
/// Works from the order closure directly (the set of points above `x` has a
/// minimum, or the set below has a maximum), without rebuilding a Hasse
/// diagram.
#[inline]
pub fn is_beat_in(p: &FinitePoset, alive: &BitSet, x: usize) -> bool {
    let up = p.above(x).intersection(alive);
    if !up.is_empty() && unique_minimal(p, &up).is_some() {
        return true;
    }
    let down = p.below(x).intersection(alive);
    !down.is_empty() && unique_maximal(p, &down).is_some()
}

/// Core of the subspace on `mask`, returned as the surviving subset.
///
/// Same removal order as [`core`] (lowest index first), but computed on the
/// order closure of `p` without building intermediate posets.
pub fn core_mask(p: &FinitePoset, mask: &BitSet) -> BitSet {
    let mut alive = mask.clone();
    'outer: loop {
        for x in alive.iter() {
            if is_beat_in(p, &alive, x) {
                alive.remove(x);
                continue 'outer;
            }
        }
        return alive;
    }
}

/// Contractibility of the subspace on `mask`; the empty set is not contractible.
pub fn is_contractible_mask(p: &FinitePoset, mask: &BitSet) -> bool {
    !mask.is_empty() && core_mask(p, mask).count() == 1
}

/// Connected with a one-point core.
pub fn is_contractible(p: &FinitePoset) -> bool {
    !p.is_empty() && p.is_connected() && core(p).is_point()
}

/// Is `U_J` contractible?
pub fn is_compatible(p: &FinitePoset, generators: &BitSet) -> Result<bool> {
    let u = p.open_hull(generators)?;
    Ok(is_contractible_mask(p, &u.members))
}

/// Compares cores up to isomorphism.
pub fn homotopy_equivalent(p: &FinitePoset, q: &FinitePoset, iso_limit: usize) -> Result<bool> {
    let (cp, cq) = (core(p).core, core(q).core);
    Ok(iso::is_isomorphic_within(&cp, &cq, iso_limit)?.is_some())
}

/// Replays a removal trace given in original indices.
pub fn replay_trace(p: &FinitePoset, trace: &[BeatPointReport]) -> Result<FinitePoset> {
    let mut current = p.clone();
    let mut embedding: Vec<usize> = (0..p.len()).collect();
    for r in trace {
        let local = |orig: usize| embedding.iter().position(|&e| e == orig);
        let (Some(point), Some(witness)) = (local(r.point), local(r.witness)) else {
            return Err(Error::StaleBeatPoint(p.label(r.point).to_string()));
        };
        let report = BeatPointReport {
            point,
            kind: r.kind,
            witness,
        };
        let (next, map) = remove_with_map(&current, &report)?;
        embedding = map.into_iter().map(|i| embedding[i]).collect();
        current = next;
    }
    Ok(current)
}
