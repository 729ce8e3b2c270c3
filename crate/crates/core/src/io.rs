//! Reading and writing posets, covers and orderings.
//!
//! Text format, one statement per line:
//!
//! ```text
//! # comment
//! a < b < c      # a chain of relations
//! d              # a point, possibly isolated
//! ```
//!
//! Structured format (JSON):
//!
//! ```text
//! {"elements": ["a", "b"], "relations": [["a", "b"]], "relations_are_covers": true}
//! ```
//!
//! Element order is the order of first appearance.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use serde::{Deserialize, Serialize};

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn valid_label(l: &str) -> bool {
    !l.is_empty() && !l.chars().any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '#' | ','))
}

pub fn parse_text(text: &str) -> Result<FinitePoset> {
    let mut labels: Vec<String> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('<').map(str::trim).collect();
        for p in &parts {
            if !valid_label(p) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("bad element name `{p}`"),
                });
            }
            if seen.insert(p.to_string()) {
                labels.push(p.to_string());
            }
        }
        for w in parts.windows(2) {
            pairs.push((w[0].to_string(), w[1].to_string()));
        }
    }
    FinitePoset::from_relations(&labels, &pairs)
}

/// All elements as bare lines, then one line per cover relation; parsing
/// the output gives back the same poset with the same indices.
pub fn to_text(p: &FinitePoset) -> String {
    let mut out = String::new();
    for l in p.labels() {
        out.push_str(l);
        out.push('\n');
    }
    for (a, b) in p.cover_pairs() {
        out.push_str(&format!("{} < {}\n", p.label(a), p.label(b)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
    /// Informational: covers and arbitrary relations are normalized alike.
    #[serde(default)]
    pub relations_are_covers: bool,
}

pub fn parse_json(text: &str) -> Result<FinitePoset> {
    let doc: PosetDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    FinitePoset::from_relations(&doc.elements, &doc.relations)
}

pub fn to_json(p: &FinitePoset) -> String {
    let doc = PosetDocument {
        elements: p.labels().to_vec(),
        relations: p
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect(),
        relations_are_covers: true,
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Guesses the format: a document starting with `{` is JSON.
pub fn parse_any(text: &str) -> Result<FinitePoset> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Hasse diagram with edges from lower to upper points, one rank per level.
pub fn to_dot(p: &FinitePoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for l in p.labels() {
        out.push_str(&format!("  \"{l}\";\n"));
    }
    for (a, b) in p.cover_pairs() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.label(a), p.label(b)));
    }
    let levels = p.levels();
    for lvl in 0..=p.height() {
        let names: Vec<String> = (0..p.len())
            .filter(|&x| levels[x] == lvl)
            .map(|x| format!("\"{}\"", p.label(x)))
            .collect();
        if !names.is_empty() {
            out.push_str(&format!("  {{ rank=same; {} }}\n", names.join("; ")));
        }
    }
    out.push_str("}\n");
    out
}

/// One member per line, comma-separated labels of `p`.
pub fn parse_cover(text: &str, p: &FinitePoset) -> Result<Vec<BitSet>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let names: Vec<&str> = line.split(',').map(str::trim).collect();
        let set = p.indices_of(&names).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(set);
    }
    Ok(out)
}

/// Labels separated by whitespace, commas or newlines.
pub fn parse_label_list(text: &str) -> Vec<String> {
    text.lines()
        .map(strip_comment)
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()).map(str::to_string).collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Subsets, one per line, as comma-separated labels.
pub fn parse_subsets(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(strip_comment)
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(|s| s.trim().to_string()).collect())
        .collect()
}
