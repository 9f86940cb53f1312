//! Column-format transcription tiers in the TIMIT style:
//!
//! ```text
//! 2360 5200 she
//! 5200 9680 had
//! ```
//!
//! Each line is `start end label` with integer sample offsets. Several tiers
//! over the same recording merge into one graph on a single timeline, with
//! one node per distinct offset so that word and phone boundaries coincide.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::content::Content;
use crate::graph::{AnnotationGraph, GraphError, Node, Timeline};
use crate::id::Id;
use crate::offset::Offset;

pub const DEFAULT_UNITS: &str = "Samples16kHz";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("line {line}: expected `start end label`")]
    MalformedLine { line: usize },
    #[error("line {line}: {text:?} is not an integer offset")]
    NonIntegerOffset { line: usize, text: String },
    #[error("line {line}: start {start} is not before end {end}")]
    ReversedInterval { line: usize, start: u64, end: u64 },
    #[error("tiers use different units: {0:?} and {1:?}")]
    UnitsMismatch(String, String),
    #[error("node {0} has no offset")]
    Unanchored(Id),
    #[error("arc {0} does not have a literal label")]
    NonLiteralLabel(Id),
    #[error("offset {0} is not a non-negative integer")]
    NonIntegerNode(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T, E = ConvertError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierRow {
    pub start: u64,
    pub end: u64,
    pub label: String,
}

/// One layer of time-aligned labels, e.g. the words or phones of a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnTier {
    pub source_name: String,
    pub arc_type: String,
    pub rows: Vec<TierRow>,
    pub units: String,
}

impl ColumnTier {
    pub fn new(arc_type: impl Into<String>) -> Self {
        ColumnTier {
            source_name: String::new(),
            arc_type: arc_type.into(),
            rows: Vec::new(),
            units: DEFAULT_UNITS.to_owned(),
        }
    }

    pub fn with_source_name(mut self, name: impl Into<String>) -> Self {
        self.source_name = name.into();
        self
    }

    pub fn with_units(mut self, units: impl Into<String>) -> Self {
        self.units = units.into();
        self
    }

    /// Renders the rows back to column text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            writeln!(out, "{} {} {}", r.start, r.end, r.label).unwrap();
        }
        out
    }
}

/// Parses column text into a tier of type `arc_type`. Blank lines are
/// skipped; the label is everything after the second column, trimmed.
pub fn parse_tier(text: &str, arc_type: &str) -> Result<ColumnTier> {
    let mut tier = ColumnTier::new(arc_type);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let rest = raw.trim();
        if rest.is_empty() {
            continue;
        }
        let (start, rest) = split_word(rest).ok_or(ConvertError::MalformedLine { line })?;
        let (end, label) = split_word(rest).ok_or(ConvertError::MalformedLine { line })?;
        let num = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| ConvertError::NonIntegerOffset {
                    line,
                    text: s.to_owned(),
                })
        };
        let (start, end) = (num(start)?, num(end)?);
        if label.is_empty() {
            return Err(ConvertError::MalformedLine { line });
        }
        if start >= end {
            return Err(ConvertError::ReversedInterval { line, start, end });
        }
        tier.rows.push(TierRow {
            start,
            end,
            label: label.to_owned(),
        });
    }
    Ok(tier)
}

fn split_word(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    if s.is_empty() {
        return None;
    }
    let cut = s.find(char::is_whitespace).unwrap_or(s.len());
    Some((&s[..cut], s[cut..].trim()))
}

/// Merges tiers into one graph on timeline `timeline_id`.
///
/// Nodes are `n<offset>`, one per distinct offset across all tiers. Arcs get
/// fresh ids in tier order then row order and carry the row label as
/// literal content.
pub fn build_graph(tiers: &[ColumnTier], timeline_id: &str) -> Result<AnnotationGraph> {
    let units = tiers.first().map_or(DEFAULT_UNITS, |t| t.units.as_str());
    if let Some(t) = tiers.iter().find(|t| t.units != units) {
        return Err(ConvertError::UnitsMismatch(
            units.to_owned(),
            t.units.clone(),
        ));
    }
    let mut g = AnnotationGraph::new();
    g.add_timeline(Timeline::new(timeline_id, units))?;
    let offsets: BTreeSet<u64> = tiers
        .iter()
        .flat_map(|t| &t.rows)
        .flat_map(|r| [r.start, r.end])
        .collect();
    for o in &offsets {
        g.add_node(Node::new(node_id(*o), timeline_id, Some(Offset::from(*o))))?;
    }
    for t in tiers {
        for r in &t.rows {
            g.insert_arc(
                &node_id(r.start),
                &node_id(r.end),
                t.arc_type.clone(),
                Content::literal(r.label.clone()),
            )?;
        }
    }
    Ok(g)
}

fn node_id(offset: u64) -> String {
    format!("n{offset}")
}

/// Pulls the arcs of one type back out as a tier, ordered by start, end,
/// then arc id. Every endpoint must be anchored at an integer offset and
/// every label must be a literal.
pub fn extract_tier(graph: &AnnotationGraph, arc_type: &str) -> Result<ColumnTier> {
    let mut units = DEFAULT_UNITS.to_owned();
    let mut rows = Vec::new();
    for a in graph.arcs().filter(|a| a.arc_type == arc_type) {
        let mut ends = [0u64; 2];
        for (slot, id) in ends.iter_mut().zip([&a.start, &a.end]) {
            let node = graph
                .node(id.as_str())
                .ok_or_else(|| GraphError::UnknownNode(id.clone()))?;
            let o = node
                .offset
                .as_ref()
                .ok_or_else(|| ConvertError::Unanchored(id.clone()))?;
            *slot = o
                .as_str()
                .parse()
                .map_err(|_| ConvertError::NonIntegerNode(o.to_string()))?;
            if let Some(t) = graph.timeline(node.timeline.as_str()) {
                units = t.unit().to_owned();
            }
        }
        let Content::Literal(label) = &a.content else {
            return Err(ConvertError::NonLiteralLabel(a.id.clone()));
        };
        rows.push((ends[0], ends[1], a.id.clone(), label.clone()));
    }
    rows.sort();
    let mut tier = ColumnTier::new(arc_type).with_units(units);
    tier.rows = rows
        .into_iter()
        .map(|(start, end, _, label)| TierRow { start, end, label })
        .collect();
    Ok(tier)
}

/// Column text for the arcs of one type; see [`extract_tier`].
pub fn serialize_tier(graph: &AnnotationGraph, arc_type: &str) -> Result<String> {
    extract_tier(graph, arc_type).map(|t| t.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let t = parse_tier("2360 5200 she\n\n5200 9680 had\n", "W").unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(
            t.rows[0],
            TierRow {
                start: 2360,
                end: 5200,
                label: "she".into()
            }
        );
        assert_eq!(t.units, DEFAULT_UNITS);
    }

    #[test]
    fn labels_verbatim() {
        let t = parse_tier("0 2360 h#\n1 2  two  words \n", "P").unwrap();
        assert_eq!(t.rows[0].label, "h#");
        assert_eq!(t.rows[1].label, "two  words");
    }

    #[test]
    fn empty_input() {
        assert!(parse_tier("", "W").unwrap().rows.is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_tier("0 1 a\n5200 2360 oops\n", "W"),
            Err(ConvertError::ReversedInterval {
                line: 2,
                start: 5200,
                end: 2360
            })
        );
        assert_eq!(
            parse_tier("5 5 same", "W"),
            Err(ConvertError::ReversedInterval {
                line: 1,
                start: 5,
                end: 5
            })
        );
        assert_eq!(
            parse_tier("1 2", "W"),
            Err(ConvertError::MalformedLine { line: 1 })
        );
        assert_eq!(
            parse_tier("oops", "W"),
            Err(ConvertError::MalformedLine { line: 1 })
        );
        assert_eq!(
            parse_tier("\n1.5 2 x", "W"),
            Err(ConvertError::NonIntegerOffset {
                line: 2,
                text: "1.5".into()
            })
        );
    }

    #[test]
    fn single_row() {
        let t = parse_tier("10 20 x", "W").unwrap();
        let g = build_graph(&[t], "T").unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (2, 1));
        assert!(g.node("n10").is_some());
        assert!(g.validate().is_empty());
    }

    #[test]
    fn units_must_agree() {
        let a = ColumnTier::new("W");
        let b = ColumnTier::new("P").with_units("Seconds");
        assert!(matches!(
            build_graph(&[a, b], "T"),
            Err(ConvertError::UnitsMismatch(..))
        ));
    }

    #[test]
    fn tier_writer_roundtrip() {
        let text = "2360 5200 she\n5200 9680 had\n";
        let g = build_graph(&[parse_tier(text, "W").unwrap()], "T").unwrap();
        assert_eq!(serialize_tier(&g, "W").unwrap(), text);
        assert_eq!(serialize_tier(&g, "P").unwrap(), "");
    }

    #[test]
    fn tier_writer_needs_anchors() {
        let mut g = build_graph(&[parse_tier("0 10 x", "W").unwrap()], "T").unwrap();
        let arc = g.arcs().next().unwrap().id.clone();
        g.split_arc(arc.as_str()).unwrap();
        assert!(matches!(
            serialize_tier(&g, "W"),
            Err(ConvertError::Unanchored(_))
        ));
    }
}
