//! AIF, the XML interchange format for annotation graphs, and the lexicon
//! format built on the same `Content`/`Field`/`Feature`/`Value` vocabulary.
//!
//! Readers accept any well-formed XML using the vocabulary; writers emit one
//! canonical layout (two-space indent, signals then nodes then arcs, each
//! ascending by id) so that equal graphs serialize to identical bytes.

mod lexicon;
mod read;
mod write;
mod xml;

use thiserror::Error;

use crate::id::Id;
use crate::report::ValidationReport;

pub use lexicon::{parse_lexicon, parse_lexicon_with, serialize_lexicon, Lexicon, LexiconEntry};
pub use read::{parse_aif, parse_aif_with};
pub use write::serialize_aif;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AifError {
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    #[error("expected root element <{expected}>, found <{found}>")]
    UnexpectedRoot {
        expected: &'static str,
        found: String,
    },
    #[error("unknown element <{name}> inside <{parent}>")]
    UnknownElement { name: String, parent: String },
    #[error("unknown attribute {name} on <{element}>")]
    UnknownAttribute { element: String, name: String },
    #[error("<{element}> is missing {what}")]
    Missing { element: String, what: &'static str },
    #[error("invalid content in <{element}>: {detail}")]
    InvalidContent { element: String, detail: String },
    #[error("invalid offset {0:?}")]
    InvalidOffset(String),
    #[error("signal {signal} has nodes in both {first:?} and {second:?}")]
    ConflictingUnits {
        signal: Id,
        first: String,
        second: String,
    },
    #[error("arc {arc} names missing node {node}")]
    DanglingNodeRef { arc: Id, node: Id },
    #[error("dangling cross-reference to {target} in {from}")]
    DanglingXref { target: Id, from: Id },
    #[error("duplicate id {0}")]
    DuplicateId(Id),
    #[error("graph is not well-formed:\n{0}")]
    InvalidGraph(ValidationReport),
}

pub type Result<T, E = AifError> = std::result::Result<T, E>;

/// Reader settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Unknown elements and attributes are errors instead of warnings.
    pub strict: bool,
    /// Fail on cross-references that name no arc. Turn off to load a
    /// document and report dangling references through `validate`.
    pub check_xrefs: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            strict: false,
            check_xrefs: true,
        }
    }
}

impl ParseOptions {
    pub fn strict() -> Self {
        ParseOptions {
            strict: true,
            ..Default::default()
        }
    }
}

/// Cross-reference check for a loaded graph: reports every xref target that
/// is not an arc id. Same as [`AnnotationGraph::resolve_xrefs`](crate::graph::AnnotationGraph::resolve_xrefs).
pub fn resolve_xrefs(graph: &crate::graph::AnnotationGraph) -> ValidationReport {
    graph.resolve_xrefs()
}
