//! Annotation graphs and annotation sets for time-aligned linguistic data.
//!
//! - [`graph`]: one-dimensional annotation graphs (nodes anchored on
//!   timelines, typed labelled arcs) with well-formedness checking.
//! - [`set`]: the n-dimensional generalisation (anchors, regions,
//!   annotations) with selection queries and the reduction to and from
//!   graphs in the linear case.
//! - [`aif`]: the AIF XML interchange format and its lexicon variant.
//! - [`convert`]: column-format (TIMIT-style) transcription tiers.
//! - [`cli`]: the `atlas` command-line driver.

pub mod aif;
pub mod cli;
pub mod content;
pub mod convert;
pub mod graph;
pub mod id;
pub mod offset;
pub mod report;
pub mod set;
pub mod signal;

pub use content::{Content, Field};
pub use graph::{AnnotationGraph, Arc, GraphError, Node, Timeline};
pub use id::Id;
pub use offset::Offset;
pub use report::{ValidationReport, Violation, ViolationKind};
pub use set::{
    Anchor, Annotation, AnnotationSet, Criterion, NewAnnotation, Region, RegionKind, SetError,
    SignalGroup,
};
pub use signal::SignalDescriptor;
