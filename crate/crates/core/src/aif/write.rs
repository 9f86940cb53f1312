use super::read::{ARC, NODE, ROOT, SIGNAL};
use super::xml::{XmlWriter, CONTENT};
use super::{AifError, Result};
use crate::graph::AnnotationGraph;
use crate::signal::SignalDescriptor;

/// Writes a well-formed graph as canonical AIF.
///
/// Timelines are implied by their nodes' `Signal` attribute, so a timeline
/// with no nodes is not written.
pub fn serialize_aif(graph: &AnnotationGraph) -> Result<Vec<u8>> {
    let report = graph.validate();
    if !report.is_empty() {
        return Err(AifError::InvalidGraph(report));
    }
    let mut w = XmlWriter::new();
    if graph.is_empty() && graph.signals().next().is_none() {
        w.empty(0, ROOT, &[]);
        return Ok(w.finish().into_bytes());
    }
    w.start(0, ROOT, &[]);
    for s in graph.signals() {
        w.empty(1, SIGNAL, &signal_attrs(s));
    }
    for n in graph.nodes() {
        let mut attrs = vec![("NodeId", n.id.as_str()), ("Signal", n.timeline.as_str())];
        if let Some(o) = &n.offset {
            attrs.push(("Offset", o.as_str()));
        }
        let unit = graph.timeline(n.timeline.as_str()).map_or("", |t| t.unit());
        if !unit.is_empty() {
            attrs.push(("units", unit));
        }
        w.empty(1, NODE, &attrs);
    }
    for a in graph.arcs() {
        w.start(
            1,
            ARC,
            &[
                ("ID", a.id.as_str()),
                ("StartNode", a.start.as_str()),
                ("EndNode", a.end.as_str()),
                ("Type", a.arc_type.as_str()),
            ],
        );
        w.content(2, CONTENT, &a.content);
        w.end(1, ARC);
    }
    w.end(0, ROOT);
    Ok(w.finish().into_bytes())
}

/// Attribute list in canonical order; absent optional attributes are skipped.
pub(super) fn signal_attrs(s: &SignalDescriptor) -> Vec<(&'static str, &str)> {
    let mut attrs = vec![("SignalID", s.id.as_str())];
    for (name, value) in [
        ("Class", &s.class),
        ("Format", &s.format),
        ("Encoding", &s.encoding),
        ("ArcTypes", &s.arc_types),
        ("Location", &s.location),
        ("Comment", &s.comment),
    ] {
        if let Some(v) = value {
            attrs.push((name, v.as_str()));
        }
    }
    attrs
}
