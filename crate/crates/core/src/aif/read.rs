use std::collections::BTreeMap;

use roxmltree::Node as XmlNode;

use super::xml::{self, CONTENT};
use super::{AifError, ParseOptions, Result};
use crate::content::Content;
use crate::graph::{AnnotationGraph, Arc, GraphError, Node, Timeline};
use crate::id::Id;
use crate::offset::Offset;
use crate::signal::SignalDescriptor;

pub(super) const ROOT: &str = "AnnotationGraph";
pub(super) const SIGNAL: &str = "AG_Signal";
pub(super) const NODE: &str = "AG_Node";
pub(super) const ARC: &str = "AG_Arc";

pub(super) const SIGNAL_ATTRS: &[&str] = &[
    "SignalID", "Class", "Format", "Encoding", "ArcTypes", "Location", "Comment",
];
const NODE_ATTRS: &[&str] = &["NodeId", "Signal", "Offset", "units"];
const ARC_ATTRS: &[&str] = &["ID", "StartNode", "EndNode", "Type"];

/// Parses an AIF document with default options: unknown markup is skipped
/// with a warning and dangling cross-references are errors.
pub fn parse_aif(bytes: &[u8]) -> Result<AnnotationGraph> {
    parse_aif_with(bytes, ParseOptions::default())
}

/// Parses an AIF document.
///
/// Each distinct `Signal` value on `AG_Node` becomes a one-dimensional
/// timeline of that id, in the `units` of its nodes. The graph is loaded as
/// written; cycles, orphans and time-order problems are reported by
/// [`AnnotationGraph::validate`], not here.
pub fn parse_aif_with(bytes: &[u8], opts: ParseOptions) -> Result<AnnotationGraph> {
    let text = xml::parse_document(bytes)?;
    let doc = xml::doc(&text)?;
    let root = doc.root_element();
    if root.tag_name().name() != ROOT {
        return Err(AifError::UnexpectedRoot {
            expected: ROOT,
            found: root.tag_name().name().to_owned(),
        });
    }
    xml::check_attributes(root, &[], opts)?;

    let mut signals = Vec::new();
    let mut nodes = Vec::new();
    let mut arcs = Vec::new();
    for child in root.children().filter(|c| c.is_element()) {
        match child.tag_name().name() {
            SIGNAL => signals.push(child),
            NODE => nodes.push(child),
            ARC => arcs.push(child),
            _ => xml::unknown_element(child, opts)?,
        }
    }

    let mut g = AnnotationGraph::new();
    for s in signals {
        g.add_signal(read_signal(s, opts)?).map_err(dup)?;
    }

    let mut parsed = Vec::with_capacity(nodes.len());
    let mut units: BTreeMap<Id, Option<String>> = BTreeMap::new();
    for n in nodes {
        xml::check_attributes(n, NODE_ATTRS, opts)?;
        let id = Id::new(xml::required_attr(n, "NodeId")?);
        let signal = Id::new(xml::required_attr(n, "Signal")?);
        let offset = n
            .attribute("Offset")
            .map(|o| Offset::parse(o).map_err(|e| AifError::InvalidOffset(e.0)))
            .transpose()?;
        let unit = units.entry(signal.clone()).or_default();
        if let Some(u) = n.attribute("units") {
            match unit {
                None => *unit = Some(u.to_owned()),
                Some(prev) if prev != u => {
                    return Err(AifError::ConflictingUnits {
                        signal,
                        first: prev.clone(),
                        second: u.to_owned(),
                    })
                }
                Some(_) => {}
            }
        }
        parsed.push(Node::new(id, signal, offset));
    }
    for (signal, unit) in units {
        g.add_timeline(Timeline::new(signal, unit.unwrap_or_default()))
            .map_err(dup)?;
    }
    for node in parsed {
        g.add_node(node).map_err(dup)?;
    }

    for a in arcs {
        let arc = read_arc(a, opts)?;
        let id = arc.id.clone();
        g.push_arc_unchecked(arc).map_err(|e| match e {
            GraphError::UnknownNode(node) => AifError::DanglingNodeRef { arc: id, node },
            other => dup(other),
        })?;
    }

    if opts.check_xrefs {
        if let Some(v) = g.resolve_xrefs().violations.into_iter().next() {
            return Err(AifError::DanglingXref {
                target: v.ids[0].clone(),
                from: v.ids[1].clone(),
            });
        }
    }
    Ok(g)
}

fn dup(e: GraphError) -> AifError {
    match e {
        GraphError::DuplicateId(id) => AifError::DuplicateId(id),
        other => AifError::InvalidContent {
            element: ROOT.to_owned(),
            detail: other.to_string(),
        },
    }
}

pub(super) fn read_signal(node: XmlNode, opts: ParseOptions) -> Result<SignalDescriptor> {
    xml::check_attributes(node, SIGNAL_ATTRS, opts)?;
    let attr = |name: &str| node.attribute(name).map(str::to_owned);
    Ok(SignalDescriptor {
        id: Id::new(xml::required_attr(node, "SignalID")?),
        format: attr("Format"),
        arc_types: attr("ArcTypes"),
        location: attr("Location"),
        class: attr("Class"),
        encoding: attr("Encoding"),
        comment: attr("Comment"),
    })
}

fn read_arc(node: XmlNode, opts: ParseOptions) -> Result<Arc> {
    xml::check_attributes(node, ARC_ATTRS, opts)?;
    let mut content = None;
    for child in node.children().filter(|c| c.is_element()) {
        if child.tag_name().name() == CONTENT && content.is_none() {
            xml::check_attributes(child, &[], opts)?;
            content = Some(xml::read_content(child, opts)?);
        } else {
            xml::unknown_element(child, opts)?;
        }
    }
    Ok(Arc {
        id: Id::new(xml::required_attr(node, "ID")?),
        start: Id::new(xml::required_attr(node, "StartNode")?),
        end: Id::new(xml::required_attr(node, "EndNode")?),
        arc_type: xml::required_attr(node, "Type")?.to_owned(),
        content: content.unwrap_or_else(Content::empty),
    })
}
