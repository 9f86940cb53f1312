use super::{Anchor, Annotation, AnnotationSet, Region, RegionKind, Result, SetError, SignalGroup};
use crate::graph::{AnnotationGraph, Arc, Node, Timeline};

impl AnnotationSet {
    /// Lifts a graph into a set with id `"set"`: timeline to one-dimensional
    /// signal group, node to anchor, arc to interval annotation. Ids are kept.
    pub fn from_graph(graph: &AnnotationGraph) -> Self {
        Self::from_graph_with_id(graph, "set")
    }

    pub fn from_graph_with_id(graph: &AnnotationGraph, id: &str) -> Self {
        let mut set = AnnotationSet::new(id);
        for s in graph.signals() {
            set.signals.insert(s.id.clone(), s.clone());
        }
        for t in graph.timelines() {
            let mut group = SignalGroup::new(t.id.clone(), t.unit_names.iter().cloned());
            if graph.signal(t.id.as_str()).is_some() {
                group.signals.push(t.id.clone());
            }
            set.signal_groups.insert(t.id.clone(), group);
        }
        for n in graph.nodes() {
            set.anchors.insert(
                n.id.clone(),
                Anchor::new(
                    n.id.clone(),
                    n.timeline.clone(),
                    n.offset.clone().map(|o| vec![o]),
                ),
            );
        }
        for a in graph.arcs() {
            set.annotations.insert(
                a.id.clone(),
                Annotation {
                    id: a.id.clone(),
                    ann_type: a.arc_type.clone(),
                    region: Region::interval(a.start.clone(), a.end.clone()),
                    content: a.content.clone(),
                },
            );
        }
        set
    }

    /// Reduces a linear set back to a graph. Every region must be a
    /// one-dimensional interval, and the result must pass graph validation.
    pub fn to_graph(&self) -> Result<AnnotationGraph> {
        if let Some(ann) = self
            .annotations
            .values()
            .find(|a| a.region.kind != RegionKind::Interval || a.region.anchors.len() != 2)
        {
            return Err(SetError::UnsupportedRegionKind(ann.id.clone()));
        }
        let mut g = AnnotationGraph::new();
        for s in self.signals.values() {
            g.add_signal(s.clone())?;
        }
        for group in self.signal_groups.values() {
            if group.dimensionality() != 1 {
                return Err(SetError::DimensionMismatch {
                    id: group.id.clone(),
                    expected: 1,
                    got: group.dimensionality(),
                });
            }
            g.add_timeline(Timeline {
                id: group.id.clone(),
                unit_names: group.unit_names.clone(),
            })?;
        }
        for a in self.anchors.values() {
            let offset = match &a.offsets {
                None => None,
                Some(v) if v.len() == 1 => Some(v[0].clone()),
                Some(v) => {
                    return Err(SetError::DimensionMismatch {
                        id: a.id.clone(),
                        expected: 1,
                        got: v.len(),
                    })
                }
            };
            g.add_node(Node::new(a.id.clone(), a.signal_group.clone(), offset))?;
        }
        for ann in self.annotations.values() {
            g.push_arc_unchecked(Arc {
                id: ann.id.clone(),
                start: ann.region.start().clone(),
                end: ann.region.end().clone(),
                arc_type: ann.ann_type.clone(),
                content: ann.content.clone(),
            })?;
        }
        let report = g.validate();
        if !report.is_empty() {
            return Err(SetError::InvalidGraph(report));
        }
        Ok(g)
    }
}
