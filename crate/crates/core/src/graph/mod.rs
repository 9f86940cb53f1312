//! One-dimensional annotation graphs.
//!
//! A graph is a set of nodes, optionally anchored at an offset on a
//! timeline, joined by typed, labelled arcs. A well-formed graph is acyclic,
//! has no node of degree zero, and along every directed path the anchored
//! offsets on any single timeline never decrease. Offsets on different
//! timelines are incomparable and impose no order.
//!
//! The checked operations ([`AnnotationGraph::insert_arc`],
//! [`AnnotationGraph::split_arc`], [`AnnotationGraph::anchor_node`],
//! [`AnnotationGraph::remove_arc`], [`AnnotationGraph::merge_arcs`]) either
//! keep a well-formed graph well-formed or fail without touching it. The
//! `*_unchecked` builders exist for importers, which load whatever the
//! document says and leave judgement to [`AnnotationGraph::validate`].

mod validate;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::content::Content;
use crate::id::{Id, IdGen};
use crate::offset::Offset;
use crate::report::ValidationReport;
use crate::signal::SignalDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(Id),
    #[error("unknown arc {0}")]
    UnknownArc(Id),
    #[error("unknown timeline {0}")]
    UnknownTimeline(Id),
    #[error("duplicate id {0}")]
    DuplicateId(Id),
    #[error("arc {start} -> {end} would introduce a cycle")]
    CycleIntroduced { start: Id, end: Id },
    #[error("time order violated: {earlier} precedes {later} but has a larger offset")]
    TimeOrderViolation { earlier: Id, later: Id },
    #[error("timeline {0} must be one-dimensional")]
    DimensionMismatch(Id),
    #[error("arcs cannot be merged: {0}")]
    NotMergeable(String),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

/// A set of signals sharing one coordinate system. Graph timelines are
/// one-dimensional; annotation sets reuse the shape for n dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    pub id: Id,
    pub unit_names: Vec<String>,
}

impl Timeline {
    pub fn new(id: impl Into<Id>, unit: impl Into<String>) -> Self {
        Timeline {
            id: id.into(),
            unit_names: vec![unit.into()],
        }
    }

    pub fn dimensionality(&self) -> usize {
        self.unit_names.len()
    }

    /// Unit of the first dimension, `""` when unknown.
    pub fn unit(&self) -> &str {
        self.unit_names.first().map(String::as_str).unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: Id,
    pub timeline: Id,
    pub offset: Option<Offset>,
}

impl Node {
    pub fn new(id: impl Into<Id>, timeline: impl Into<Id>, offset: Option<Offset>) -> Self {
        Node {
            id: id.into(),
            timeline: timeline.into(),
            offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: Id,
    pub start: Id,
    pub end: Id,
    pub arc_type: String,
    pub content: Content,
}

#[derive(Debug, Clone, Default)]
pub struct AnnotationGraph {
    timelines: BTreeMap<Id, Timeline>,
    nodes: BTreeMap<Id, Node>,
    arcs: BTreeMap<Id, Arc>,
    signals: BTreeMap<Id, SignalDescriptor>,
    ids: IdGen,
}

/// Structural equality; the fresh-id counter is not compared.
impl PartialEq for AnnotationGraph {
    fn eq(&self, other: &Self) -> bool {
        self.timelines == other.timelines
            && self.nodes == other.nodes
            && self.arcs == other.arcs
            && self.signals == other.signals
    }
}

impl Eq for AnnotationGraph {}

impl AnnotationGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.arcs.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn timeline(&self, id: &str) -> Option<&Timeline> {
        self.timelines.get(id)
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn arc(&self, id: &str) -> Option<&Arc> {
        self.arcs.get(id)
    }

    pub fn signal(&self, id: &str) -> Option<&SignalDescriptor> {
        self.signals.get(id)
    }

    /// Timelines in ascending id order.
    pub fn timelines(&self) -> impl Iterator<Item = &Timeline> {
        self.timelines.values()
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    /// Arcs in ascending id order.
    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.values()
    }

    pub fn signals(&self) -> impl Iterator<Item = &SignalDescriptor> {
        self.signals.values()
    }

    /// Arcs ending at `node`, ascending by arc id.
    pub fn incoming<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a Arc> + 'a {
        self.arcs.values().filter(move |a| a.end.as_str() == node)
    }

    /// Arcs starting at `node`, ascending by arc id.
    pub fn outgoing<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a Arc> + 'a {
        self.arcs.values().filter(move |a| a.start.as_str() == node)
    }

    pub fn degree(&self, node: &str) -> usize {
        self.arcs
            .values()
            .map(|a| usize::from(a.start.as_str() == node) + usize::from(a.end.as_str() == node))
            .sum()
    }

    /// True when `id` names a timeline, node or arc.
    pub fn contains_id(&self, id: &str) -> bool {
        self.timelines.contains_key(id) || self.nodes.contains_key(id) || self.arcs.contains_key(id)
    }

    fn fresh_id(&mut self) -> Id {
        let (t, n, a) = (&self.timelines, &self.nodes, &self.arcs);
        self.ids
            .fresh(|s| t.contains_key(s) || n.contains_key(s) || a.contains_key(s))
    }

    fn check_new_id(&self, id: &Id) -> Result<()> {
        if self.contains_id(id.as_str()) {
            return Err(GraphError::DuplicateId(id.clone()));
        }
        Ok(())
    }

    pub fn add_timeline(&mut self, timeline: Timeline) -> Result<()> {
        self.check_new_id(&timeline.id)?;
        if timeline.dimensionality() != 1 {
            return Err(GraphError::DimensionMismatch(timeline.id));
        }
        self.timelines.insert(timeline.id.clone(), timeline);
        Ok(())
    }

    /// Registers signal metadata. Signal ids share a namespace with each
    /// other only; a timeline conventionally reuses its signal's id.
    pub fn add_signal(&mut self, signal: SignalDescriptor) -> Result<()> {
        if self.signals.contains_key(&signal.id) {
            return Err(GraphError::DuplicateId(signal.id));
        }
        self.signals.insert(signal.id.clone(), signal);
        Ok(())
    }

    /// Adds a node with a caller-chosen id. The node is an orphan until an
    /// arc touches it.
    pub fn add_node(&mut self, node: Node) -> Result<()> {
        self.check_new_id(&node.id)?;
        if !self.timelines.contains_key(&node.timeline) {
            return Err(GraphError::UnknownTimeline(node.timeline));
        }
        self.nodes.insert(node.id.clone(), node);
        Ok(())
    }

    /// Adds a node under a fresh `g<n>` id.
    pub fn create_node(&mut self, timeline: &str, offset: Option<Offset>) -> Result<Id> {
        if !self.timelines.contains_key(timeline) {
            return Err(GraphError::UnknownTimeline(timeline.into()));
        }
        let id = self.fresh_id();
        self.nodes
            .insert(id.clone(), Node::new(id.clone(), timeline, offset));
        Ok(id)
    }

    /// Inserts an arc `start -> end` under a fresh id, rejecting it if it
    /// would close a cycle or order two anchored nodes backwards.
    pub fn insert_arc(
        &mut self,
        start: &str,
        end: &str,
        arc_type: impl Into<String>,
        content: Content,
    ) -> Result<Id> {
        self.check_insertable(start, end)?;
        let id = self.fresh_id();
        self.arcs.insert(
            id.clone(),
            Arc {
                id: id.clone(),
                start: start.into(),
                end: end.into(),
                arc_type: arc_type.into(),
                content,
            },
        );
        Ok(id)
    }

    /// Checked insertion preserving a caller-supplied id.
    pub fn insert_arc_with_id(&mut self, arc: Arc) -> Result<()> {
        self.check_new_id(&arc.id)?;
        self.check_insertable(arc.start.as_str(), arc.end.as_str())?;
        self.arcs.insert(arc.id.clone(), arc);
        Ok(())
    }

    /// Adds an arc checking only id uniqueness and that both endpoints
    /// exist. Cycles and time-order problems are left for `validate`.
    pub fn push_arc_unchecked(&mut self, arc: Arc) -> Result<()> {
        self.check_new_id(&arc.id)?;
        for n in [&arc.start, &arc.end] {
            if !self.nodes.contains_key(n) {
                return Err(GraphError::UnknownNode(n.clone()));
            }
        }
        self.arcs.insert(arc.id.clone(), arc);
        Ok(())
    }

    /// Removes an arc and returns it, leaving its endpoints in place even if
    /// they become orphans.
    pub fn detach_arc(&mut self, id: &str) -> Result<Arc> {
        self.arcs
            .remove(id)
            .ok_or_else(|| GraphError::UnknownArc(id.into()))
    }

    /// Overwrites a node's offset with no path check.
    pub fn set_offset_unchecked(&mut self, node: &str, offset: Option<Offset>) -> Result<()> {
        let n = self
            .nodes
            .get_mut(node)
            .ok_or_else(|| GraphError::UnknownNode(node.into()))?;
        n.offset = offset;
        Ok(())
    }

    /// Removes an arc, then any endpoint left with no arcs.
    pub fn remove_arc(&mut self, id: &str) -> Result<()> {
        let arc = self.detach_arc(id)?;
        for n in [&arc.start, &arc.end] {
            if self.nodes.contains_key(n) && self.degree(n.as_str()) == 0 {
                self.nodes.remove(n);
            }
        }
        Ok(())
    }

    /// Replaces `arc` with a two-arc path through a fresh unanchored node on
    /// the start node's timeline. The first arc keeps the original id and
    /// content, so cross-references to it stay resolved; the second gets a
    /// fresh id and an empty feature set. Both keep the type.
    ///
    /// Returns `(first, second, middle_node)`.
    pub fn split_arc(&mut self, arc: &str) -> Result<(Id, Id, Id)> {
        let old = self
            .arcs
            .get(arc)
            .ok_or_else(|| GraphError::UnknownArc(arc.into()))?
            .clone();
        let timeline = self
            .nodes
            .get(&old.start)
            .ok_or_else(|| GraphError::UnknownNode(old.start.clone()))?
            .timeline
            .clone();
        self.arcs.remove(arc);
        let mid = self.fresh_id();
        self.nodes
            .insert(mid.clone(), Node::new(mid.clone(), timeline, None));
        let first = old.id.clone();
        self.arcs.insert(
            first.clone(),
            Arc {
                id: first.clone(),
                start: old.start,
                end: mid.clone(),
                arc_type: old.arc_type.clone(),
                content: old.content,
            },
        );
        let second = self.fresh_id();
        self.arcs.insert(
            second.clone(),
            Arc {
                id: second.clone(),
                start: mid.clone(),
                end: old.end,
                arc_type: old.arc_type,
                content: Content::empty(),
            },
        );
        Ok((first, second, mid))
    }

    /// Inverse of [`split_arc`](Self::split_arc): joins `first: a -> m` and
    /// `second: m -> b` into one arc `a -> b` when both share a type and `m`
    /// touches no other arc. The merged arc keeps `first`'s id and content.
    pub fn merge_arcs(&mut self, first: &str, second: &str) -> Result<Id> {
        let a1 = self
            .arcs
            .get(first)
            .ok_or_else(|| GraphError::UnknownArc(first.into()))?;
        let a2 = self
            .arcs
            .get(second)
            .ok_or_else(|| GraphError::UnknownArc(second.into()))?;
        if first == second {
            return Err(GraphError::NotMergeable(
                "an arc cannot merge with itself".into(),
            ));
        }
        if a1.end != a2.start {
            return Err(GraphError::NotMergeable(format!(
                "{first} does not end where {second} starts"
            )));
        }
        if a1.arc_type != a2.arc_type {
            return Err(GraphError::NotMergeable(format!(
                "types differ: {} vs {}",
                a1.arc_type, a2.arc_type
            )));
        }
        let mid = a1.end.clone();
        if self.degree(mid.as_str()) != 2 {
            return Err(GraphError::NotMergeable(format!(
                "interior node {mid} has other arcs"
            )));
        }
        if a1.start == a2.end {
            return Err(GraphError::NotMergeable(
                "merge would create a self-loop".into(),
            ));
        }
        let end = a2.end.clone();
        self.arcs.remove(second);
        self.nodes.remove(&mid);
        let merged = self.arcs.get_mut(first).expect("checked above");
        merged.end = end;
        Ok(merged.id.clone())
    }

    /// Sets a node's offset, rejecting values that would order it against an
    /// anchored ancestor or descendant on the same timeline.
    pub fn anchor_node(&mut self, node: &str, offset: Offset) -> Result<()> {
        let n = self
            .nodes
            .get(node)
            .ok_or_else(|| GraphError::UnknownNode(node.into()))?;
        let timeline = &n.timeline;
        for anc in self.ancestors(node) {
            if anc.as_str() == node {
                continue;
            }
            let a = &self.nodes[&anc];
            if &a.timeline == timeline && a.offset.as_ref().is_some_and(|o| *o > offset) {
                return Err(GraphError::TimeOrderViolation {
                    earlier: anc,
                    later: node.into(),
                });
            }
        }
        for desc in self.descendants(node) {
            if desc.as_str() == node {
                continue;
            }
            let d = &self.nodes[&desc];
            if &d.timeline == timeline && d.offset.as_ref().is_some_and(|o| *o < offset) {
                return Err(GraphError::TimeOrderViolation {
                    earlier: node.into(),
                    later: desc,
                });
            }
        }
        self.nodes.get_mut(node).expect("checked above").offset = Some(offset);
        Ok(())
    }

    fn check_insertable(&self, start: &str, end: &str) -> Result<()> {
        for n in [start, end] {
            if !self.nodes.contains_key(n) {
                return Err(GraphError::UnknownNode(n.into()));
            }
        }
        let cycle = || GraphError::CycleIntroduced {
            start: start.into(),
            end: end.into(),
        };
        if start == end {
            return Err(cycle());
        }
        let before = self.ancestors(start);
        if before.contains(end) {
            return Err(cycle());
        }
        let after = self.descendants(end);

        // Every new path runs u ..> start -> end ..> v.
        let mut latest: BTreeMap<&Id, &Node> = BTreeMap::new();
        for u in before.iter().chain(std::iter::once(&Id::from(start))) {
            let n = &self.nodes[u];
            if let Some(o) = &n.offset {
                let slot = latest.entry(&n.timeline).or_insert(n);
                if slot.offset.as_ref().is_some_and(|cur| o > cur) {
                    *slot = n;
                }
            }
        }
        let end_id = Id::from(end);
        for v in after.iter().chain(std::iter::once(&end_id)) {
            let n = &self.nodes[v];
            let (Some(o), Some(u)) = (&n.offset, latest.get(&n.timeline)) else {
                continue;
            };
            if u.offset.as_ref().is_some_and(|uo| uo > o) {
                return Err(GraphError::TimeOrderViolation {
                    earlier: u.id.clone(),
                    later: n.id.clone(),
                });
            }
        }
        Ok(())
    }

    /// Nodes reachable from `node` by one or more arcs.
    pub fn descendants(&self, node: &str) -> BTreeSet<Id> {
        self.reach(node, |a| (&a.start, &a.end))
    }

    /// Nodes that reach `node` by one or more arcs.
    pub fn ancestors(&self, node: &str) -> BTreeSet<Id> {
        self.reach(node, |a| (&a.end, &a.start))
    }

    fn reach(&self, node: &str, dir: impl Fn(&Arc) -> (&Id, &Id)) -> BTreeSet<Id> {
        let mut next: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
        for a in self.arcs.values() {
            let (from, to) = dir(a);
            next.entry(from).or_default().push(to);
        }
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&str> = VecDeque::from([node]);
        while let Some(cur) = queue.pop_front() {
            for &succ in next.get(&Id::from(cur)).into_iter().flatten() {
                if seen.insert(succ.clone()) {
                    queue.push_back(succ.as_str());
                }
            }
        }
        seen
    }

    /// Checks acyclicity, orphan nodes, path-level time order, id
    /// uniqueness and that every reference resolves. Never fails; an empty
    /// report means the graph is well-formed.
    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// Reports every cross-reference in arc content whose target is not an
    /// arc of this graph. Reference cycles are allowed.
    pub fn resolve_xrefs(&self) -> ValidationReport {
        validate::resolve_xrefs(self)
    }
}
