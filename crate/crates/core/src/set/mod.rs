//! Annotation sets: annotations over regions of n-dimensional signal space.
//!
//! An [`Anchor`] is an identified, optionally located point in one
//! [`SignalGroup`]'s coordinate space. Regions refer to anchors by id, so
//! moving a shared anchor moves every region that uses it. An
//! [`Annotation`] ties a typed [`Content`] label to a [`Region`].
//!
//! In one dimension with interval regions a set is the same thing as an
//! [`AnnotationGraph`](crate::graph::AnnotationGraph): see
//! [`AnnotationSet::from_graph`] and [`AnnotationSet::to_graph`].

mod reduce;
mod validate;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::content::Content;
use crate::graph::GraphError;
use crate::id::{Id, IdGen};
use crate::offset::Offset;
use crate::report::ValidationReport;
use crate::signal::SignalDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("unknown anchor {0}")]
    UnknownAnchor(Id),
    #[error("unknown annotation {0}")]
    UnknownAnnotation(Id),
    #[error("unknown signal group {0}")]
    UnknownSignalGroup(Id),
    #[error("duplicate id {0}")]
    DuplicateId(Id),
    #[error("{id}: expected {expected} offsets, got {got}")]
    DimensionMismatch { id: Id, expected: usize, got: usize },
    #[error("anchor {anchor} is not in signal group {expected}")]
    SignalGroupMismatch { anchor: Id, expected: Id },
    #[error("{0}: operation needs a one-dimensional interval region")]
    UnsupportedRegionKind(Id),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("set does not reduce to a well-formed graph:\n{0}")]
    InvalidGraph(ValidationReport),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T, E = SetError> = std::result::Result<T, E>;

/// Signals sharing one coordinate system; generalises a timeline to any
/// number of dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalGroup {
    pub id: Id,
    pub signals: Vec<Id>,
    pub unit_names: Vec<String>,
}

impl SignalGroup {
    pub fn new<U: Into<String>>(id: impl Into<Id>, units: impl IntoIterator<Item = U>) -> Self {
        SignalGroup {
            id: id.into(),
            signals: Vec::new(),
            unit_names: units.into_iter().map(Into::into).collect(),
        }
    }

    pub fn with_signal(mut self, signal: impl Into<Id>) -> Self {
        self.signals.push(signal.into());
        self
    }

    pub fn dimensionality(&self) -> usize {
        self.unit_names.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchor {
    pub id: Id,
    pub signal_group: Id,
    /// One offset per dimension of the signal group, or `None` if unplaced.
    pub offsets: Option<Vec<Offset>>,
}

impl Anchor {
    pub fn new(
        id: impl Into<Id>,
        signal_group: impl Into<Id>,
        offsets: Option<Vec<Offset>>,
    ) -> Self {
        Anchor {
            id: id.into(),
            signal_group: signal_group.into(),
            offsets,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionKind {
    /// Two anchors in one dimension: start and end.
    Interval,
    /// Two opposite corners in two or more dimensions.
    Box,
    /// Three or more vertices in two dimensions.
    Polygon,
    /// Two or more vertices in any number of dimensions.
    Polytope,
}

impl RegionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionKind::Interval => "interval",
            RegionKind::Box => "box",
            RegionKind::Polygon => "polygon",
            RegionKind::Polytope => "polytope",
        }
    }

    /// Checks anchor count and dimensionality for this kind.
    pub fn check_shape(self, anchors: usize, dims: usize) -> std::result::Result<(), String> {
        let ok = match self {
            RegionKind::Interval => anchors == 2 && dims == 1,
            RegionKind::Box => anchors == 2 && dims >= 2,
            RegionKind::Polygon => anchors >= 3 && dims == 2,
            RegionKind::Polytope => anchors >= 2 && dims >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "{} with {anchors} anchors in {dims} dimension(s)",
                self.as_str()
            ))
        }
    }
}

/// An ordered tuple of anchor ids. The kind is stored, not inferred: two
/// anchors in 2-D may be box corners or the start of a polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub kind: RegionKind,
    pub anchors: Vec<Id>,
}

impl Region {
    pub fn interval(start: impl Into<Id>, end: impl Into<Id>) -> Self {
        Region {
            kind: RegionKind::Interval,
            anchors: vec![start.into(), end.into()],
        }
    }

    pub fn bounding_box(corner: impl Into<Id>, opposite: impl Into<Id>) -> Self {
        Region {
            kind: RegionKind::Box,
            anchors: vec![corner.into(), opposite.into()],
        }
    }

    pub fn polygon<I: Into<Id>>(vertices: impl IntoIterator<Item = I>) -> Self {
        Region {
            kind: RegionKind::Polygon,
            anchors: vertices.into_iter().map(Into::into).collect(),
        }
    }

    pub fn start(&self) -> &Id {
        &self.anchors[0]
    }

    pub fn end(&self) -> &Id {
        self.anchors
            .last()
            .expect("regions hold at least two anchors")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub id: Id,
    pub ann_type: String,
    pub region: Region,
    pub content: Content,
}

/// Input to [`AnnotationSet::add_annotation`]; the id is generated unless
/// one is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewAnnotation {
    pub id: Option<Id>,
    pub ann_type: String,
    pub region: Region,
    pub content: Content,
}

impl NewAnnotation {
    pub fn new(ann_type: impl Into<String>, region: Region, content: Content) -> Self {
        NewAnnotation {
            id: None,
            ann_type: ann_type.into(),
            region,
            content,
        }
    }

    pub fn with_id(mut self, id: impl Into<Id>) -> Self {
        self.id = Some(id.into());
        self
    }
}

/// Selection criteria for [`AnnotationSet::select`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Criterion {
    ByType(String),
    /// Any top-level feature pair equal to `(feature, value)`.
    ByFeature {
        feature: String,
        value: Content,
    },
    /// Annotations whose region lies in this signal group.
    BySignalGroup(Id),
}

impl Criterion {
    pub fn by_type(t: impl Into<String>) -> Self {
        Criterion::ByType(t.into())
    }

    pub fn by_feature(feature: impl Into<String>, value: Content) -> Self {
        Criterion::ByFeature {
            feature: feature.into(),
            value,
        }
    }

    pub fn by_signal_group(id: impl Into<Id>) -> Self {
        Criterion::BySignalGroup(id.into())
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnnotationSet {
    id: Id,
    signals: BTreeMap<Id, SignalDescriptor>,
    signal_groups: BTreeMap<Id, SignalGroup>,
    anchors: BTreeMap<Id, Anchor>,
    annotations: BTreeMap<Id, Annotation>,
    ids: IdGen,
}

impl PartialEq for AnnotationSet {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.signals == other.signals
            && self.signal_groups == other.signal_groups
            && self.anchors == other.anchors
            && self.annotations == other.annotations
    }
}

impl Eq for AnnotationSet {}

impl AnnotationSet {
    pub fn new(id: impl Into<Id>) -> Self {
        AnnotationSet {
            id: id.into(),
            ..Default::default()
        }
    }

    pub fn id(&self) -> &Id {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.annotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.annotations.is_empty()
    }

    pub fn anchor(&self, id: &str) -> Option<&Anchor> {
        self.anchors.get(id)
    }

    pub fn annotation(&self, id: &str) -> Option<&Annotation> {
        self.annotations.get(id)
    }

    pub fn signal_group(&self, id: &str) -> Option<&SignalGroup> {
        self.signal_groups.get(id)
    }

    pub fn anchors(&self) -> impl Iterator<Item = &Anchor> {
        self.anchors.values()
    }

    pub fn annotations(&self) -> impl Iterator<Item = &Annotation> {
        self.annotations.values()
    }

    pub fn signal_groups(&self) -> impl Iterator<Item = &SignalGroup> {
        self.signal_groups.values()
    }

    pub fn signals(&self) -> impl Iterator<Item = &SignalDescriptor> {
        self.signals.values()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.signal_groups.contains_key(id)
            || self.anchors.contains_key(id)
            || self.annotations.contains_key(id)
    }

    fn fresh_id(&mut self) -> Id {
        let (g, an, a) = (&self.signal_groups, &self.anchors, &self.annotations);
        self.ids
            .fresh(|s| g.contains_key(s) || an.contains_key(s) || a.contains_key(s))
    }

    fn check_new_id(&self, id: &Id) -> Result<()> {
        if self.contains_id(id.as_str()) {
            return Err(SetError::DuplicateId(id.clone()));
        }
        Ok(())
    }

    pub fn add_signal(&mut self, signal: SignalDescriptor) -> Result<()> {
        if self.signals.contains_key(&signal.id) {
            return Err(SetError::DuplicateId(signal.id));
        }
        self.signals.insert(signal.id.clone(), signal);
        Ok(())
    }

    pub fn add_signal_group(&mut self, group: SignalGroup) -> Result<()> {
        self.check_new_id(&group.id)?;
        if group.dimensionality() == 0 {
            return Err(SetError::DimensionMismatch {
                id: group.id,
                expected: 1,
                got: 0,
            });
        }
        self.signal_groups.insert(group.id.clone(), group);
        Ok(())
    }

    fn check_offsets(&self, id: &Id, group: &Id, offsets: Option<&[Offset]>) -> Result<()> {
        let g = self
            .signal_groups
            .get(group)
            .ok_or_else(|| SetError::UnknownSignalGroup(group.clone()))?;
        if let Some(o) = offsets {
            if o.len() != g.dimensionality() {
                return Err(SetError::DimensionMismatch {
                    id: id.clone(),
                    expected: g.dimensionality(),
                    got: o.len(),
                });
            }
        }
        Ok(())
    }

    pub fn add_anchor(&mut self, anchor: Anchor) -> Result<()> {
        self.check_new_id(&anchor.id)?;
        self.check_offsets(&anchor.id, &anchor.signal_group, anchor.offsets.as_deref())?;
        self.anchors.insert(anchor.id.clone(), anchor);
        Ok(())
    }

    /// Adds an anchor under a fresh id.
    pub fn create_anchor(
        &mut self,
        signal_group: &str,
        offsets: Option<Vec<Offset>>,
    ) -> Result<Id> {
        let group = Id::from(signal_group);
        self.check_offsets(&group, &group, offsets.as_deref())?;
        let id = self.fresh_id();
        self.anchors
            .insert(id.clone(), Anchor::new(id.clone(), group, offsets));
        Ok(id)
    }

    /// Moves an anchor. Every region referring to it sees the new offsets.
    pub fn set_anchor_offset(&mut self, anchor: &str, offsets: Vec<Offset>) -> Result<()> {
        let a = self
            .anchors
            .get(anchor)
            .ok_or_else(|| SetError::UnknownAnchor(anchor.into()))?;
        self.check_offsets(&a.id, &a.signal_group, Some(&offsets))?;
        self.anchors.get_mut(anchor).expect("checked above").offsets = Some(offsets);
        Ok(())
    }

    fn require_anchor(&self, anchor: &str) -> Result<&Anchor> {
        self.anchors
            .get(anchor)
            .ok_or_else(|| SetError::UnknownAnchor(anchor.into()))
    }

    fn require_annotation(&self, ann: &str) -> Result<&Annotation> {
        self.annotations
            .get(ann)
            .ok_or_else(|| SetError::UnknownAnnotation(ann.into()))
    }

    /// Annotations whose region ends at `anchor`, ascending by id.
    pub fn incoming(&self, anchor: &str) -> Result<Vec<Id>> {
        self.require_anchor(anchor)?;
        Ok(self
            .annotations
            .values()
            .filter(|a| a.region.end().as_str() == anchor)
            .map(|a| a.id.clone())
            .collect())
    }

    /// Annotations whose region starts at `anchor`, ascending by id.
    pub fn outgoing(&self, anchor: &str) -> Result<Vec<Id>> {
        self.require_anchor(anchor)?;
        Ok(self
            .annotations
            .values()
            .filter(|a| a.region.start().as_str() == anchor)
            .map(|a| a.id.clone())
            .collect())
    }

    pub fn start(&self, ann: &str) -> Result<&Id> {
        Ok(self.require_annotation(ann)?.region.start())
    }

    pub fn end(&self, ann: &str) -> Result<&Id> {
        Ok(self.require_annotation(ann)?.region.end())
    }

    pub fn set_start(&mut self, ann: &str, anchor: &str) -> Result<()> {
        self.replace_anchor(ann, anchor, 0)
    }

    pub fn set_end(&mut self, ann: &str, anchor: &str) -> Result<()> {
        let last = self.require_annotation(ann)?.region.anchors.len() - 1;
        self.replace_anchor(ann, anchor, last)
    }

    fn replace_anchor(&mut self, ann: &str, anchor: &str, slot: usize) -> Result<()> {
        let a = self.require_annotation(ann)?;
        let new = self.require_anchor(anchor)?;
        let current = self.require_anchor(a.region.anchors[slot].as_str())?;
        if new.signal_group != current.signal_group {
            return Err(SetError::SignalGroupMismatch {
                anchor: new.id.clone(),
                expected: current.signal_group.clone(),
            });
        }
        let old = std::mem::replace(
            &mut self
                .annotations
                .get_mut(ann)
                .expect("checked above")
                .region
                .anchors[slot],
            anchor.into(),
        );
        self.drop_if_unused(&old);
        Ok(())
    }

    /// Sets a feature on an annotation's content, replacing an existing pair
    /// of the same name. See [`Content::set_feature`].
    pub fn set_feature(&mut self, ann: &str, feature: &str, value: Content) -> Result<()> {
        self.annotations
            .get_mut(ann)
            .ok_or_else(|| SetError::UnknownAnnotation(ann.into()))?
            .content
            .set_feature(feature, value);
        Ok(())
    }

    /// Adds an annotation after checking its anchors exist, share one signal
    /// group and suit the region kind.
    pub fn add_annotation(&mut self, new: NewAnnotation) -> Result<Id> {
        if let Some(id) = &new.id {
            self.check_new_id(id)?;
        }
        self.check_region(&new.region)?;
        let id = match new.id {
            Some(id) => id,
            None => self.fresh_id(),
        };
        self.annotations.insert(
            id.clone(),
            Annotation {
                id: id.clone(),
                ann_type: new.ann_type,
                region: new.region,
                content: new.content,
            },
        );
        Ok(id)
    }

    fn check_region(&self, region: &Region) -> Result<()> {
        let Some(first) = region.anchors.first() else {
            return Err(SetError::InvalidRegion("region has no anchors".into()));
        };
        let group = &self.require_anchor(first.as_str())?.signal_group;
        for id in &region.anchors {
            let a = self.require_anchor(id.as_str())?;
            if &a.signal_group != group {
                return Err(SetError::SignalGroupMismatch {
                    anchor: a.id.clone(),
                    expected: group.clone(),
                });
            }
        }
        let dims = self
            .signal_groups
            .get(group)
            .ok_or_else(|| SetError::UnknownSignalGroup(group.clone()))?
            .dimensionality();
        region
            .kind
            .check_shape(region.anchors.len(), dims)
            .map_err(SetError::InvalidRegion)
    }

    /// Splits an interval annotation into two adjacent annotations sharing a
    /// fresh unplaced anchor. The first keeps the original id and content,
    /// the second gets a fresh id and an empty feature set. Returns `(first, second, middle_anchor)`.
    pub fn split_annotation(&mut self, ann: &str) -> Result<(Id, Id, Id)> {
        let old = self.require_annotation(ann)?;
        if old.region.kind != RegionKind::Interval {
            return Err(SetError::UnsupportedRegionKind(old.id.clone()));
        }
        let old = old.clone();
        let group = self
            .require_anchor(old.region.start().as_str())?
            .signal_group
            .clone();
        self.annotations.remove(ann);
        let mid = self.fresh_id();
        self.anchors
            .insert(mid.clone(), Anchor::new(mid.clone(), group, None));
        let first = old.id.clone();
        self.annotations.insert(
            first.clone(),
            Annotation {
                id: first.clone(),
                ann_type: old.ann_type.clone(),
                region: Region::interval(old.region.start().clone(), mid.clone()),
                content: old.content,
            },
        );
        let second = self.fresh_id();
        self.annotations.insert(
            second.clone(),
            Annotation {
                id: second.clone(),
                ann_type: old.ann_type,
                region: Region::interval(mid.clone(), old.region.end().clone()),
                content: Content::empty(),
            },
        );
        Ok((first, second, mid))
    }

    /// Removes an annotation and any anchor no remaining region uses.
    /// Cross-references to it are left dangling for `validate` to report.
    pub fn remove_annotation(&mut self, ann: &str) -> Result<()> {
        let old = self
            .annotations
            .remove(ann)
            .ok_or_else(|| SetError::UnknownAnnotation(ann.into()))?;
        for a in &old.region.anchors {
            self.drop_if_unused(a);
        }
        Ok(())
    }

    fn drop_if_unused(&mut self, anchor: &Id) {
        let used = self
            .annotations
            .values()
            .any(|a| a.region.anchors.contains(anchor));
        if !used {
            self.anchors.remove(anchor);
        }
    }

    /// Anchors whose offsets equal `offsets` exactly (by decimal value),
    /// ascending by id. Unplaced anchors never match.
    pub fn anchors_at_offset(&self, offsets: &[Offset]) -> Vec<Id> {
        self.anchors
            .values()
            .filter(|a| a.offsets.as_deref() == Some(offsets))
            .map(|a| a.id.clone())
            .collect()
    }

    /// Signal group of an annotation's region, taken from its first anchor.
    pub fn region_group(&self, ann: &Annotation) -> Option<&Id> {
        self.anchors
            .get(ann.region.start())
            .map(|a| &a.signal_group)
    }

    /// Ids of the annotations matching `criterion`, ascending.
    pub fn select(&self, criterion: &Criterion) -> Vec<Id> {
        self.annotations
            .values()
            .filter(|a| self.matches(a, criterion))
            .map(|a| a.id.clone())
            .collect()
    }

    /// Ids matching every criterion; no criteria selects everything.
    pub fn select_all(&self, criteria: &[Criterion]) -> Vec<Id> {
        self.annotations
            .values()
            .filter(|a| criteria.iter().all(|c| self.matches(a, c)))
            .map(|a| a.id.clone())
            .collect()
    }

    fn matches(&self, a: &Annotation, criterion: &Criterion) -> bool {
        match criterion {
            Criterion::ByType(t) => &a.ann_type == t,
            Criterion::ByFeature { feature, value } => a.content.has_feature(feature, value),
            Criterion::BySignalGroup(g) => self.region_group(a) == Some(g),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }
}
