use std::fmt;

use crate::id::Id;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    Cycle,
    OrphanNode,
    TimeOrderViolation,
    DanglingReference,
    DuplicateId,
    UnknownAnchor,
    UnknownSignalGroup,
    DimensionMismatch,
    InvalidRegion,
    ReversedInterval,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Cycle => "Cycle",
            ViolationKind::OrphanNode => "OrphanNode",
            ViolationKind::TimeOrderViolation => "TimeOrderViolation",
            ViolationKind::DanglingReference => "DanglingReference",
            ViolationKind::DuplicateId => "DuplicateId",
            ViolationKind::UnknownAnchor => "UnknownAnchor",
            ViolationKind::UnknownSignalGroup => "UnknownSignalGroup",
            ViolationKind::DimensionMismatch => "DimensionMismatch",
            ViolationKind::InvalidRegion => "InvalidRegion",
            ViolationKind::ReversedInterval => "ReversedInterval",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One well-formedness failure. `ids` names the offending objects, primary
/// id first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub ids: Vec<Id>,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, ids: Vec<Id>, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            ids,
            detail: detail.into(),
        }
    }
}

/// Renders as `KIND id[,id...] detail`.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.ids.is_empty() {
            let ids: Vec<&str> = self.ids.iter().map(Id::as_str).collect();
            write!(f, " {}", ids.join(","))?;
        }
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// Result of a validation pass; empty means well-formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn of_kind(&self, kind: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
