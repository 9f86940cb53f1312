use crate::id::Id;

/// Metadata for an external signal. Annotations are stand-off: `location`
/// is stored and written back but never opened.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignalDescriptor {
    pub id: Id,
    pub format: Option<String>,
    pub arc_types: Option<String>,
    pub location: Option<String>,
    pub class: Option<String>,
    pub encoding: Option<String>,
    pub comment: Option<String>,
}

impl SignalDescriptor {
    pub fn new(id: impl Into<Id>) -> Self {
        SignalDescriptor {
            id: id.into(),
            ..Default::default()
        }
    }

    pub fn with_format(mut self, format: impl Into<String>) -> Self {
        self.format = Some(format.into());
        self
    }

    pub fn with_arc_types(mut self, arc_types: impl Into<String>) -> Self {
        self.arc_types = Some(arc_types.into());
        self
    }

    pub fn with_location(mut self, location: impl Into<String>) -> Self {
        self.location = Some(location.into());
        self
    }
}
