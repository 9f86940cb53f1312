use std::fmt;

use crate::id::Id;

/// Feature name that holds a literal or cross-reference when it is promoted
/// into a feature set by [`Content::set_feature`].
pub const PROMOTED_CONTENT_FEATURE: &str = "_content";

/// The label payload of an arc or annotation.
///
/// Feature sets are ordered lists, not maps: a feature name may repeat (a
/// lexicon entry lists several `Synonym` values) and values nest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Content {
    Features(Vec<Field>),
    Literal(String),
    /// Reference to another arc or annotation by id.
    Xref(Id),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Field {
    pub feature: String,
    pub value: Content,
}

impl Field {
    pub fn new(feature: impl Into<String>, value: Content) -> Self {
        Field {
            feature: feature.into(),
            value,
        }
    }
}

impl Default for Content {
    fn default() -> Self {
        Content::Features(Vec::new())
    }
}

impl Content {
    pub fn empty() -> Self {
        Content::default()
    }

    pub fn literal(s: impl Into<String>) -> Self {
        Content::Literal(s.into())
    }

    pub fn xref(id: impl Into<Id>) -> Self {
        Content::Xref(id.into())
    }

    pub fn features<I, K>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (K, Content)>,
        K: Into<String>,
    {
        Content::Features(pairs.into_iter().map(|(k, v)| Field::new(k, v)).collect())
    }

    /// Sets `feature` to `value`, replacing the first existing pair with that
    /// name and dropping any later duplicates. Literal and xref content is
    /// first wrapped as the value of [`PROMOTED_CONTENT_FEATURE`].
    pub fn set_feature(&mut self, feature: &str, value: Content) {
        if !matches!(self, Content::Features(_)) {
            let old = std::mem::take(self);
            *self = Content::Features(vec![Field::new(PROMOTED_CONTENT_FEATURE, old)]);
        }
        let Content::Features(fields) = self else {
            unreachable!()
        };
        match fields.iter().position(|f| f.feature == feature) {
            Some(i) => {
                fields[i].value = value;
                let mut seen = false;
                fields.retain(|f| {
                    if f.feature != feature {
                        return true;
                    }
                    let keep = !seen;
                    seen = true;
                    keep
                });
            }
            None => fields.push(Field::new(feature, value)),
        }
    }

    /// True when a top-level pair has this feature name and value.
    pub fn has_feature(&self, feature: &str, value: &Content) -> bool {
        match self {
            Content::Features(fields) => fields
                .iter()
                .any(|f| f.feature == feature && &f.value == value),
            _ => false,
        }
    }

    /// Values of every top-level pair named `feature`, in order.
    pub fn feature_values<'a>(&'a self, feature: &'a str) -> impl Iterator<Item = &'a Content> {
        let fields: &[Field] = match self {
            Content::Features(f) => f,
            _ => &[],
        };
        fields
            .iter()
            .filter(move |f| f.feature == feature)
            .map(|f| &f.value)
    }

    /// Every cross-reference target anywhere in this content tree.
    pub fn xrefs(&self) -> Vec<&Id> {
        let mut out = Vec::new();
        self.collect_xrefs(&mut out);
        out
    }

    fn collect_xrefs<'a>(&'a self, out: &mut Vec<&'a Id>) {
        match self {
            Content::Xref(id) => out.push(id),
            Content::Literal(_) => {}
            Content::Features(fields) => {
                for f in fields {
                    f.value.collect_xrefs(out);
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Content::Features(fields) => {
                1 + fields.iter().map(|f| f.value.depth()).max().unwrap_or(0)
            }
            _ => 0,
        }
    }
}

/// Single-line summary: `she`, `sign=e`, `->A2`, `Idiom={Source=...}`.
impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Content::Literal(s) => f.write_str(s),
            Content::Xref(id) => write!(f, "->{id}"),
            Content::Features(fields) => {
                for (i, field) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match &field.value {
                        Content::Features(_) => write!(f, "{}={{{}}}", field.feature, field.value)?,
                        v => write!(f, "{}={}", field.feature, v)?,
                    }
                }
                Ok(())
            }
        }
    }
}
