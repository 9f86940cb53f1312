use std::borrow::Borrow;
use std::fmt;

/// Identifier for any addressable object in a document: timelines, nodes,
/// arcs, signals, anchors, annotations.
///
/// Ids compare and sort as plain strings, so "A10" sorts before "A2".
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Id(String);

impl Id {
    pub fn new(s: impl Into<String>) -> Self {
        Id(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id(s.to_owned())
    }
}

impl From<String> for Id {
    fn from(s: String) -> Self {
        Id(s)
    }
}

impl From<&String> for Id {
    fn from(s: &String) -> Self {
        Id(s.clone())
    }
}

impl From<&Id> for Id {
    fn from(id: &Id) -> Self {
        id.clone()
    }
}

impl Borrow<str> for Id {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Id {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Hands out fresh `g<counter>` ids, skipping any the caller reports as taken.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct IdGen {
    next: u64,
}

impl IdGen {
    pub(crate) fn fresh(&mut self, taken: impl Fn(&str) -> bool) -> Id {
        loop {
            self.next += 1;
            let candidate = format!("g{}", self.next);
            if !taken(&candidate) {
                return Id(candidate);
            }
        }
    }
}
