use std::collections::BTreeSet;

use super::read::{read_signal, SIGNAL_ATTRS};
use super::write::signal_attrs;
use super::xml::{self, XmlWriter, CONTENT};
use super::{AifError, ParseOptions, Result};
use crate::content::Content;
use crate::id::Id;
use crate::signal::SignalDescriptor;

const ROOT: &str = "AtlasSignal";
const SIGNAL: &str = "Signal";
const ENTRY: &str = "Entry";
const LEXEME: &str = "Lexeme";

/// One meaning of a lexical item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub id: Id,
    pub lexeme: String,
    pub content: Content,
}

/// A lexicon document: the describing `Signal` element, if any, and its
/// entries in document order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub signal: Option<SignalDescriptor>,
    pub entries: Vec<LexiconEntry>,
}

impl Lexicon {
    pub fn entry(&self, id: &str) -> Option<&LexiconEntry> {
        self.entries.iter().find(|e| e.id.as_str() == id)
    }

    /// Entries for a lexeme, in document order.
    pub fn lookup<'a>(&'a self, lexeme: &'a str) -> impl Iterator<Item = &'a LexiconEntry> {
        self.entries.iter().filter(move |e| e.lexeme == lexeme)
    }
}

pub fn parse_lexicon(bytes: &[u8]) -> Result<Lexicon> {
    parse_lexicon_with(bytes, ParseOptions::default())
}

pub fn parse_lexicon_with(bytes: &[u8], opts: ParseOptions) -> Result<Lexicon> {
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

    let mut lexicon = Lexicon::default();
    let mut seen = BTreeSet::new();
    for sig in root.children().filter(|c| c.is_element()) {
        if sig.tag_name().name() != SIGNAL {
            xml::unknown_element(sig, opts)?;
            continue;
        }
        if lexicon.signal.is_some() {
            return Err(AifError::InvalidContent {
                element: ROOT.to_owned(),
                detail: "more than one <Signal>".to_owned(),
            });
        }
        xml::check_attributes(sig, SIGNAL_ATTRS, opts)?;
        lexicon.signal = Some(read_signal(sig, opts)?);
        for entry in sig.children().filter(|c| c.is_element()) {
            if entry.tag_name().name() != ENTRY {
                xml::unknown_element(entry, opts)?;
                continue;
            }
            xml::check_attributes(entry, &["ID"], opts)?;
            let id = Id::new(xml::required_attr(entry, "ID")?);
            if !seen.insert(id.clone()) {
                return Err(AifError::DuplicateId(id));
            }
            let mut lexeme = None;
            let mut content = None;
            for child in entry.children().filter(|c| c.is_element()) {
                match child.tag_name().name() {
                    LEXEME if lexeme.is_none() => lexeme = Some(xml::text_of(child)),
                    CONTENT if content.is_none() => content = Some(xml::read_content(child, opts)?),
                    _ => xml::unknown_element(child, opts)?,
                }
            }
            lexicon.entries.push(LexiconEntry {
                id,
                lexeme: lexeme.ok_or_else(|| AifError::Missing {
                    element: ENTRY.to_owned(),
                    what: "<Lexeme>",
                })?,
                content: content.unwrap_or_default(),
            });
        }
    }
    Ok(lexicon)
}

pub fn serialize_lexicon(lexicon: &Lexicon) -> Result<Vec<u8>> {
    let mut seen = BTreeSet::new();
    for e in &lexicon.entries {
        if !seen.insert(&e.id) {
            return Err(AifError::DuplicateId(e.id.clone()));
        }
    }
    let mut w = XmlWriter::new();
    let Some(signal) = &lexicon.signal else {
        if !lexicon.entries.is_empty() {
            return Err(AifError::Missing {
                element: ROOT.to_owned(),
                what: "<Signal> to hold entries",
            });
        }
        w.empty(0, ROOT, &[]);
        return Ok(w.finish().into_bytes());
    };
    w.start(0, ROOT, &[]);
    let attrs = signal_attrs(signal);
    if lexicon.entries.is_empty() {
        w.empty(1, SIGNAL, &attrs);
    } else {
        w.start(1, SIGNAL, &attrs);
        for e in &lexicon.entries {
            w.start(2, ENTRY, &[("ID", e.id.as_str())]);
            w.text_element(3, LEXEME, &e.lexeme);
            w.content(3, CONTENT, &e.content);
            w.end(2, ENTRY);
        }
        w.end(1, SIGNAL);
    }
    w.end(0, ROOT);
    Ok(w.finish().into_bytes())
}
