use roxmltree::Node as XmlNode;

use super::{AifError, ParseOptions, Result};
use crate::content::{Content, Field};
use crate::id::Id;

pub(super) const CONTENT: &str = "Content";
pub(super) const FIELD: &str = "Field";
pub(super) const FEATURE: &str = "Feature";
pub(super) const VALUE: &str = "Value";
pub(super) const XREF: &str = "AG_xref";
pub(super) const XREF_ATTR: &str = "AG_Arc";

pub(super) fn parse_document(bytes: &[u8]) -> Result<String> {
    String::from_utf8(bytes.to_vec()).map_err(|e| AifError::MalformedXml(e.to_string()))
}

pub(super) fn doc(text: &str) -> Result<roxmltree::Document<'_>> {
    roxmltree::Document::parse(text).map_err(|e| AifError::MalformedXml(e.to_string()))
}

/// Checks attribute names against `known`, warning or failing on others.
pub(super) fn check_attributes(node: XmlNode, known: &[&str], opts: ParseOptions) -> Result<()> {
    for attr in node.attributes() {
        if !known.contains(&attr.name()) {
            let err = AifError::UnknownAttribute {
                element: node.tag_name().name().to_owned(),
                name: attr.name().to_owned(),
            };
            if opts.strict {
                return Err(err);
            }
            log::warn!("skipping {err}");
        }
    }
    Ok(())
}

pub(super) fn unknown_element(node: XmlNode, opts: ParseOptions) -> Result<()> {
    let err = AifError::UnknownElement {
        name: node.tag_name().name().to_owned(),
        parent: node
            .parent_element()
            .map(|p| p.tag_name().name().to_owned())
            .unwrap_or_default(),
    };
    if opts.strict {
        return Err(err);
    }
    log::warn!("skipping {err}");
    Ok(())
}

pub(super) fn required_attr<'a>(node: XmlNode<'a, '_>, name: &'static str) -> Result<&'a str> {
    node.attribute(name).ok_or_else(|| AifError::Missing {
        element: node.tag_name().name().to_owned(),
        what: name,
    })
}

pub(super) fn text_of(node: XmlNode) -> String {
    node.children()
        .filter(|c| c.is_text())
        .filter_map(|c| c.text())
        .collect()
}

/// Reads the body of a `Content` or `Value` element.
///
/// `Field` children make a feature set, a lone `AG_xref` child makes a
/// cross-reference, and text alone makes a literal. An element with neither
/// children nor non-blank text is an empty feature set.
pub(super) fn read_content(node: XmlNode, opts: ParseOptions) -> Result<Content> {
    let element = node.tag_name().name();
    let invalid = |detail: &str| AifError::InvalidContent {
        element: element.to_owned(),
        detail: detail.to_owned(),
    };
    let mut fields = Vec::new();
    let mut xrefs = Vec::new();
    for child in node.children().filter(|c| c.is_element()) {
        match child.tag_name().name() {
            FIELD => fields.push(child),
            XREF => xrefs.push(child),
            _ => unknown_element(child, opts)?,
        }
    }
    let text = text_of(node);
    if fields.is_empty() && xrefs.is_empty() {
        if text.trim().is_empty() {
            return Ok(Content::empty());
        }
        return Ok(Content::Literal(text));
    }
    if !text.trim().is_empty() {
        if opts.strict {
            return Err(invalid("text mixed with elements"));
        }
        log::warn!(
            "ignoring text {:?} mixed with elements in <{element}>",
            text.trim()
        );
    }
    if !xrefs.is_empty() {
        if xrefs.len() > 1 || !fields.is_empty() {
            return Err(invalid("a cross-reference must be the only child"));
        }
        let x = xrefs[0];
        check_attributes(x, &[XREF_ATTR], opts)?;
        return Ok(Content::Xref(Id::new(required_attr(x, XREF_ATTR)?)));
    }
    fields
        .into_iter()
        .map(|f| read_field(f, opts))
        .collect::<Result<Vec<_>>>()
        .map(Content::Features)
}

fn read_field(node: XmlNode, opts: ParseOptions) -> Result<Field> {
    check_attributes(node, &[], opts)?;
    let mut feature = None;
    let mut value = None;
    for child in node.children().filter(|c| c.is_element()) {
        match child.tag_name().name() {
            FEATURE if feature.is_none() => {
                check_attributes(child, &[], opts)?;
                feature = Some(text_of(child));
            }
            VALUE if value.is_none() => {
                check_attributes(child, &[], opts)?;
                value = Some(read_content(child, opts)?);
            }
            FEATURE | VALUE => {
                return Err(AifError::InvalidContent {
                    element: FIELD.to_owned(),
                    detail: format!("repeated <{}>", child.tag_name().name()),
                })
            }
            _ => unknown_element(child, opts)?,
        }
    }
    let missing = |what| AifError::Missing {
        element: FIELD.to_owned(),
        what,
    };
    Ok(Field {
        feature: feature.ok_or_else(|| missing("<Feature>"))?,
        value: value.ok_or_else(|| missing("<Value>"))?,
    })
}

pub(super) fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

pub(super) fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

/// Indented XML text builder.
pub(super) struct XmlWriter {
    buf: String,
}

impl XmlWriter {
    pub(super) fn new() -> Self {
        XmlWriter {
            buf: String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"),
        }
    }

    fn indent(&mut self, depth: usize) {
        for _ in 0..depth {
            self.buf.push_str("  ");
        }
    }

    fn open_tag(&mut self, depth: usize, name: &str, attrs: &[(&str, &str)]) {
        self.indent(depth);
        self.buf.push('<');
        self.buf.push_str(name);
        for (k, v) in attrs {
            self.buf.push(' ');
            self.buf.push_str(k);
            self.buf.push_str("=\"");
            self.buf.push_str(&escape_attr(v));
            self.buf.push('"');
        }
    }

    pub(super) fn empty(&mut self, depth: usize, name: &str, attrs: &[(&str, &str)]) {
        self.open_tag(depth, name, attrs);
        self.buf.push_str("/>\n");
    }

    pub(super) fn start(&mut self, depth: usize, name: &str, attrs: &[(&str, &str)]) {
        self.open_tag(depth, name, attrs);
        self.buf.push_str(">\n");
    }

    pub(super) fn end(&mut self, depth: usize, name: &str) {
        self.indent(depth);
        self.buf.push_str("</");
        self.buf.push_str(name);
        self.buf.push_str(">\n");
    }

    pub(super) fn text_element(&mut self, depth: usize, name: &str, text: &str) {
        self.indent(depth);
        self.buf
            .push_str(&format!("<{name}>{}</{name}>\n", escape_text(text)));
    }

    /// Writes `content` as the body of element `name`.
    pub(super) fn content(&mut self, depth: usize, name: &str, content: &Content) {
        match content {
            Content::Literal(s) => self.text_element(depth, name, s),
            Content::Xref(id) => {
                self.indent(depth);
                self.buf.push_str(&format!(
                    "<{name}><{XREF} {XREF_ATTR}=\"{}\"/></{name}>\n",
                    escape_attr(id.as_str())
                ));
            }
            Content::Features(fields) if fields.is_empty() => self.empty(depth, name, &[]),
            Content::Features(fields) => {
                self.start(depth, name, &[]);
                for f in fields {
                    self.start(depth + 1, FIELD, &[]);
                    self.text_element(depth + 2, FEATURE, &f.feature);
                    self.content(depth + 2, VALUE, &f.value);
                    self.end(depth + 1, FIELD);
                }
                self.end(depth, name);
            }
        }
    }

    pub(super) fn finish(self) -> String {
        self.buf
    }
}
